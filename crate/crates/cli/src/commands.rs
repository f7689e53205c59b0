use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gkm_core::builtins::{builtin, Builtin, BUILTIN_NAMES};
use gkm_core::cohomology::{build_system, compute_basis, decompose, is_member, CohomologyError};
use gkm_core::gkm::{validate_axial, validate_connection};
use gkm_core::graphs::{filter_complex, Filtration, GraphError, SimplicialGraphComplex, Vertex};
use gkm_core::{CohomologyClass, Theory};
use log::info;
use serde_json::{json, Value};

use crate::document::{load_input, read_class, serialize_complex, serialize_gkm, to_json, Loaded, Metadata};
use crate::dot::to_dot;
use crate::error::{CliError, EXIT_MATH};

#[derive(Parser, Debug)]
#[command(
    name = "gkm",
    version,
    about = "Filtrations, GKM axioms and equivariant cohomology of GKM graph complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the GKM axioms and report connection witnesses.
    Validate {
        /// Document path or `builtin:<name>`.
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a filtration.
    Filter {
        input: String,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the free module basis of the equivariant cohomology ring.
    Basis {
        input: String,
        #[arg(long)]
        seed: Option<String>,
        #[command(flatten)]
        theory: TheoryArgs,
        /// Largest basis degree allowed; in K, the number of exponent-box enlargements.
        #[arg(long)]
        degree_cap: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether a class is in the ring and decompose it over the basis.
    Member {
        input: String,
        /// JSON file `{"values": {"<vertex>": "<ring element>", ...}}`.
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        seed: Option<String>,
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long)]
        degree_cap: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the filtered graph in Graphviz DOT format.
    ExportDot {
        input: String,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the builtin examples, or write one as a document.
    Builtin {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoryName {
    #[value(name = "H")]
    H,
    #[value(name = "K")]
    K,
    #[value(name = "MU")]
    Mu,
}

#[derive(Args, Debug)]
pub struct TheoryArgs {
    #[arg(long, value_enum, default_value = "H")]
    pub theory: TheoryName,
    /// Truncation degree for MU.
    #[arg(long, default_value_t = 3)]
    pub trunc: u32,
    /// Work over the rationals (H only); non-divisive data is then accepted.
    #[arg(long)]
    pub rational: bool,
}

impl TheoryArgs {
    pub fn theory(&self) -> Result<Theory, CliError> {
        Ok(match (self.theory, self.rational) {
            (TheoryName::H, false) => Theory::H,
            (TheoryName::H, true) => Theory::RationalH,
            (_, true) => return Err(CliError::Usage("--rational is only available with --theory H".into())),
            (TheoryName::K, false) => Theory::K,
            (TheoryName::Mu, false) => Theory::MU { truncation: self.trunc },
        })
    }
}

/// Runs a command, writing the report to `w`. Returns the exit code.
pub fn run(cli: &Cli, w: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Validate { input, out } => validate(input, out.as_deref(), w),
        Command::Filter { input, seed, out } => filter(input, seed.as_deref(), out.as_deref(), w),
        Command::Basis {
            input,
            seed,
            theory,
            degree_cap,
            out,
        } => basis(input, seed.as_deref(), theory.theory()?, *degree_cap, out.as_deref(), w),
        Command::Member {
            input,
            class,
            seed,
            theory,
            degree_cap,
            out,
        } => member(
            input,
            class,
            seed.as_deref(),
            theory.theory()?,
            *degree_cap,
            out.as_deref(),
            w,
        ),
        Command::ExportDot { input, seed, out } => export_dot(input, seed.as_deref(), out.as_deref(), w),
        Command::Builtin { name, out } => write_builtin(name.as_deref(), out.as_deref(), w),
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn write_result(out: Option<&Path>, value: &Value) -> Result<(), CliError> {
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(value).expect("json values serialize") + "\n";
        std::fs::write(path, text).map_err(io_err(path))?;
    }
    Ok(())
}

macro_rules! say {
    ($w:expr, $($arg:tt)*) => {
        writeln!($w, $($arg)*).map_err(stdout_err)?
    };
}

fn filtration(complex: &SimplicialGraphComplex, seed: Option<&str>) -> Result<Filtration, CliError> {
    let seed = match seed {
        Some(s) => Vertex::new(s).map_err(|e| CliError::Usage(e.to_string()))?,
        None => complex
            .union()
            .vertices()
            .iter()
            .next()
            .expect("complexes are non-empty")
            .clone(),
    };
    filter_complex(complex, &seed).map_err(|e| match e {
        GraphError::UnknownVertex(v) => CliError::Usage(format!("seed {v} is not a vertex of the complex")),
        e => CliError::Math(e.to_string()),
    })
}

fn validate(input: &str, out: Option<&Path>, w: &mut dyn Write) -> Result<i32, CliError> {
    let loaded = load_input(input)?;
    let union = loaded.complex.union();
    say!(
        w,
        "complex: {} members, {} vertices, {} edges",
        loaded.complex.members().len(),
        union.vertices().len(),
        union.edges().len()
    );
    let Some(gc) = &loaded.gkm else {
        say!(w, "no axial data: graph complex only");
        write_result(out, &json!({ "complex_ok": true }))?;
        return Ok(0);
    };
    for e in &loaded.derived {
        say!(w, "derived α({e}) from the reverse orientation");
    }
    let ax = validate_axial(gc);
    if ax.is_ok() {
        say!(w, "axial function: ok");
    } else {
        say!(w, "axial function: {} violations", ax.violations.len());
        for v in &ax.violations {
            say!(w, "  {v}");
        }
    }
    let conn = validate_connection(gc);
    if conn.is_ok() {
        say!(w, "connection: ok");
    } else {
        say!(w, "connection: {} violations", conn.violations.len());
        for v in &conn.violations {
            say!(w, "  {v}");
        }
    }
    if !conn.witnesses.is_empty() {
        say!(w, "congruence witnesses c(e, e'):");
        for ((e, at), c) in &conn.witnesses {
            say!(w, "  c({e}, {at}) = {c}");
        }
    }
    let witnesses: Vec<Value> = conn
        .witnesses
        .iter()
        .map(|((e, at), c)| json!({ "edge": e.to_string(), "at": at.to_string(), "c": c.to_string() }))
        .collect();
    let signs: BTreeMap<String, i8> = ax.signs.iter().map(|(e, s)| (e.to_string(), *s)).collect();
    write_result(
        out,
        &json!({
            "complex_ok": true,
            "axial_ok": ax.is_ok(),
            "connection_ok": conn.is_ok(),
            "axial_violations": ax.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "connection_violations": conn.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "derived": loaded.derived.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "signs": signs,
            "witnesses": witnesses,
        }),
    )?;
    Ok(if ax.is_ok() && conn.is_ok() { 0 } else { EXIT_MATH })
}

fn filtration_json(f: &Filtration) -> Value {
    json!({
        "ordering": f.ordering().iter().map(Vertex::label).collect::<Vec<_>>(),
        "degrees": f.degrees(),
        "downward": (0..f.len())
            .map(|j| f.downward_edges(j).iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn filter(input: &str, seed: Option<&str>, out: Option<&Path>, w: &mut dyn Write) -> Result<i32, CliError> {
    let loaded = load_input(input)?;
    let f = filtration(&loaded.complex, seed)?;
    for j in 0..f.len() {
        let edges: Vec<String> = f.downward_edges(j).iter().map(ToString::to_string).collect();
        let member = f.step_members()[j].map(|i| loaded.complex.members()[i].name().to_string());
        say!(
            w,
            "b{j} = {}  d={}  F{j} = {{{}}}{}",
            f.ordering()[j],
            edges.len(),
            edges.join(", "),
            member.map(|m| format!("  in {m}")).unwrap_or_default()
        );
    }
    say!(w, "total downward edges: {}", f.total_edges());
    write_result(out, &filtration_json(&f))?;
    Ok(0)
}

fn math(e: CohomologyError) -> CliError {
    match e {
        CohomologyError::Algebra(a) => CliError::Usage(a.to_string()),
        e => CliError::Math(e.to_string()),
    }
}

fn default_cap(f: &Filtration) -> u32 {
    (2 * f.degrees().into_iter().max().unwrap_or(0) as u32).max(1)
}

fn class_json(c: &CohomologyClass) -> Value {
    let m: BTreeMap<String, String> = c
        .values()
        .iter()
        .map(|(v, x)| (v.label().to_string(), x.to_string()))
        .collect();
    json!(m)
}

fn basis(
    input: &str,
    seed: Option<&str>,
    theory: Theory,
    cap: Option<u32>,
    out: Option<&Path>,
    w: &mut dyn Write,
) -> Result<i32, CliError> {
    let loaded = load_input(input)?;
    let gc = loaded.require_gkm()?;
    let f = filtration(&loaded.complex, seed)?;
    let cap = cap.unwrap_or_else(|| default_cap(&f));
    info!("basis in {} with degree cap {cap}", theory.name());
    let sys = build_system(gc, &f, theory).map_err(math)?;
    let basis = compute_basis(&sys, cap).map_err(math)?;
    say!(w, "theory {}: {} basis classes", theory.name(), basis.len());
    let mut classes = Vec::new();
    for b in &basis {
        if let Some(fail) = is_member(&sys, &b.class).map_err(math)? {
            return Err(CliError::Math(format!(
                "basis class {} fails the condition at b{} towards b{}",
                b.index, fail.j, fail.s
            )));
        }
        say!(w, "phi_{} (degree {}):", b.index, sys.degree(b.index));
        for (s, v) in sys.ordering().iter().enumerate().skip(b.index) {
            say!(w, "  {v} (b{s}): {}", b.class.value(v).expect("total"));
        }
        classes.push(json!({ "index": b.index, "degree": sys.degree(b.index), "values": class_json(&b.class) }));
    }
    say!(w, "all basis classes verified as members");
    write_result(
        out,
        &json!({
            "theory": theory.name(),
            "filtration": filtration_json(&f),
            "basis": classes,
        }),
    )?;
    Ok(0)
}

fn member(
    input: &str,
    class: &Path,
    seed: Option<&str>,
    theory: Theory,
    cap: Option<u32>,
    out: Option<&Path>,
    w: &mut dyn Write,
) -> Result<i32, CliError> {
    let loaded = load_input(input)?;
    let gc = loaded.require_gkm()?;
    let f = filtration(&loaded.complex, seed)?;
    let doc = read_class(class)?;
    let mut values = BTreeMap::new();
    for v in f.ordering() {
        let text = doc
            .values
            .get(v.label())
            .ok_or_else(|| CliError::schema(format!("values[\"{v}\"]"), "missing value"))?;
        let x = theory
            .parse(gc.torus_rank(), text)
            .map_err(|e| CliError::schema(format!("values[\"{v}\"]"), e.to_string()))?;
        values.insert(v.clone(), x);
    }
    if let Some(extra) = doc
        .values
        .keys()
        .find(|k| !f.ordering().iter().any(|v| v.label() == k.as_str()))
    {
        return Err(CliError::schema(
            format!("values[\"{extra}\"]"),
            "not a vertex of the complex",
        ));
    }
    let x = CohomologyClass::new(theory, values);
    let sys = build_system(gc, &f, theory).map_err(math)?;
    if let Some(fail) = is_member(&sys, &x).map_err(math)? {
        say!(
            w,
            "not a member: x({}) - x({}) is not divisible by the Euler class of {}; remainder {}",
            f.ordering()[fail.j],
            f.ordering()[fail.s],
            sys.divisors(fail.j)
                .iter()
                .find(|d| d.source == fail.s)
                .expect("failing divisor")
                .edge,
            fail.remainder
        );
        write_result(
            out,
            &json!({ "member": false, "witness": { "j": fail.j, "s": fail.s, "remainder": fail.remainder } }),
        )?;
        return Ok(EXIT_MATH);
    }
    let cap = cap.unwrap_or_else(|| default_cap(&f));
    let basis = compute_basis(&sys, cap).map_err(math)?;
    let coeffs = decompose(&sys, &basis, &x).map_err(math)?;
    say!(w, "member");
    for (j, p) in coeffs.iter().enumerate() {
        say!(w, "  p_{j} = {p}");
    }
    write_result(
        out,
        &json!({
            "member": true,
            "coefficients": coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "basis": basis.iter().map(|b| class_json(&b.class)).collect::<Vec<_>>(),
        }),
    )?;
    Ok(0)
}

fn export_dot(input: &str, seed: Option<&str>, out: Option<&Path>, w: &mut dyn Write) -> Result<i32, CliError> {
    let loaded = load_input(input)?;
    let f = filtration(&loaded.complex, seed)?;
    let name = loaded
        .metadata
        .as_ref()
        .and_then(|m| m.builtin.clone())
        .unwrap_or_else(|| "complex".to_string());
    let dot = to_dot(&name, &loaded.complex, &f);
    match out {
        Some(path) => std::fs::write(path, dot).map_err(io_err(path))?,
        None => w.write_all(dot.as_bytes()).map_err(stdout_err)?,
    }
    Ok(0)
}

fn write_builtin(name: Option<&str>, out: Option<&Path>, w: &mut dyn Write) -> Result<i32, CliError> {
    let Some(name) = name else {
        for (n, d) in BUILTIN_NAMES {
            say!(w, "{n:<20} {d}");
        }
        return Ok(0);
    };
    let b = builtin(name).map_err(|e| CliError::Usage(e.to_string()))?;
    let metadata = Some(Metadata {
        builtin: Some(name.to_string()),
        ..Metadata::default()
    });
    let doc = match &b {
        Builtin::Complex(c) => serialize_complex(c, metadata),
        Builtin::Gkm(gc) => serialize_gkm(gc, metadata),
    };
    let text = to_json(&doc);
    match out {
        Some(path) => std::fs::write(path, text).map_err(io_err(path))?,
        None => w.write_all(text.as_bytes()).map_err(stdout_err)?,
    }
    Ok(0)
}

/// Loads an input for callers that only need the parsed form.
pub fn load(input: &str) -> Result<Loaded, CliError> {
    load_input(input)
}
