//! The JSON input format for graph complexes and GKM data.
//!
//! ```json
//! {
//!   "torus_rank": 2,
//!   "vertices": ["v0", "v1"],
//!   "members": [{ "name": "line", "vertices": ["v0", "v1"], "edges": [["v0", "v1"]] }],
//!   "axial": { "v0->v1": { "alpha": ["-1", "1"], "r": 1 } },
//!   "connection": { "v0->v1": { "v0->v1": "v1->v0" } }
//! }
//! ```
//!
//! Rationals are strings `"p/q"`. An axial entry given for only one orientation
//! has its reverse derived with `r_ē = r_e` and `α(ē) = reverse_sign·α(e)`
//! (default sign `-1`). Without a `connection` block the connection sending
//! `(p, q)` to `(t(e), q)` inside each member is used.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use gkm_core::algebra::rational::{parse_rational, render_rational};
use gkm_core::algebra::RationalVector;
use gkm_core::builtins::{builtin, Builtin};
use gkm_core::gkm::{AxialFunction, Connection, GkmComplex};
use gkm_core::graphs::{build_regular_graph, validate_complex, OrientedEdge, SimplicialGraphComplex, Vertex};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus_rank: Option<usize>,
    pub vertices: Vec<String>,
    pub members: Vec<MemberDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub axial: BTreeMap<String, AxialEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<BTreeMap<String, BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MemberDoc {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AxialEntry {
    pub alpha: Vec<String>,
    pub r: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reverse_sign: Option<i8>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

/// A parsed input: always a complex, and GKM data when axial values were given.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub complex: SimplicialGraphComplex,
    pub gkm: Option<GkmComplex>,
    /// Orientations whose axial value was derived from the reverse edge.
    pub derived: Vec<OrientedEdge>,
    pub metadata: Option<Metadata>,
}

impl Loaded {
    pub fn require_gkm(&self) -> Result<&GkmComplex, CliError> {
        self.gkm.as_ref().ok_or_else(|| {
            CliError::Usage("this command needs axial data, but the input only describes a graph complex".into())
        })
    }
}

/// Reads `builtin:<name>` or a document path.
pub fn load_input(input: &str) -> Result<Loaded, CliError> {
    if let Some(name) = input.strip_prefix("builtin:") {
        let b = builtin(name).map_err(|e| CliError::Usage(e.to_string()))?;
        let metadata = Some(Metadata {
            builtin: Some(name.to_string()),
            ..Metadata::default()
        });
        return Ok(match b {
            Builtin::Complex(complex) => Loaded {
                complex,
                gkm: None,
                derived: vec![],
                metadata,
            },
            Builtin::Gkm(gc) => Loaded {
                complex: gc.complex().clone(),
                gkm: Some(gc),
                derived: vec![],
                metadata,
            },
        });
    }
    parse_document(Path::new(input))
}

pub fn parse_document(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_str(&text)
}

pub fn parse_str(text: &str) -> Result<Loaded, CliError> {
    let doc: ComplexDocument = serde_json::from_str(text)
        .map_err(|e| CliError::schema(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    from_document(&doc)
}

fn vertex(label: &str, location: &str) -> Result<Vertex, CliError> {
    Vertex::new(label).map_err(|e| CliError::schema(location, e.to_string()))
}

fn oriented(key: &str, location: &str, declared: &BTreeSet<&str>) -> Result<OrientedEdge, CliError> {
    let (a, b) = key
        .split_once("->")
        .ok_or_else(|| CliError::schema(location, format!("edge key '{key}' is not of the form 'src->tgt'")))?;
    let (a, b) = (a.trim(), b.trim());
    for x in [a, b] {
        if !declared.contains(x) {
            return Err(CliError::schema(location, format!("undeclared vertex '{x}'")));
        }
    }
    OrientedEdge::new(vertex(a, location)?, vertex(b, location)?).map_err(|e| CliError::schema(location, e.to_string()))
}

pub fn from_document(doc: &ComplexDocument) -> Result<Loaded, CliError> {
    let mut declared = BTreeSet::new();
    for (i, v) in doc.vertices.iter().enumerate() {
        if v.is_empty() || v.contains("->") || !declared.insert(v.as_str()) {
            return Err(CliError::schema(
                format!("vertices[{i}]"),
                format!("empty, duplicate or malformed label '{v}'"),
            ));
        }
    }
    if doc.members.is_empty() {
        return Err(CliError::schema("members", "at least one member graph is required"));
    }
    let mut graphs = Vec::new();
    let mut covered = BTreeSet::new();
    for (i, m) in doc.members.iter().enumerate() {
        let own: BTreeSet<&str> = m.vertices.iter().map(String::as_str).collect();
        for (k, v) in m.vertices.iter().enumerate() {
            if !declared.contains(v.as_str()) {
                return Err(CliError::schema(
                    format!("members[{i}].vertices[{k}]"),
                    format!("undeclared vertex '{v}'"),
                ));
            }
            covered.insert(v.as_str());
        }
        for (k, [a, b]) in m.edges.iter().enumerate() {
            for x in [a, b] {
                if !own.contains(x.as_str()) {
                    return Err(CliError::schema(
                        format!("members[{i}].edges[{k}]"),
                        format!("vertex '{x}' is not a vertex of member '{}'", m.name),
                    ));
                }
            }
        }
        let pairs: Vec<(String, String)> = m.edges.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        let g = build_regular_graph(&m.name, &m.vertices, &pairs)
            .map_err(|e| CliError::schema(format!("members[{i}]"), e.to_string()))?;
        graphs.push(g);
    }
    if let Some(v) = declared.iter().find(|v| !covered.contains(*v)) {
        return Err(CliError::schema(
            "vertices",
            format!("vertex '{v}' belongs to no member"),
        ));
    }
    let complex = validate_complex(graphs).map_err(|e| CliError::schema("members", e.to_string()))?;

    if doc.axial.is_empty() {
        if doc.connection.is_some() {
            return Err(CliError::schema("connection", "a connection needs axial data"));
        }
        return Ok(Loaded {
            complex,
            gkm: None,
            derived: vec![],
            metadata: doc.metadata.clone(),
        });
    }
    let rank = doc
        .torus_rank
        .ok_or_else(|| CliError::schema("torus_rank", "required when axial data is present"))?;
    let mut axial = AxialFunction::new(rank);
    let mut signs = BTreeMap::new();
    for (key, entry) in &doc.axial {
        let loc = format!("axial[\"{key}\"]");
        let e = oriented(key, &loc, &declared)?;
        if !complex.union().contains_edge(&e.undirected()) {
            return Err(CliError::schema(&loc, format!("{e} is not an edge of the complex")));
        }
        if entry.alpha.len() != rank {
            return Err(CliError::schema(
                format!("{loc}.alpha"),
                format!("expected {rank} components, found {}", entry.alpha.len()),
            ));
        }
        let mut comps = Vec::with_capacity(rank);
        for (k, s) in entry.alpha.iter().enumerate() {
            let q = parse_rational(s).ok_or_else(|| {
                CliError::schema(format!("{loc}.alpha[{k}]"), format!("'{s}' is not a rational 'p/q'"))
            })?;
            comps.push(q);
        }
        if entry.r == 0 {
            return Err(CliError::schema(format!("{loc}.r"), "r must be a positive integer"));
        }
        if let Some(s) = entry.reverse_sign {
            if s != 1 && s != -1 {
                return Err(CliError::schema(format!("{loc}.reverse_sign"), "must be 1 or -1"));
            }
            signs.insert(e.clone(), s);
        }
        axial
            .insert(e, RationalVector(comps), BigInt::from(entry.r))
            .map_err(|err| CliError::schema(&loc, err.to_string()))?;
    }
    let derived = axial.derive_reverses(&signs);
    let connection = match &doc.connection {
        None => Connection::by_common_endpoint(&complex),
        Some(maps) => {
            let mut c = Connection::new();
            for (key, map) in maps {
                let loc = format!("connection[\"{key}\"]");
                let e = oriented(key, &loc, &declared)?;
                for (from, to) in map {
                    let inner = format!("{loc}[\"{from}\"]");
                    c.insert(
                        e.clone(),
                        oriented(from, &inner, &declared)?,
                        oriented(to, &inner, &declared)?,
                    );
                }
            }
            c.complete();
            c
        }
    };
    let gc =
        GkmComplex::new(complex.clone(), axial, connection).map_err(|e| CliError::schema("axial", e.to_string()))?;
    Ok(Loaded {
        complex,
        gkm: Some(gc),
        derived,
        metadata: doc.metadata.clone(),
    })
}

fn complex_part(complex: &SimplicialGraphComplex) -> (Vec<String>, Vec<MemberDoc>) {
    let vertices = complex
        .union()
        .vertices()
        .iter()
        .map(|v| v.label().to_string())
        .collect();
    let members = complex
        .members()
        .iter()
        .map(|m| MemberDoc {
            name: m.name().to_string(),
            vertices: m.vertices().iter().map(|v| v.label().to_string()).collect(),
            edges: m
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = e.endpoints();
                    [a.label().to_string(), b.label().to_string()]
                })
                .collect(),
        })
        .collect();
    (vertices, members)
}

/// A document describing only the graph complex.
pub fn serialize_complex(complex: &SimplicialGraphComplex, metadata: Option<Metadata>) -> ComplexDocument {
    let (vertices, members) = complex_part(complex);
    ComplexDocument {
        torus_rank: None,
        vertices,
        members,
        axial: BTreeMap::new(),
        connection: None,
        metadata,
    }
}

/// A document with both orientations of every axial value and the full connection.
pub fn serialize_gkm(gc: &GkmComplex, metadata: Option<Metadata>) -> ComplexDocument {
    let (vertices, members) = complex_part(gc.complex());
    let axial = gc
        .axial()
        .iter()
        .map(|(e, a, r)| {
            let entry = AxialEntry {
                alpha: a.0.iter().map(render_rational).collect(),
                r: u64::try_from(r).expect("r fits in u64"),
                reverse_sign: None,
            };
            (e.to_string(), entry)
        })
        .collect();
    let connection = gc
        .connection()
        .iter()
        .map(|(e, map)| {
            (
                e.to_string(),
                map.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            )
        })
        .collect();
    ComplexDocument {
        torus_rank: Some(gc.torus_rank()),
        vertices,
        members,
        axial,
        connection: Some(connection),
        metadata,
    }
}

pub fn to_json(doc: &ComplexDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize") + "\n"
}

/// Values of a class, one ring element per vertex in the text syntax of the theory.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ClassDocument {
    pub values: BTreeMap<String, String>,
}

pub fn read_class(path: &Path) -> Result<ClassDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::schema(
            format!("{} line {} column {}", path.display(), e.line(), e.column()),
            e.to_string(),
        )
    })
}
