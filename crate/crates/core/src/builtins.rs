//! Ready-made graphs, complexes and GKM data: the worked examples and a few standard families.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::RationalVector;
use crate::gkm::{AxialFunction, Connection, GkmComplex, GkmError};
use crate::graphs::{build_regular_graph, validate_complex, GraphError, RegularGraph, SimplicialGraphComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuiltinError {
    #[error("weight {0} is not allowed here")]
    BadWeight(i64),
    #[error("characters must be pairwise distinct and of equal length")]
    BadCharacters,
    #[error("need at least {0} vertices")]
    TooSmall(usize),
    #[error("unknown builtin '{0}'")]
    Unknown(String),
    #[error("bad parameters for builtin '{name}': {reason}")]
    Parameters { name: String, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gkm(#[from] GkmError),
}

/// Weights `c_i` and characters `Y_i` of a torus acting on a weighted projective
/// space, giving `α(v_i v_j) = Y_j − (c_j/c_i)·Y_i` and `r_{v_i v_j} = |c_i|`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedProjectiveSpec {
    pub weights: Vec<i64>,
    pub characters: Vec<Vec<i64>>,
}

impl WeightedProjectiveSpec {
    pub fn new(weights: Vec<i64>, characters: Vec<Vec<i64>>) -> Result<Self, BuiltinError> {
        if let Some(&c) = weights.iter().find(|&&c| c == 0) {
            return Err(BuiltinError::BadWeight(c));
        }
        let rank = characters.first().map_or(0, Vec::len);
        let distinct: BTreeSet<&Vec<i64>> = characters.iter().collect();
        if characters.len() != weights.len()
            || distinct.len() != characters.len()
            || characters.iter().any(|c| c.len() != rank)
        {
            return Err(BuiltinError::BadCharacters);
        }
        Ok(WeightedProjectiveSpec { weights, characters })
    }

    pub fn rank(&self) -> usize {
        self.characters.first().map_or(0, Vec::len)
    }

    pub fn alpha(&self, i: usize, j: usize) -> RationalVector {
        let ratio = BigRational::new(self.weights[j].into(), self.weights[i].into());
        let yi = RationalVector::from_ints(&self.characters[i]);
        let yj = RationalVector::from_ints(&self.characters[j]);
        yj.sub(&yi.scale(&ratio))
    }

    pub fn r(&self, i: usize) -> BigInt {
        BigInt::from(self.weights[i].unsigned_abs())
    }

    /// Builds the complex whose members are complete graphs on the given vertex
    /// index sets, named `v0, v1, ...`, with the connection `θ_{v_i v_j}(v_i v_l) = v_j v_l`.
    pub fn build(&self, members: &[(&str, &[usize])]) -> Result<GkmComplex, BuiltinError> {
        let name = |i: usize| format!("v{i}");
        let mut graphs = Vec::new();
        for (label, idx) in members {
            let vs: Vec<String> = idx.iter().map(|&i| name(i)).collect();
            let mut es = Vec::new();
            for (a, &i) in idx.iter().enumerate() {
                for &j in &idx[a + 1..] {
                    es.push((name(i), name(j)));
                }
            }
            graphs.push(build_regular_graph(label, &vs, &es)?);
        }
        let complex = validate_complex(graphs)?;
        let mut axial = AxialFunction::new(self.rank());
        for e in complex.union().edges() {
            for oe in e.orientations() {
                let i = index_of(oe.source.label());
                let j = index_of(oe.target.label());
                axial.insert(oe, self.alpha(i, j), self.r(i))?;
            }
        }
        let connection = Connection::by_common_endpoint(&complex);
        Ok(GkmComplex::new(complex, axial, connection)?)
    }
}

fn index_of(label: &str) -> usize {
    label[1..].parse().expect("builtin vertex labels are v<index>")
}

/// Characters `Y_0 = y_1 + y_2`, `Y_1 = y_1 + y_3`, `Y_2 = y_1 + y_4`, `Y_3 = y_2 + y_3` of the rank-4 torus.
pub const FIG3_CHARACTERS: [[i64; 4]; 4] = [[1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0]];

/// Two triangles `v0v1v2` and `v0v1v3` glued along the edge `v0v1`, which is
/// itself a member, with the weighted-projective axial data for weights `c`.
pub fn make_fig3_complex(c: [i64; 4]) -> Result<GkmComplex, BuiltinError> {
    let spec = WeightedProjectiveSpec::new(c.to_vec(), FIG3_CHARACTERS.iter().map(|y| y.to_vec()).collect())?;
    spec.build(&[("O1", &[0, 1, 2]), ("O2", &[0, 1, 3]), ("O3", &[0, 1])])
}

/// The spindle: one edge, rank one, `α(v0v1) = y` and `α(v1v0) = −(q0/q1)·y`.
pub fn make_weighted_projective_line(q0: i64, q1: i64) -> Result<GkmComplex, BuiltinError> {
    for q in [q0, q1] {
        if q < 1 {
            return Err(BuiltinError::BadWeight(q));
        }
    }
    let spec = WeightedProjectiveSpec::new(vec![q0, q1], vec![vec![0], vec![1]])?;
    spec.build(&[("line", &[0, 1])])
}

/// The complete graph `K_k` with `α(v_i v_j) = y_{j+1} − y_{i+1}` in rank `k`.
pub fn make_complete_gkm(k: usize) -> Result<GkmComplex, BuiltinError> {
    if k < 2 {
        return Err(BuiltinError::TooSmall(2));
    }
    let characters = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    let spec = WeightedProjectiveSpec::new(vec![1; k], characters)?;
    let all: Vec<usize> = (0..k).collect();
    spec.build(&[("K", &all)])
}

/// The octahedron on `b0..b5`: every pair adjacent except `b0b5`, `b1b3`, `b2b4`.
pub fn fig1_octahedron() -> RegularGraph {
    let vs: Vec<String> = (0..6).map(|i| format!("b{i}")).collect();
    let missing = [(0, 5), (1, 3), (2, 4)];
    let mut es = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            if !missing.contains(&(i, j)) {
                es.push((vs[i].clone(), vs[j].clone()));
            }
        }
    }
    build_regular_graph("octahedron", &vs, &es).expect("octahedron is 4-regular")
}

/// The triangle `b0b1b3` and the 4-cycle `b4b1b0b2` sharing the edge `b0b1`.
pub fn fig2_complex() -> SimplicialGraphComplex {
    let triangle = build_regular_graph(
        "triangle",
        &["b0", "b1", "b3"],
        &[("b0", "b1"), ("b1", "b3"), ("b0", "b3")],
    );
    let rectangle = build_regular_graph(
        "rectangle",
        &["b0", "b1", "b2", "b4"],
        &[("b4", "b1"), ("b1", "b0"), ("b0", "b2"), ("b2", "b4")],
    );
    let shared = build_regular_graph("shared", &["b0", "b1"], &[("b0", "b1")]);
    validate_complex(vec![triangle.unwrap(), rectangle.unwrap(), shared.unwrap()]).expect("closed under intersection")
}

/// Three edges forming a triangle, each its own member, together with the
/// single-vertex intersections. It has no filtration.
pub fn triangle_edges_complex() -> SimplicialGraphComplex {
    let mut members = Vec::new();
    for (a, b) in [("b0", "b1"), ("b1", "b2"), ("b0", "b2")] {
        members.push(build_regular_graph(&format!("{a}{b}"), &[a, b], &[(a, b)]).expect("edge"));
    }
    for v in ["b0", "b1", "b2"] {
        members.push(build_regular_graph::<&str>(v, &[v], &[]).expect("point"));
    }
    validate_complex(members).expect("closed under intersection")
}

/// A named builtin: either bare graph data or a full GKM complex.
#[derive(Clone, Debug)]
pub enum Builtin {
    Complex(SimplicialGraphComplex),
    Gkm(GkmComplex),
}

impl Builtin {
    pub fn complex(&self) -> &SimplicialGraphComplex {
        match self {
            Builtin::Complex(c) => c,
            Builtin::Gkm(g) => g.complex(),
        }
    }
}

/// Names accepted by [`builtin`], with a short description.
pub const BUILTIN_NAMES: [(&str, &str); 6] = [
    ("fig1", "octahedron graph on b0..b5 (graph only)"),
    ("fig2", "triangle and rectangle sharing an edge (graph only)"),
    (
        "triangle-edges",
        "three edge members forming a triangle; has no filtration (graph only)",
    ),
    (
        "fig3:c0,c1,c2,c3",
        "two triangles glued along an edge, weighted-projective data",
    ),
    ("wp:q0,q1", "weighted projective line"),
    (
        "complete:k",
        "complete graph K_k with the standard projective-space data",
    ),
];

fn parse_ints(name: &str, args: &str) -> Result<Vec<i64>, BuiltinError> {
    args.split(',')
        .map(|s| {
            s.trim().parse::<i64>().map_err(|_| BuiltinError::Parameters {
                name: name.to_string(),
                reason: format!("'{s}' is not an integer"),
            })
        })
        .collect()
}

/// Looks up a builtin such as `fig3:8,4,2,2`, `wp:1,2` or `complete:3`.
pub fn builtin(spec: &str) -> Result<Builtin, BuiltinError> {
    let (name, args) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let arity = |want: usize| -> Result<Vec<i64>, BuiltinError> {
        let args = args.ok_or_else(|| BuiltinError::Parameters {
            name: name.to_string(),
            reason: format!("expected {want} comma-separated integers"),
        })?;
        let v = parse_ints(name, args)?;
        if v.len() != want {
            return Err(BuiltinError::Parameters {
                name: name.to_string(),
                reason: format!("expected {want} values, got {}", v.len()),
            });
        }
        Ok(v)
    };
    match name {
        "fig1" => Ok(Builtin::Complex(SimplicialGraphComplex::single(fig1_octahedron()))),
        "fig2" => Ok(Builtin::Complex(fig2_complex())),
        "triangle-edges" => Ok(Builtin::Complex(triangle_edges_complex())),
        "fig3" => {
            let c = match args {
                None => vec![1, 1, 1, 1],
                Some(_) => arity(4)?,
            };
            Ok(Builtin::Gkm(make_fig3_complex([c[0], c[1], c[2], c[3]])?))
        }
        "wp" => {
            let q = arity(2)?;
            Ok(Builtin::Gkm(make_weighted_projective_line(q[0], q[1])?))
        }
        "complete" => {
            let k = arity(1)?[0];
            let k = usize::try_from(k).map_err(|_| BuiltinError::BadWeight(k))?;
            Ok(Builtin::Gkm(make_complete_gkm(k)?))
        }
        _ => Err(BuiltinError::Unknown(spec.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm::{check_divisive, rtilde, validate_axial, validate_connection};
    use crate::graphs::OrientedEdge;
    use crate::graphs::{filter_complex, Vertex};

    fn oe(a: &str, b: &str) -> OrientedEdge {
        OrientedEdge::new(Vertex::new(a).unwrap(), Vertex::new(b).unwrap()).unwrap()
    }

    #[test]
    fn fig3_axial_table() {
        let gc = make_fig3_complex([8, 4, 2, 2]).unwrap();
        // α(v1v2) = Y2 − (c2/c1)·Y1 = (y1 + y4) − (1/2)(y1 + y3)
        assert_eq!(
            gc.alpha(&oe("v1", "v2")),
            &RationalVector::from_fractions(&[(1, 2), (0, 1), (-1, 2), (1, 1)])
        );
        assert_eq!(gc.r(&oe("v1", "v2")), &BigInt::from(4));
        assert_eq!(gc.complex().members().len(), 3);
        assert!(validate_axial(&gc).is_ok());
        assert!(validate_connection(&gc).is_ok());
    }

    #[test]
    fn fig3_divisiveness() {
        let seed = Vertex::new("v0").unwrap();
        for (c, divisive) in [([1, 1, 1, 1], true), ([8, 4, 2, 2], true), ([2, 3, 1, 1], false)] {
            let gc = make_fig3_complex(c).unwrap();
            assert!(validate_axial(&gc).is_ok());
            let filt = filter_complex(gc.complex(), &seed).unwrap();
            assert_eq!(check_divisive(&gc, &filt).is_ok(), divisive, "{c:?}");
        }
    }

    #[test]
    fn spindle() {
        let gc = make_weighted_projective_line(1, 2).unwrap();
        assert_eq!(rtilde(&gc, &oe("v1", "v0")), BigInt::from(2));
        assert_eq!(rtilde(&gc, &oe("v0", "v1")), BigInt::from(1));
        let a = make_weighted_projective_line(3, 3).unwrap();
        let b = make_weighted_projective_line(1, 1).unwrap();
        assert_eq!(a.alpha(&oe("v1", "v0")), b.alpha(&oe("v1", "v0")));
        assert!(validate_axial(&a).is_ok());
        assert!(make_weighted_projective_line(0, 1).is_err());
    }

    #[test]
    fn complete_graphs() {
        let gc = make_complete_gkm(2).unwrap();
        assert_eq!(gc.alpha(&oe("v0", "v1")), &RationalVector::from_ints(&[-1, 1]));
        let k4 = make_complete_gkm(4).unwrap();
        assert_eq!(k4.complex().union().edges().len(), 6);
        assert!(validate_connection(&k4).is_ok());
        assert!(make_complete_gkm(1).is_err());
    }

    #[test]
    fn example_graphs() {
        assert_eq!(fig1_octahedron().degree(), 4);
        assert_eq!(fig2_complex().union().edges().len(), 6);
        assert_eq!(triangle_edges_complex().members().len(), 6);
    }

    #[test]
    fn lookup_by_name() {
        assert!(matches!(builtin("fig3:8,4,2,2"), Ok(Builtin::Gkm(_))));
        assert!(matches!(builtin("fig1"), Ok(Builtin::Complex(_))));
        assert!(matches!(builtin("complete:3"), Ok(Builtin::Gkm(_))));
        assert!(matches!(builtin("fig3:1,2"), Err(BuiltinError::Parameters { .. })));
        assert!(matches!(builtin("nope"), Err(BuiltinError::Unknown(_))));
    }
}
