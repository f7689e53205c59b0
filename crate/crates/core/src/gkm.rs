//! Axial functions, connections and the GKM axioms on a simplicial graph complex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::algebra::{AlgebraError, CoefficientElement, RationalVector, Theory};
use crate::graphs::{Edge, Filtration, GraphError, OrientedEdge, SimplicialGraphComplex, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkmError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("no axial value for {0}")]
    MissingAxial(OrientedEdge),
    #[error("axial value for {0} is not an edge of the complex")]
    UnknownEdge(OrientedEdge),
    #[error("axial value for {edge} has {got} components, torus rank is {expected}")]
    RankMismatch {
        edge: OrientedEdge,
        expected: usize,
        got: usize,
    },
    #[error("weight r for {0} must be positive")]
    NonPositiveWeight(OrientedEdge),
    #[error("connection refers to {0}, which is not an edge at the right vertex")]
    BadConnection(OrientedEdge),
    #[error("not divisive: downward edge {edge} has non-integral weight {alpha}")]
    NotDivisive { edge: OrientedEdge, alpha: RationalVector },
}

/// `α` and the integer weights `r_e` on oriented edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxialFunction {
    rank: usize,
    values: BTreeMap<OrientedEdge, (RationalVector, BigInt)>,
}

impl AxialFunction {
    pub fn new(rank: usize) -> Self {
        AxialFunction {
            rank,
            values: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn insert(&mut self, e: OrientedEdge, alpha: RationalVector, r: BigInt) -> Result<(), GkmError> {
        if alpha.len() != self.rank {
            return Err(GkmError::RankMismatch {
                edge: e,
                expected: self.rank,
                got: alpha.len(),
            });
        }
        if !r.is_positive() {
            return Err(GkmError::NonPositiveWeight(e));
        }
        self.values.insert(e, (alpha, r));
        Ok(())
    }

    pub fn alpha(&self, e: &OrientedEdge) -> Option<&RationalVector> {
        self.values.get(e).map(|(a, _)| a)
    }

    pub fn r(&self, e: &OrientedEdge) -> Option<&BigInt> {
        self.values.get(e).map(|(_, r)| r)
    }

    pub fn contains(&self, e: &OrientedEdge) -> bool {
        self.values.contains_key(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrientedEdge, &RationalVector, &BigInt)> {
        self.values.iter().map(|(e, (a, r))| (e, a, r))
    }

    /// Fills in `ē` from `e` where only one orientation is given, using
    /// `r_ē = r_e` and `α(ē) = sign·α(e)`. Returns the derived orientations.
    pub fn derive_reverses(&mut self, sign: &BTreeMap<OrientedEdge, i8>) -> Vec<OrientedEdge> {
        let missing: Vec<(OrientedEdge, RationalVector, BigInt)> = self
            .values
            .iter()
            .filter(|(e, _)| !self.values.contains_key(&e.reversed()))
            .map(|(e, (a, r))| {
                let s = sign.get(e).copied().unwrap_or(-1);
                (e.reversed(), a.scale(&BigRational::from_integer(s.into())), r.clone())
            })
            .collect();
        let derived = missing.iter().map(|(e, _, _)| e.clone()).collect();
        for (e, a, r) in missing {
            self.values.insert(e, (a, r));
        }
        derived
    }
}

/// For every oriented edge `e`, a map `θ_e` from edges at `s(e)` to edges at `t(e)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Connection {
    maps: BTreeMap<OrientedEdge, BTreeMap<OrientedEdge, OrientedEdge>>,
}

impl Connection {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `θ_e(from) = to`.
    pub fn insert(&mut self, e: OrientedEdge, from: OrientedEdge, to: OrientedEdge) {
        self.maps.entry(e).or_default().insert(from, to);
    }

    pub fn map(&self, e: &OrientedEdge) -> Option<&BTreeMap<OrientedEdge, OrientedEdge>> {
        self.maps.get(e)
    }

    pub fn apply(&self, e: &OrientedEdge, from: &OrientedEdge) -> Option<&OrientedEdge> {
        self.maps.get(e)?.get(from)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrientedEdge, &BTreeMap<OrientedEdge, OrientedEdge>)> {
        self.maps.iter()
    }

    /// Adds the implied entries `θ_e(e) = ē` and `θ_ē = θ_e^{-1}` where absent.
    pub fn complete(&mut self) {
        let keys: Vec<OrientedEdge> = self.maps.keys().cloned().collect();
        for e in &keys {
            self.maps
                .entry(e.clone())
                .or_default()
                .entry(e.clone())
                .or_insert_with(|| e.reversed());
        }
        for e in keys {
            let inverse: Vec<(OrientedEdge, OrientedEdge)> =
                self.maps[&e].iter().map(|(a, b)| (b.clone(), a.clone())).collect();
            let rev = self.maps.entry(e.reversed()).or_default();
            for (b, a) in inverse {
                rev.entry(b).or_insert(a);
            }
        }
    }

    /// The connection sending `e' = (p, q)` to `(t(e), q)` whenever that edge exists,
    /// as on complete graphs and triangles.
    pub fn by_common_endpoint(complex: &SimplicialGraphComplex) -> Self {
        let mut c = Connection::new();
        for member in complex.members() {
            let g = member.graph();
            for e in g.edges() {
                for oe in e.orientations() {
                    c.insert(oe.clone(), oe.clone(), oe.reversed());
                    for other in g.edges_at(&oe.source) {
                        if other == oe {
                            continue;
                        }
                        if let Ok(image) = OrientedEdge::new(oe.target.clone(), other.target.clone()) {
                            if g.contains_edge(&image.undirected()) {
                                c.insert(oe.clone(), other, image);
                            }
                        }
                    }
                }
            }
        }
        c
    }
}

/// A simplicial graph complex with torus rank, axial function and connection.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GkmComplex {
    complex: SimplicialGraphComplex,
    rank: usize,
    axial: AxialFunction,
    connection: Connection,
}

impl GkmComplex {
    /// Checks that `α` is given on exactly the oriented edges of the union and
    /// that the connection only mentions edges of the complex.
    pub fn new(
        complex: SimplicialGraphComplex,
        axial: AxialFunction,
        connection: Connection,
    ) -> Result<Self, GkmError> {
        let union = complex.union();
        for e in union.edges() {
            for oe in e.orientations() {
                if !axial.contains(&oe) {
                    return Err(GkmError::MissingAxial(oe));
                }
            }
        }
        for (e, _, _) in axial.iter() {
            if !union.contains_edge(&e.undirected()) {
                return Err(GkmError::UnknownEdge(e.clone()));
            }
        }
        for (e, map) in connection.iter() {
            if !union.contains_edge(&e.undirected()) {
                return Err(GkmError::BadConnection(e.clone()));
            }
            for (a, b) in map {
                if a.source != e.source || !union.contains_edge(&a.undirected()) {
                    return Err(GkmError::BadConnection(a.clone()));
                }
                if b.source != e.target || !union.contains_edge(&b.undirected()) {
                    return Err(GkmError::BadConnection(b.clone()));
                }
            }
        }
        Ok(GkmComplex {
            rank: axial.rank(),
            complex,
            axial,
            connection,
        })
    }

    pub fn complex(&self) -> &SimplicialGraphComplex {
        &self.complex
    }

    pub fn torus_rank(&self) -> usize {
        self.rank
    }

    pub fn axial(&self) -> &AxialFunction {
        &self.axial
    }

    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    pub fn alpha(&self, e: &OrientedEdge) -> &RationalVector {
        self.axial.alpha(e).expect("axial function covers every oriented edge")
    }

    pub fn r(&self, e: &OrientedEdge) -> &BigInt {
        self.axial.r(e).expect("axial function covers every oriented edge")
    }
}

/// The least positive integer `r` with `r·α(e)` integral.
pub fn rtilde(gc: &GkmComplex, e: &OrientedEdge) -> BigInt {
    gc.alpha(e).denominator_lcm()
}

/// The integral character `r̃_e·α(e)`.
pub fn character(gc: &GkmComplex, e: &OrientedEdge) -> Vec<BigInt> {
    let r = BigRational::from_integer(rtilde(gc, e));
    gc.alpha(e).scale(&r).to_integers().expect("r̃ clears denominators")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AxialViolation {
    /// `α(e)` vanishes.
    Zero(OrientedEdge),
    /// Two edges at a vertex of one member have parallel weights.
    Dependent {
        member: String,
        first: OrientedEdge,
        second: OrientedEdge,
    },
    /// `r_e·α(e)` is not integral.
    NotIntegral(OrientedEdge),
    /// `r_e·α(e) ≠ ±r_ē·α(ē)`.
    Reversal(OrientedEdge),
}

impl fmt::Display for AxialViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxialViolation::Zero(e) => write!(f, "α({e}) = 0"),
            AxialViolation::Dependent { member, first, second } => {
                write!(f, "α({first}) and α({second}) are parallel in member {member}")
            }
            AxialViolation::NotIntegral(e) => write!(f, "r·α({e}) is not integral"),
            AxialViolation::Reversal(e) => write!(f, "r·α({e}) is not ±r·α of the reverse edge"),
        }
    }
}

/// Result of [`validate_axial`]: empty when all axioms hold.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AxialReport {
    pub violations: Vec<AxialViolation>,
    /// Sign `σ` with `r_e·α(e) = σ·r_ē·α(ē)`, per oriented edge.
    pub signs: BTreeMap<OrientedEdge, i8>,
}

impl AxialReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks pairwise linear independence at every vertex of every member, and
/// integrality and the reversal rule `r_e·α(e) = ±r_ē·α(ē)`.
pub fn validate_axial(gc: &GkmComplex) -> AxialReport {
    let mut report = AxialReport::default();
    for (e, alpha, r) in gc.axial.iter() {
        if alpha.is_zero() {
            report.violations.push(AxialViolation::Zero(e.clone()));
            continue;
        }
        let scaled = alpha.scale(&BigRational::from_integer(r.clone()));
        if scaled.to_integers().is_none() {
            report.violations.push(AxialViolation::NotIntegral(e.clone()));
            continue;
        }
        let rev = e.reversed();
        let rev_scaled = gc.alpha(&rev).scale(&BigRational::from_integer(gc.r(&rev).clone()));
        if scaled == rev_scaled {
            report.signs.insert(e.clone(), 1);
        } else if scaled == rev_scaled.scale(&-BigRational::one()) {
            report.signs.insert(e.clone(), -1);
        } else {
            report.violations.push(AxialViolation::Reversal(e.clone()));
        }
    }
    for member in gc.complex.members() {
        let g = member.graph();
        for v in g.vertices() {
            let star = g.edges_at(v);
            for (i, a) in star.iter().enumerate() {
                for b in &star[i + 1..] {
                    let (va, vb) = (gc.alpha(a), gc.alpha(b));
                    if !va.is_zero() && !vb.is_zero() && va.is_parallel(vb) {
                        report.violations.push(AxialViolation::Dependent {
                            member: member.name().to_string(),
                            first: a.clone(),
                            second: b.clone(),
                        });
                    }
                }
            }
        }
    }
    report
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConnectionViolation {
    /// `θ_e` is missing on an edge at `s(e)` of a member containing `e`.
    Undefined { edge: OrientedEdge, at: OrientedEdge },
    /// `θ_e` maps an edge of a member outside the star of `t(e)` in that member.
    OutsideMember {
        edge: OrientedEdge,
        at: OrientedEdge,
        member: String,
    },
    /// `θ_e` is not injective.
    NotBijective(OrientedEdge),
    /// `θ_e(e) ≠ ē`.
    NotReversing(OrientedEdge),
    /// `θ_ē ≠ θ_e^{-1}`.
    NotInverse(OrientedEdge),
    /// `α(θ_e(e')) − α(e')` is not a multiple of `α(e)`.
    Congruence { edge: OrientedEdge, at: OrientedEdge },
}

impl fmt::Display for ConnectionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectionViolation::Undefined { edge, at } => write!(f, "θ_{edge} undefined on {at}"),
            ConnectionViolation::OutsideMember { edge, at, member } => {
                write!(f, "θ_{edge}({at}) leaves member {member}")
            }
            ConnectionViolation::NotBijective(e) => write!(f, "θ_{e} is not a bijection"),
            ConnectionViolation::NotReversing(e) => write!(f, "θ_{e}({e}) is not the reversed edge"),
            ConnectionViolation::NotInverse(e) => write!(f, "θ of the reverse of {e} is not the inverse of θ_{e}"),
            ConnectionViolation::Congruence { edge, at } => {
                write!(f, "α(θ_{edge}({at})) − α({at}) is not a multiple of α({edge})")
            }
        }
    }
}

/// Result of [`validate_connection`], with the minimal positive witness
/// `c_{e,e'}` for every pair that satisfies the congruence.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ConnectionReport {
    pub violations: Vec<ConnectionViolation>,
    pub witnesses: BTreeMap<(OrientedEdge, OrientedEdge), BigInt>,
}

impl ConnectionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the connection axioms within every member containing each edge, and
/// the congruence `c·(α(θ_e(e')) − α(e')) ∈ Z·r_e·α(e)`.
pub fn validate_connection(gc: &GkmComplex) -> ConnectionReport {
    let mut report = ConnectionReport::default();
    let union = gc.complex.union();
    for e in union.edges() {
        let members = gc.complex.members_containing(e);
        for oe in e.orientations() {
            let Some(map) = gc.connection.map(&oe) else {
                report.violations.push(ConnectionViolation::Undefined {
                    edge: oe.clone(),
                    at: oe.clone(),
                });
                continue;
            };
            let mut domain: BTreeSet<OrientedEdge> = BTreeSet::new();
            for &m in &members {
                let member = &gc.complex.members()[m];
                let g = member.graph();
                for at in g.edges_at(&oe.source) {
                    domain.insert(at.clone());
                    match map.get(&at) {
                        None => report
                            .violations
                            .push(ConnectionViolation::Undefined { edge: oe.clone(), at }),
                        Some(image) => {
                            if image.source != oe.target || !g.contains_edge(&image.undirected()) {
                                report.violations.push(ConnectionViolation::OutsideMember {
                                    edge: oe.clone(),
                                    at,
                                    member: member.name().to_string(),
                                });
                            }
                        }
                    }
                }
            }
            let images: BTreeSet<&OrientedEdge> = domain.iter().filter_map(|a| map.get(a)).collect();
            if images.len() != domain.iter().filter(|a| map.contains_key(a)).count() {
                report.violations.push(ConnectionViolation::NotBijective(oe.clone()));
            }
            if map.get(&oe) != Some(&oe.reversed()) {
                report.violations.push(ConnectionViolation::NotReversing(oe.clone()));
            }
            if let Some(rev) = gc.connection.map(&oe.reversed()) {
                let inverse_ok = domain
                    .iter()
                    .filter_map(|a| map.get(a).map(|b| (a, b)))
                    .all(|(a, b)| rev.get(b) == Some(a));
                if !inverse_ok {
                    report.violations.push(ConnectionViolation::NotInverse(oe.clone()));
                }
            }
            let scaled = gc.alpha(&oe).scale(&BigRational::from_integer(gc.r(&oe).clone()));
            for at in &domain {
                let Some(image) = map.get(at) else { continue };
                let diff = gc.alpha(image).sub(gc.alpha(at));
                if diff.is_zero() {
                    report.witnesses.insert((oe.clone(), at.clone()), BigInt::one());
                    continue;
                }
                match diff.ratio_to(&scaled) {
                    Some(lambda) => {
                        report
                            .witnesses
                            .insert((oe.clone(), at.clone()), lambda.denom().clone());
                    }
                    None => report.violations.push(ConnectionViolation::Congruence {
                        edge: oe.clone(),
                        at: at.clone(),
                    }),
                }
            }
        }
    }
    report
}

/// One downward edge `b_j → b_s` with its character and Euler class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DownwardDatum {
    pub edge: OrientedEdge,
    pub target_index: usize,
    pub character: Vec<BigInt>,
    pub euler: CoefficientElement,
}

/// Per filtration vertex `b_j`, the downward edges and the product of their Euler classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DownwardEuler {
    pub vertex: Vertex,
    pub edges: Vec<DownwardDatum>,
    pub total: CoefficientElement,
}

/// Characters `r̃_e·α(e)` of the edges oriented from `b_j` down to `b_s`, and their
/// Euler classes in `theory`.
pub fn downward_euler_data(gc: &GkmComplex, filt: &Filtration, theory: Theory) -> Result<Vec<DownwardEuler>, GkmError> {
    let rank = gc.rank;
    let mut out = Vec::with_capacity(filt.len());
    for (j, v) in filt.ordering().iter().enumerate() {
        let mut total = theory.one(rank)?;
        let mut edges = Vec::new();
        for e in filt.downward_edges(j) {
            let chi = character(gc, e);
            let euler = theory.euler_class(&chi)?;
            total = total.mul(&euler)?;
            edges.push(DownwardDatum {
                edge: e.clone(),
                target_index: filt.position(&e.target).expect("downward edges end at placed vertices"),
                character: chi,
                euler,
            });
        }
        out.push(DownwardEuler {
            vertex: v.clone(),
            edges,
            total,
        });
    }
    Ok(out)
}

/// Fails with the first downward edge whose `α` is not integral.
pub fn check_divisive(gc: &GkmComplex, filt: &Filtration) -> Result<(), GkmError> {
    for j in 0..filt.len() {
        for e in filt.downward_edges(j) {
            let alpha = gc.alpha(e);
            if alpha.to_integers().is_none() {
                return Err(GkmError::NotDivisive {
                    edge: e.clone(),
                    alpha: alpha.clone(),
                });
            }
        }
    }
    Ok(())
}

/// All oriented edges of the complex.
pub fn oriented_edges(complex: &SimplicialGraphComplex) -> Vec<OrientedEdge> {
    complex.union().edges().iter().flat_map(Edge::orientations).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_regular_graph, filter_regular, validate_complex};

    fn v(s: &str) -> Vertex {
        Vertex::new(s).unwrap()
    }

    fn oe(a: &str, b: &str) -> OrientedEdge {
        OrientedEdge::new(v(a), v(b)).unwrap()
    }

    fn edge_complex() -> SimplicialGraphComplex {
        let g = build_regular_graph("e", &["a", "b"], &[("a", "b")]).unwrap();
        validate_complex(vec![g]).unwrap()
    }

    fn edge_gkm(ab: RationalVector, ba: RationalVector) -> GkmComplex {
        let mut ax = AxialFunction::new(ab.len());
        ax.insert(oe("a", "b"), ab, BigInt::one()).unwrap();
        ax.insert(oe("b", "a"), ba, BigInt::one()).unwrap();
        let c = edge_complex();
        let conn = Connection::by_common_endpoint(&c);
        GkmComplex::new(c, ax, conn).unwrap()
    }

    #[test]
    fn rtilde_is_denominator_lcm() {
        let gc = edge_gkm(
            RationalVector::from_fractions(&[(1, 3), (2, 3)]),
            RationalVector::from_fractions(&[(3, 2), (1, 2)]),
        );
        assert_eq!(rtilde(&gc, &oe("a", "b")), BigInt::from(3));
        assert_eq!(rtilde(&gc, &oe("b", "a")), BigInt::from(2));
    }

    #[test]
    fn non_integral_weight_is_reported() {
        let gc = edge_gkm(
            RationalVector::from_fractions(&[(1, 2), (0, 1)]),
            RationalVector::from_fractions(&[(-1, 2), (0, 1)]),
        );
        let report = validate_axial(&gc);
        assert!(report.violations.contains(&AxialViolation::NotIntegral(oe("a", "b"))));
    }

    #[test]
    fn reversal_rule() {
        let ok = edge_gkm(RationalVector::from_ints(&[1, -2]), RationalVector::from_ints(&[-1, 2]));
        let report = validate_axial(&ok);
        assert!(report.is_ok());
        assert_eq!(report.signs[&oe("a", "b")], -1);
        let bad = edge_gkm(RationalVector::from_ints(&[1, -2]), RationalVector::from_ints(&[1, 1]));
        assert!(validate_axial(&bad)
            .violations
            .contains(&AxialViolation::Reversal(oe("a", "b"))));
    }

    #[test]
    fn missing_axial_value() {
        let mut ax = AxialFunction::new(1);
        ax.insert(oe("a", "b"), RationalVector::from_ints(&[1]), BigInt::one())
            .unwrap();
        assert_eq!(
            GkmComplex::new(edge_complex(), ax, Connection::new()),
            Err(GkmError::MissingAxial(oe("b", "a")))
        );
    }

    #[test]
    fn derived_reverse_uses_sign() {
        let mut ax = AxialFunction::new(2);
        ax.insert(oe("a", "b"), RationalVector::from_ints(&[1, 3]), BigInt::from(2))
            .unwrap();
        let derived = ax.derive_reverses(&BTreeMap::new());
        assert_eq!(derived, vec![oe("b", "a")]);
        assert_eq!(ax.alpha(&oe("b", "a")), Some(&RationalVector::from_ints(&[-1, -3])));
        assert_eq!(ax.r(&oe("b", "a")), Some(&BigInt::from(2)));
    }

    #[test]
    fn parallel_weights_at_a_vertex() {
        // Triangle where two edges at `a` share the weight direction.
        let g = build_regular_graph("t", &["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let c = validate_complex(vec![g]).unwrap();
        let mut ax = AxialFunction::new(2);
        let w = |x: i64, y: i64| RationalVector::from_ints(&[x, y]);
        for (s, t, a) in [
            ("a", "b", w(1, 0)),
            ("b", "a", w(-1, 0)),
            ("a", "c", w(2, 0)),
            ("c", "a", w(-2, 0)),
            ("b", "c", w(0, 1)),
            ("c", "b", w(0, -1)),
        ] {
            ax.insert(oe(s, t), a, BigInt::one()).unwrap();
        }
        let conn = Connection::by_common_endpoint(&c);
        let gc = GkmComplex::new(c, ax, conn).unwrap();
        let report = validate_axial(&gc);
        assert!(report
            .violations
            .iter()
            .any(|x| matches!(x, AxialViolation::Dependent { first, second, .. } if *first == oe("a", "b") && *second == oe("a", "c"))));
    }

    #[test]
    fn congruence_failure_in_rank_two() {
        // θ_{ab} sends ac to bc, but α(bc) − α(ac) is not parallel to α(ab).
        let g = build_regular_graph("t", &["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let c = validate_complex(vec![g]).unwrap();
        let mut ax = AxialFunction::new(2);
        let w = |x: i64, y: i64| RationalVector::from_ints(&[x, y]);
        for (s, t, a) in [
            ("a", "b", w(1, 0)),
            ("b", "a", w(-1, 0)),
            ("a", "c", w(0, 1)),
            ("c", "a", w(0, -1)),
            ("b", "c", w(1, 2)),
            ("c", "b", w(-1, -2)),
        ] {
            ax.insert(oe(s, t), a, BigInt::one()).unwrap();
        }
        let conn = Connection::by_common_endpoint(&c);
        let gc = GkmComplex::new(c, ax, conn).unwrap();
        let report = validate_connection(&gc);
        assert!(report.violations.contains(&ConnectionViolation::Congruence {
            edge: oe("a", "b"),
            at: oe("a", "c")
        }));
    }

    #[test]
    fn connection_must_reverse() {
        let mut ax = AxialFunction::new(1);
        ax.insert(oe("a", "b"), RationalVector::from_ints(&[1]), BigInt::one())
            .unwrap();
        ax.insert(oe("b", "a"), RationalVector::from_ints(&[-1]), BigInt::one())
            .unwrap();
        let mut conn = Connection::new();
        conn.insert(oe("b", "a"), oe("b", "a"), oe("a", "b"));
        let gc = GkmComplex::new(edge_complex(), ax, conn).unwrap();
        let report = validate_connection(&gc);
        assert!(report.violations.contains(&ConnectionViolation::Undefined {
            edge: oe("a", "b"),
            at: oe("a", "b")
        }));
    }

    #[test]
    fn single_edge_downward_data() {
        let gc = edge_gkm(RationalVector::from_ints(&[1, -1]), RationalVector::from_ints(&[-1, 1]));
        let g = &gc.complex().members()[0];
        let filt = filter_regular(g, &v("a")).unwrap();
        let data = downward_euler_data(&gc, &filt, Theory::H).unwrap();
        assert!(data[0].edges.is_empty());
        assert_eq!(data[0].total, Theory::H.one(2).unwrap());
        assert_eq!(data[1].edges[0].character, vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(data[1].total.to_string(), "-y1 + y2");
        assert!(check_divisive(&gc, &filt).is_ok());
    }
}
