//! Equivariant cohomology rings of GKM complexes as rings of vertex labels
//! subject to divisibility conditions, with a free module basis adapted to a filtration.

use std::collections::BTreeMap;
use std::fmt;

use log::debug;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::linear::{solve_integer_linear, solve_rational_linear, LinearError};
use crate::algebra::poly::Coeff;
use crate::algebra::{AlgebraError, CoefficientElement, IntPoly, LaurentPoly, Monomial, MuRing, Poly, RatPoly, Theory};
use crate::gkm::{check_divisive, downward_euler_data, GkmComplex, GkmError};
use crate::graphs::{Filtration, OrientedEdge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Gkm(#[from] GkmError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("characters at b{j} towards b{s1} and b{s2} are parallel, so their Euler classes are not coprime")]
    CoprimalityFailure { j: usize, s1: usize, s2: usize },
    #[error("no integral extension of basis class {j} to vertex b{k} within bound {bound}")]
    NoIntegralExtension { j: usize, k: usize, bound: u32 },
    #[error("basis class {j} needs degree {degree}, above the cap {cap}")]
    CapExceeded { j: usize, degree: u32, cap: u32 },
    #[error("basis class {j} has degree {degree}, which vanishes at truncation {truncation}")]
    TruncationTooLow { j: usize, degree: u32, truncation: u32 },
    #[error("class is not a member: condition at b{j} towards b{s} fails, remainder {remainder}")]
    NotAMember { j: usize, s: usize, remainder: String },
    #[error("not in the span of the basis at b{j}, remainder {remainder}")]
    NotInSpan { j: usize, remainder: String },
    #[error("class and system belong to different theories or ranks")]
    TheoryMismatch,
    #[error("class has no value at {0}")]
    MissingValue(Vertex),
    #[error("operation is only available for {0}")]
    Unsupported(&'static str),
}

/// A function from vertices to coefficient-ring elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomologyClass {
    theory: Theory,
    values: BTreeMap<Vertex, CoefficientElement>,
}

impl CohomologyClass {
    pub fn new(theory: Theory, values: BTreeMap<Vertex, CoefficientElement>) -> Self {
        CohomologyClass { theory, values }
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn value(&self, v: &Vertex) -> Option<&CoefficientElement> {
        self.values.get(v)
    }

    pub fn values(&self) -> &BTreeMap<Vertex, CoefficientElement> {
        &self.values
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&CoefficientElement, &CoefficientElement) -> Result<CoefficientElement, AlgebraError>,
    ) -> Result<Self, CohomologyError> {
        if self.theory != other.theory || self.values.len() != other.values.len() {
            return Err(CohomologyError::TheoryMismatch);
        }
        let mut values = BTreeMap::new();
        for (v, a) in &self.values {
            let b = other
                .values
                .get(v)
                .ok_or_else(|| CohomologyError::MissingValue(v.clone()))?;
            values.insert(v.clone(), f(a, b)?);
        }
        Ok(CohomologyClass {
            theory: self.theory,
            values,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.zip(other, CoefficientElement::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.zip(other, CoefficientElement::sub)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.zip(other, CoefficientElement::mul)
    }

    /// Multiplies every value by the same ring element.
    pub fn scale(&self, p: &CoefficientElement) -> Result<Self, CohomologyError> {
        let mut values = BTreeMap::new();
        for (v, a) in &self.values {
            values.insert(v.clone(), p.mul(a)?);
        }
        Ok(CohomologyClass {
            theory: self.theory,
            values,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(CoefficientElement::is_zero)
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(v, x)| format!("{v}: {x}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// One condition `e | x_j − x_s` for the downward edge `b_j → b_s`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Divisor {
    pub source: usize,
    pub edge: OrientedEdge,
    pub character: Vec<BigInt>,
    pub euler: CoefficientElement,
}

/// The divisibility conditions along a filtration, in one theory.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CongruenceSystem {
    theory: Theory,
    rank: usize,
    ordering: Vec<Vertex>,
    divisors: Vec<Vec<Divisor>>,
    tops: Vec<CoefficientElement>,
}

/// Builds the conditions `e_T(ξ^{js}) | x_j − x_s` for every downward edge.
///
/// Integral theories require divisive data. The characters at each vertex must
/// be pairwise non-parallel, which makes the Euler classes pairwise coprime.
pub fn build_system(gc: &GkmComplex, filt: &Filtration, theory: Theory) -> Result<CongruenceSystem, CohomologyError> {
    if theory.is_integral() {
        check_divisive(gc, filt)?;
    }
    let data = downward_euler_data(gc, filt, theory)?;
    let mut divisors = Vec::with_capacity(data.len());
    let mut tops = Vec::with_capacity(data.len());
    for (j, d) in data.into_iter().enumerate() {
        for (a, x) in d.edges.iter().enumerate() {
            for y in &d.edges[a + 1..] {
                if parallel(&x.character, &y.character) {
                    return Err(CohomologyError::CoprimalityFailure {
                        j,
                        s1: x.target_index,
                        s2: y.target_index,
                    });
                }
            }
        }
        divisors.push(
            d.edges
                .into_iter()
                .map(|x| Divisor {
                    source: x.target_index,
                    edge: x.edge,
                    character: x.character,
                    euler: x.euler,
                })
                .collect(),
        );
        tops.push(d.total);
    }
    Ok(CongruenceSystem {
        theory,
        rank: gc.torus_rank(),
        ordering: filt.ordering().to_vec(),
        divisors,
        tops,
    })
}

fn parallel(a: &[BigInt], b: &[BigInt]) -> bool {
    let n = a.len();
    (0..n).all(|i| (i + 1..n).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// Outcome of [`is_member`]: `None` when every condition holds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MembershipFailure {
    pub j: usize,
    pub s: usize,
    pub remainder: String,
}

impl CongruenceSystem {
    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }

    pub fn ordering(&self) -> &[Vertex] {
        &self.ordering
    }

    pub fn divisors(&self, j: usize) -> &[Divisor] {
        &self.divisors[j]
    }

    /// `e_T(ξ^j)`, the product of the downward Euler classes at `b_j`.
    pub fn top(&self, j: usize) -> &CoefficientElement {
        &self.tops[j]
    }

    /// Number of downward edges at `b_j`.
    pub fn degree(&self, j: usize) -> usize {
        self.divisors[j].len()
    }

    /// A class from values listed in filtration order.
    pub fn class_from(&self, values: Vec<CoefficientElement>) -> CohomologyClass {
        CohomologyClass::new(self.theory, self.ordering.iter().cloned().zip(values).collect())
    }

    /// The class with the same value everywhere.
    pub fn constant(&self, p: &CoefficientElement) -> CohomologyClass {
        self.class_from(vec![p.clone(); self.len()])
    }

    fn values_in_order<'a>(&self, x: &'a CohomologyClass) -> Result<Vec<&'a CoefficientElement>, CohomologyError> {
        if x.theory != self.theory {
            return Err(CohomologyError::TheoryMismatch);
        }
        self.ordering
            .iter()
            .map(|v| x.value(v).ok_or_else(|| CohomologyError::MissingValue(v.clone())))
            .collect()
    }
}

/// Checks every condition; on failure reports the first `(j, s)` and the remainder.
pub fn is_member(sys: &CongruenceSystem, x: &CohomologyClass) -> Result<Option<MembershipFailure>, CohomologyError> {
    let vals = sys.values_in_order(x)?;
    for (j, divs) in sys.divisors.iter().enumerate() {
        for d in divs {
            let diff = vals[j].sub(vals[d.source])?;
            match diff.exact_div(&d.euler) {
                Ok(_) => {}
                Err(AlgebraError::NotDivisible { remainder }) => {
                    return Ok(Some(MembershipFailure {
                        j,
                        s: d.source,
                        remainder,
                    }))
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(None)
}

/// A basis class `φ_j`: zero below `b_j`, equal to `e_T(ξ^j)` at `b_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisClass {
    pub index: usize,
    pub class: CohomologyClass,
}

/// Computes `φ_0, ..., φ_m`.
///
/// Each `φ_j` is extended one vertex at a time in filtration order by solving
/// the conditions at `b_k` as a linear system for the unknown coefficients.
/// In `H` and `MU` the unknown is homogeneous of degree `d_j`, so no search
/// over degrees is needed and `degree_cap` only bounds `d_j`. In `K` the
/// unknown is supported on an exponent box that grows by one step per axis,
/// at most `degree_cap` times. Among all solutions the one reduced against the
/// Hermite basis of the solution lattice is returned, which is deterministic.
pub fn compute_basis(sys: &CongruenceSystem, degree_cap: u32) -> Result<Vec<BasisClass>, CohomologyError> {
    let mut out = Vec::with_capacity(sys.len());
    for j in 0..sys.len() {
        let dj = sys.degree(j) as u32;
        if matches!(sys.theory, Theory::H | Theory::RationalH | Theory::MU { .. }) && dj > degree_cap {
            return Err(CohomologyError::CapExceeded {
                j,
                degree: dj,
                cap: degree_cap,
            });
        }
        if let Theory::MU { truncation } = sys.theory {
            if dj > truncation {
                return Err(CohomologyError::TruncationTooLow {
                    j,
                    degree: dj,
                    truncation,
                });
            }
        }
        let zero = sys.theory.zero(sys.rank)?;
        let mut values = vec![zero.clone(); sys.len()];
        values[j] = sys.top(j).clone();
        for k in j + 1..sys.len() {
            let divs = sys.divisors(k);
            if divs.iter().all(|d| values[d.source].is_zero()) {
                continue;
            }
            let fixed: Vec<(&Divisor, &CoefficientElement)> = divs.iter().map(|d| (d, &values[d.source])).collect();
            values[k] = extend(sys, &fixed, dj, degree_cap).map_err(|bound| CohomologyError::NoIntegralExtension {
                j,
                k,
                bound,
            })?;
            debug!("phi_{j} at b{k}: {}", values[k]);
        }
        out.push(BasisClass {
            index: j,
            class: sys.class_from(values),
        });
    }
    Ok(out)
}

/// Solves for `x` with `e_s | x − x_s` for every given divisor; on failure returns the bound reached.
fn extend(
    sys: &CongruenceSystem,
    fixed: &[(&Divisor, &CoefficientElement)],
    degree: u32,
    cap: u32,
) -> Result<CoefficientElement, u32> {
    let n = sys.rank;
    match sys.theory {
        Theory::H => {
            let edges: Vec<(IntPoly, IntPoly)> = fixed
                .iter()
                .map(|(d, x)| (d.euler.as_int().expect("H").clone(), x.as_int().expect("H").clone()))
                .collect();
            solve_homogeneous(n, degree, &edges)
                .map(CoefficientElement::Int)
                .ok_or(degree)
        }
        Theory::RationalH => {
            let edges: Vec<(RatPoly, RatPoly)> = fixed
                .iter()
                .map(|(d, x)| (d.euler.as_rat().expect("H_Q").clone(), x.as_rat().expect("H_Q").clone()))
                .collect();
            solve_homogeneous_rational(n, degree, &edges)
                .map(CoefficientElement::Rat)
                .ok_or(degree)
        }
        Theory::K => {
            let edges: Vec<(Vec<i64>, &LaurentPoly)> = fixed
                .iter()
                .map(|(d, x)| {
                    let chi = d
                        .character
                        .iter()
                        .map(|c| c.to_i64().expect("small character"))
                        .collect();
                    (chi, x.as_laurent().expect("K"))
                })
                .collect();
            solve_laurent(n, &edges, cap).map(CoefficientElement::Laurent)
        }
        Theory::MU { truncation } => {
            let ring = MuRing::new(n, truncation).expect("validated truncation");
            let edges: Vec<(&IntPoly, &IntPoly)> = fixed
                .iter()
                .map(|(d, x)| {
                    (
                        d.euler.as_series().expect("MU").poly(),
                        x.as_series().expect("MU").poly(),
                    )
                })
                .collect();
            solve_mu(&ring, degree, &edges)
                .map(CoefficientElement::Series)
                .ok_or(degree)
        }
    }
}

/// Linear system for `x − e_i·q_i = r_i` over the given monomial supports,
/// keeping only monomials accepted by `keep`. Columns are the `x` monomials
/// followed by the `q_i` monomials for each `i`.
fn assemble<C: Coeff>(
    x_monos: &[Monomial],
    q_monos: &[Monomial],
    edges: &[(&Poly<C>, Poly<C>)],
    keep: &dyn Fn(&Monomial) -> bool,
) -> (Vec<Vec<C>>, Vec<C>, usize) {
    let ncols = x_monos.len() + edges.len() * q_monos.len();
    let mut rows: Vec<BTreeMap<usize, C>> = Vec::new();
    let mut rhs: Vec<C> = Vec::new();
    let mut index: Vec<BTreeMap<Monomial, usize>> = vec![BTreeMap::new(); edges.len()];
    let mut row_of = |i: usize, m: &Monomial, rows: &mut Vec<BTreeMap<usize, C>>, rhs: &mut Vec<C>| -> usize {
        *index[i].entry(m.clone()).or_insert_with(|| {
            rows.push(BTreeMap::new());
            rhs.push(C::zero());
            rows.len() - 1
        })
    };
    let bump = |row: &mut BTreeMap<usize, C>, col: usize, c: C| {
        let e = row.entry(col).or_insert_with(C::zero);
        *e = e.clone() + c;
    };
    for (i, (e, r)) in edges.iter().enumerate() {
        for (cx, m) in x_monos.iter().enumerate() {
            if keep(m) {
                let row = row_of(i, m, &mut rows, &mut rhs);
                bump(&mut rows[row], cx, C::one());
            }
        }
        for (cq, mu) in q_monos.iter().enumerate() {
            let col = x_monos.len() + i * q_monos.len() + cq;
            let prod = e.mul_monomial(mu, &C::one());
            for (m, c) in prod.terms() {
                if keep(m) {
                    let row = row_of(i, m, &mut rows, &mut rhs);
                    bump(&mut rows[row], col, -c.clone());
                }
            }
        }
        for (m, c) in r.terms() {
            if keep(m) {
                let row = row_of(i, m, &mut rows, &mut rhs);
                rhs[row] = rhs[row].clone() + c.clone();
            }
        }
    }
    let dense = rows
        .into_iter()
        .map(|r| {
            let mut v = vec![C::zero(); ncols];
            for (c, x) in r {
                v[c] = x;
            }
            v
        })
        .collect();
    (dense, rhs, ncols)
}

fn poly_from<C: Coeff>(nvars: usize, monos: &[Monomial], coeffs: &[C]) -> Poly<C> {
    Poly::from_terms(nvars, monos.iter().cloned().zip(coeffs.iter().cloned()))
}

fn solve_integer_poly(
    nvars: usize,
    x_monos: &[Monomial],
    q_monos: &[Monomial],
    edges: &[(&IntPoly, IntPoly)],
    keep: &dyn Fn(&Monomial) -> bool,
) -> Option<IntPoly> {
    let (a, b, ncols) = assemble(x_monos, q_monos, edges, keep);
    match solve_integer_linear(&a, &b, ncols) {
        Ok(sol) => Some(poly_from(nvars, x_monos, &sol.canonical()[..x_monos.len()])),
        Err(LinearError::Dimension(msg)) => panic!("malformed system: {msg}"),
        Err(_) => None,
    }
}

/// `x` homogeneous of degree `degree` in `Z[y]` with `e_i | x − r_i`.
fn solve_homogeneous(n: usize, degree: u32, edges: &[(IntPoly, IntPoly)]) -> Option<IntPoly> {
    let x_monos = Monomial::all_of_degree(n, degree);
    let q_monos = if degree == 0 {
        Vec::new()
    } else {
        Monomial::all_of_degree(n, degree - 1)
    };
    let edges: Vec<(&IntPoly, IntPoly)> = edges.iter().map(|(e, r)| (e, r.clone())).collect();
    solve_integer_poly(n, &x_monos, &q_monos, &edges, &|_| true)
}

fn solve_homogeneous_rational(n: usize, degree: u32, edges: &[(RatPoly, RatPoly)]) -> Option<RatPoly> {
    let x_monos = Monomial::all_of_degree(n, degree);
    let q_monos = if degree == 0 {
        Vec::new()
    } else {
        Monomial::all_of_degree(n, degree - 1)
    };
    let edges: Vec<(&RatPoly, RatPoly)> = edges.iter().map(|(e, r)| (e, r.clone())).collect();
    let (a, b, ncols) = assemble(&x_monos, &q_monos, &edges, &|_| true);
    let sol = solve_rational_linear(&a, &b, ncols)?;
    Some(poly_from(n, &x_monos, &sol[..x_monos.len()]))
}

/// Two stages: the part free of the `a_ij` is the `H` solution read in the
/// `u_i`, and the remaining part is solved with that fixed. This keeps the
/// additive specialisation of every `MU` basis class equal to the `H` one.
fn solve_mu(ring: &MuRing, degree: u32, edges: &[(&IntPoly, &IntPoly)]) -> Option<crate::algebra::TruncSeries> {
    let n = ring.rank();
    let nv = ring.nvars();
    let a_free = |p: &IntPoly| -> IntPoly {
        IntPoly::from_terms(
            n,
            p.terms()
                .filter(|(m, _)| m.exponents()[n..].iter().all(|&e| e == 0))
                .map(|(m, c)| (Monomial::from_exponents(m.exponents()[..n].to_vec()), c.clone())),
        )
    };
    let linear: Vec<(IntPoly, IntPoly)> = edges
        .iter()
        .map(|(e, r)| (a_free(e).homogeneous_part(1), a_free(r)))
        .collect();
    let base = solve_homogeneous(n, degree, &linear)?;
    let embed: Vec<usize> = (0..n).collect();
    let base = base.embed(nv, &embed);
    let trunc = ring.truncation();
    let keep = move |m: &Monomial| m.partial_degree(0..n) <= trunc;
    let x_monos: Vec<Monomial> = ring
        .monomials_of_degree(degree as i64)
        .into_iter()
        .filter(|m| m.exponents()[n..].iter().any(|&e| e > 0))
        .collect();
    let q_monos: Vec<Monomial> = ring
        .monomials_of_degree(degree as i64 - 1)
        .into_iter()
        .filter(|m| m.partial_degree(0..n) < trunc)
        .collect();
    let shifted: Vec<(&IntPoly, IntPoly)> = edges.iter().map(|(e, r)| (*e, r.sub(&base))).collect();
    let rest = solve_integer_poly(nv, &x_monos, &q_monos, &shifted, &keep)?;
    Some(ring.series(base.add(&rest)))
}

/// Representative of `m` modulo `Z·χ`: the first non-zero coordinate `p` of `χ`
/// is brought into `[0, |χ_p|)`.
fn coset_rep(m: &[i64], chi: &[i64]) -> Vec<i64> {
    let p = chi.iter().position(|&c| c != 0).expect("non-zero character");
    let t = m[p].div_euclid(chi[p].abs()) * if chi[p] > 0 { -1 } else { 1 };
    m.iter().zip(chi).map(|(a, c)| a + t * c).collect()
}

/// `x ∈ Z[ζ^±]` with `1 − ζ^{χ_i} | x − r_i`, i.e. the coefficient sums of
/// `x − r_i` over every coset of `Z·χ_i` vanish. The support of `x` is a box
/// around the supports of the data, widened until a solution appears.
fn solve_laurent(n: usize, edges: &[(Vec<i64>, &LaurentPoly)], cap: u32) -> Result<LaurentPoly, u32> {
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for (chi, r) in edges {
        for (i, &c) in chi.iter().enumerate() {
            lo[i] = lo[i].min(c);
            hi[i] = hi[i].max(c);
        }
        if !r.is_zero() {
            for (i, (a, b)) in r.min_exponents().iter().zip(r.max_exponents()).enumerate() {
                lo[i] = lo[i].min(*a);
                hi[i] = hi[i].max(b);
            }
        }
    }
    for step in 0..=cap {
        let lo_s: Vec<i64> = lo.iter().map(|x| x - step as i64).collect();
        let hi_s: Vec<i64> = hi.iter().map(|x| x + step as i64).collect();
        let points = box_points(&lo_s, &hi_s);
        if let Some(x) = solve_laurent_in(n, edges, &points) {
            return Ok(x);
        }
        debug!("K extension: widening exponent box past step {step}");
    }
    Err(cap)
}

/// Lattice points of the box, farthest from the origin first.
fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = vec![Vec::new()];
    for (a, b) in lo.iter().zip(hi) {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (*a..=*b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts.sort_by(|p, q| {
        let np: i64 = p.iter().map(|x| x.abs()).sum();
        let nq: i64 = q.iter().map(|x| x.abs()).sum();
        nq.cmp(&np).then_with(|| p.cmp(q))
    });
    pts
}

fn solve_laurent_in(n: usize, edges: &[(Vec<i64>, &LaurentPoly)], points: &[Vec<i64>]) -> Option<LaurentPoly> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    for (chi, r) in edges {
        let mut index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        let mut local_rows: Vec<Vec<BigInt>> = Vec::new();
        let mut local_rhs: Vec<BigInt> = Vec::new();
        let mut row_of = |key: Vec<i64>, local_rows: &mut Vec<Vec<BigInt>>, local_rhs: &mut Vec<BigInt>| {
            *index.entry(key).or_insert_with(|| {
                local_rows.push(vec![BigInt::zero(); points.len()]);
                local_rhs.push(BigInt::zero());
                local_rows.len() - 1
            })
        };
        for (col, p) in points.iter().enumerate() {
            let row = row_of(coset_rep(p, chi), &mut local_rows, &mut local_rhs);
            local_rows[row][col] += 1;
        }
        for (m, c) in r.terms() {
            let row = row_of(coset_rep(&m.0, chi), &mut local_rows, &mut local_rhs);
            local_rhs[row] += c;
        }
        rows.extend(local_rows);
        rhs.extend(local_rhs);
    }
    let sol = solve_integer_linear(&rows, &rhs, points.len()).ok()?;
    let x = sol.canonical();
    Some(LaurentPoly::from_terms(n, points.iter().cloned().zip(x)))
}

/// Coefficients `p_j` with `x = Σ p_j·φ_j`, found by peeling off `φ_0, φ_1, ...`.
pub fn decompose(
    sys: &CongruenceSystem,
    basis: &[BasisClass],
    x: &CohomologyClass,
) -> Result<Vec<CoefficientElement>, CohomologyError> {
    if let Some(f) = is_member(sys, x)? {
        return Err(CohomologyError::NotAMember {
            j: f.j,
            s: f.s,
            remainder: f.remainder,
        });
    }
    let mut residue = x.clone();
    let mut coeffs = Vec::with_capacity(basis.len());
    for (j, b) in basis.iter().enumerate() {
        let v = &sys.ordering[j];
        let r = residue.value(v).expect("checked by is_member");
        let top = b.class.value(v).expect("basis classes are total");
        let p = match r.exact_div(top) {
            Ok(p) => p,
            Err(AlgebraError::NotDivisible { remainder }) => return Err(CohomologyError::NotInSpan { j, remainder }),
            Err(e) => return Err(e.into()),
        };
        residue = residue.sub(&b.class.scale(&p)?)?;
        coeffs.push(p);
    }
    if let Some((j, (_, r))) = residue.values().iter().enumerate().find(|(_, (_, r))| !r.is_zero()) {
        return Err(CohomologyError::NotInSpan {
            j,
            remainder: r.to_string(),
        });
    }
    Ok(coeffs)
}

/// `Σ p_j·φ_j`.
pub fn reconstruct(
    sys: &CongruenceSystem,
    basis: &[BasisClass],
    coeffs: &[CoefficientElement],
) -> Result<CohomologyClass, CohomologyError> {
    let mut acc = sys.constant(&sys.theory.zero(sys.rank)?);
    for (b, p) in basis.iter().zip(coeffs) {
        acc = acc.add(&b.class.scale(p)?)?;
    }
    Ok(acc)
}

/// Ranks of the degree-`d` pieces of the free module `⊕ e_T(ξ^j)·Z[y]`,
/// for `d = 0..=up_to`. Only for `H`.
pub fn graded_rank(sys: &CongruenceSystem, up_to: u32) -> Result<Vec<usize>, CohomologyError> {
    if sys.theory != Theory::H {
        return Err(CohomologyError::Unsupported("H"));
    }
    Ok((0..=up_to)
        .map(|d| {
            (0..sys.len())
                .filter_map(|j| d.checked_sub(sys.degree(j) as u32))
                .map(|e| Monomial::all_of_degree(sys.rank, e).len())
                .sum()
        })
        .collect())
}

/// Rank of the lattice of degree-`d` member tuples, computed directly from the
/// conditions: unknowns are the coefficients of every `x_v` and of a quotient
/// per condition. Only for `H`.
pub fn member_lattice_rank(sys: &CongruenceSystem, d: u32) -> Result<usize, CohomologyError> {
    if sys.theory != Theory::H {
        return Err(CohomologyError::Unsupported("H"));
    }
    let n = sys.rank;
    let x_monos = Monomial::all_of_degree(n, d);
    let q_monos = if d == 0 {
        Vec::new()
    } else {
        Monomial::all_of_degree(n, d - 1)
    };
    let nv = sys.len();
    let nconds: usize = (0..nv).map(|j| sys.degree(j)).sum();
    let ncols = nv * x_monos.len() + nconds * q_monos.len();
    let mut rows = Vec::new();
    let mut cond = 0;
    for j in 0..nv {
        for div in sys.divisors(j) {
            let e = div.euler.as_int().expect("H");
            let mut eqs: BTreeMap<Monomial, Vec<BigInt>> = BTreeMap::new();
            for (k, m) in x_monos.iter().enumerate() {
                eqs.entry(m.clone()).or_insert_with(|| vec![BigInt::zero(); ncols])[j * x_monos.len() + k] += 1;
                eqs.entry(m.clone()).or_insert_with(|| vec![BigInt::zero(); ncols])[div.source * x_monos.len() + k] -=
                    1;
            }
            for (k, mu) in q_monos.iter().enumerate() {
                let col = nv * x_monos.len() + cond * q_monos.len() + k;
                for (m, c) in e.mul_monomial(mu, &BigInt::one()).terms() {
                    eqs.entry(m.clone()).or_insert_with(|| vec![BigInt::zero(); ncols])[col] -= c;
                }
            }
            rows.extend(eqs.into_values());
            cond += 1;
        }
    }
    let rank = crate::algebra::linear::rank(&rows);
    Ok(ncols - rank)
}

/// `x` as an element of `Q[y]`, for comparing rational and integral results.
pub fn to_rational(p: &IntPoly) -> RatPoly {
    p.map_coeffs(|c| BigRational::from_integer(c.clone()))
}
