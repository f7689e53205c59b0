//! Truncated power series over the universal formal group law, modelling `MU*_T`
//! of a point in low degrees.
//!
//! Series live in `Z[a_ij][[u_1, ..., u_n]] / (u)^{N+1}`. The coefficients
//! `a_ij = a_ji` are free variables with `i + j ≤ N`; for `N ≤ 3` the degree-3
//! associativity relations hold identically, so no Lazard relations are imposed
//! and larger truncations are refused.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::laurent::LaurentPoly;
use super::poly::{indexed_names, IntPoly, Monomial};
use super::AlgebraError;

/// Largest supported truncation order.
pub const MAX_TRUNCATION: u32 = 3;

/// The ambient ring: torus rank, truncation order and the coefficient variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MuRing {
    rank: usize,
    trunc: u32,
    /// `(i, j)` with `1 ≤ i ≤ j`, `i + j ≤ trunc`, in variable order.
    avars: Vec<(u32, u32)>,
}

impl MuRing {
    pub fn new(rank: usize, trunc: u32) -> Result<Self, AlgebraError> {
        if trunc == 0 || trunc > MAX_TRUNCATION {
            return Err(AlgebraError::UnsupportedTruncation(trunc));
        }
        let mut avars = Vec::new();
        for s in 2..=trunc {
            for i in 1..=s / 2 {
                avars.push((i, s - i));
            }
        }
        Ok(MuRing { rank, trunc, avars })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn coefficient_variables(&self) -> &[(u32, u32)] {
        &self.avars
    }

    /// Number of polynomial variables: the `u_i` followed by the `a_ij`.
    pub fn nvars(&self) -> usize {
        self.rank + self.avars.len()
    }

    pub fn names(&self) -> Vec<String> {
        let mut names = indexed_names("u", self.rank);
        names.extend(self.avars.iter().map(|(i, j)| format!("a{i}{j}")));
        names
    }

    /// Degree in the `u` variables.
    pub fn u_degree(&self, m: &Monomial) -> u32 {
        m.partial_degree(0..self.rank)
    }

    /// Grading with `deg u_i = 1` and `deg a_ij = 1 - i - j`.
    pub fn graded_degree(&self, m: &Monomial) -> i64 {
        let e = m.exponents();
        let mut d = self.u_degree(m) as i64;
        for (k, (i, j)) in self.avars.iter().enumerate() {
            d -= (i + j - 1) as i64 * e[self.rank + k] as i64;
        }
        d
    }

    /// Every monomial of graded degree `d` and `u`-degree at most the truncation.
    pub fn monomials_of_degree(&self, d: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        for ud in 0..=self.trunc {
            let deficit = ud as i64 - d;
            if deficit < 0 {
                continue;
            }
            for ua in Monomial::all_of_degree(self.rank, ud) {
                for aexp in self.a_exponents_of_weight(deficit as u32) {
                    let mut e = ua.exponents().to_vec();
                    e.extend(aexp);
                    out.push(Monomial::from_exponents(e));
                }
            }
        }
        out
    }

    fn a_exponents_of_weight(&self, w: u32) -> Vec<Vec<u32>> {
        fn rec(weights: &[u32], w: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            match weights.split_first() {
                None => {
                    if w == 0 {
                        out.push(cur.clone());
                    }
                }
                Some((&wt, rest)) => {
                    for e in 0..=w / wt {
                        cur.push(e);
                        rec(rest, w - e * wt, cur, out);
                        cur.pop();
                    }
                }
            }
        }
        let weights: Vec<u32> = self.avars.iter().map(|(i, j)| i + j - 1).collect();
        let mut out = Vec::new();
        rec(&weights, w, &mut Vec::new(), &mut out);
        out
    }

    pub fn zero(&self) -> TruncSeries {
        TruncSeries {
            ring: self.clone(),
            poly: IntPoly::zero(self.nvars()),
        }
    }

    pub fn one(&self) -> TruncSeries {
        self.constant(BigInt::one())
    }

    pub fn constant(&self, c: BigInt) -> TruncSeries {
        self.series(IntPoly::constant(self.nvars(), c))
    }

    /// The generator `u_i` (zero-based).
    pub fn u(&self, i: usize) -> TruncSeries {
        self.series(IntPoly::variable(self.nvars(), i))
    }

    /// The coefficient `a_ij`; symmetric in its arguments.
    pub fn a(&self, i: u32, j: u32) -> Option<TruncSeries> {
        let key = (i.min(j), i.max(j));
        let k = self.avars.iter().position(|&v| v == key)?;
        Some(self.series(IntPoly::variable(self.nvars(), self.rank + k)))
    }

    /// Wraps a polynomial in the combined variables, truncating it.
    pub fn series(&self, poly: IntPoly) -> TruncSeries {
        assert_eq!(poly.nvars(), self.nvars(), "series arity");
        let trunc = self.trunc;
        let rank = self.rank;
        TruncSeries {
            ring: self.clone(),
            poly: poly.filter(|m| m.partial_degree(0..rank) <= trunc),
        }
    }

    /// `F(x, y) = x + y + Σ a_ij x^i y^j`.
    pub fn fgl_sum(&self, x: &TruncSeries, y: &TruncSeries) -> TruncSeries {
        let mut out = x.add(y);
        let xp = self.powers(x);
        let yp = self.powers(y);
        for &(i, j) in &self.avars {
            let a = self.a(i, j).expect("listed coefficient");
            let mut sym = xp[i as usize].mul(&yp[j as usize]);
            if i != j {
                sym = sym.add(&xp[j as usize].mul(&yp[i as usize]));
            }
            out = out.add(&a.mul(&sym));
        }
        out
    }

    fn powers(&self, x: &TruncSeries) -> Vec<TruncSeries> {
        let mut p = vec![self.one()];
        for k in 1..=self.trunc as usize {
            let next = p[k - 1].mul(x);
            p.push(next);
        }
        p
    }

    /// The formal inverse `ι(x)` with `F(x, ι(x)) = 0`.
    pub fn fgl_inverse(&self, x: &TruncSeries) -> TruncSeries {
        // ι = -x - Σ a_ij x^i ι^j; each pass fixes one more degree.
        let mut inv = x.neg();
        for _ in 0..self.trunc {
            let xp = self.powers(x);
            let ip = self.powers(&inv);
            let mut next = x.neg();
            for &(i, j) in &self.avars {
                let a = self.a(i, j).expect("listed coefficient");
                let mut sym = xp[i as usize].mul(&ip[j as usize]);
                if i != j {
                    sym = sym.add(&xp[j as usize].mul(&ip[i as usize]));
                }
                next = next.sub(&a.mul(&sym));
            }
            inv = next;
        }
        inv
    }

    /// The formal multiple `[m](x)`.
    pub fn fgl_multiple(&self, m: i64, x: &TruncSeries) -> TruncSeries {
        if m < 0 {
            return self.fgl_multiple(-m, &self.fgl_inverse(x));
        }
        let mut acc = self.zero();
        let mut base = x.clone();
        let mut k = m as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.fgl_sum(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.fgl_sum(&base, &base);
            }
        }
        acc
    }

    /// Euler class of the character `χ`: the formal sum of `[χ_i](u_i)`.
    pub fn euler_class(&self, chi: &[BigInt]) -> Result<TruncSeries, AlgebraError> {
        assert_eq!(chi.len(), self.rank, "character arity");
        let mut acc = self.zero();
        for (i, c) in chi.iter().enumerate() {
            let m = c.to_i64().ok_or(AlgebraError::CoefficientOverflow)?;
            if m != 0 {
                acc = self.fgl_sum(&acc, &self.fgl_multiple(m, &self.u(i)));
            }
        }
        Ok(acc)
    }
}

/// An element of `Z[a][[u]] / (u)^{N+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    ring: MuRing,
    poly: IntPoly,
}

impl TruncSeries {
    pub fn ring(&self) -> &MuRing {
        &self.ring
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.ring, other.ring, "series ring mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        TruncSeries {
            ring: self.ring.clone(),
            poly: self.poly.add(&other.poly),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        TruncSeries {
            ring: self.ring.clone(),
            poly: self.poly.sub(&other.poly),
        }
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            ring: self.ring.clone(),
            poly: self.poly.neg(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TruncSeries {
            ring: self.ring.clone(),
            poly: self.poly.scale(k),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let (rank, trunc) = (self.ring.rank, self.ring.trunc);
        TruncSeries {
            ring: self.ring.clone(),
            poly: self
                .poly
                .mul_filtered(&other.poly, |m| m.partial_degree(0..rank) <= trunc),
        }
    }

    /// The part of `u`-degree exactly `d`.
    pub fn u_component(&self, d: u32) -> IntPoly {
        let rank = self.ring.rank;
        self.poly.filter(|m| m.partial_degree(0..rank) == d)
    }

    /// Lowest `u`-degree present.
    pub fn order(&self) -> Option<u32> {
        self.poly.terms().map(|(m, _)| self.ring.u_degree(m)).min()
    }

    /// Whether every term has graded degree `d`.
    pub fn is_graded_homogeneous(&self, d: i64) -> bool {
        self.poly.terms().all(|(m, _)| self.ring.graded_degree(m) == d)
    }

    /// Divides by `g` degree by degree in `u`.
    ///
    /// With `m` the order of `g`, the quotient components satisfy
    /// `q_k·g_m = f_{k+m} - Σ_{i>m} q_{k+m-i}·g_i` for `k ≤ N - m`; `f` is
    /// divisible iff every right-hand side is divisible by `g_m`. The quotient
    /// is only defined modulo `u`-degree `N - m + 1`. On failure the remainder
    /// of the first failing component is returned.
    pub fn exact_div(&self, g: &Self) -> Result<Self, IntPoly> {
        self.check(g);
        let m = g.order().expect("division by zero series");
        let n = self.ring.trunc;
        for d in 0..m {
            let low = self.u_component(d);
            if !low.is_zero() {
                return Err(low);
            }
        }
        let gparts: Vec<IntPoly> = (0..=n).map(|i| g.u_component(i)).collect();
        let mut q: Vec<IntPoly> = Vec::new();
        for d in m..=n {
            let k = (d - m) as usize;
            let mut rhs = self.u_component(d);
            for i in m + 1..=d {
                rhs = rhs.sub(&q[(d - i) as usize].mul(&gparts[i as usize]));
            }
            let qk = rhs.exact_div(&gparts[m as usize])?;
            debug_assert_eq!(q.len(), k);
            q.push(qk);
        }
        let mut total = IntPoly::zero(self.ring.nvars());
        for part in &q {
            total = total.add(part);
        }
        Ok(self.ring.series(total))
    }

    /// Sets every `a_ij` to zero, leaving a polynomial in the `u_i`.
    pub fn additive_specialization(&self) -> IntPoly {
        let rank = self.ring.rank;
        let nv = self.ring.nvars();
        let kept = self.poly.filter(|m| m.exponents()[rank..nv].iter().all(|&e| e == 0));
        IntPoly::from_terms(
            rank,
            kept.terms()
                .map(|(m, c)| (Monomial::from_exponents(m.exponents()[..rank].to_vec()), c.clone())),
        )
    }

    /// Sets `a_11 = -1` and the other `a_ij` to zero, leaving a truncated polynomial in the `u_i`.
    pub fn multiplicative_specialization(&self) -> IntPoly {
        let rank = self.ring.rank;
        let mut out = IntPoly::zero(rank);
        for (m, c) in self.poly.terms() {
            let e = m.exponents();
            let mut sign = BigInt::one();
            let mut keep = true;
            for (k, &(i, j)) in self.ring.avars.iter().enumerate() {
                let x = e[rank + k];
                if x == 0 {
                    continue;
                }
                if (i, j) == (1, 1) {
                    if x % 2 == 1 {
                        sign = -sign;
                    }
                } else {
                    keep = false;
                }
            }
            if keep {
                out.add_term(Monomial::from_exponents(e[..rank].to_vec()), c * sign);
            }
        }
        out
    }

    pub fn render(&self) -> String {
        self.poly.render(&self.ring.names())
    }
}

/// Expands a Laurent polynomial under `ζ_i = 1 - u_i` as a polynomial in the
/// `u_i` truncated at degree `trunc`, using `ζ^{-1} = Σ_k u^k`.
pub fn expand_multiplicative(p: &LaurentPoly, trunc: u32) -> IntPoly {
    let n = p.rank();
    let keep = |m: &Monomial| m.degree() <= trunc;
    let one = IntPoly::one(n);
    let mut out = IntPoly::zero(n);
    for (m, c) in p.terms() {
        let mut term = IntPoly::constant(n, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            let u = IntPoly::variable(n, i);
            let base = if e >= 0 {
                one.sub(&u)
            } else {
                let mut geo = IntPoly::zero(n);
                for k in 0..=trunc {
                    geo = geo.add(&u.pow(k));
                }
                geo
            };
            for _ in 0..e.unsigned_abs() {
                term = term.mul_filtered(&base, keep);
            }
        }
        out = out.add(&term);
    }
    out.filter(keep)
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
