//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exponent vector, ordered graded-lexicographically (total degree first,
/// then the first differing exponent, with `x1 > x2 > ...`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree restricted to the variables in `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.0[range].iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// All monomials in `nvars` variables of total degree exactly `degree`,
    /// in descending graded-lex order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; nvars];
        fn rec(i: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == current.len() {
                current[i] = left;
                out.push(Monomial(current.clone()));
                return;
            }
            for e in (0..=left).rev() {
                current[i] = e;
                rec(i + 1, left - e, current, out);
            }
            current[i] = 0;
        }
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, degree, &mut current, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient rings usable in [`Poly`]: the integers and the rationals.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Signed
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `self / d` if the quotient exists in the ring.
    fn try_div(&self, d: &Self) -> Option<Self>;
    fn from_bigint(n: BigInt) -> Self;
}

impl Coeff for BigInt {
    fn try_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn from_bigint(n: BigInt) -> Self {
        n
    }
}

impl Coeff for BigRational {
    fn try_div(&self, d: &Self) -> Option<Self> {
        (!d.is_zero()).then(|| self / d)
    }

    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }
}

/// A polynomial in a fixed number of variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn monomial(nvars: usize, m: Monomial, c: C) -> Self {
        assert_eq!(m.nvars(), nvars, "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// The `i`-th variable (zero-based).
    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::variable(nvars, i), C::one())
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear_form(coeffs: &[C]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::variable(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_rank(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomial rank mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_rank(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_rank(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * k.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_filtered(other, |_| true)
    }

    /// Product keeping only the monomials accepted by `keep`.
    pub fn mul_filtered(&self, other: &Self, keep: impl Fn(&Monomial) -> bool) -> Self {
        self.check_rank(other);
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                if keep(&m) {
                    out.add_term(m, c1.clone() * c2.clone());
                }
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), c1.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter(|m| m.degree() == d)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Renames variables: variable `i` of `self` becomes variable `map[i]` of a ring with `nvars` variables.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        Poly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; nvars];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Division by a single divisor in graded-lex order: returns `(q, r)` with
    /// `self = q·g + r` and no term of `r` reducible by the leading term of `g`.
    ///
    /// Over the integers a term is only reduced when its coefficient is a
    /// multiple of the leading coefficient, so `r = 0` iff `g` divides `self` in `Z[x]`.
    pub fn div_rem(&self, g: &Self) -> (Self, Self) {
        self.check_rank(g);
        let (lm, lc) = g.leading_term().expect("division by zero polynomial");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut p = self.clone();
        let mut q = Self::zero(self.nvars);
        let mut r = Self::zero(self.nvars);
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let step = m.div(&lm).zip(c.try_div(&lc));
            match step {
                Some((qm, qc)) => {
                    p = p.sub(&g.mul_monomial(&qm, &qc));
                    q.add_term(qm, qc);
                }
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        (q, r)
    }

    /// `self / g` if it divides exactly, otherwise the division remainder.
    pub fn exact_div(&self, g: &Self) -> Result<Self, Self> {
        let (q, r) = self.div_rem(g);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(r)
        }
    }

    /// Renders with the given variable names, e.g. `3*y1^2*y2 - y3`. Terms in descending order.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    if *e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl IntPoly {
    pub fn to_rational(&self) -> RatPoly {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    /// Greatest common divisor of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl RatPoly {
    /// The polynomial as an integer polynomial, if all coefficients are integers.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.terms
            .iter()
            .map(|(m, c)| c.is_integer().then(|| (m.clone(), c.to_integer())))
            .collect::<Option<Vec<_>>>()
            .map(|t| IntPoly::from_terms(self.nvars, t))
    }
}

/// Names `prefix1, prefix2, ...`.
pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&indexed_names("y", self.nvars)))
    }
}
