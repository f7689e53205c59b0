//! Integer Laurent polynomials, the representation ring `R(T) = Z[ζ_1^±, ..., ζ_n^±]`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{IntPoly, Monomial};

/// Exponent vector in `Z^n`, ordered by total degree and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentMonomial(pub Vec<i64>);

impl LaurentMonomial {
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        LaurentMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for LaurentMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for LaurentMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<LaurentMonomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], BigInt::one())
    }

    pub fn constant(rank: usize, c: BigInt) -> Self {
        Self::monomial(vec![0; rank], c)
    }

    /// `c·ζ^exps`.
    pub fn monomial(exps: Vec<i64>, c: BigInt) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(LaurentMonomial(exps), c);
        p
    }

    /// The character `ζ^χ = Π ζ_i^{χ_i}`.
    pub fn character(chi: &[i64]) -> Self {
        Self::monomial(chi.to_vec(), BigInt::one())
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Self {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            assert_eq!(e.len(), rank, "exponent arity");
            p.add_term(LaurentMonomial(e), c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&LaurentMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms
            .get(&LaurentMonomial(e.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, m: LaurentMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "Laurent rank mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "Laurent rank mismatch");
        let mut out = Self::zero(self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LaurentPoly::from_terms(self.rank, self.terms.iter().map(|(m, c)| (m.0.clone(), c * k)))
    }

    /// Per-variable minimum exponent (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut lo: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            lo = Some(match lo {
                None => m.0.clone(),
                Some(l) => l.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        lo.unwrap_or_else(|| vec![0; self.rank])
    }

    /// Per-variable maximum exponent (zeros for the zero polynomial).
    pub fn max_exponents(&self) -> Vec<i64> {
        let mut hi: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            hi = Some(match hi {
                None => m.0.clone(),
                Some(h) => h.iter().zip(&m.0).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        hi.unwrap_or_else(|| vec![0; self.rank])
    }

    /// Multiplies by `ζ^{-shift}` and reads the result as an ordinary polynomial.
    /// Panics if some exponent would become negative.
    fn to_poly_shifted(&self, shift: &[i64]) -> IntPoly {
        IntPoly::from_terms(
            self.rank,
            self.terms.iter().map(|(m, c)| {
                let e =
                    m.0.iter()
                        .zip(shift)
                        .map(|(a, s)| u32::try_from(a - s).expect("shift below the trailing monomial"))
                        .collect();
                (Monomial::from_exponents(e), c.clone())
            }),
        )
    }

    fn from_poly_shifted(p: &IntPoly, shift: &[i64]) -> Self {
        LaurentPoly::from_terms(
            p.nvars(),
            p.terms().map(|(m, c)| {
                (
                    m.exponents().iter().zip(shift).map(|(a, s)| *a as i64 + s).collect(),
                    c.clone(),
                )
            }),
        )
    }

    /// Exact division in `Z[ζ^±]`.
    ///
    /// Both operands are multiplied by monomial units so that no variable
    /// divides them, then divided as ordinary integer polynomials; the shift
    /// is undone on the quotient. On failure the remainder is returned in the
    /// shifted frame, moved back by the dividend's shift.
    pub fn exact_div(&self, g: &Self) -> Result<Self, Self> {
        assert_eq!(self.rank, g.rank, "Laurent rank mismatch");
        assert!(!g.is_zero(), "division by zero");
        if self.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        let fs = self.min_exponents();
        let gs = g.min_exponents();
        let fp = self.to_poly_shifted(&fs);
        let gp = g.to_poly_shifted(&gs);
        match fp.exact_div(&gp) {
            Ok(q) => {
                let shift: Vec<i64> = fs.iter().zip(&gs).map(|(a, b)| a - b).collect();
                Ok(Self::from_poly_shifted(&q, &shift))
            }
            Err(r) => Err(Self::from_poly_shifted(&r, &fs)),
        }
    }

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
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, e)| **e != 0)
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

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&super::poly::indexed_names("z", self.rank)))
    }
}
