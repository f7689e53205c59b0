//! Rational vectors, used for axial weights in `t*_Q` with respect to the lattice basis.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{IntPoly, RatPoly};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn zero(n: usize) -> Self {
        RationalVector(vec![BigRational::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    /// Entries given as `(numerator, denominator)`.
    pub fn from_fractions(v: &[(i64, i64)]) -> Self {
        RationalVector(v.iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        RationalVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Least common multiple of the entry denominators: the smallest positive
    /// integer `r` with `r·self` integral.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()))
    }

    /// The entries as integers, if they all are.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0.iter().map(|a| a.is_integer().then(|| a.to_integer())).collect()
    }

    /// Whether `self` and `other` are rationally proportional (zero counts as proportional to everything).
    pub fn is_parallel(&self, other: &Self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| &self.0[i] * &other.0[j] == &self.0[j] * &other.0[i]))
    }

    /// The scalar `λ` with `self = λ·other`, if one exists. `other` must be non-zero.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        let k = other.0.iter().position(|a| !a.is_zero())?;
        let lambda = &self.0[k] / &other.0[k];
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    pub fn to_rat_poly(&self) -> RatPoly {
        RatPoly::linear_form(&self.0)
    }

    /// The linear form, if all coefficients are integers.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        self.to_integers().map(|v| IntPoly::linear_form(&v))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Parses `"3"`, `"-2/5"` or `" 4 / 6 "` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

/// Renders a rational as `p` or `p/q`, with the sign on the numerator.
pub fn render_rational(a: &BigRational) -> String {
    if a.is_integer() {
        a.to_integer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}
