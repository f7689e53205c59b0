//! Theory-tagged coefficient rings and Euler classes of characters.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::laurent::{LaurentMonomial, LaurentPoly};
use super::parse::parse_terms;
use super::poly::{indexed_names, IntPoly, Monomial, RatPoly};
use super::rational::RationalVector;
use super::series::{MuRing, TruncSeries};
use super::AlgebraError;

/// Which equivariant theory a computation runs in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Theory {
    /// Cohomology with integer coefficients, `Z[y_1, ..., y_n]`.
    H,
    /// Cohomology with rational coefficients, `Q[y_1, ..., y_n]`.
    RationalH,
    /// K-theory, the representation ring `Z[ζ^±]`.
    K,
    /// Complex cobordism truncated at `u`-degree `truncation`.
    MU { truncation: u32 },
}

impl Theory {
    pub fn name(&self) -> String {
        match self {
            Theory::H => "H".into(),
            Theory::RationalH => "H_Q".into(),
            Theory::K => "K".into(),
            Theory::MU { truncation } => format!("MU(N={truncation})"),
        }
    }

    /// Whether classes must have integral coefficients (and hence divisive data).
    pub fn is_integral(&self) -> bool {
        !matches!(self, Theory::RationalH)
    }

    pub fn variable_names(&self, rank: usize) -> Result<Vec<String>, AlgebraError> {
        Ok(match self {
            Theory::H | Theory::RationalH => indexed_names("y", rank),
            Theory::K => indexed_names("z", rank),
            Theory::MU { truncation } => MuRing::new(rank, *truncation)?.names(),
        })
    }

    pub fn zero(&self, rank: usize) -> Result<CoefficientElement, AlgebraError> {
        Ok(match self {
            Theory::H => CoefficientElement::Int(IntPoly::zero(rank)),
            Theory::RationalH => CoefficientElement::Rat(RatPoly::zero(rank)),
            Theory::K => CoefficientElement::Laurent(LaurentPoly::zero(rank)),
            Theory::MU { truncation } => CoefficientElement::Series(MuRing::new(rank, *truncation)?.zero()),
        })
    }

    pub fn one(&self, rank: usize) -> Result<CoefficientElement, AlgebraError> {
        Ok(match self {
            Theory::H => CoefficientElement::Int(IntPoly::one(rank)),
            Theory::RationalH => CoefficientElement::Rat(RatPoly::one(rank)),
            Theory::K => CoefficientElement::Laurent(LaurentPoly::one(rank)),
            Theory::MU { truncation } => CoefficientElement::Series(MuRing::new(rank, *truncation)?.one()),
        })
    }

    /// The Euler class of an integral character `χ`: the linear form `χ·y` in `H`,
    /// `1 - ζ^χ` in `K`, and the formal sum of `[χ_i](u_i)` in `MU`.
    pub fn euler_class(&self, chi: &[BigInt]) -> Result<CoefficientElement, AlgebraError> {
        let rank = chi.len();
        Ok(match self {
            Theory::H => CoefficientElement::Int(IntPoly::linear_form(chi)),
            Theory::RationalH => CoefficientElement::Rat(RatPoly::linear_form(
                &chi.iter().cloned().map(BigRational::from_integer).collect::<Vec<_>>(),
            )),
            Theory::K => {
                let exps = chi
                    .iter()
                    .map(|c| c.to_i64().ok_or(AlgebraError::CoefficientOverflow))
                    .collect::<Result<Vec<_>, _>>()?;
                CoefficientElement::Laurent(LaurentPoly::one(rank).sub(&LaurentPoly::character(&exps)))
            }
            Theory::MU { truncation } => CoefficientElement::Series(MuRing::new(rank, *truncation)?.euler_class(chi)?),
        })
    }

    /// Rational Euler class `χ·y` for a rational character; only for [`Theory::RationalH`].
    pub fn rational_euler_class(&self, chi: &RationalVector) -> Result<CoefficientElement, AlgebraError> {
        match self {
            Theory::RationalH => Ok(CoefficientElement::Rat(chi.to_rat_poly())),
            _ => match chi.to_integers() {
                Some(v) => self.euler_class(&v),
                None => Err(AlgebraError::NonIntegral(chi.to_string())),
            },
        }
    }

    /// Parses an element written over [`Theory::variable_names`].
    pub fn parse(&self, rank: usize, text: &str) -> Result<CoefficientElement, AlgebraError> {
        let names = self.variable_names(rank)?;
        let terms = parse_terms(text, &names).map_err(AlgebraError::Parse)?;
        let integral = |c: &BigRational| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(AlgebraError::NonIntegral(c.to_string()))
            }
        };
        let natural = |e: &[i64]| {
            e.iter()
                .map(|&x| u32::try_from(x).map_err(|_| AlgebraError::Parse(format!("negative exponent in '{text}'"))))
                .collect::<Result<Vec<u32>, _>>()
                .map(Monomial::from_exponents)
        };
        Ok(match self {
            Theory::H => {
                let mut p = IntPoly::zero(rank);
                for (c, e) in &terms {
                    p.add_term(natural(e)?, integral(c)?);
                }
                CoefficientElement::Int(p)
            }
            Theory::RationalH => {
                let mut p = RatPoly::zero(rank);
                for (c, e) in &terms {
                    p.add_term(natural(e)?, c.clone());
                }
                CoefficientElement::Rat(p)
            }
            Theory::K => {
                let mut p = LaurentPoly::zero(rank);
                for (c, e) in &terms {
                    p.add_term(LaurentMonomial(e.clone()), integral(c)?);
                }
                CoefficientElement::Laurent(p)
            }
            Theory::MU { truncation } => {
                let ring = MuRing::new(rank, *truncation)?;
                let mut p = IntPoly::zero(ring.nvars());
                for (c, e) in &terms {
                    p.add_term(natural(e)?, integral(c)?);
                }
                CoefficientElement::Series(ring.series(p))
            }
        })
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// An element of one of the coefficient rings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoefficientElement {
    Int(IntPoly),
    Rat(RatPoly),
    Laurent(LaurentPoly),
    Series(TruncSeries),
}

macro_rules! binop {
    ($name:ident) => {
        pub fn $name(&self, other: &Self) -> Result<Self, AlgebraError> {
            use CoefficientElement::*;
            Ok(match (self, other) {
                (Int(a), Int(b)) => Int(a.$name(b)),
                (Rat(a), Rat(b)) => Rat(a.$name(b)),
                (Laurent(a), Laurent(b)) => Laurent(a.$name(b)),
                (Series(a), Series(b)) => Series(a.$name(b)),
                _ => return Err(AlgebraError::TheoryMismatch),
            })
        }
    };
}

impl CoefficientElement {
    binop!(add);
    binop!(sub);
    binop!(mul);

    pub fn neg(&self) -> Self {
        use CoefficientElement::*;
        match self {
            Int(a) => Int(a.neg()),
            Rat(a) => Rat(a.neg()),
            Laurent(a) => Laurent(a.neg()),
            Series(a) => Series(a.neg()),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        use CoefficientElement::*;
        match self {
            Int(a) => Int(a.scale(k)),
            Rat(a) => Rat(a.scale(&BigRational::from_integer(k.clone()))),
            Laurent(a) => Laurent(a.scale(k)),
            Series(a) => Series(a.scale(k)),
        }
    }

    pub fn is_zero(&self) -> bool {
        use CoefficientElement::*;
        match self {
            Int(a) => a.is_zero(),
            Rat(a) => a.is_zero(),
            Laurent(a) => a.is_zero(),
            Series(a) => a.is_zero(),
        }
    }

    /// Exact division; fails with the remainder rendered when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Self) -> Result<Self, AlgebraError> {
        use CoefficientElement::*;
        if g.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match (self, g) {
            (Int(a), Int(b)) => a.exact_div(b).map(Int).map_err(|r| AlgebraError::NotDivisible {
                remainder: r.to_string(),
            }),
            (Rat(a), Rat(b)) => a.exact_div(b).map(Rat).map_err(|r| AlgebraError::NotDivisible {
                remainder: r.to_string(),
            }),
            (Laurent(a), Laurent(b)) => a.exact_div(b).map(Laurent).map_err(|r| AlgebraError::NotDivisible {
                remainder: r.to_string(),
            }),
            (Series(a), Series(b)) => a.exact_div(b).map(Series).map_err(|r| AlgebraError::NotDivisible {
                remainder: r.render(&a.ring().names()),
            }),
            _ => Err(AlgebraError::TheoryMismatch),
        }
    }

    pub fn divides(g: &Self, f: &Self) -> bool {
        f.exact_div(g).is_ok()
    }

    pub fn as_int(&self) -> Option<&IntPoly> {
        match self {
            CoefficientElement::Int(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_rat(&self) -> Option<&RatPoly> {
        match self {
            CoefficientElement::Rat(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        match self {
            CoefficientElement::Laurent(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_series(&self) -> Option<&TruncSeries> {
        match self {
            CoefficientElement::Series(p) => Some(p),
            _ => None,
        }
    }

    /// Zero in the same ring as `self`.
    pub fn zero_like(&self) -> Self {
        use CoefficientElement::*;
        match self {
            Int(a) => Int(IntPoly::zero(a.nvars())),
            Rat(a) => Rat(RatPoly::zero(a.nvars())),
            Laurent(a) => Laurent(LaurentPoly::zero(a.rank())),
            Series(a) => Series(a.ring().zero()),
        }
    }

    /// False only for rational polynomials with a fractional coefficient.
    pub fn is_integral(&self) -> bool {
        match self {
            CoefficientElement::Rat(p) => p.terms().all(|(_, c)| c.is_integer()),
            _ => true,
        }
    }

    /// Count of stored terms.
    pub fn num_terms(&self) -> usize {
        use CoefficientElement::*;
        match self {
            Int(a) => a.num_terms(),
            Rat(a) => a.num_terms(),
            Laurent(a) => a.terms().count(),
            Series(a) => a.poly().num_terms(),
        }
    }
}

impl fmt::Display for CoefficientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientElement::Int(p) => write!(f, "{p}"),
            CoefficientElement::Rat(p) => write!(f, "{p}"),
            CoefficientElement::Laurent(p) => write!(f, "{p}"),
            CoefficientElement::Series(p) => write!(f, "{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn euler_classes_render() {
        let chi = ints(&[-1, 1, -2, 0]);
        assert_eq!(Theory::H.euler_class(&chi).unwrap().to_string(), "-y1 + y2 - 2*y3");
        assert_eq!(Theory::K.euler_class(&ints(&[-2, 0])).unwrap().to_string(), "1 - z1^-2");
    }

    #[test]
    fn parse_round_trip() {
        for (theory, text) in [
            (Theory::H, "3*y1^2*y2 - y3"),
            (Theory::K, "-z1^-1*z2 + 2"),
            (Theory::MU { truncation: 2 }, "u1*u2*a11 + u1"),
            (Theory::RationalH, "1/2*y1 - 3"),
        ] {
            let e = theory.parse(3, text).unwrap();
            assert_eq!(theory.parse(3, &e.to_string()).unwrap(), e, "{theory} {text}");
        }
    }

    #[test]
    fn integral_theories_reject_fractions() {
        assert!(matches!(
            Theory::H.parse(2, "1/2*y1"),
            Err(AlgebraError::NonIntegral(_))
        ));
        assert!(Theory::H.parse(2, "y1^-1").is_err());
    }

    #[test]
    fn mismatched_theories() {
        let a = Theory::H.one(2).unwrap();
        let b = Theory::K.one(2).unwrap();
        assert_eq!(a.add(&b), Err(AlgebraError::TheoryMismatch));
    }

    #[test]
    fn not_divisible_reports_remainder() {
        let f = Theory::H.parse(2, "y1 + 1").unwrap();
        let g = Theory::H.parse(2, "y1").unwrap();
        match f.exact_div(&g) {
            Err(AlgebraError::NotDivisible { remainder }) => assert_eq!(remainder, "1"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
