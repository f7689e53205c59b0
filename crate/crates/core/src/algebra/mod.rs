//! Coefficient rings for equivariant cohomology theories of a torus.

pub mod element;
pub mod laurent;
pub mod linear;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod series;

use thiserror::Error;

pub use element::{CoefficientElement, Theory};
pub use laurent::LaurentPoly;
pub use poly::{IntPoly, Monomial, Poly, RatPoly};
pub use rational::RationalVector;
pub use series::{MuRing, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("not divisible, remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("truncation {0} is not supported (expected 1..=3)")]
    UnsupportedTruncation(u32),
    #[error("operands belong to different coefficient rings")]
    TheoryMismatch,
    #[error("coefficient does not fit a machine integer")]
    CoefficientOverflow,
    #[error("non-integral value {0} in an integral theory")]
    NonIntegral(String),
    #[error("parse error: {0}")]
    Parse(String),
}
