//! Exact arithmetic and linear algebra over `Z[s^{±1}, t^{±1}]`.

mod gcd;
mod matrix;
mod poly;

pub use gcd::{gcd, gcd_all};
pub use matrix::PolyMatrix;
pub use poly::{CanonicalForm, Coeff, Exp, LaurentPoly, UnitClass};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("negative power of a non-unit")]
    NotInvertible,
    #[error("substituted value must be nonzero")]
    ZeroSubstitution,
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor size {k} exceeds {rows}x{cols} matrix")]
    SizeTooLarge { k: usize, rows: usize, cols: usize },
    #[error("entry count does not match matrix shape")]
    ShapeMismatch,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}
