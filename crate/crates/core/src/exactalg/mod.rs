//! Exact computational substrate: rationals, dense univariate and sparse
//! multivariate polynomials, rational functions, division-free determinants,
//! resultants and interpolation.
//!
//! Nothing here touches floating point unless the caller instantiates a
//! generic routine at `f64`.

pub mod interp;
pub mod linalg;
pub mod multipoly;
pub mod parse;
pub mod ratfun;
pub mod roots;
pub mod scalar;
pub mod unipoly;

use num_bigint::BigInt;
use thiserror::Error;

pub use interp::poly_interpolate;
pub use linalg::{determinant, discriminant_multi, resultant, solve_field, solve_linear, Matrix};
pub use multipoly::{Monomial, MultiPoly};
pub use parse::{parse_poly, parse_rational};
pub use ratfun::RationalFunction;
pub use roots::rational_roots;
pub use scalar::{Field, Ring};
pub use unipoly::UniPoly;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("linear system is singular (determinant vanishes identically)")]
    SingularSystem,
    #[error("matrix is not square")]
    NotSquare,
    #[error("right-hand side length does not match the matrix")]
    DimensionMismatch,
    #[error("resultant of two zero polynomials is undefined")]
    BothZero,
    #[error("discriminant of a constant polynomial is undefined")]
    ConstantPolynomial,
    #[error("expected an exact division")]
    InexactDivision,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("need {needed} sample points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("repeated sample abscissa")]
    RepeatedAbscissa,
    #[error("samples are not consistent with a polynomial of degree {degree}")]
    DegreeMismatch { degree: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
