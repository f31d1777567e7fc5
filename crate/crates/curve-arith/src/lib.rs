//! Elliptic curves over Q, point counting over finite fields, and the
//! coefficients a_E(n) of the attached weight-2 newform.

pub mod curve;
pub mod known;
pub mod newform;

pub use curve::{EllipticCurve, Invariants, Reduction};
pub use newform::{
    ap_point_count, atkin_lehner_data, newform_coefficients, quadratic_twist_coefficients, AtkinLehnerData,
    NewformCoefficients,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("the model is singular")]
    Singular,
    #[error("conductor: {0}")]
    BadConductor(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("prime {0} divides a coefficient denominator")]
    DenominatorPrime(u64),
    #[error("no singular point found mod {0}")]
    NoSingularPoint(u64),
    #[error("level {0} is not squarefree")]
    NotSquarefree(u64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("twist {0} is not coprime to the level {1}")]
    TwistNotCoprime(i64, u64),
    #[error("requested {0} coefficients but only {1} are available")]
    TooFewCoefficients(usize, usize),
}
