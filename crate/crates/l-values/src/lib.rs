//! L(E, 1) and L′(E, 1) for an elliptic curve and its quadratic twists from
//! the rapidly convergent series 2Σ a(n)/n·e^{−2πn/√N} and 2Σ a(n)/n·E₁(2πn/√N).

mod e1;
mod lseries;

pub use e1::exp_integral_e1;
pub use lseries::{central_derivative, central_value, twist_root_number, LSeriesJob, LValue, Target};

use curve_arith::CurveError;

/// Values at the default multiprecision.
pub type MpLValue = LValue<series_core::Mp>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("gcd({d}, {level}) ≠ 1")]
    NotCoprime { d: i64, level: u64 },
    #[error("root number is {0}; the {1} is not the leading term")]
    WrongParity(i32, &'static str),
    #[error("job needs {needed} coefficients but only {available} were supplied")]
    TooFewCoefficients { needed: usize, available: usize },
    #[error("error bound {0:e} must be positive")]
    BadBound(f64),
}
