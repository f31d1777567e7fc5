//! Laurent q-series arithmetic over exact rationals and multiprecision complex
//! numbers, together with the scalar types and integer helpers used across the
//! workspace.

pub mod arith;
pub mod eta;
pub mod scalar;
pub mod series;

pub use scalar::{default_precision, rationalize, set_default_precision, ComplexFns, Cx, Field, Mp, Real, Ring, Q};
pub use series::{LaurentQSeries, TwistMode};

/// Series with exact rational coefficients.
pub type QSeries = LaurentQSeries<Q>;
/// Series with multiprecision complex coefficients.
pub type MpSeries = LaurentQSeries<Cx<Mp>>;
/// Series with double-precision complex coefficients.
pub type F64Series = LaurentQSeries<Cx<f64>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("inner series has a nonzero constant or negative-exponent term")]
    NonzeroConstant,
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("eta product offset {0}/24 is not an integer")]
    NonIntegralOffset(i64),
    #[error("precision: {0}")]
    Precision(String),
}

/// Promote exact coefficients to complex coefficients at the default precision.
pub fn promote<T: Real>(s: &QSeries) -> LaurentQSeries<Cx<T>> {
    s.map(scalar::q_to_cx::<T>)
}
