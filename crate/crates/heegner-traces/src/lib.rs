//! Binary quadratic forms, Γ₀(N)-classes of Heegner forms, genus characters
//! and the twisted traces tr±_{Δ,r}(F; d) that give the coefficients of the
//! theta lift, including Zagier's generating functions f_d.

mod classes;
mod forms;
mod genus;
mod trace;

pub use classes::{best_point, canonical_key, cm_point, heegner_classes, HeegnerClass, Sign};
pub use forms::{automorphs, class_number, reduced_forms, BinaryQF, Mat};
pub use genus::genus_character;
pub use trace::{
    lift_coefficient, trace_package_options, twisted_trace, zagier_fd, ConstantFunction, KleinJ, LiftCoefficient, ModularFunction,
    Normalization, TraceTerm, TwistedTrace, ZhatFunction,
};

use mock_modular::MockError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TraceError {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("discriminant {0} is not negative")]
    NotNegative(i64),
    #[error("no β with β² ≡ {d} mod {modulus}: {beta} fails")]
    NoAdmissibleBeta { d: i64, beta: i64, modulus: i64 },
    #[error("{what}: {value}² ≢ {target} mod {modulus}")]
    Congruence { what: &'static str, value: i64, target: i64, modulus: i64 },
    #[error("form {0:?} is not level adapted: N = {1} does not divide a")]
    NotLevelAdapted(BinaryQF, u64),
    #[error("function has level {function} but the trace is over level {trace}")]
    LevelMismatch { function: u64, trace: u64 },
    #[error("coefficient at q^{index} is {value}, not an integer")]
    NotIntegral { index: i64, value: String },
    #[error(transparent)]
    Mock(#[from] MockError),
}
