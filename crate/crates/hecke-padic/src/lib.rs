//! Hecke operators T(pⁿ) in weight 2 on exact rational q-series, and the
//! p-adic experiment: [q d/dq ζ(Λ_E; 𝓔_E)]|T(pⁿ)/a_E(pⁿ) → 𝔖_E(p)·F_E.

mod hecke;
mod padic;

pub use hecke::{hecke_tpn, hecke_weight2, valuation};
pub use padic::{padic_congruence_check, s_p_digits, CongruenceReport, PadicContext, DEFAULT_WINDOW};

use curve_arith::CurveError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PadicError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {p} divides the level {level}")]
    PDividesLevel { p: u64, level: u64 },
    #[error("p = {p} is not ordinary: a(p) = {ap} ≡ 0 mod p")]
    Supersingular { p: u64, ap: i64 },
    #[error("series known through q^{known}, but T(p^{n}) through q^{hi} needs q^{needed}")]
    Precision { n: u32, hi: i64, needed: i64, known: i64 },
    #[error("c_{n} = {value} is not p-integral")]
    NotIntegral { n: u32, value: String },
    #[error("digit {k} changed between levels {n} and {m}")]
    NonStabilizing { k: usize, n: u32, m: u32 },
    #[error("a(p^{0}) vanishes")]
    ZeroEigenvalue(u32),
}
