//! The Eichler integral 𝓔_E of the newform of E, the Weierstrass mock
//! modular form ẑ⁺_E = ζ(Λ_E; 𝓔_E) − S(Λ_E)·𝓔_E and its completion, the
//! Atkin–Lehner periods Ω_q and expansions at the other cusps.

mod atkin;
mod eichler;
mod exact;
mod package;


pub use atkin::{atkin_lehner_matrix, mobius, Matrix2};
pub use eichler::{eichler_eval, eichler_series, eichler_terms};
pub use exact::{rationalize_series, zeta_of_eichler_compose, zeta_of_eichler_exact};
pub use package::{CuspExpansion, MockFormPackage, PackageOptions, StarForm};


use curve_arith::CurveError;
use lattice_periods::LatticeError;
use weierstrass_fn::WeierstrassError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MockError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error("Im z = {im:e} needs {needed} coefficients but only {available} are cached; apply a Fricke flip first")]
    ImTooSmall { im: f64, needed: usize, available: usize },
    #[error("z is not in the upper half-plane")]
    NotInUpperHalfPlane,
    #[error("𝓔(z) lies on the lattice: ẑ has a pole at z")]
    Pole,
    #[error("{0} is not an exact divisor of the level {1}")]
    NotHallDivisor(u64, u64),
    #[error("cusp constants differ ({0}); no single constant can be removed")]
    CuspConstantsDiffer(String),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
}
