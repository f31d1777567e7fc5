//! The Weierstrass functions ζ, ℘, ℘′ of a lattice: formal Laurent
//! expansions, point evaluation with argument reduction, and the
//! lattice-invariant completion 𝔷(z) = ζ(z) − S·z − (π/a)·z̄.

mod eval;
mod laurent;

pub use eval::{completed_zeta_eval, wp_eval, wp_prime_eval, zeta_eval, HarmonicFormValue, WeierstrassFn, WpValues};
pub use laurent::{wp_laurent, zeta_laurent, WeierstrassSeries};

use series_core::Mp;

pub type MpWeierstrass = WeierstrassFn<Mp>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WeierstrassError {
    #[error("z is within {distance:e} of a lattice point (pole)")]
    Pole { distance: f64 },
    #[error(transparent)]
    Lattice(#[from] lattice_periods::LatticeError),
    #[error("℘′ vanished during argument doubling")]
    Doubling,
}
