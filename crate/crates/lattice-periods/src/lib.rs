//! Period lattices of elliptic curves over Q, lattice Eisenstein sums and the
//! nonholomorphic correction S(Λ) = lim_{s→0⁺} Σ' w⁻²|w|⁻²ˢ.

mod cubic;
pub mod eisenstein;
mod lattice;

pub use eisenstein::{eisenstein_direct, eisenstein_recursion, exact_eisenstein, s_disk_sum, DirectSum};
pub use lattice::{period_lattice, s_invariant, PeriodLattice};

use series_core::Mp;

pub type MpLattice = PeriodLattice<Mp>;
pub type F64Lattice = PeriodLattice<f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("basis is degenerate: ω₂/ω₁ is real")]
    Degenerate,
    #[error("root refinement for the 2-division cubic did not converge")]
    NoConvergence,
    #[error("cutoff radius {radius} must exceed twice the cell diameter {diameter}")]
    RadiusTooSmall { radius: f64, diameter: f64 },
    #[error("weight {0} is not an even integer ≥ 4")]
    BadWeight(u32),
}
