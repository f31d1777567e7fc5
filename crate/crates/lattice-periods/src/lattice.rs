//! Period lattices from the AGM and their invariants.

use std::collections::BTreeMap;

use curve_arith::EllipticCurve;
use num_traits::Zero;
use series_core::eta::eisenstein_eval;
use series_core::{ComplexFns, Cx, Real, Q};

use crate::cubic::real_roots;
use crate::eisenstein::eisenstein_recursion;
use crate::LatticeError;

/// Λ = Zω₁ + Zω₂ with Im(ω₂/ω₁) > 0.
#[derive(Clone, Debug)]
pub struct PeriodLattice<T: Real> {
    pub omega1: Cx<T>,
    pub omega2: Cx<T>,
    /// A basis of Λ whose ratio lies in the standard fundamental domain.
    pub reduced: [Cx<T>; 2],
    pub tau_reduced: Cx<T>,
    /// Im(ω̄₁ω₂), the covolume.
    pub area: T,
    /// Eisenstein-summed G₂(Λ).
    pub g2: Cx<T>,
    pub g4: Cx<T>,
    pub g6: Cx<T>,
    /// S(Λ) = G₂(Λ) − π/(ω₁² Im τ) in the reduced basis.
    pub s: Cx<T>,
}

fn agm<T: Real>(a: T, b: T) -> T {
    let (mut a, mut b) = (a, b);
    let tol = T::epsilon() * T::from_i64(8);
    let half = T::from_q(&Q::new(1, 2));
    for _ in 0..10_000 {
        if (a.clone() - b.clone()).abs() <= tol.clone() * a.abs() {
            break;
        }
        let next = (a.clone() + b.clone()) * half.clone();
        b = (a * b).sqrt();
        a = next;
    }
    a
}

impl<T: Real> PeriodLattice<T> {
    pub fn from_basis(omega1: Cx<T>, omega2: Cx<T>) -> Result<Self, LatticeError> {
        let ratio = omega2.clone() / omega1.clone();
        if ratio.im.abs() <= T::epsilon() * T::from_i64(1 << 10) * ratio.cabs() {
            return Err(LatticeError::Degenerate);
        }
        let omega2 = if ratio.im < T::zero() { -omega2 } else { omega2 };
        let (mut r1, mut r2) = (omega1.clone(), omega2.clone());
        let near_one = T::one() - T::epsilon() * T::from_i64(16);
        for _ in 0..10_000 {
            let t = r2.clone() / r1.clone();
            let n = t.re.round();
            r2 = r2 - r1.clone().scale(n);
            let t = r2.clone() / r1.clone();
            if t.norm_sqr() < near_one {
                (r1, r2) = (r2, -r1);
            } else {
                break;
            }
        }
        let tau = r2.clone() / r1.clone();
        let pi = T::pi();
        let area = (omega1.conj() * omega2.clone()).im;
        let w2 = r1.clone() * r1.clone();
        let w4 = w2.clone() * w2.clone();
        let w6 = w4.clone() * w2.clone();
        let pi2 = pi.clone() * pi.clone();
        let pi4 = pi2.clone() * pi2.clone();
        let pi6 = pi4.clone() * pi2.clone();
        let g2_tau = eisenstein_eval(2, &tau).scale(pi2 / T::from_i64(3));
        let g4 = eisenstein_eval(4, &tau).scale(pi4 / T::from_i64(45)) / w4;
        let g6 = eisenstein_eval(6, &tau).scale(pi6 * T::from_i64(2) / T::from_i64(945)) / w6;
        let g2 = g2_tau.clone() / w2.clone();
        let s = (g2_tau - Cx::real(pi / tau.im.clone())) / w2;
        Ok(PeriodLattice { omega1, omega2, reduced: [r1, r2], tau_reduced: tau, area, g2, g4, g6, s })
    }

    /// The period lattice of the Néron differential dx/(2y + a1x + a3).
    /// ω₁ is the least positive real period.
    pub fn of_curve(e: &EllipticCurve) -> Result<Self, LatticeError> {
        let inv = e.invariants();
        let t = |x: &Q| T::from_q(x);
        let c = [T::from_i64(4), t(&inv.b2), t(&inv.b4) * T::from_i64(2), t(&inv.b6)];
        let positive = inv.disc > Q::from(0);
        let roots = real_roots(c, positive)?;
        let pi = T::pi();
        let i = Cx::<T>::i();
        let (w1, w2) = if positive {
            let (e1, e2, e3) = (roots[0].clone(), roots[1].clone(), roots[2].clone());
            let s13 = (e1.clone() - e3.clone()).sqrt();
            let w1 = pi.clone() / agm(s13.clone(), (e1 - e2.clone()).sqrt());
            let w2 = pi / agm(s13, (e2 - e3).sqrt());
            (Cx::real(w1), i.scale(w2))
        } else {
            let e1 = roots[0].clone();
            let b2 = t(&inv.b2);
            let b4 = t(&inv.b4);
            let half = T::from_q(&Q::new(1, 2));
            let alpha = T::from_i64(3) * e1.clone() + b2.clone() / T::from_i64(4);
            let beta = (T::from_i64(3) * e1.clone() * e1.clone() + b2 * half.clone() * e1 + b4 * half.clone()).sqrt();
            let two_sqrt_beta = T::from_i64(2) * beta.clone().sqrt();
            let two_beta = T::from_i64(2) * beta;
            let w1 = T::from_i64(2) * pi.clone() / agm(two_sqrt_beta.clone(), (two_beta.clone() + alpha.clone()).sqrt());
            let im = pi / agm(two_sqrt_beta, (two_beta - alpha).sqrt());
            (Cx::real(w1.clone()), Cx::new(-(w1 * half), im))
        };
        Self::from_basis(w1, w2)
    }

    /// G_{2k} for 4 ≤ 2k ≤ max_weight, from G₄ and G₆ by the recursion.
    pub fn eisenstein_numbers(&self, max_weight: u32) -> BTreeMap<u32, Cx<T>> {
        eisenstein_recursion(&self.g4, &self.g6, max_weight)
    }

    /// Lattice invariants g₂ = 60G₄ and g₃ = 140G₆.
    pub fn weierstrass_invariants(&self) -> (Cx<T>, Cx<T>) {
        (self.g4.clone().scale(T::from_i64(60)), self.g6.clone().scale(T::from_i64(140)))
    }

    /// Length of a shortest nonzero lattice vector.
    pub fn min_norm(&self) -> T {
        self.reduced[0].cabs()
    }

    /// Diameter of the reduced fundamental parallelogram.
    pub fn cell_diameter(&self) -> T {
        let [a, b] = &self.reduced;
        T::max_of((a.clone() + b.clone()).cabs(), (a.clone() - b.clone()).cabs())
    }

    /// Real coordinates (x, y) with z = x·r₁ + y·r₂ in the reduced basis.
    pub fn coordinates(&self, z: &Cx<T>) -> (T, T) {
        let u = z.clone() / self.reduced[0].clone();
        let y = u.im.clone() / self.tau_reduced.im.clone();
        let x = u.re - y.clone() * self.tau_reduced.re.clone();
        (x, y)
    }

    /// The lattice point m·r₁ + n·r₂.
    pub fn point(&self, m: i64, n: i64) -> Cx<T> {
        self.reduced[0].clone().scale(T::from_i64(m)) + self.reduced[1].clone().scale(T::from_i64(n))
    }

    /// A lattice point nearest to z.
    pub fn nearest_point(&self, z: &Cx<T>) -> Cx<T> {
        let (x, y) = self.coordinates(z);
        let m0 = x.round().to_i64().unwrap_or(0);
        let n0 = y.round().to_i64().unwrap_or(0);
        let mut best = Cx::<T>::zero();
        let mut best_d: Option<T> = None;
        for dn in -1..=1 {
            for dm in -1..=1 {
                let w = self.point(m0 + dm, n0 + dn);
                let d = (z.clone() - w.clone()).norm_sqr();
                if best_d.as_ref().is_none_or(|b| d < *b) {
                    best_d = Some(d);
                    best = w;
                }
            }
        }
        best
    }

    /// Whether z lies within `tol` of a lattice point.
    pub fn contains(&self, z: &Cx<T>, tol: &T) -> bool {
        (z.clone() - self.nearest_point(z)).cabs() <= *tol
    }

    /// Whether ω₂ is purely imaginary (positive discriminant).
    pub fn is_rectangular(&self) -> bool {
        self.omega2.re.abs() <= T::epsilon() * T::from_i64(1 << 10) * self.omega2.cabs()
    }
}

/// The period lattice of E.
pub fn period_lattice<T: Real>(e: &EllipticCurve) -> Result<PeriodLattice<T>, LatticeError> {
    PeriodLattice::of_curve(e)
}

/// S(Λ) = lim_{s→0⁺} Σ' w⁻²|w|⁻²ˢ, through the completed weight-2 Eisenstein series.
pub fn s_invariant<T: Real>(lat: &PeriodLattice<T>) -> Cx<T> {
    lat.s.clone()
}

impl<T: Real> PartialEq for PeriodLattice<T> {
    fn eq(&self, other: &Self) -> bool {
        self.omega1 == other.omega1 && self.omega2 == other.omega2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use curve_arith::known::{c11a1, c37a1};
    use series_core::Mp;

    #[test]
    fn real_period_of_11a1() {
        let l = PeriodLattice::<f64>::of_curve(&c11a1()).unwrap();
        assert!((l.omega1.re - 1.2692093042795534).abs() < 1e-14);
        assert!(l.omega1.im.abs() < 1e-15);
        assert!(!l.is_rectangular());
    }

    #[test]
    fn s_of_37a1_multiprecision() {
        let l = PeriodLattice::<Mp>::of_curve(&c37a1()).unwrap();
        assert!(l.is_rectangular());
        let s = l.s.re.to_f64();
        assert!((s + 0.11321933466174686).abs() < 1e-15, "{s}");
        assert!((l.area.to_f64() - 7.33813274078958).abs() < 1e-13);
    }

    #[test]
    fn nearest_point_is_nearest() {
        let l = PeriodLattice::<f64>::of_curve(&c11a1()).unwrap();
        let w = l.point(3, -2);
        let z = w + Cx::new(0.1, -0.05);
        assert!((l.nearest_point(&z) - w).norm() < 1e-12);
    }

    #[test]
    fn degenerate_basis_rejected() {
        let r = PeriodLattice::<f64>::from_basis(Cx::new(1.0, 0.0), Cx::new(2.0, 0.0));
        assert_eq!(r.unwrap_err(), LatticeError::Degenerate);
    }

    #[test]
    fn orientation_is_fixed() {
        let l = PeriodLattice::<f64>::from_basis(Cx::new(1.0, 0.0), Cx::new(0.3, -1.2)).unwrap();
        assert!(l.omega2.im > 0.0);
        assert!(l.area > 0.0);
    }
}
