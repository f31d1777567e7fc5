//! Point evaluation of ζ, ℘, ℘′ by lattice reduction, halving into the
//! disc of convergence, and the duplication formulas on the way back.

use curve_arith::EllipticCurve;
use lattice_periods::{eisenstein_recursion, exact_eisenstein, PeriodLattice};
use num_traits::{One, Zero};
use series_core::{ComplexFns, Cx, LaurentQSeries, Real, Q};

use crate::WeierstrassError;

/// Halve until |u| is below this fraction of the shortest vector.
const REDUCED_FRACTION: f64 = 0.35;
/// Evaluation is refused this close to a lattice point, relative to the shortest vector.
const POLE_FRACTION: f64 = 1e-8;

/// A value split into holomorphic part and nonholomorphic completion.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicFormValue<T: Real> {
    pub holomorphic: Cx<T>,
    pub completion: Cx<T>,
}

impl<T: Real> HarmonicFormValue<T> {
    pub fn total(&self) -> Cx<T> {
        self.holomorphic.clone() + self.completion.clone()
    }
}

#[derive(Clone, Debug)]
pub struct WpValues<T: Real> {
    pub zeta: Cx<T>,
    pub wp: Cx<T>,
    pub wp_prime: Cx<T>,
}

/// Evaluator for the Weierstrass functions of one lattice.
#[derive(Clone, Debug)]
pub struct WeierstrassFn<T: Real> {
    lattice: PeriodLattice<T>,
    /// g[k] = G_{2k+2} for k ≥ 1; g[0] unused.
    g: Vec<Cx<T>>,
    g2: Cx<T>,
    radius: T,
}

fn terms_needed<T: Real>() -> usize {
    // |G_{2k}|·r^{2k} stays below ~6, so the k-th term relative to 1/u is about 6·0.35^{2k+2}
    let bits = T::bits() as f64 * std::f64::consts::LN_2 + 2.0;
    ((bits / -REDUCED_FRACTION.ln() - 2.0) / 2.0).ceil() as usize + 4
}

impl<T: Real> WeierstrassFn<T> {
    /// Use G₄ and G₆ as given; higher G_{2k} follow from the recursion.
    pub fn with_invariants(lattice: PeriodLattice<T>, g4: Cx<T>, g6: Cx<T>) -> Self {
        let k_max = terms_needed::<T>();
        let rec = eisenstein_recursion(&g4, &g6, 2 * k_max as u32 + 2);
        let mut g = vec![Cx::<T>::zero(); k_max + 1];
        for k in 1..=k_max {
            g[k] = rec[&(2 * k as u32 + 2)].clone();
        }
        let radius = lattice.min_norm();
        let g2 = g4.scale(T::from_i64(60));
        WeierstrassFn { lattice, g, g2, radius }
    }

    /// G₄, G₆ from the lattice's own q-series values.
    pub fn new(lattice: PeriodLattice<T>) -> Self {
        let (g4, g6) = (lattice.g4.clone(), lattice.g6.clone());
        Self::with_invariants(lattice, g4, g6)
    }

    /// The Néron lattice of E with the exact values G₄ = c₄/720, G₆ = c₆/30240.
    pub fn from_curve(e: &EllipticCurve) -> Result<Self, WeierstrassError> {
        let lattice = PeriodLattice::of_curve(e)?;
        let g = exact_eisenstein(e, 6);
        let cx = |x: &Q| Cx::real(T::from_q(x));
        Ok(Self::with_invariants(lattice, cx(&g[&4]), cx(&g[&6])))
    }

    pub fn lattice(&self) -> &PeriodLattice<T> {
        &self.lattice
    }

    /// Length of a shortest nonzero lattice vector.
    pub fn radius(&self) -> &T {
        &self.radius
    }

    /// π/a(Λ), the coefficient of z̄ in the completion.
    pub fn completion_coefficient(&self) -> T {
        T::pi() / self.lattice.area.clone()
    }

    /// ζ(z + w) − ζ(z) = S·w + (π/a)·w̄ for w ∈ Λ.
    pub fn quasi_period(&self, w: &Cx<T>) -> Cx<T> {
        self.lattice.s.clone() * w.clone() + w.conj().scale(self.completion_coefficient())
    }

    fn laurent_at(&self, u: &Cx<T>) -> WpValues<T> {
        let inv = Cx::<T>::one() / u.clone();
        let mut zeta = inv.clone();
        let mut wp = inv.clone() * inv.clone();
        let mut wp_prime = -(wp.clone() * inv.clone()).scale(T::from_i64(2));
        let tol = T::epsilon() * inv.cabs() * T::from_q(&Q::new(1, 64));
        // u^{2k−1}, then u^{2k}, u^{2k+1}
        let mut odd = u.clone();
        let mut small = 0;
        for k in 1..self.g.len() {
            let even = odd.clone() * u.clone();
            let next_odd = even.clone() * u.clone();
            let gk = &self.g[k];
            let t_zeta = gk.clone() * next_odd.clone();
            zeta = zeta - t_zeta.clone();
            wp = wp + (gk.clone() * even).scale(T::from_i64(2 * k as i64 + 1));
            wp_prime = wp_prime + (gk.clone() * odd).scale(T::from_i64((2 * k as i64 + 1) * (2 * k as i64)));
            odd = next_odd;
            if t_zeta.cabs() < tol {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        WpValues { zeta, wp, wp_prime }
    }

    /// (ζ, ℘, ℘′) at z.
    pub fn eval(&self, z: &Cx<T>) -> Result<WpValues<T>, WeierstrassError> {
        let w = self.lattice.nearest_point(z);
        let u = z.clone() - w.clone();
        let dist = u.cabs();
        if dist < self.radius.clone() * T::from_f64(POLE_FRACTION) {
            return Err(WeierstrassError::Pole { distance: dist.to_f64() });
        }
        let limit = self.radius.clone() * T::from_f64(REDUCED_FRACTION);
        let mut halvings = 0u32;
        let mut v = u;
        let half = T::from_q(&Q::new(1, 2));
        while v.cabs() > limit {
            v = v.scale(half.clone());
            halvings += 1;
        }
        let mut vals = self.laurent_at(&v);
        let twelve = T::from_i64(12);
        for _ in 0..halvings {
            let WpValues { zeta, wp, wp_prime } = vals;
            if wp_prime.is_zero() {
                return Err(WeierstrassError::Doubling);
            }
            // m = ℘″/℘′ with ℘″ = 6℘² − g₂/2
            let m = ((wp.clone() * wp.clone()).scale(twelve.clone()) - self.g2.clone())
                / wp_prime.clone().scale(T::from_i64(2));
            let wp2 = (m.clone() * m.clone()).scale(half.clone() * half.clone()) - wp.clone().scale(T::from_i64(2));
            let wp_prime2 = -(m.clone() * (wp2.clone() - wp)) - wp_prime;
            let zeta2 = zeta.scale(T::from_i64(2)) + m.scale(half.clone());
            vals = WpValues { zeta: zeta2, wp: wp2, wp_prime: wp_prime2 };
        }
        vals.zeta = vals.zeta + self.quasi_period(&w);
        Ok(vals)
    }

    pub fn zeta(&self, z: &Cx<T>) -> Result<Cx<T>, WeierstrassError> {
        Ok(self.eval(z)?.zeta)
    }

    pub fn wp(&self, z: &Cx<T>) -> Result<Cx<T>, WeierstrassError> {
        Ok(self.eval(z)?.wp)
    }

    pub fn wp_prime(&self, z: &Cx<T>) -> Result<Cx<T>, WeierstrassError> {
        Ok(self.eval(z)?.wp_prime)
    }

    /// ζ(z) − S·z and −(π/a)·z̄; the sum is Λ-periodic.
    pub fn completed_zeta(&self, z: &Cx<T>) -> Result<HarmonicFormValue<T>, WeierstrassError> {
        let zeta = self.zeta(z)?;
        Ok(HarmonicFormValue {
            holomorphic: zeta - self.lattice.s.clone() * z.clone(),
            completion: -z.conj().scale(self.completion_coefficient()),
        })
    }

    /// Taylor expansion of ζ(a + u) in u through u^{order−1}, from
    /// ℘″ = 6℘² − g₂/2 started at ℘(a), ℘′(a).
    pub fn zeta_taylor(&self, a: &Cx<T>, order: usize) -> Result<LaurentQSeries<Cx<T>>, WeierstrassError> {
        let vals = self.eval(a)?;
        let mut p = vec![vals.wp, vals.wp_prime];
        let six = T::from_i64(6);
        while p.len() + 1 < order {
            let k = p.len() - 2;
            let mut s = Cx::<T>::zero();
            for i in 0..=k {
                s = s + p[i].clone() * p[k - i].clone();
            }
            s = s.scale(six.clone());
            if k == 0 {
                s = s - self.g2.clone().scale(T::from_q(&Q::new(1, 2)));
            }
            p.push(s.scale(T::one() / T::from_i64(((k + 2) * (k + 1)) as i64)));
        }
        let mut c = Vec::with_capacity(order);
        if order > 0 {
            c.push(vals.zeta);
        }
        for (k, pk) in p.iter().enumerate().take(order.saturating_sub(1)) {
            c.push(-pk.clone().scale(T::one() / T::from_i64(k as i64 + 1)));
        }
        Ok(LaurentQSeries::new(0, c, order as i64).expect("length matches precision"))
    }
}

pub fn zeta_eval<T: Real>(f: &WeierstrassFn<T>, z: &Cx<T>) -> Result<Cx<T>, WeierstrassError> {
    f.zeta(z)
}

pub fn wp_eval<T: Real>(f: &WeierstrassFn<T>, z: &Cx<T>) -> Result<Cx<T>, WeierstrassError> {
    f.wp(z)
}

pub fn wp_prime_eval<T: Real>(f: &WeierstrassFn<T>, z: &Cx<T>) -> Result<Cx<T>, WeierstrassError> {
    f.wp_prime(z)
}

pub fn completed_zeta_eval<T: Real>(f: &WeierstrassFn<T>, z: &Cx<T>) -> Result<HarmonicFormValue<T>, WeierstrassError> {
    f.completed_zeta(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use curve_arith::known::c11a1;

    #[test]
    fn odd_and_even() {
        let f = WeierstrassFn::<f64>::from_curve(&c11a1()).unwrap();
        let z = Cx::new(0.37, 0.21);
        let a = f.eval(&z).unwrap();
        let b = f.eval(&-z).unwrap();
        assert!((a.zeta + b.zeta).norm() < 1e-12);
        assert!((a.wp - b.wp).norm() < 1e-12);
        assert!((a.wp_prime + b.wp_prime).norm() < 1e-10);
    }

    #[test]
    fn pole_is_rejected() {
        let f = WeierstrassFn::<f64>::from_curve(&c11a1()).unwrap();
        let w = f.lattice().omega1;
        assert!(matches!(f.zeta(&w), Err(WeierstrassError::Pole { .. })));
    }

    #[test]
    fn taylor_matches_pointwise() {
        let f = WeierstrassFn::<f64>::from_curve(&c11a1()).unwrap();
        let a = Cx::new(0.3, 0.4);
        let t = f.zeta_taylor(&a, 30).unwrap();
        let u = Cx::new(0.05, -0.02);
        assert!((t.eval(&u) - f.zeta(&(a + u)).unwrap()).norm() < 1e-12);
    }
}
