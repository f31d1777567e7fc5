//! Lattice sums G_{2k}(Λ) = Σ' w^{−2k}: by direct summation with a tail bound,
//! and by the recursion coming from the differential equation of ℘.

use std::collections::BTreeMap;

use curve_arith::EllipticCurve;
use num_traits::Zero;
use series_core::{ComplexFns, Cx, Field, Real, Q};

use crate::{LatticeError, PeriodLattice};

/// G_{2n} for 4 ≤ 2n ≤ max_weight from G₄ and G₆:
/// G_{2n} = Σ_{j=2}^{n−2} 3(2j−1)(2n−2j−1)/((2n+1)(2n−1)(n−3)) · G_{2j}G_{2n−2j}.
pub fn eisenstein_recursion<F: Field>(g4: &F, g6: &F, max_weight: u32) -> BTreeMap<u32, F> {
    let mut g: BTreeMap<u32, F> = BTreeMap::new();
    g.insert(4, g4.clone());
    g.insert(6, g6.clone());
    let n_max = (max_weight / 2) as i64;
    for n in 4..=n_max {
        let mut acc = F::zero();
        for j in 2..=n - 2 {
            let c = Q::new(3 * (2 * j - 1) * (2 * n - 2 * j - 1), (2 * n + 1) * (2 * n - 1) * (n - 3));
            acc = acc + F::from_q(&c) * g[&(2 * j as u32)].clone() * g[&(2 * (n - j) as u32)].clone();
        }
        g.insert(2 * n as u32, acc);
    }
    g.retain(|k, _| *k <= max_weight.max(6));
    g
}

/// Exact lattice sums of the Néron lattice: G₄ = c₄/720, G₆ = c₆/30240, then the recursion.
pub fn exact_eisenstein(e: &EllipticCurve, max_weight: u32) -> BTreeMap<u32, Q> {
    let g4 = e.c4().clone() * Q::new(1, 720);
    let g6 = e.c6().clone() * Q::new(1, 30240);
    eisenstein_recursion(&g4, &g6, max_weight)
}

/// A truncated lattice sum with a bound on the discarded part.
#[derive(Clone, Debug)]
pub struct DirectSum<T: Real> {
    pub value: Cx<T>,
    pub error_bound: T,
    pub terms: usize,
}

/// Visit m·r₁ + n·r₂ for all 0 < |w| ≤ radius, row by row.
fn for_each_point<T: Real>(lat: &PeriodLattice<T>, radius: &T, mut f: impl FnMut(Cx<T>)) {
    let r1 = &lat.reduced[0];
    let row_gap = lat.area.clone() / r1.cabs();
    let n_max = (radius.clone() / row_gap).floor().to_i64().unwrap_or(0) + 1;
    let len1 = r1.cabs();
    let r2 = lat.reduced[1].clone();
    for n in -n_max..=n_max {
        let t = r2.clone().scale(T::from_i64(n)) / r1.clone();
        let half_width = radius.clone() / len1.clone();
        let lo = (-t.re.clone() - half_width.clone()).floor().to_i64().unwrap_or(0);
        let hi = (-t.re.clone() + half_width).floor().to_i64().unwrap_or(0) + 1;
        for m in lo..=hi {
            if m == 0 && n == 0 {
                continue;
            }
            let w = lat.point(m, n);
            if w.norm_sqr() <= radius.clone() * radius.clone() {
                f(w);
            }
        }
    }
}

/// Σ_{0<|w|≤R} w^{−weight}. The tail beyond R is bounded by comparing with
/// ∫_{|z|>R−2d} |z|^{−weight} dA over cells of diameter d.
pub fn eisenstein_direct<T: Real>(
    lat: &PeriodLattice<T>,
    weight: u32,
    radius: &T,
) -> Result<DirectSum<T>, LatticeError> {
    if weight < 4 || weight % 2 != 0 {
        return Err(LatticeError::BadWeight(weight));
    }
    let d = lat.cell_diameter();
    let two = T::from_i64(2);
    if *radius <= two.clone() * d.clone() {
        return Err(LatticeError::RadiusTooSmall { radius: radius.to_f64(), diameter: d.to_f64() });
    }
    let mut value = Cx::<T>::zero();
    let mut terms = 0usize;
    for_each_point(lat, radius, |w| {
        value = value.clone() + w.cpowi(-(weight as i32));
        terms += 1;
    });
    let k = weight as i32;
    let r = radius.clone() - two.clone() * d.clone();
    let tail = two * T::pi() / lat.area.clone()
        * (r.powi(2 - k) / T::from_i64(k as i64 - 2) + d * r.powi(1 - k) / T::from_i64(k as i64 - 1));
    let rounding = T::from_i64(4 * terms as i64 + 4) * T::epsilon() * lat.min_norm().powi(-k);
    Ok(DirectSum { value, error_bound: tail + rounding, terms })
}

/// Σ_{0<|w|≤R} w⁻² summed over discs. The limit R → ∞ is S(Λ).
pub fn s_disk_sum<T: Real>(lat: &PeriodLattice<T>, radius: &T) -> Cx<T> {
    let mut value = Cx::<T>::zero();
    for_each_point(lat, radius, |w| value = value.clone() + w.cpowi(-2));
    value
}
