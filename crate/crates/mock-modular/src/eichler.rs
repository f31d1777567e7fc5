//! 𝓔_E(z) = Σ a(n)/n·qⁿ.

use curve_arith::NewformCoefficients;
use num_traits::Zero;
use series_core::eta::q_of_tau;
use series_core::{ComplexFns, Cx, QSeries, Real, Q};

use crate::MockError;

/// Exact coefficients a(n)/n through q^{n_max}.
pub fn eichler_series(coeffs: &NewformCoefficients, n_max: usize) -> QSeries {
    let c = (0..=n_max)
        .map(|n| if n == 0 { Q::from(0) } else { Q::new(coeffs.get(n), n as i64) })
        .collect();
    QSeries::from_coeffs(0, c)
}

/// Terms M with Σ_{n>M} |a(n)/n|·|q|ⁿ < budget, using |a(n)| ≤ d(n)√n ≤ 2n.
pub fn eichler_terms(im: f64, budget: f64) -> usize {
    let decay = 2.0 * std::f64::consts::PI * im;
    // 2·e^{−decay(M+1)}/(1 − e^{−decay}) < budget
    let denom = -(-decay).exp_m1();
    let m = ((2.0 / (budget * denom)).ln() / decay).ceil() - 1.0;
    m.max(1.0) as usize
}

/// 𝓔_E(z) with the tail bounded by `budget`.
pub fn eichler_eval<T: Real>(coeffs: &NewformCoefficients, z: &Cx<T>, budget: f64) -> Result<Cx<T>, MockError> {
    let im = z.im.to_f64();
    if im <= 0.0 {
        return Err(MockError::NotInUpperHalfPlane);
    }
    let m = eichler_terms(im, budget);
    if m > coeffs.n_max() {
        return Err(MockError::ImTooSmall { im, needed: m, available: coeffs.n_max() });
    }
    let q = q_of_tau(z);
    // Horner from the top
    let mut acc = Cx::<T>::zero();
    for n in (1..=m).rev() {
        let a = coeffs.get(n);
        let c = if a == 0 { T::zero() } else { T::from_q(&Q::new(a, n as i64)) };
        acc = (acc + Cx::real(c)) * q.clone();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use curve_arith::known::{c11a1, c37a1};
    use curve_arith::newform_coefficients;

    #[test]
    fn coefficients() {
        let c = newform_coefficients(&c37a1(), 6).unwrap();
        let e = eichler_series(&c, 6);
        assert_eq!(e.coeff(1), Q::from(1));
        assert_eq!(e.coeff(2), Q::from(-1));
        assert_eq!(e.coeff(3), Q::from(-1));
        assert_eq!(e.coeff(4), Q::new(1, 2));
        let c = newform_coefficients(&c11a1(), 6).unwrap();
        assert_eq!(eichler_series(&c, 6).coeff(6), Q::new(1, 3));
    }

    #[test]
    fn vanishes_high_up() {
        let c = newform_coefficients(&c11a1(), 100).unwrap();
        let v = eichler_eval::<f64>(&c, &Cx::new(0.0, 5.0), 1e-16).unwrap();
        assert!(v.norm() < 1e-13);
        assert!(matches!(
            eichler_eval::<f64>(&c, &Cx::new(0.0, 0.001), 1e-16),
            Err(MockError::ImTooSmall { .. })
        ));
    }
}
