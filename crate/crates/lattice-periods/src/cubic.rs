//! Real roots of the 2-division cubic 4x³ + b2x² + 2b4x + b6.

use series_core::Real;

use crate::LatticeError;

fn f64_seeds(c: [f64; 4], three_real: bool) -> Vec<f64> {
    let (a, b, cc) = (c[1] / c[0], c[2] / c[0], c[3] / c[0]);
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + cc;
    let shift = -a / 3.0;
    if three_real {
        let p = p.min(-f64::MIN_POSITIVE);
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        (0..3)
            .map(|k| r * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift)
            .collect()
    } else {
        let d = (q / 2.0).powi(2) + (p / 3.0).powi(3);
        let sd = d.max(0.0).sqrt();
        vec![(-q / 2.0 + sd).cbrt() + (-q / 2.0 - sd).cbrt() + shift]
    }
}

fn newton<T: Real>(c: &[T; 4], mut x: T) -> Result<T, LatticeError> {
    let three = T::from_i64(3);
    let two = T::from_i64(2);
    let tol = T::epsilon() * T::from_i64(64);
    for _ in 0..400 {
        let f = ((c[0].clone() * x.clone() + c[1].clone()) * x.clone() + c[2].clone()) * x.clone() + c[3].clone();
        let df = (three.clone() * c[0].clone() * x.clone() + two.clone() * c[1].clone()) * x.clone() + c[2].clone();
        if df.is_zero() {
            return Err(LatticeError::NoConvergence);
        }
        let dx = f / df;
        x = x - dx.clone();
        let scale = T::max_of(T::one(), x.abs());
        if dx.abs() <= tol.clone() * scale {
            return Ok(x);
        }
    }
    Err(LatticeError::NoConvergence)
}

/// Real roots in decreasing order: three when the discriminant is positive, one otherwise.
pub(crate) fn real_roots<T: Real>(c: [T; 4], three_real: bool) -> Result<Vec<T>, LatticeError> {
    let seeds = f64_seeds([c[0].to_f64(), c[1].to_f64(), c[2].to_f64(), c[3].to_f64()], three_real);
    let mut roots = seeds
        .into_iter()
        .map(|s| newton(&c, T::from_f64(s)))
        .collect::<Result<Vec<_>, _>>()?;
    roots.sort_by(|a, b| b.partial_cmp(a).expect("finite roots"));
    if roots.windows(2).any(|w| w[0] == w[1]) {
        return Err(LatticeError::NoConvergence);
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_roots_of_a_product() {
        // 4(x − 1)(x + 2)(x − 5) = 4x³ − 16x² − 28x + 40
        let r = real_roots([4.0, -16.0, -28.0, 40.0], true).unwrap();
        assert!((r[0] - 5.0).abs() < 1e-12 && (r[1] - 1.0).abs() < 1e-12 && (r[2] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn single_root() {
        // 4x³ + 4x − 8 has the real root 1
        let r = real_roots([4.0, 0.0, 4.0, -8.0], false).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-14);
    }
}
