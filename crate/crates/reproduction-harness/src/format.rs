//! JSON rendering of inexact values with as many digits as their error bound
//! certifies. Reals are strings in `d.ddde±x` form so that no binary
//! precision beyond the certificate leaks into the output.

use serde_json::{json, Value};
use series_core::{Cx, Real};

/// Significant digits of a value of size |x| known to within err.
pub fn certified_digits(x: f64, err: f64, bits: u32) -> usize {
    let cap = ((bits as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as i64;
    if err.is_nan() || err <= 0.0 {
        return cap as usize;
    }
    let decimals = (-err.log10()).floor() as i64;
    let exponent = if x == 0.0 || !x.is_finite() { 0 } else { x.abs().log10().floor() as i64 };
    (exponent + decimals + 1).clamp(1, cap) as usize
}

/// A value smaller than its error bound is written as zero at the bound's
/// scale, e.g. `0e-8`.
pub fn certified_real<T: Real>(x: &T, err: f64) -> Value {
    if err > 0.0 && x.to_f64().abs() < err {
        return Value::String(format!("0e{}", err.log10().ceil() as i64));
    }
    Value::String(x.to_sci(certified_digits(x.to_f64(), err, T::bits())))
}

pub fn certified_complex<T: Real>(z: &Cx<T>, err: f64) -> Value {
    json!({ "re": certified_real(&z.re, err), "im": certified_real(&z.im, err) })
}

/// Error of a full-precision value of size |x|, with 32 guard bits spent.
pub fn work_err<T: Real>(x: &T) -> f64 {
    let eps = 2f64.powi(32 - T::bits() as i32);
    eps * x.to_f64().abs().max(1.0)
}

/// Parse a real written by [`certified_real`] or as a plain decimal.
pub fn parse_real(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => match s.split_once('/') {
            Some((a, b)) => Some(a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?),
            None => s.trim().parse().ok(),
        },
        Value::Object(m) => m.get("re").and_then(parse_real),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use series_core::{set_default_precision, Mp};

    #[test]
    fn digits_follow_the_bound() {
        assert_eq!(certified_digits(0.2538, 1e-7, 256), 7);
        assert_eq!(certified_digits(9.0, 1e-4, 256), 5);
        assert_eq!(certified_digits(1234.5, 1e-1, 256), 5);
        assert_eq!(certified_digits(1e-9, 1e-5, 256), 1);
        assert_eq!(certified_digits(1.0, 0.0, 53), 15);
        assert_eq!(certified_real(&0.253_841_860_855_910_7_f64, 1e-9), Value::String("2.53841861e-1".into()));
        assert_eq!(certified_real(&3.2e-12f64, 1e-8), Value::String("0e-8".into()));
    }

    #[test]
    fn multiprecision_rendering_round_trips() {
        set_default_precision(256);
        let x = Mp::pi();
        let v = certified_real(&x, 1e-40);
        let s = v.as_str().unwrap();
        assert!(s.starts_with("3.14159265358979323846264338327950288419"), "{s}");
        assert_eq!(s.len(), "3.".len() + 40 + "e0".len());
        assert!((parse_real(&v).unwrap() - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(parse_real(&Value::String("-27/4".into())), Some(-6.75));
    }
}
