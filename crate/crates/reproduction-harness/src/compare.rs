//! Tolerance checks between expected data and computed JSON values.

use serde_json::Value;

use crate::format::parse_real;
use crate::Tolerance;

fn as_list(v: &Value) -> Vec<Value> {
    match v {
        Value::Array(a) => a.clone(),
        other => vec![other.clone()],
    }
}

/// Decimal places printed in a displayed value such as "-2.6095".
fn printed_decimals(v: &Value) -> i32 {
    match v {
        Value::String(s) => s.split_once('.').map(|(_, f)| f.len() as i32).unwrap_or(0),
        _ => 0,
    }
}

fn numeric_pairs(expected: &Value, computed: &Value) -> Option<Vec<(f64, f64, Value)>> {
    let (e, c) = (as_list(expected), as_list(computed));
    if e.len() != c.len() {
        return None;
    }
    e.into_iter().zip(c).map(|(e, c)| Some((parse_real(&e)?, parse_real(&c)?, e))).collect()
}

/// Whether computed meets the tolerance, and the largest numeric deviation.
pub fn compare(tol: &Tolerance, expected: &Value, computed: &Value) -> (bool, Option<f64>) {
    if let Tolerance::Max(bound) = tol {
        return match parse_real(computed) {
            Some(r) => (r <= *bound, Some(r)),
            None => (false, None),
        };
    }
    if let Tolerance::Exact = tol {
        let dev = numeric_pairs(expected, computed)
            .map(|ps| ps.iter().map(|(e, c, _)| (e - c).abs()).fold(0.0, f64::max));
        return (expected == computed, dev);
    }
    let Some(pairs) = numeric_pairs(expected, computed) else {
        return (false, None);
    };
    let mut ok = true;
    let mut dev = 0.0f64;
    for (e, c, raw) in pairs {
        let d = (e - c).abs();
        dev = dev.max(d);
        ok &= match tol {
            Tolerance::Abs(t) => d <= *t,
            Tolerance::Rel(t) => d <= t * e.abs(),
            Tolerance::Display(t) => d < 10f64.powi(-printed_decimals(&raw)) + t,
            Tolerance::RoundedInteger(t) => d <= *t && c.round() == e,
            Tolerance::Exact | Tolerance::Max(_) => unreachable!(),
        };
    }
    (ok, Some(dev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn kinds() {
        assert!(compare(&Tolerance::Exact, &json!([1, -2]), &json!([1, -2])).0);
        assert_eq!(compare(&Tolerance::Exact, &json!(["17/5"]), &json!(["17/5"])), (true, Some(0.0)));
        assert!(!compare(&Tolerance::Exact, &json!(true), &json!(false)).0);
        assert!(compare(&Tolerance::Abs(1e-6), &json!(0.2538418), &json!("2.538418608e-1")).0);
        assert!(!compare(&Tolerance::Abs(1e-8), &json!(0.2538418), &json!("2.538418608e-1")).0);
        assert!(compare(&Tolerance::Display(1e-6), &json!(["0.9520"]), &json!(["9.52079e-1"])).0);
        assert!(!compare(&Tolerance::Display(1e-6), &json!(["0.9520"]), &json!(["9.5221e-1"])).0);
        assert!(compare(&Tolerance::RoundedInteger(1e-4), &json!(66), &json!("6.600000e1")).0);
        assert!(!compare(&Tolerance::RoundedInteger(1e-4), &json!(66), &json!("6.70000e1")).0);
        assert!(compare(&Tolerance::Rel(1e-9), &json!(0.2), &json!("2.0000000000e-1")).0);
        assert!(compare(&Tolerance::Max(1e-20), &json!(null), &json!("3.1e-40")).0);
        assert!(!compare(&Tolerance::Abs(1.0), &json!([1, 2]), &json!([1])).0);
    }
}
