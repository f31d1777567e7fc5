use curve_arith::known::{c11a1, c37a1};
use curve_arith::newform_coefficients;
use l_values::{central_derivative, central_value, LSeriesJob, Target};
use series_core::{Mp, Real};

#[test]
fn value_11a1() {
    let job = LSeriesJob::for_twist(&c11a1(), 1, 1, 1e-40).unwrap();
    assert_eq!(job.target, Target::Value);
    let v = central_value::<Mp>(&job).unwrap();
    // the real period over 5, from the period lattice
    assert!((v.value.to_f64() - 0.253_841_860_855_910_7).abs() < 1e-15);
    assert!(v.err_bound < 1e-39);
}

#[test]
fn derivatives_37a1() {
    // table values, ten decimals
    let table = [(1, 0.3059997738), (12, 4.2986147986), (21, 9.0023868003), (28, 4.3272602496), (33, 3.6219567911)];
    for (d, want) in table {
        let job = LSeriesJob::for_twist(&c37a1(), -1, d, 1e-20).unwrap();
        assert_eq!(job.root_number, -1);
        let v = central_derivative::<Mp>(&job).unwrap();
        assert!((v.value.to_f64() - want).abs() < 1e-9, "d = {d}: {}", v.value.to_sci(14));
    }
}

#[test]
fn rank_three_twists_vanish() {
    // a 1e-8 budget is far above double rounding over ~10⁵ terms
    for d in [1489, 4393] {
        let job = LSeriesJob::for_twist(&c37a1(), -1, d, 1e-8).unwrap();
        let v = central_derivative::<f64>(&job).unwrap();
        assert!(v.err_bound < 1e-7);
        assert!(v.value.abs() < 1e-7, "d = {d}: {:e}", v.value);
    }
}

#[test]
fn doubling_terms_stays_within_bound() {
    let e = c11a1();
    let coeffs = newform_coefficients(&e, 400).unwrap();
    let job = LSeriesJob::new(&coeffs, 1, Target::Value, 1e-12).unwrap();
    let mut doubled = job.clone();
    doubled.terms = (2 * job.terms).min(400);
    doubled.coefficients = coeffs.as_slice()[..=doubled.terms].to_vec();
    let a = central_value::<Mp>(&job).unwrap();
    let b = central_value::<Mp>(&doubled).unwrap();
    assert!((a.value - b.value).abs().to_f64() < a.err_bound);
}
