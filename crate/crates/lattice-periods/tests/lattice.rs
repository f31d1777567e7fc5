use curve_arith::known::{c11a1, c37a1, cm361};
use lattice_periods::{eisenstein_direct, eisenstein_recursion, exact_eisenstein, s_disk_sum, PeriodLattice};
use proptest::prelude::*;
use series_core::{set_default_precision, Cx, Field, Mp, Real, Ring};

fn mp_close(a: &Cx<Mp>, re: &Mp, tol: f64) -> bool {
    let d = (a.re.clone() - re.clone()).abs().to_f64().max(a.im.abs().to_f64());
    d < tol
}

#[test]
fn q_series_invariants_match_c4_c6() {
    set_default_precision(256);
    for e in [c11a1(), c37a1(), cm361()] {
        let l = PeriodLattice::<Mp>::of_curve(&e).unwrap();
        let g = exact_eisenstein(&e, 6);
        assert!(mp_close(&l.g4, &Mp::from_q(&g[&4]), 1e-60), "{}", e.label);
        assert!(mp_close(&l.g6, &Mp::from_q(&g[&6]), 1e-60), "{}", e.label);
    }
}

#[test]
fn s_values() {
    set_default_precision(256);
    let s11 = PeriodLattice::<Mp>::of_curve(&c11a1()).unwrap().s;
    assert!(mp_close(&s11, &Mp::from_f64(0.38124691381667), 1e-13));
    let s361 = PeriodLattice::<Mp>::of_curve(&cm361()).unwrap().s;
    assert!(mp_close(&s361, &Mp::from_i64(-2), 1e-60), "{:?}", s361);
}

#[test]
fn s_agrees_with_disk_summation() {
    for e in [c11a1(), c37a1(), cm361()] {
        let l = PeriodLattice::<f64>::of_curve(&e).unwrap();
        let d = s_disk_sum(&l, &300.0);
        assert!((d - l.s).norm() < 2e-3, "{}: {} vs {}", e.label, d, l.s);
    }
}

#[test]
fn direct_sums_match_q_series_within_bound() {
    let l = PeriodLattice::<f64>::of_curve(&c11a1()).unwrap();
    for (w, g) in [(4, l.g4), (6, l.g6)] {
        let d = eisenstein_direct(&l, w, &60.0).unwrap();
        let err = (d.value - g).norm();
        assert!(err <= d.error_bound, "weight {w}: {err} > {}", d.error_bound);
        assert!(d.error_bound < 2e-3);
    }
}

#[test]
fn recursion_matches_direct_sums_on_two_lattices() {
    let skew = PeriodLattice::<f64>::from_basis(Cx::new(1.3, 0.2), Cx::new(-0.4, 1.7)).unwrap();
    let l37 = PeriodLattice::<f64>::of_curve(&c37a1()).unwrap();
    let l11 = PeriodLattice::<f64>::of_curve(&c11a1()).unwrap();
    for l in [skew, l37, l11] {
        let g = eisenstein_recursion(&l.g4, &l.g6, 12);
        for w in [8, 10, 12] {
            let d = eisenstein_direct(&l, w, &40.0).unwrap();
            let err = (d.value - g[&w]).norm();
            assert!(err <= d.error_bound + 1e-12, "weight {w}: {err}");
        }
    }
}

#[test]
fn tenth_weight_coefficient_is_five_elevenths() {
    let l = PeriodLattice::<f64>::from_basis(Cx::new(1.0, 0.0), Cx::new(0.31, 1.13)).unwrap();
    let d = eisenstein_direct(&l, 10, &40.0).unwrap();
    let predicted = l.g4 * l.g6 * (5.0 / 11.0);
    assert!((d.value - predicted).norm() <= d.error_bound + 1e-12);
    assert!((d.value - predicted * 2.0).norm() > 1e-3);
}

#[test]
fn square_lattice_symmetries() {
    let l = PeriodLattice::<f64>::from_basis(Cx::new(1.0, 0.0), Cx::new(0.0, 1.0)).unwrap();
    assert!(l.g6.norm() < 1e-12);
    let d = eisenstein_direct(&l, 6, &30.0).unwrap();
    assert!(d.value.norm() <= d.error_bound);
    let doubled = PeriodLattice::<f64>::from_basis(Cx::new(2.0, 0.0), Cx::new(0.0, 2.0)).unwrap();
    assert!((doubled.g4 * 16.0 - l.g4).norm() < 1e-12);
    // S(ℤ[i]) = 0 by the same symmetry
    assert!(l.s.norm() < 1e-12);
    assert!(eisenstein_direct(&l, 2, &30.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn homogeneous_and_basis_independent(
        re in -1.0f64..1.0, im in 0.6f64..2.0, sr in 0.3f64..2.0, sa in -3.0f64..3.0,
        a in -3i64..4, b in -3i64..4,
    ) {
        let l = PeriodLattice::<f64>::from_basis(Cx::new(1.0, 0.0), Cx::new(re, im)).unwrap();
        let c = Cx::from_polar(sr, sa);
        let scaled = PeriodLattice::<f64>::from_basis(c, Cx::new(re, im) * c).unwrap();
        let c2 = c * c;
        prop_assert!((scaled.s * c2 - l.s).norm() < 1e-9 * (1.0 + l.s.norm()));
        prop_assert!((scaled.g4 * c2 * c2 - l.g4).norm() < 1e-9 * l.g4.norm());
        // [[a·b+1, a], [b, 1]] has determinant 1
        let w1 = Cx::new(re, im) * (a as f64) + Cx::new((a * b + 1) as f64, 0.0);
        let w2 = Cx::new(re, im) + Cx::new(b as f64, 0.0);
        let other = PeriodLattice::<f64>::from_basis(w1, w2).unwrap();
        prop_assert!((other.s - l.s).norm() < 1e-9 * (1.0 + l.s.norm()));
        prop_assert!((other.area - l.area).abs() < 1e-9);
    }
}
