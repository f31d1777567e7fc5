use curve_arith::known::{c11a1, cm361};
use hecke_padic::{hecke_tpn, padic_congruence_check, s_p_digits, PadicContext};
use proptest::prelude::*;
use series_core::{QSeries, Q};

#[test]
fn cm_levels_one_to_three() {
    let ctx = PadicContext::new(&cm361(), 5, 3, 10).unwrap();
    // T₂ + 2F
    let r2 = padic_congruence_check(&ctx, 2, 2, Some(Q::from(-2))).unwrap().residual;
    assert_eq!(r2.coeff(-25), Q::new(25, 4));
    assert_eq!(r2.coeff(1), Q::new(-9525, 4));
    assert_eq!(r2.coeff(2), Q::from(-2031975));
    for n in 1..=3u32 {
        let rep = padic_congruence_check(&ctx, n, n as i64, Some(Q::from(-2))).unwrap();
        assert!(rep.passes, "n = {n}, min valuation {:?}", rep.min_valuation);
        assert_eq!(rep.window, (-(5i64.pow(n)), 10));
        let rep = padic_congruence_check(&ctx, n, n as i64, None).unwrap();
        assert!(rep.passes, "n = {n} with c_n");
    }
    assert_eq!(s_p_digits(&ctx, 3).unwrap(), vec![3, 4, 4]);
}

#[test]
fn example_11a1_first_level() {
    let ctx = PadicContext::new(&c11a1(), 5, 1, 10).unwrap();
    // T₁ − 4F
    let rep = padic_congruence_check(&ctx, 1, 1, Some(Q::from(4))).unwrap();
    assert!(rep.passes);
    assert_eq!(rep.residual.coeff(-5), Q::from(-5));
    assert_eq!(rep.residual.coeff(1), Q::new(-50, 3));
    assert_eq!(rep.residual.coeff(2), Q::new(-65, 3));
    assert_eq!(ctx.c_n(1).unwrap(), Q::new(-38, 3));
}

#[test]
fn digits_11a1() {
    let ctx = PadicContext::new(&c11a1(), 5, 4, 1).unwrap();
    let d = s_p_digits(&ctx, 4).unwrap();
    assert_eq!(d, vec![4, 0, 2, 4]);
    assert!(d.iter().all(|&x| x < 5));
    for n in 1..=4u32 {
        assert!(padic_congruence_check(&ctx, n, n as i64, None).unwrap().passes, "n = {n}");
    }
}

fn random_series(coeffs: Vec<(i64, i64)>) -> QSeries {
    let v: Vec<Q> = coeffs.into_iter().map(|(a, b)| Q::new(a, b)).collect();
    QSeries::from_coeffs(-3, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn composition_identity(
        c in prop::collection::vec((-50i64..50, 1i64..9), 400),
        p in prop::sample::select(vec![2u64, 3, 5]),
        n in 1u32..3,
    ) {
        let g = random_series(c);
        let hi = 396 / (p as i64).pow(n + 1) - 1;
        prop_assume!(hi >= 1);
        let lo = -3;
        let lhs = hecke_tpn(&hecke_tpn(&g, p, n, lo * (p as i64), hi * (p as i64)).unwrap(), p, 1, lo, hi).unwrap();
        let a = hecke_tpn(&g, p, n + 1, lo, hi).unwrap();
        let b = hecke_tpn(&g, p, n - 1, lo, hi).unwrap();
        let rhs = a.add(&b.scale(&Q::from(p as i64)));
        for m in lo..=hi {
            prop_assert_eq!(lhs.coeff(m), rhs.coeff(m), "m = {}", m);
        }
    }
}
