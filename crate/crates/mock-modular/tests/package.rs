use curve_arith::known::{c11a1, c37a1, cm361};
use curve_arith::EllipticCurve;
use mock_modular::{atkin_lehner_matrix, mobius, Matrix2, MockError, MockFormPackage, PackageOptions};
use proptest::prelude::*;
use series_core::arith::egcd;
use series_core::{promote, set_default_precision, ComplexFns, Cx, Field, Mp, Real, Ring, Q};

fn package(e: &EllipticCurve, n_max: usize, min_im: f64) -> MockFormPackage<Mp> {
    set_default_precision(256);
    MockFormPackage::new(e, &PackageOptions { n_max, min_im }).unwrap()
}

fn cx(re: f64, im: f64) -> Cx<Mp> {
    Cx::new(Mp::from_f64(re), Mp::from_f64(im))
}

fn seventeen_fifths() -> Cx<Mp> {
    Cx::real(Mp::from_q(&Q::new(17, 5)))
}

fn close(a: &Cx<Mp>, b: &Cx<Mp>, tol: f64) -> bool {
    (a.clone() - b.clone()).cabs().to_f64() < tol
}

#[test]
fn eichler_derivative_is_the_newform() {
    for e in [c11a1(), c37a1(), cm361()] {
        let p = package(&e, 40, 0.3);
        assert_eq!(p.eichler.q_derivative(), p.coeffs.series().truncate(41));
    }
}

#[test]
fn cm_expansion_is_rational() {
    let p = package(&cm361(), 12, 0.3);
    let r = p.zhat_plus_rational(10_000, 1e-30).expect("rational coefficients");
    let expect = [
        (-1, Q::from(1)), (0, Q::from(0)), (1, Q::from(2)), (2, Q::new(1, 2)), (3, Q::new(-7, 3)),
        (4, Q::from(-1)), (5, Q::from(2)), (6, Q::from(4)), (7, Q::from(0)), (8, Q::new(-27, 4)),
        (9, Q::from(-5)), (10, Q::new(17, 2)), (11, Q::from(14)),
    ];
    for (n, v) in expect {
        assert_eq!(r.coeff(n), v, "q^{n}");
    }
    assert_eq!(p.s_rational(10_000, 1e-30), Some(Q::from(-2)));
}

#[test]
fn numeric_expansions() {
    let cases: [(EllipticCurve, [f64; 5]); 2] = [
        (c11a1(), [0.9520, 1.5479, 0.3493, 1.9760, -2.6095]),
        (c37a1(), [2.1132, 2.3867, 4.2201, 5.5566, 8.3547]),
    ];
    for (e, vals) in cases {
        let p = package(&e, 8, 0.3);
        assert!(close(&p.zhat_plus.coeff(-1), &cx(1.0, 0.0), 1e-60));
        assert!(close(&p.zhat_plus.coeff(0), &cx(1.0, 0.0), 1e-60));
        for (i, v) in vals.iter().enumerate() {
            let c = p.zhat_plus.coeff(i as i64 + 1);
            assert!((c.re.to_f64() - v).abs() < 1e-4, "{} q^{}: {}", e.label, i + 1, c.re.to_f64());
        }
    }
}

#[test]
fn atkin_lehner_period_of_11a1() {
    let p = package(&c11a1(), 12, 0.2);
    let om = &p.omega[&11];
    assert!((om.re.to_f64() - 0.2538418608559107).abs() < 1e-15);
    let fifth = p.weierstrass.lattice().omega1.clone().scale(Mp::from_q(&Q::new(1, 5)));
    assert!(close(om, &fifth, 1e-60));
    let c0 = &p.cusp_constants[&11];
    assert!(close(c0, &seventeen_fifths(), 1e-50));
    assert!(series_core::rationalize(&c0.re, 10_000, &Mp::from_f64(1e-30)) == Some(Q::new(17, 5)));
    assert!(matches!(p.normalize_star(-3), Err(MockError::CuspConstantsDiffer(_))));
}

#[test]
fn fricke_expansion_of_11a1_against_u11() {
    // computed relation: holomorphic part at 0 = −11·(ẑ⁺|U(11)) + 72/5
    let p = package(&c11a1(), 130, 0.2);
    let big = package(&c11a1(), 12, 0.2);
    let h = big.cusp_expansion(11).unwrap();
    assert!(!h.omega_in_lattice);
    assert!(close(&h.constant, &seventeen_fifths(), 1e-50));
    assert!(close(&h.series.coeff(0), &seventeen_fifths(), 1e-50));
    for n in 1..=10i64 {
        let lhs = h.series.coeff(n);
        let rhs = p.zhat_plus.coeff(11 * n).scale(Mp::from_i64(-11));
        assert!(close(&lhs, &rhs, 1e-30), "q^{n}");
    }
}

#[test]
fn star_normalization_of_37a1() {
    let p = package(&c37a1(), 10, 0.2);
    assert!(close(&p.cusp_constants[&1], &cx(1.0, 0.0), 1e-60));
    assert!(close(&p.cusp_constants[&37], &cx(1.0, 0.0), 1e-40));
    let star = p.normalize_star(-3).unwrap();
    assert!(star.series.coeff(0).cabs().to_f64() < 1e-60);
    let expect = (p.zhat_plus.coeff(1).re.clone() * star.scale.clone()).to_f64();
    assert!((star.series.coeff(1).re.to_f64() - expect).abs() < 1e-15);
    assert!((star.scale.to_f64() - 1.0 / (111f64).sqrt()).abs() < 1e-15);
    assert!(matches!(p.normalize_star(-12), Err(MockError::NotFundamental(-12))));
    let xi = p.xi0_coefficient().to_f64();
    assert!((xi - std::f64::consts::PI / 7.33813274078958).abs() < 1e-12);
}

#[test]
fn omega_is_independent_of_basepoint() {
    for e in [c11a1(), c37a1()] {
        let p = package(&e, 10, 0.04);
        let n = e.conductor;
        let a = p.omega_at(n, &cx(0.1, 0.3)).unwrap();
        let b = p.omega_at(n, &cx(-0.27, 0.2)).unwrap();
        let c = p.omega_at(n, &cx(0.02, 0.45)).unwrap();
        assert!(close(&a, &p.omega[&n], 1e-12) && close(&b, &a, 1e-12) && close(&c, &a, 1e-12));
    }
}

#[test]
fn series_and_pointwise_evaluation_agree() {
    let p = package(&c37a1(), 80, 0.3);
    for z in [cx(0.0, 0.5), cx(0.3, 0.4), cx(-0.45, 0.41), cx(0.12, 0.9), cx(0.5, 0.6)] {
        let a = p.zhat_eval(&z).unwrap();
        let b = p.zhat_from_series(&z).unwrap();
        assert!(close(&a.total(), &b.total(), 1e-15));
        assert!(close(&a.holomorphic, &b.holomorphic, 1e-15));
    }
}

#[test]
fn fricke_evaluation_matches_direct() {
    let p = package(&c37a1(), 10, 0.02);
    let zp = cx(0.13, 0.21);
    let w = atkin_lehner_matrix(37, 37).unwrap();
    let z = mobius(&w, &zp);
    let a = p.zhat_eval(&z).unwrap().total();
    let b = p.zhat_eval_fricke(&zp).unwrap().total();
    assert!(close(&a, &b, 1e-30));
}

fn gamma0(n: i64, a_seed: i64, d_seed: i64) -> Option<Matrix2> {
    // [[a, b], [N, d]] with a·d − N·b = 1
    let d = d_seed;
    let (g, x, _) = egcd(d, n);
    if g != 1 {
        return None;
    }
    let a = x + n * a_seed;
    let b = (a * d - 1) / n;
    Some(Matrix2 { a, b, c: n, d })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn invariant_under_gamma0(a_seed in -2i64..3, d_seed in 1i64..30, y in 1.0f64..2.0) {
        for e in [c11a1(), c37a1(), cm361()] {
            let n = e.conductor as i64;
            let Some(g) = gamma0(n, a_seed, d_seed) else { continue };
            prop_assert_eq!(g.det(), 1);
            // z near −d/c, so that both z and γz sit at height ≈ y/c
            let z = cx(-(g.d as f64) / n as f64, y / n as f64);
            let gz = mobius(&g, &z);
            let p = package(&e, 4, (1.0 / (n as f64 * 2.0)).min(gz.im.to_f64()) * 0.9);
            let a = p.zhat_eval(&z).unwrap().total();
            let b = p.zhat_eval(&gz).unwrap().total();
            prop_assert!(close(&a, &b, 1e-15), "{}: {:?} vs {:?}", e.label, a, b);
        }
    }
}

#[test]
fn promote_is_explicit() {
    let p = package(&cm361(), 6, 0.3);
    let s = promote::<Mp>(&p.zeta_eichler);
    assert!(close(&s.coeff(2), &cx(0.5, 0.0), 1e-70));
}

