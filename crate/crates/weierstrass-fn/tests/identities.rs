use curve_arith::known::{c11a1, c37a1, cm361};
use curve_arith::EllipticCurve;
use lattice_periods::exact_eisenstein;
use proptest::prelude::*;
use series_core::{set_default_precision, ComplexFns, Cx, Field, Mp, Real, Ring, Q};
use weierstrass_fn::{wp_laurent, zeta_laurent, WeierstrassFn};

fn curves() -> Vec<EllipticCurve> {
    vec![c11a1(), c37a1(), cm361()]
}

fn evaluator(e: &EllipticCurve) -> WeierstrassFn<Mp> {
    set_default_precision(256);
    WeierstrassFn::from_curve(e).unwrap()
}

/// x·ω₁ + y·ω₂ in the curve's lattice.
fn point(f: &WeierstrassFn<Mp>, x: f64, y: f64) -> Cx<Mp> {
    let l = f.lattice();
    l.omega1.clone().scale(Mp::from_f64(x)) + l.omega2.clone().scale(Mp::from_f64(y))
}

fn small(z: &Cx<Mp>, tol: f64) -> bool {
    z.cabs().to_f64() < tol
}

#[test]
fn laurent_derivative_relation_is_exact() {
    for e in curves() {
        let g = exact_eisenstein(&e, 6);
        let z = zeta_laurent(&g[&4], &g[&6], 40);
        let p = wp_laurent(&g[&4], &g[&6], 39);
        assert_eq!(z.q_derivative().neg().shift(-1), p);
        assert!(z.iter().all(|(n, c)| n % 2 != 0 || *c == Q::from(0)));
        assert!(p.iter().all(|(n, c)| n % 2 == 0 || *c == Q::from(0)));
    }
}

#[test]
fn half_period_value_is_a_real_root_of_the_cubic() {
    let f = evaluator(&c11a1());
    let half = f.lattice().omega1.clone().scale(Mp::from_f64(0.5));
    let x = f.wp(&half).unwrap();
    assert!(x.im.abs().to_f64() < 1e-60);
    let g = exact_eisenstein(&c11a1(), 6);
    let (g2, g3) = (Mp::from_q(&(g[&4].clone() * Q::from(60))), Mp::from_q(&(g[&6].clone() * Q::from(140))));
    let r = x.re.clone();
    let cubic = Mp::from_i64(4) * r.clone() * r.clone() * r.clone() - g2 * r - g3;
    assert!(cubic.abs().to_f64() < 1e-55, "{}", cubic.to_f64());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn addition_law(x1 in -2.0f64..2.0, y1 in -2.0f64..2.0, x2 in -2.0f64..2.0, y2 in -2.0f64..2.0) {
        for e in curves() {
            let f = evaluator(&e);
            let (z1, z2) = (point(&f, x1, y1), point(&f, x2, y2));
            let (Ok(a), Ok(b), Ok(c)) = (f.eval(&z1), f.eval(&z2), f.eval(&(z1.clone() + z2.clone()))) else {
                continue;
            };
            let rhs = a.zeta.clone() + b.zeta.clone()
                + (a.wp_prime - b.wp_prime) / (a.wp - b.wp).scale(Mp::from_i64(2));
            let resid = (c.zeta - rhs).cabs().to_f64();
            prop_assert!(resid < 1e-20, "{}: residual {:e}", e.label, resid);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn weierstrass_equation(x in -3.0f64..3.0, y in -3.0f64..3.0) {
        for e in curves() {
            let f = evaluator(&e);
            let z = point(&f, x, y);
            let Ok(v) = f.eval(&z) else { continue };
            let g = exact_eisenstein(&e, 6);
            let g2 = Cx::real(Mp::from_q(&(g[&4].clone() * Q::from(60))));
            let g3 = Cx::real(Mp::from_q(&(g[&6].clone() * Q::from(140))));
            let p = v.wp.clone();
            let resid = v.wp_prime.clone() * v.wp_prime.clone()
                - (p.clone() * p.clone() * p.clone()).scale(Mp::from_i64(4)) + g2 * p + g3;
            let scale = 1.0 + v.wp.cabs().to_f64().powi(3);
            prop_assert!(resid.cabs().to_f64() / scale < 1e-20);
        }
    }

    #[test]
    fn quasi_periods(x in -1.0f64..1.0, y in -1.0f64..1.0) {
        for e in curves() {
            let f = evaluator(&e);
            let z = point(&f, x, y);
            for w in [f.lattice().omega1.clone(), f.lattice().omega2.clone()] {
                let (Ok(a), Ok(b)) = (f.zeta(&(z.clone() + w.clone())), f.zeta(&z)) else { continue };
                prop_assert!(small(&(a - b - f.quasi_period(&w)), 1e-20));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn completed_zeta_is_periodic_and_odd(x in -0.5f64..0.5, y in -0.5f64..0.5, m in -4i64..5, n in -4i64..5) {
        for e in curves() {
            let f = evaluator(&e);
            let z = point(&f, x, y);
            let w = point(&f, m as f64, n as f64);
            let Ok(a) = f.completed_zeta(&z) else { continue };
            let b = f.completed_zeta(&(z.clone() + w)).unwrap();
            prop_assert!(small(&(a.total() - b.total()), 1e-25));
            let c = f.completed_zeta(&-z).unwrap();
            prop_assert!(small(&(a.total() + c.total()), 1e-25));
        }
    }
}

#[test]
fn f64_and_multiprecision_agree() {
    let f = WeierstrassFn::<f64>::from_curve(&c37a1()).unwrap();
    let g = evaluator(&c37a1());
    let z = Cx::new(1.7, 2.9);
    let a = f.zeta(&z).unwrap();
    let b = g.zeta(&Cx::new(Mp::from_f64(1.7), Mp::from_f64(2.9))).unwrap();
    assert!((a.re - b.re.to_f64()).abs() < 1e-12 && (a.im - b.im.to_f64()).abs() < 1e-12);
}
