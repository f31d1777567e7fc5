//! Seeded property suites. Each returns the worst residual or the number of
//! violations, with per-trial detail.

use curve_arith::ap_point_count;
use hecke_padic::hecke_tpn;
use heegner_traces::class_number;
use lattice_periods::{eisenstein_direct, eisenstein_recursion, PeriodLattice};
use mock_modular::{mobius, Matrix2, MockFormPackage, PackageOptions};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use series_core::arith::{egcd, gcd, primes_upto};
use series_core::{ComplexFns, Cx, Mp, QSeries, Real, Ring, Q};
use weierstrass_fn::WeierstrassFn;

use crate::ops::Args;
use crate::Outcome;

fn rng(a: &Args) -> Result<StdRng, String> {
    Ok(StdRng::seed_from_u64(a.int("seed")? as u64))
}

fn residual(worst: f64, detail: Value) -> Result<Outcome, String> {
    Ok(Outcome { computed: Value::String(format!("{worst:.3e}")), detail })
}

fn count(bad: usize, detail: Value) -> Result<Outcome, String> {
    Ok(Outcome { computed: json!(bad), detail })
}

/// ζ(z₁+z₂) against ζ(z₁)+ζ(z₂)+(℘′(z₁)−℘′(z₂))/(2(℘(z₁)−℘(z₂))).
pub fn addition_law(a: &Args) -> Result<Outcome, String> {
    let mut rng = rng(a)?;
    let pairs = a.int("pairs")?;
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for e in a.curves()? {
        let f = WeierstrassFn::<Mp>::from_curve(&e).map_err(|x| x.to_string())?;
        let l = f.lattice();
        let point = |x: f64, y: f64| l.omega1.clone().scale(Mp::from_f64(x)) + l.omega2.clone().scale(Mp::from_f64(y));
        let mut curve_worst = 0.0f64;
        for _ in 0..pairs {
            let z1 = point(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let z2 = point(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let v1 = f.eval(&z1).map_err(|x| x.to_string())?;
            let v2 = f.eval(&z2).map_err(|x| x.to_string())?;
            let v3 = f.eval(&(z1 + z2)).map_err(|x| x.to_string())?;
            let rhs = v1.zeta + v2.zeta + (v1.wp_prime - v2.wp_prime) / (v1.wp - v2.wp).scale(Mp::from_i64(2));
            curve_worst = curve_worst.max((v3.zeta - rhs).cabs().to_f64());
        }
        worst = worst.max(curve_worst);
        rows.push(json!({ "curve": e.label, "pairs": pairs, "max_residual": format!("{curve_worst:.3e}") }));
    }
    residual(worst, Value::Array(rows))
}

/// |ẑ(γz) − ẑ(z)| for γ = [[a, b], [N, d]] ∈ Γ₀(N), with z near −d/N so
/// that z and γz sit at comparable heights.
pub fn gamma0_invariance(a: &Args) -> Result<Outcome, String> {
    let mut rng = rng(a)?;
    let pairs = a.int("pairs")?;
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for e in a.curves()? {
        let n = e.conductor as i64;
        let mut done = 0;
        while done < pairs {
            let d = rng.gen_range(1..30i64);
            let (g, x, _) = egcd(d, n);
            if g != 1 {
                continue;
            }
            let a_ = x + n * rng.gen_range(-2..3i64);
            let m = Matrix2 { a: a_, b: (a_ * d - 1) / n, c: n, d };
            let y: f64 = rng.gen_range(1.0..2.0);
            let z = Cx::new(Mp::from_f64(-(d as f64) / n as f64), Mp::from_f64(y / n as f64));
            let gz = mobius(&m, &z);
            let min_im = (1.0 / (2.0 * n as f64)).min(gz.im.to_f64()) * 0.9;
            let pkg = MockFormPackage::<Mp>::new(&e, &PackageOptions { n_max: 4, min_im }).map_err(|x| x.to_string())?;
            let lhs = pkg.zhat_eval(&z).map_err(|x| x.to_string())?.total();
            let rhs = pkg.zhat_eval(&gz).map_err(|x| x.to_string())?.total();
            let r = (lhs - rhs).cabs().to_f64();
            worst = worst.max(r);
            rows.push(json!({ "curve": e.label, "gamma": [m.a, m.b, m.c, m.d], "residual": format!("{r:.3e}") }));
            done += 1;
        }
    }
    residual(worst, Value::Array(rows))
}

/// Largest excess of |G_k(recursion) − G_k(direct sum)| over the direct
/// sum's truncation bound.
pub fn eisenstein_vs_direct(a: &Args) -> Result<Outcome, String> {
    let radius = a.float("radius")?;
    let weights = a.ints("weights")?;
    let max_w = *weights.iter().max().unwrap_or(&12) as u32;
    let mut worst = f64::NEG_INFINITY;
    let mut rows = Vec::new();
    for e in a.curves()? {
        let l = PeriodLattice::<f64>::of_curve(&e).map_err(|x| x.to_string())?;
        let g = eisenstein_recursion(&l.g4, &l.g6, max_w);
        for &w in &weights {
            let d = eisenstein_direct(&l, w as u32, &radius).map_err(|x| x.to_string())?;
            let err = (d.value - g[&(w as u32)]).norm();
            worst = worst.max(err - d.error_bound);
            rows.push(json!({ "curve": e.label, "weight": w, "difference": format!("{err:.3e}"), "bound": format!("{:.3e}", d.error_bound) }));
        }
    }
    residual(worst, Value::Array(rows))
}

/// T(p)∘T(pⁿ) = T(p^{n+1}) + p·T(p^{n−1}) on random rational series.
pub fn hecke_composition(a: &Args) -> Result<Outcome, String> {
    let mut rng = rng(a)?;
    let trials = a.int("trials")?;
    let mut bad = 0;
    let mut rows = Vec::new();
    let mut done = 0;
    while done < trials {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let n: u32 = rng.gen_range(1..3);
        let hi = 396 / (p as i64).pow(n + 1) - 1;
        if hi < 1 {
            continue;
        }
        let coeffs: Vec<Q> = (0..400).map(|_| Q::new(rng.gen_range(-50..50), rng.gen_range(1..9))).collect();
        let g = QSeries::from_coeffs(-3, coeffs);
        let lo = -3;
        let pi = p as i64;
        let inner = hecke_tpn(&g, p, n, lo * pi, hi * pi).map_err(|x| x.to_string())?;
        let lhs = hecke_tpn(&inner, p, 1, lo, hi).map_err(|x| x.to_string())?;
        let up = hecke_tpn(&g, p, n + 1, lo, hi).map_err(|x| x.to_string())?;
        let down = hecke_tpn(&g, p, n - 1, lo, hi).map_err(|x| x.to_string())?;
        let rhs = up.add(&down.scale(&Q::from(pi)));
        let ok = (lo..=hi).all(|m| lhs.coeff(m) == rhs.coeff(m));
        bad += usize::from(!ok);
        rows.push(json!({ "p": p, "n": n, "window": [lo, hi], "holds": ok }));
        done += 1;
    }
    count(bad, Value::Array(rows))
}

/// Primitive reduced forms counted directly from the reduction conditions.
fn brute_class_number(d: i64) -> usize {
    let mut h = 0;
    for a in 1..=-d {
        for b in -a..=a {
            for c in a..=-d {
                if b * b - 4 * a * c != d || gcd(gcd(a, b), c) != 1 {
                    continue;
                }
                if b < 0 && (b == -a || a == c) {
                    continue;
                }
                h += 1;
            }
        }
    }
    h
}

pub fn class_numbers(a: &Args) -> Result<Outcome, String> {
    let mut bad = 0;
    let mut rows = Vec::new();
    for d in a.ints("discriminants")? {
        let (h, oracle) = (class_number(d), brute_class_number(d));
        bad += usize::from(h != oracle);
        rows.push(json!({ "d": d, "h": h, "oracle": oracle }));
    }
    count(bad, Value::Array(rows))
}

/// a_p² ≤ 4p at random good primes below the bound.
pub fn hasse_bound(a: &Args) -> Result<Outcome, String> {
    let mut rng = rng(a)?;
    let per_curve = a.int("primes")? as usize;
    let primes = primes_upto(a.int("bound")? as usize);
    let mut bad = 0;
    let mut rows = Vec::new();
    for e in a.curves()? {
        let good: Vec<u64> = primes.iter().copied().filter(|p| e.conductor % p != 0).collect();
        for _ in 0..per_curve {
            let p = good[rng.gen_range(0..good.len())];
            let ap = ap_point_count(&e, p).map_err(|x| x.to_string())?;
            let ok = (ap * ap) as u64 <= 4 * p;
            bad += usize::from(!ok);
            rows.push(json!({ "curve": e.label, "p": p, "a_p": ap }));
        }
    }
    count(bad, Value::Array(rows))
}
