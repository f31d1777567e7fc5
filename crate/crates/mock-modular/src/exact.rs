//! ζ(Λ_E; 𝓔_E(z)) with exact rational coefficients.
//!
//! X = ℘(𝓔) satisfies (q dX/dq)² = F²·(4X³ − g₂X − g₃) with g₂ = c₄/12 and
//! g₃ = c₆/216, which determines X coefficient by coefficient; then
//! q d/dq ζ(𝓔) = −X·F.

use curve_arith::{EllipticCurve, NewformCoefficients};
use lattice_periods::exact_eisenstein;
use series_core::{rationalize, Cx, LaurentQSeries, QSeries, Real, Q};
use weierstrass_fn::zeta_laurent;

use crate::eichler_series;

/// Index helper for a coefficient vector starting at exponent `lo`.
struct Dense {
    lo: i64,
    c: Vec<Q>,
}

impl Dense {
    fn new(lo: i64, hi: i64) -> Self {
        Dense { lo, c: vec![Q::from(0); (hi - lo + 1) as usize] }
    }

    fn get(&self, k: i64) -> &Q {
        &self.c[(k - self.lo) as usize]
    }

    fn set(&mut self, k: i64, v: Q) {
        let i = (k - self.lo) as usize;
        self.c[i] = v;
    }

    fn add(&mut self, k: i64, v: &Q) {
        let i = (k - self.lo) as usize;
        self.c[i] = &self.c[i] + v;
    }
}

/// ℘(𝓔) = Σ_{k≥−2} x_k q^k through q^{k_max}.
fn wp_of_eichler(e: &EllipticCurve, a: &NewformCoefficients, k_max: i64) -> Dense {
    let inv = e.invariants();
    let g2 = inv.c4.clone() * Q::new(1, 12);
    let g3 = inv.c6.clone() * Q::new(1, 216);
    let m = (k_max + 8) as usize;
    let f: Vec<i64> = (0..m).map(|i| if i == 0 || i > a.n_max() { 0 } else { a.get(i) }).collect();
    // F² as integers (exact: |a(n)| ≤ 2√n keeps these small)
    let mut f2 = vec![0i64; m];
    for i in 1..m {
        if f[i] != 0 {
            for j in 1..m - i {
                f2[i + j] += f[i] * f[j];
            }
        }
    }
    let mut x = Dense::new(-2, k_max);
    let mut x2 = Dense::new(-4, k_max);
    let mut x3 = Dense::new(-6, k_max);
    x.set(-2, Q::from(1));
    x2.set(-4, Q::from(1));
    x3.set(-6, Q::from(1));
    for n in -1..=k_max {
        // X² at exponent n−2, without the two x_{−2}·x_n terms
        let j = n - 2;
        let mut s2 = Q::from(0);
        for i in -1..n {
            let k = j - i;
            if (-1..=n - 1).contains(&k) {
                s2 += x.get(i) * x.get(k);
            }
        }
        x2.set(j, s2);
        // X³ at exponent n−4, without the 3·x_{−2}²·x_n term
        let j3 = n - 4;
        let mut s3 = Q::from(0);
        for i in -2..n {
            let k = j3 - i;
            if k >= -4 {
                s3 += x.get(i) * x2.get(k);
            }
        }
        x3.set(j3, s3);
        // (DX)² at exponent n−2, without the x_n terms
        let ex = n - 2;
        let mut s = Q::from(0);
        for i in -2..n {
            let k = ex - i;
            if (-2..=n - 1).contains(&k) {
                s += x.get(i) * x.get(k) * Q::from(i * k);
            }
        }
        let mut t = Q::from(0);
        for i in 2..m as i64 {
            let jj = ex - i;
            if jj < -6 {
                break;
            }
            let fi = f2[i as usize];
            if fi == 0 {
                continue;
            }
            let mut inner = x3.get(jj) * Q::from(4);
            if (-2..n).contains(&jj) {
                inner -= &g2 * x.get(jj);
            }
            if jj == 0 {
                inner -= &g3;
            }
            t += inner * Q::from(fi);
        }
        let xn = (s - t) * Q::new(1, 4 * (n + 3));
        x2.add(j, &(xn.clone() * Q::from(2)));
        x3.add(j3, &(xn.clone() * Q::from(3)));
        x.set(n, xn);
    }
    x
}

/// ζ(Λ_E; 𝓔_E) = Σ R(n)qⁿ through q^{n_max}, in O(n_max²) exact operations.
pub fn zeta_of_eichler_exact(e: &EllipticCurve, a: &NewformCoefficients, n_max: i64) -> QSeries {
    let x = wp_of_eichler(e, a, n_max + 1);
    let mut r = vec![Q::from(0); (n_max + 2).max(0) as usize];
    for n in -1..=n_max {
        let v = if n == 0 {
            Q::new(-a.get(2), 2)
        } else {
            let mut s = Q::from(0);
            for i in -2..n {
                let k = n - i;
                if k >= 1 && (k as usize) <= a.n_max() {
                    let ak = a.get(k as usize);
                    if ak != 0 {
                        s += x.get(i) * Q::from(ak);
                    }
                }
            }
            -s * Q::new(1, n)
        };
        r[(n + 1) as usize] = v;
    }
    QSeries::new(-1, r, n_max + 1).expect("length matches precision")
}

/// The same series by substituting 𝓔_E into the Laurent expansion of ζ; O(n_max³).
pub fn zeta_of_eichler_compose(e: &EllipticCurve, a: &NewformCoefficients, n_max: i64) -> QSeries {
    let weight = (n_max + 4) as u32;
    let g = exact_eisenstein(e, weight);
    let z = zeta_laurent(&g[&4], &g[&6], n_max + 2);
    let eich = eichler_series(a, (n_max + 2) as usize);
    z.compose(&eich).expect("𝓔 has valuation 1").truncate(n_max + 1)
}

/// Replace each coefficient by its best rational approximation with denominator
/// ≤ `max_den`, if every one lies within `tol` of it and has negligible imaginary part.
pub fn rationalize_series<T: Real>(s: &LaurentQSeries<Cx<T>>, max_den: i64, tol: f64) -> Option<QSeries> {
    let tol_t = T::from_f64(tol);
    let mut out = Vec::with_capacity(s.coefficients().len());
    for (_, c) in s.iter() {
        if c.im.abs() >= tol_t {
            return None;
        }
        out.push(rationalize(&c.re, max_den, &tol_t)?);
    }
    Some(QSeries::new(s.min_exponent(), out, s.precision()).expect("same shape"))
}
