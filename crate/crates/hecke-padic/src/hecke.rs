//! T(pⁿ) on weight-2 q-series: the coefficient of qᵐ in G|T(pⁿ) is
//! Σ_{j=0}^{min(ord_p m, n)} p^j·b(p^{n−2j}m).

use rug::Integer;
use series_core::arith::is_prime;
use series_core::{QSeries, Q};

use crate::PadicError;

/// ord_p(x), or `None` for x = 0.
pub fn valuation(x: &Q, p: u64) -> Option<i64> {
    x.valuation(p)
}

fn ord(m: i64, p: i64) -> u32 {
    if m == 0 {
        return u32::MAX;
    }
    let mut m = m.abs();
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    k
}

/// G|T(pⁿ) on the window [lo, hi], where G = Σ b(m)qᵐ has weight 2.
pub fn hecke_tpn(g: &QSeries, p: u64, n: u32, lo: i64, hi: i64) -> Result<QSeries, PadicError> {
    let pi = p as i64;
    let pn = pi.pow(n);
    let needed = hi.max(0) * pn;
    if needed >= g.precision() {
        return Err(PadicError::Precision { n, hi, needed, known: g.precision() - 1 });
    }
    let mut out = Vec::with_capacity((hi - lo + 1).max(0) as usize);
    for m in lo..=hi {
        let top = ord(m, pi).min(n);
        let mut s = Q::from(0);
        for j in 0..=top {
            // p^{n−2j}·m is an integer because j ≤ ord_p(m)
            let idx = if 2 * j <= n { m * pi.pow(n - 2 * j) } else { m / pi.pow(2 * j - n) };
            if let Some(b) = g.get(idx) {
                if b != Q::from(0) {
                    s += b * Q::from_int(Integer::from(Integer::u_pow_u(p as u32, j)));
                }
            }
        }
        out.push(s);
    }
    Ok(QSeries::new(lo, out, hi + 1).expect("window length"))
}

/// (q dR/dq)|T(pⁿ) over the window [min(R)·pⁿ, hi], for p ∤ N.
pub fn hecke_weight2(r: &QSeries, p: u64, n: u32, level: u64, hi: i64) -> Result<QSeries, PadicError> {
    if !is_prime(p) {
        return Err(PadicError::NotPrime(p));
    }
    if level % p == 0 {
        return Err(PadicError::PDividesLevel { p, level });
    }
    let lo = r.min_exponent().min(0) * (p as i64).pow(n);
    hecke_tpn(&r.q_derivative(), p, n, lo, hi)
}
