//! Eta products, Eisenstein series, Δ and j as exact q-series, plus numeric
//! evaluation of the same functions at a point of the upper half-plane.

use num_traits::{One, Zero};

use crate::arith::sigma;
use crate::scalar::{ComplexFns, Cx, Real, Ring, Q};
use crate::series::LaurentQSeries;
use crate::SeriesError;

/// ∏_{n≥1}(1 − qⁿ) below q^len, from Euler's pentagonal number theorem.
pub fn euler_product(len: usize) -> Vec<i64> {
    let mut c = vec![0i64; len];
    if len == 0 {
        return c;
    }
    c[0] = 1;
    let mut k: i64 = 1;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let g1 = (k * (3 * k - 1) / 2) as usize;
        let g2 = (k * (3 * k + 1) / 2) as usize;
        if g1 >= len {
            break;
        }
        c[g1] += sign;
        if g2 < len {
            c[g2] += sign;
        }
        k += 1;
    }
    c
}

/// ∏ η(m z)^e over `(m, e)` pairs, known below q^precision.
///
/// The q^{Σ m e / 24} prefactor must be an integral power of q.
pub fn eta_product(spec: &[(u64, i64)], precision: i64) -> Result<LaurentQSeries<Q>, SeriesError> {
    let offset: i64 = spec.iter().map(|&(m, e)| m as i64 * e).sum();
    if offset % 24 != 0 {
        return Err(SeriesError::NonIntegralOffset(offset));
    }
    if spec.iter().any(|&(m, _)| m == 0) {
        return Err(SeriesError::Precision("eta scale must be positive".into()));
    }
    let v = offset / 24;
    let rel = (precision - v).max(0);
    let mut acc = LaurentQSeries::<Q>::one(rel);
    let base: Vec<Q> = euler_product(rel as usize).into_iter().map(Q::from).collect();
    let base = LaurentQSeries::from_coeffs(0, base);
    for &(m, e) in spec {
        if e == 0 {
            continue;
        }
        let scaled = base.substitute_power(m as i64).truncate(rel);
        let factor = if e > 0 {
            scaled.pow(e as u32)
        } else {
            scaled.reciprocal()?.pow((-e) as u32)
        };
        acc = acc.mul(&factor).truncate(rel);
    }
    Ok(acc.shift(v))
}

/// E_k = 1 + c_k Σ σ_{k−1}(n) qⁿ for k ∈ {2, 4, 6}, below q^precision.
pub fn eisenstein_series(k: u32, precision: i64) -> LaurentQSeries<Q> {
    let c = eisenstein_constant(k);
    let coeffs = (0..precision.max(0))
        .map(|n| {
            if n == 0 {
                Q::one()
            } else {
                Q::from(c * sigma(n as u64, k - 1) as i64)
            }
        })
        .collect();
    LaurentQSeries::from_coeffs(0, coeffs)
}

fn eisenstein_constant(k: u32) -> i64 {
    match k {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => panic!("Eisenstein series only for k = 2, 4, 6"),
    }
}

/// Δ = η(z)²⁴ below q^precision.
pub fn delta_series(precision: i64) -> LaurentQSeries<Q> {
    eta_product(&[(1, 24)], precision).expect("η²⁴ has integral offset")
}

/// j = E₄³/Δ through q^{n_max}.
pub fn j_series(n_max: i64) -> LaurentQSeries<Q> {
    let prec = n_max + 1;
    let e4 = eisenstein_series(4, prec + 1);
    let d = delta_series(prec + 2);
    e4.pow(3).mul(&d.reciprocal().expect("Δ ≠ 0")).truncate(prec)
}

/// e^{2πiτ}.
pub fn q_of_tau<T: Real>(tau: &Cx<T>) -> Cx<T> {
    let two_pi_i = Cx::new(T::zero(), T::from_i64(2) * T::pi());
    (two_pi_i * tau.clone()).cexp()
}

/// Number of terms so that |q|ⁿ·n^power falls below the working epsilon.
fn terms_for<T: Real>(qabs: &T, power: i32) -> usize {
    let lq = -qabs.to_f64().ln();
    let bits = T::bits() as f64 * std::f64::consts::LN_2 + 10.0;
    let mut n = (bits / lq).ceil() as usize + 2;
    while (n as f64) * lq < bits + power as f64 * (n as f64).ln() {
        n += 1;
    }
    n
}

/// E_k(τ) for k ∈ {2, 4, 6} by its q-expansion.
pub fn eisenstein_eval<T: Real>(k: u32, tau: &Cx<T>) -> Cx<T> {
    let q = q_of_tau(tau);
    let terms = terms_for(&q.cabs(), k as i32);
    let c = T::from_i64(eisenstein_constant(k));
    // Σ σ(n) qⁿ = Σ n^{k−1} qⁿ/(1 − qⁿ)
    let mut s = Cx::<T>::zero();
    let mut qn = Cx::<T>::one();
    for n in 1..=terms {
        qn = qn * q.clone();
        let num = qn.clone().scale(T::from_i64((n as i64).pow(k - 1)));
        s = s + num / (Cx::<T>::one() - qn.clone());
    }
    Cx::<T>::one() + s.scale(c)
}

/// η(τ)²⁴ = q ∏(1 − qⁿ)²⁴.
pub fn delta_eval<T: Real>(tau: &Cx<T>) -> Cx<T> {
    let q = q_of_tau(tau);
    let terms = terms_for(&q.cabs(), 0);
    let mut prod = Cx::<T>::one();
    let mut qn = Cx::<T>::one();
    for _ in 0..terms {
        qn = qn * q.clone();
        prod = prod * (Cx::<T>::one() - qn.clone());
    }
    q * prod.cpowi(24)
}

/// j(τ) = E₄(τ)³/Δ(τ) after moving τ into the standard fundamental domain.
pub fn j_eval<T: Real>(tau: &Cx<T>) -> Cx<T> {
    let t = reduce_sl2(tau);
    let e4 = eisenstein_eval(4, &t);
    e4.clone() * e4.clone() * e4 / delta_eval(&t)
}

/// Move τ into |Re τ| ≤ 1/2, |τ| ≥ 1 by the usual translations and inversions.
pub fn reduce_sl2<T: Real>(tau: &Cx<T>) -> Cx<T> {
    let mut t = tau.clone();
    for _ in 0..1000 {
        let shift = t.re.round();
        t.re = t.re.clone() - shift;
        if t.norm_sqr() < T::one() - T::epsilon() * T::from_i64(16) {
            t = -(Cx::<T>::one() / t);
        } else {
            break;
        }
    }
    t
}

/// Coefficient helper for integer-valued series.
pub fn to_i64_vec(s: &LaurentQSeries<Q>) -> Vec<i64> {
    s.coefficients()
        .iter()
        .map(|c| c.numer().to_i64().expect("coefficient fits i64"))
        .collect()
}

/// Integer-coefficient series from a slice.
pub fn int_series<C: Ring>(min: i64, c: &[i64]) -> LaurentQSeries<C> {
    LaurentQSeries::from_coeffs(min, c.iter().map(|&x| C::from_i64(x)).collect())
}
