//! The exponential integral E₁(x) = ∫_x^∞ e^{−t}/t dt for x > 0.

use series_core::Real;

/// Power series −γ − ln x + Σ (−1)^{k+1} x^k/(k·k!) below 1, continued fraction
/// e^{−x}/(x + 1 − 1²/(x + 3 − 2²/(x + 5 − …))) from 1 on.
pub fn exp_integral_e1<T: Real>(x: &T) -> T {
    assert!(*x > T::zero(), "E₁ needs x > 0");
    let eps = T::epsilon();
    if *x < T::one() {
        let mut sum = T::zero();
        let mut term = T::one();
        let mut k = 1i64;
        loop {
            term = term * x.clone() / T::from_i64(k);
            let add = term.clone() / T::from_i64(k);
            sum = if k % 2 == 1 { sum + add.clone() } else { sum - add.clone() };
            if add < eps.clone() * sum.abs() || k > 10_000 {
                break;
            }
            k += 1;
        }
        return -T::euler_gamma() - x.ln() + sum;
    }
    // modified Lentz on b₀ + a₁/(b₁ + a₂/(b₂ + …)) with bₖ = x + 2k + 1, aₖ = −k²
    let tiny = T::epsilon() * T::epsilon();
    let mut f = x.clone() + T::one();
    let mut c = f.clone();
    let mut d = T::zero();
    for k in 1..200_000i64 {
        let a = T::from_i64(-k * k);
        let b = x.clone() + T::from_i64(2 * k + 1);
        d = b.clone() + a.clone() * d;
        if d.abs() < tiny {
            d = tiny.clone();
        }
        c = b + a / c;
        if c.abs() < tiny {
            c = tiny.clone();
        }
        d = T::one() / d;
        let delta = c.clone() * d.clone();
        f = f * delta.clone();
        if (delta - T::one()).abs() < eps {
            break;
        }
    }
    (-x.clone()).exp() / f
}
