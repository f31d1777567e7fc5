//! Atkin–Lehner matrices and the action of 2×2 matrices on ℍ.

use series_core::arith::{egcd, gcd};
use series_core::{Cx, Real};

/// [[a, b], [c, d]] with integer entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Matrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Matrix2 {
    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// (az + b)/(cz + d).
pub fn mobius<T: Real>(m: &Matrix2, z: &Cx<T>) -> Cx<T> {
    let f = |n: i64| T::from_i64(n);
    let num = z.clone().scale(f(m.a)) + Cx::new(f(m.b), T::zero());
    let den = z.clone().scale(f(m.c)) + Cx::new(f(m.d), T::zero());
    num / den
}

/// W_q for q ∥ N: the Fricke matrix [[0, −1], [N, 0]] when q = N, otherwise
/// [[q, 1], [N·t, q·w]] with q·w − (N/q)·t = 1 and w, t the least nonnegative solution.
pub fn atkin_lehner_matrix(n: u64, q: u64) -> Option<Matrix2> {
    if q == 0 || n % q != 0 || gcd(q as i64, (n / q) as i64) != 1 {
        return None;
    }
    let (n, q) = (n as i64, q as i64);
    if q == n {
        return Some(Matrix2 { a: 0, b: -1, c: n, d: 0 });
    }
    let m = n / q;
    // q·w ≡ 1 mod m
    let (_, x, _) = egcd(q, m);
    let w = x.rem_euclid(m);
    let w = if w == 0 { m } else { w };
    let t = (q * w - 1) / m;
    Some(Matrix2 { a: q, b: 1, c: n * t, d: q * w })
}
