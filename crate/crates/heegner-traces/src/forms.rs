//! Integral binary quadratic forms [a, b, c] = ax² + bxy + cy².

use series_core::arith::gcd;

/// Integer 2×2 matrix [[p, q], [r, s]].
pub type Mat = [[i64; 2]; 2];

pub(crate) fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]
}

/// Inverse of a determinant-one matrix.
pub(crate) fn mat_inv(m: &Mat) -> Mat {
    [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryQF {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryQF {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryQF { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn neg(&self) -> Self {
        BinaryQF::new(-self.a, -self.b, -self.c)
    }

    pub fn content(&self) -> i64 {
        gcd(gcd(self.a, self.b), self.c)
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// Q∘M, i.e. (x, y) ↦ Q(px + qy, rx + sy).
    pub fn transform(&self, m: &Mat) -> Self {
        let [[p, q], [r, s]] = *m;
        let (a, b, c) = (self.a, self.b, self.c);
        BinaryQF::new(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )
    }

    /// |b| ≤ a ≤ c, with b ≥ 0 when either inequality is an equality.
    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a
            && self.a <= self.c
            && (self.b >= 0 || (self.b.abs() != self.a && self.a != self.c))
    }

    /// The reduced form R in the SL₂(ℤ)-class of a positive definite Q, with M such that R = Q∘M.
    pub fn reduce(&self) -> (BinaryQF, Mat) {
        debug_assert!(self.discriminant() < 0 && self.a > 0);
        let s: Mat = [[0, -1], [1, 0]];
        let mut q = *self;
        let mut m: Mat = [[1, 0], [0, 1]];
        loop {
            // b into (−a, a]
            let k = (q.a - q.b).div_euclid(2 * q.a);
            if k != 0 {
                let t = [[1, k], [0, 1]];
                q = q.transform(&t);
                m = mat_mul(&m, &t);
            }
            if q.c < q.a || (q.c == q.a && q.b < 0) {
                q = q.transform(&s);
                m = mat_mul(&m, &s);
                continue;
            }
            break;
        }
        (q, m)
    }
}

/// All reduced positive definite forms of discriminant d < 0, primitive or not.
pub fn reduced_forms(d: i64) -> Vec<BinaryQF> {
    assert!(d < 0, "negative discriminant");
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in (-a + 1)..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            let f = BinaryQF::new(a, b, c);
            if f.is_reduced() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

/// h(d): the number of primitive reduced forms of discriminant d < 0.
pub fn class_number(d: i64) -> usize {
    reduced_forms(d).into_iter().filter(|f| f.content() == 1).count()
}

/// Determinant-one automorphs of Q with entries in [−3, 3]; for a reduced form
/// these are all of them.
pub fn automorphs(q: &BinaryQF) -> Vec<Mat> {
    let mut out = Vec::new();
    for p in -3..=3 {
        for r in -3..=3 {
            for qq in -3..=3 {
                for s in -3..=3 {
                    let m = [[p, qq], [r, s]];
                    if p * s - qq * r == 1 && q.transform(&m) == *q {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_numbers() {
        for (d, h) in [(-3, 1), (-4, 1), (-23, 3), (-47, 5), (-71, 7), (-84, 4)] {
            assert_eq!(class_number(d), h, "d = {d}");
        }
        // [2,2,2] is the imprimitive form of discriminant −12
        assert_eq!(reduced_forms(-12), vec![BinaryQF::new(1, 0, 3), BinaryQF::new(2, 2, 2)]);
    }

    #[test]
    fn reduction_is_equivalence() {
        let q = BinaryQF::new(37, 61, 26);
        let (r, m) = q.reduce();
        assert!(r.is_reduced());
        assert_eq!(q.transform(&m), r);
        assert_eq!(r.discriminant(), q.discriminant());
        assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
    }

    #[test]
    fn automorph_counts() {
        assert_eq!(automorphs(&BinaryQF::new(1, 1, 1)).len(), 6);
        assert_eq!(automorphs(&BinaryQF::new(1, 0, 1)).len(), 4);
        assert_eq!(automorphs(&BinaryQF::new(2, 1, 3)).len(), 2);
    }
}
