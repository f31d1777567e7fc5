//! Γ₀(N)-classes of Heegner forms [A, B, C] with N | A, their stabilizers and CM points.

use std::collections::BTreeSet;

use series_core::arith::{egcd, gcd};
use series_core::{ComplexFns, Cx, Real};

use crate::forms::{automorphs, mat_inv, reduced_forms, BinaryQF, Mat};
use crate::TraceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// a > 0: λ ∈ L⁺.
    Plus,
    /// a < 0: λ ∈ L⁻.
    Minus,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegnerClass {
    pub form: BinaryQF,
    /// |Γ̄_λ| ∈ {1, 2, 3}.
    pub stabilizer_order: u32,
    pub sign: Sign,
}

/// Canonical point of P¹(ℤ/N) in the class of (a : c).
fn p1_key(a: i64, c: i64, n: i64) -> (i64, i64) {
    if n == 1 {
        return (0, 0);
    }
    (1..n)
        .filter(|&u| gcd(u, n) == 1)
        .map(|u| ((a * u).rem_euclid(n), (c * u).rem_euclid(n)))
        .min()
        .expect("unit exists")
}

fn p1_points(n: i64) -> Vec<(i64, i64)> {
    let mut seen = BTreeSet::new();
    let mut pts = Vec::new();
    for c in 0..n {
        for a in 0..n {
            if gcd(gcd(a, c), n) != 1 {
                continue;
            }
            if seen.insert(p1_key(a, c, n)) {
                pts.push((a, c));
            }
        }
    }
    pts
}

/// A matrix in SL₂(ℤ) whose first column is ≡ (a, c) mod N.
fn lift_sl2(a: i64, c: i64, n: i64) -> Mat {
    for k in 0..(5 * n + 5) {
        for cc in [c + k * n, c - k * n] {
            for j in 0..(5 * n + 5) {
                for aa in [a + j * n, a - j * n] {
                    let (g, x, y) = egcd(aa, cc);
                    if g == 1 {
                        return [[aa, -y], [cc, x]];
                    }
                }
            }
        }
    }
    unreachable!("gcd(a, c, N) = 1 admits a lift")
}

fn apply_col(m: &Mat, a: i64, c: i64) -> (i64, i64) {
    (m[0][0] * a + m[0][1] * c, m[1][0] * a + m[1][1] * c)
}

/// Positive classes [A, B, C], N | A, B ≡ β mod 2N, of discriminant d.
fn positive_classes(n: i64, d: i64, beta: i64) -> Vec<HeegnerClass> {
    let pts = p1_points(n);
    let mut out = Vec::new();
    for q in reduced_forms(d) {
        let auts = automorphs(&q);
        let mut seen = BTreeSet::new();
        for &(a, c) in &pts {
            let key = p1_key(a, c, n);
            if seen.contains(&key) {
                continue;
            }
            for m in &auts {
                let (x, y) = apply_col(m, a, c);
                seen.insert(p1_key(x, y, n));
            }
            let g = lift_sl2(a, c, n);
            let f = q.transform(&g);
            if f.a.rem_euclid(n) != 0 || (f.b - beta).rem_euclid(2 * n) != 0 {
                continue;
            }
            let fixing = auts
                .iter()
                .filter(|m| {
                    let (x, y) = apply_col(m, a, c);
                    p1_key(x, y, n) == key
                })
                .count();
            out.push(HeegnerClass { form: f, stabilizer_order: (fixing / 2) as u32, sign: Sign::Plus });
        }
    }
    out
}

/// Γ₀(N)-representatives of the forms [A, B, C] with N | A, B ≡ β mod 2N and
/// B² − 4AC = d, of both signs of A. The classes with A < 0 are the negatives
/// of the positive classes at −β.
pub fn heegner_classes(n: u64, d: i64, beta: i64) -> Result<Vec<HeegnerClass>, TraceError> {
    if d >= 0 {
        return Err(TraceError::NotNegative(d));
    }
    let ni = n as i64;
    if (beta * beta - d).rem_euclid(4 * ni) != 0 {
        return Err(TraceError::NoAdmissibleBeta { d, beta, modulus: 4 * ni });
    }
    let mut out = positive_classes(ni, d, beta);
    out.extend(positive_classes(ni, d, -beta).into_iter().map(|c| HeegnerClass {
        form: c.form.neg(),
        sign: Sign::Minus,
        ..c
    }));
    Ok(out)
}

/// A label for the Γ₀(N)-class of a definite form with N | A: the reduced form
/// together with the automorph orbit of its P¹(ℤ/N) coset.
pub fn canonical_key(f: &BinaryQF, n: u64) -> (BinaryQF, (i64, i64)) {
    let ni = n as i64;
    let pos = if f.a > 0 { *f } else { f.neg() };
    let (r, m) = pos.reduce();
    // pos = r∘m⁻¹, and the coset is the first column of m⁻¹
    let g = mat_inv(&m);
    let (a, c) = (g[0][0], g[1][0]);
    let key = automorphs(&r)
        .iter()
        .map(|aut| {
            let (x, y) = apply_col(aut, a, c);
            p1_key(x, y, ni)
        })
        .min()
        .expect("identity is an automorph");
    (r, key)
}

/// The root of a·z² + b·z + c in ℍ; [a, b, c] and its negative give the same point.
pub fn cm_point<T: Real>(f: &BinaryQF) -> Result<Cx<T>, TraceError> {
    let d = f.discriminant();
    if d >= 0 {
        return Err(TraceError::NotNegative(d));
    }
    let two_a = T::from_i64(2 * f.a.abs());
    let sgn = if f.a > 0 { 1 } else { -1 };
    let re = T::from_i64(-f.b * sgn) / two_a.clone();
    let im = T::from_i64(-d).sqrt() / two_a;
    Ok(Cx::new(re, im))
}

fn mobius<T: Real>(m: &Mat, z: &Cx<T>) -> Cx<T> {
    let c = |x: i64| Cx::<T>::real(T::from_i64(x));
    (c(m[0][0]) * z.clone() + c(m[0][1])) / (c(m[1][0]) * z.clone() + c(m[1][1]))
}

/// The point of largest imaginary part among γz (γ ∈ Γ₀(N)) and, when
/// `allow_fricke`, W_N·γz. Returns (w, flipped): if `flipped`, z ~ W_N·w,
/// otherwise z ~ w. The search runs in f64 and the chosen matrix is applied exactly.
pub fn best_point<T: Real>(z: &Cx<T>, n: u64, allow_fricke: bool) -> (Cx<T>, bool) {
    let ni = n as i64;
    let (x, y) = (z.re.to_f64(), z.im.to_f64());
    let tol = 1e-12 * y;
    let mut best_im = y;
    let mut best: (Mat, bool) = ([[1, 0], [0, 1]], false);
    let near = |c: i64| -> Vec<i64> {
        let d0 = (-(c as f64) * x).floor() as i64;
        (d0 - 1..=d0 + 2).collect()
    };
    let cmax = (1.0 / (ni as f64 * y)) as i64 + 1;
    for c in 1..=cmax {
        for d in near(ni * c) {
            if gcd(ni * c, d) != 1 {
                continue;
            }
            let (cx, cy) = ((ni * c) as f64 * x + d as f64, (ni * c) as f64 * y);
            let im = y / (cx * cx + cy * cy);
            if im > best_im + tol {
                let (_, u, w) = egcd(d, ni * c);
                // u·d + w·Nc = 1
                best_im = im;
                best = ([[u, -w], [ni * c, d]], false);
            }
        }
    }
    if allow_fricke {
        let cmax = (1.0 / ((ni as f64).sqrt() * y)) as i64 + 2;
        for c in 0..=cmax {
            for d in near(c) {
                if gcd(ni * d, c) != 1 || (c == 0 && d.abs() != 1) {
                    continue;
                }
                let (cx, cy) = (c as f64 * x + d as f64, c as f64 * y);
                let im = y / (ni as f64 * (cx * cx + cy * cy));
                if im > best_im + tol {
                    let (_, u, w) = egcd(c, ni * d);
                    // [[c, d], [−Nw, u]] ∈ Γ₀(N), then W_N
                    best_im = im;
                    best = ([[c, d], [-ni * w, u]], true);
                }
            }
        }
    }
    let (m, flipped) = best;
    let mut w = mobius(&m, z);
    if flipped {
        let nn = Cx::<T>::real(T::from_i64(ni));
        w = -(Cx::<T>::real(T::one()) / (nn * w));
    }
    let shift = w.re.round();
    w.re = w.re.clone() - shift;
    (w, flipped)
}
