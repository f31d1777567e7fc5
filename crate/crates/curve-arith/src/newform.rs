//! Newform coefficients a_E(n) by point counting and Hecke multiplicativity.

use std::collections::BTreeMap;

use rayon::prelude::*;
use series_core::arith::{gcd, is_fundamental, is_squarefree, kronecker, primes_upto, smallest_prime_factors};
use series_core::{QSeries, Q};

use crate::curve::{brute_force_affine_count, EllipticCurve, Reduction};
use crate::CurveError;

/// a_p = p + 1 − #E(F_p) at good primes; ±1 or 0 at bad primes.
pub fn ap_point_count(e: &EllipticCurve, p: u64) -> Result<i64, CurveError> {
    let red = e.reduce(p)?;
    match e.reduction_type(p)? {
        Reduction::Split => return Ok(1),
        Reduction::NonSplit => return Ok(-1),
        Reduction::Additive => return Ok(0),
        Reduction::Good => {}
    }
    if p <= 3 {
        let affine = brute_force_affine_count(&red, p);
        return Ok(p as i64 - affine as i64);
    }
    // (2y + a1x + a3)² = 4x³ + b2x² + 2b4x + b6
    let [a1, a2, a3, a4, a6] = red;
    let b2 = (a1 * a1 + 4 * a2) % p;
    let b4 = (2 * a4 + a1 * a3) % p;
    let b6 = (a3 * a3 + 4 * a6) % p;
    let mut roots = vec![0u8; p as usize];
    for y in 0..p {
        roots[(y * y % p) as usize] += 1;
    }
    let mut affine = 0u64;
    for x in 0..p {
        let x2 = x * x % p;
        let v = (4 * x2 % p * x + b2 * x2 + 2 * b4 * x + b6) % p;
        affine += roots[v as usize] as u64;
    }
    Ok(p as i64 - affine as i64)
}

/// a_E(n) for 1 ≤ n ≤ n_max together with the level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewformCoefficients {
    pub level: u64,
    a: Vec<i64>,
}

impl NewformCoefficients {
    pub fn from_vec(level: u64, a: Vec<i64>) -> Self {
        NewformCoefficients { level, a }
    }

    /// a(n); zero for n = 0. Panics beyond n_max.
    pub fn get(&self, n: usize) -> i64 {
        self.a[n]
    }

    pub fn n_max(&self) -> usize {
        self.a.len() - 1
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.a
    }

    /// F_E = Σ a(n)qⁿ, known below q^{n_max+1}.
    pub fn series(&self) -> QSeries {
        QSeries::from_coeffs(0, self.a.iter().map(|&x| Q::from(x)).collect())
    }

    /// Values at primes, for diagnostics.
    pub fn at_primes(&self) -> BTreeMap<u64, i64> {
        primes_upto(self.n_max()).into_iter().map(|p| (p, self.a[p as usize])).collect()
    }
}

/// Fill a(n) from a(p) by the Hecke recursion and multiplicativity.
pub fn fill_multiplicative(level: u64, n_max: usize, ap: &BTreeMap<u64, i64>) -> Vec<i64> {
    let mut a = vec![0i64; n_max + 1];
    if n_max == 0 {
        return a;
    }
    a[1] = 1;
    let spf = smallest_prime_factors(n_max);
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut m = n;
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        let app = ap[&(p as u64)];
        let apk = if level % p as u64 == 0 {
            app.pow(k)
        } else {
            let (mut x0, mut x1) = (1i64, app);
            for _ in 1..k {
                (x0, x1) = (x1, app * x1 - p as i64 * x0);
            }
            x1
        };
        a[n] = apk * a[m];
    }
    a
}

/// Coefficients through n_max. Point counts at distinct primes run in parallel.
pub fn newform_coefficients(e: &EllipticCurve, n_max: usize) -> Result<NewformCoefficients, CurveError> {
    let primes = primes_upto(n_max);
    let ap: BTreeMap<u64, i64> = primes
        .par_iter()
        .map(|&p| ap_point_count(e, p).map(|v| (p, v)))
        .collect::<Result<_, _>>()?;
    Ok(NewformCoefficients {
        level: e.conductor,
        a: fill_multiplicative(e.conductor, n_max, &ap),
    })
}

/// Atkin–Lehner eigenvalues for squarefree level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtkinLehnerData {
    /// λ_q for each prime q | N.
    pub lambda: BTreeMap<u64, i32>,
    /// λ_N = ∏ λ_q.
    pub fricke: i32,
    /// Sign of the functional equation, ε = −λ_N.
    pub root_number: i32,
}

impl AtkinLehnerData {
    /// λ_Q for a Hall divisor Q of N.
    pub fn lambda_of(&self, q: u64) -> i32 {
        self.lambda
            .iter()
            .filter(|(p, _)| q % **p == 0)
            .map(|(_, l)| *l)
            .product()
    }
}

pub fn atkin_lehner_data(e: &EllipticCurve, coeffs: &NewformCoefficients) -> Result<AtkinLehnerData, CurveError> {
    let n = e.conductor;
    if !is_squarefree(n) {
        return Err(CurveError::NotSquarefree(n));
    }
    let mut lambda = BTreeMap::new();
    for (q, _) in series_core::arith::factor(n) {
        let aq = if (q as usize) <= coeffs.n_max() {
            coeffs.get(q as usize)
        } else {
            ap_point_count(e, q)?
        };
        lambda.insert(q, -aq as i32);
    }
    let fricke: i32 = lambda.values().product();
    Ok(AtkinLehnerData { lambda, fricke, root_number: -fricke })
}

/// Coefficients of E twisted by the fundamental discriminant d, level N·d².
pub fn quadratic_twist_coefficients(
    coeffs: &NewformCoefficients,
    d: i64,
    n_max: usize,
) -> Result<NewformCoefficients, CurveError> {
    if !is_fundamental(d) {
        return Err(CurveError::NotFundamental(d));
    }
    if gcd(d, coeffs.level as i64) != 1 {
        return Err(CurveError::TwistNotCoprime(d, coeffs.level));
    }
    if n_max > coeffs.n_max() {
        return Err(CurveError::TooFewCoefficients(n_max, coeffs.n_max()));
    }
    let a = (0..=n_max)
        .map(|n| if n == 0 { 0 } else { kronecker(d, n as i64) as i64 * coeffs.get(n) })
        .collect();
    Ok(NewformCoefficients { level: coeffs.level * (d * d) as u64, a })
}
