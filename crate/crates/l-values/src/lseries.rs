//! Smoothed sums for L(G, 1) and L′(G, 1) of a weight-2 newform G of level N.

use curve_arith::{newform_coefficients, quadratic_twist_coefficients, EllipticCurve, NewformCoefficients};
use series_core::arith::{gcd, is_fundamental, kronecker};
use series_core::Real;

use crate::e1::exp_integral_e1;
use crate::LError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Value,
    Derivative,
}

/// Coefficients a(1..=terms), level and sign, with `terms` fixed by the tail bound.
#[derive(Clone, Debug)]
pub struct LSeriesJob {
    pub coefficients: Vec<i64>,
    pub level: u64,
    pub root_number: i32,
    pub target: Target,
    pub terms: usize,
    pub err_bound: f64,
}

#[derive(Clone, Debug)]
pub struct LValue<T: Real> {
    pub value: T,
    /// Tail bound plus accumulated rounding.
    pub err_bound: f64,
    pub terms: usize,
    pub level: u64,
    pub root_number: i32,
    pub note: Option<String>,
}

/// Bound on Σ_{n>M} |a(n)|/n·w(xn) with |a(n)/n| ≤ 2 and w(t) ≤ e^{−t}, times 1/t for E₁.
fn tail_bound(x: f64, m: usize, target: Target) -> f64 {
    let t = x * (m as f64 + 1.0);
    let geometric = 2.0 * 2.0 * (-t).exp() / (1.0 - (-x).exp());
    match target {
        Target::Value => geometric,
        Target::Derivative => geometric / t,
    }
}

impl LSeriesJob {
    /// Smallest M whose tail bound is below `err_bound`.
    pub fn terms_for(level: u64, target: Target, err_bound: f64) -> usize {
        let x = 2.0 * std::f64::consts::PI / (level as f64).sqrt();
        let mut m = (((4.0 / err_bound).ln().max(1.0)) / x) as usize;
        while m > 1 && tail_bound(x, m / 2, target) < err_bound {
            m /= 2;
        }
        while tail_bound(x, m, target) >= err_bound {
            m += 1 + m / 64;
        }
        m.max(1)
    }

    pub fn new(
        coefficients: &NewformCoefficients,
        root_number: i32,
        target: Target,
        err_bound: f64,
    ) -> Result<Self, LError> {
        if err_bound.is_nan() || err_bound <= 0.0 {
            return Err(LError::BadBound(err_bound));
        }
        let terms = Self::terms_for(coefficients.level, target, err_bound);
        if coefficients.n_max() < terms {
            return Err(LError::TooFewCoefficients { needed: terms, available: coefficients.n_max() });
        }
        Ok(LSeriesJob {
            coefficients: coefficients.as_slice()[..=terms].to_vec(),
            level: coefficients.level,
            root_number,
            target,
            terms,
            err_bound,
        })
    }

    /// The job for E_d, level N·d², computing only the coefficients it needs.
    /// The target is the value when ε(E_d) = +1 and the derivative otherwise.
    pub fn for_twist(e: &EllipticCurve, root_number: i32, d: i64, err_bound: f64) -> Result<Self, LError> {
        let eps = twist_root_number(root_number, e.conductor, d)?;
        let target = if eps == 1 { Target::Value } else { Target::Derivative };
        let level = e.conductor * (d * d) as u64;
        let terms = Self::terms_for(level, target, err_bound);
        let base = newform_coefficients(e, terms)?;
        let twisted = quadratic_twist_coefficients(&base, d, terms)?;
        Self::new(&twisted, eps, target, err_bound)
    }
}

/// ε(E_d) = ε(E)·χ_d(−N) for fundamental d coprime to N.
pub fn twist_root_number(root_number: i32, level: u64, d: i64) -> Result<i32, LError> {
    if !is_fundamental(d) {
        return Err(LError::NotFundamental(d));
    }
    if gcd(d, level as i64) != 1 {
        return Err(LError::NotCoprime { d, level });
    }
    Ok(root_number * kronecker(d, -(level as i64)))
}

fn smoothed_sum<T: Real>(job: &LSeriesJob, weight: impl Fn(&T) -> T) -> (T, f64) {
    let x = T::from_i64(2) * T::pi() / T::from_i64(job.level as i64).sqrt();
    let mut s = T::zero();
    for n in 1..=job.terms {
        let a = job.coefficients[n];
        if a == 0 {
            continue;
        }
        let w = weight(&(x.clone() * T::from_i64(n as i64)));
        s = s + w * T::from_i64(a) / T::from_i64(n as i64);
    }
    let rounding = 16.0 * job.terms as f64 * T::epsilon().to_f64();
    let xf = x.to_f64();
    (T::from_i64(2) * s, 2.0 * tail_bound(xf, job.terms, job.target) + rounding)
}

/// L(G, 1) = 2Σ a(n)/n·e^{−2πn/√N}; exactly 0 when the root number is −1.
pub fn central_value<T: Real>(job: &LSeriesJob) -> Result<LValue<T>, LError> {
    if job.root_number == -1 {
        return Ok(LValue {
            value: T::zero(),
            err_bound: 0.0,
            terms: 0,
            level: job.level,
            root_number: -1,
            note: Some("root number −1 forces L(1) = 0".into()),
        });
    }
    let (value, err_bound) = smoothed_sum(job, |t: &T| (-t.clone()).exp());
    Ok(LValue { value, err_bound, terms: job.terms, level: job.level, root_number: 1, note: None })
}

/// L′(G, 1) = 2Σ a(n)/n·E₁(2πn/√N) when the root number is −1.
pub fn central_derivative<T: Real>(job: &LSeriesJob) -> Result<LValue<T>, LError> {
    if job.root_number != -1 {
        return Err(LError::WrongParity(job.root_number, "derivative"));
    }
    let (value, err_bound) = smoothed_sum(job, exp_integral_e1);
    Ok(LValue { value, err_bound, terms: job.terms, level: job.level, root_number: -1, note: None })
}
