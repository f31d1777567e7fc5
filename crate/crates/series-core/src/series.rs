//! Truncated Laurent series in q with explicit precision tracking.

use std::fmt;

use crate::arith::{gcd, is_fundamental, kronecker};
use crate::scalar::{Field, Ring};
use crate::SeriesError;

/// Σ c(n) qⁿ for min_exponent ≤ n < precision, with O(q^precision) unknown.
///
/// Every coefficient slot in `[min_exponent, precision)` is stored, so
/// `coeffs.len() == precision - min_exponent`.
#[derive(Clone)]
pub struct LaurentQSeries<C> {
    min_exponent: i64,
    coeffs: Vec<C>,
    precision: i64,
}

/// Character used by [`LaurentQSeries::twist_by_character`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistMode {
    /// Kronecker symbol χ_D(n).
    Kronecker,
    /// Principal character mod |D|: 1 if gcd(n, D) = 1, else 0.
    TrivialModD,
}

impl<C: Ring> LaurentQSeries<C> {
    /// Build from coefficients starting at `min_exponent`. Missing slots below
    /// `precision` are zero; coefficients at or beyond `precision` are an error.
    pub fn new(min_exponent: i64, mut coeffs: Vec<C>, precision: i64) -> Result<Self, SeriesError> {
        if precision < min_exponent {
            return Err(SeriesError::Precision(format!(
                "precision {precision} below min exponent {min_exponent}"
            )));
        }
        let len = (precision - min_exponent) as usize;
        if coeffs.len() > len {
            return Err(SeriesError::Precision(format!(
                "{} coefficients exceed the {} slots below q^{precision}",
                coeffs.len(),
                len
            )));
        }
        coeffs.resize(len, C::zero());
        Ok(Self { min_exponent, coeffs, precision })
    }

    /// Series whose precision is one past the last supplied coefficient.
    pub fn from_coeffs(min_exponent: i64, coeffs: Vec<C>) -> Self {
        let precision = min_exponent + coeffs.len() as i64;
        Self { min_exponent, coeffs, precision }
    }

    pub fn zero(precision: i64) -> Self {
        Self { min_exponent: precision, coeffs: Vec::new(), precision }
    }

    pub fn monomial(c: C, exponent: i64, precision: i64) -> Self {
        if exponent >= precision {
            return Self::zero(precision);
        }
        let mut coeffs = vec![C::zero(); (precision - exponent) as usize];
        coeffs[0] = c;
        Self { min_exponent: exponent, coeffs, precision }
    }

    pub fn one(precision: i64) -> Self {
        Self::monomial(C::one(), 0, precision)
    }

    pub fn min_exponent(&self) -> i64 {
        self.min_exponent
    }

    /// Coefficients are known strictly below this exponent.
    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of qⁿ; zero below `min_exponent`, `None` at or beyond precision.
    pub fn get(&self, n: i64) -> Option<C> {
        if n >= self.precision {
            None
        } else if n < self.min_exponent {
            Some(C::zero())
        } else {
            Some(self.coeffs[(n - self.min_exponent) as usize].clone())
        }
    }

    /// Coefficient of qⁿ. Panics if n is beyond the known precision.
    pub fn coeff(&self, n: i64) -> C {
        self.get(n)
            .unwrap_or_else(|| panic!("coefficient q^{n} beyond precision {}", self.precision))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.min_exponent + i as i64, c))
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.iter().find(|(_, c)| !c.is_zero()).map(|(n, _)| n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Drop leading zeros so that `min_exponent` is the valuation.
    pub fn normalized(&self) -> Self {
        match self.valuation() {
            Some(v) => Self {
                min_exponent: v,
                coeffs: self.coeffs[(v - self.min_exponent) as usize..].to_vec(),
                precision: self.precision,
            },
            None => Self::zero(self.precision),
        }
    }

    /// Lower the precision; a larger value is clamped to the current one.
    pub fn truncate(&self, precision: i64) -> Self {
        let precision = precision.min(self.precision);
        if precision <= self.min_exponent {
            return Self::zero(precision);
        }
        Self {
            min_exponent: self.min_exponent,
            coeffs: self.coeffs[..(precision - self.min_exponent) as usize].to_vec(),
            precision,
        }
    }

    /// Sum; precision is the smaller of the two.
    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        let lo = self.min_exponent.min(other.min_exponent).min(precision);
        let coeffs = (lo..precision)
            .map(|n| self.get(n).unwrap() + other.get(n).unwrap())
            .collect();
        Self { min_exponent: lo, coeffs, precision }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            min_exponent: self.min_exponent + k,
            coeffs: self.coeffs.clone(),
            precision: self.precision + k,
        }
    }

    /// Cauchy product. Precision is min(a.prec + b.min, b.prec + a.min).
    pub fn mul(&self, other: &Self) -> Self {
        let precision = (self.precision + other.min_exponent).min(other.precision + self.min_exponent);
        self.mul_to(other, precision)
    }

    /// Cauchy product computed only below `limit` (clamped to the joint precision).
    pub fn mul_to(&self, other: &Self, limit: i64) -> Self {
        let precision = limit
            .min(self.precision + other.min_exponent)
            .min(other.precision + self.min_exponent);
        let min_exponent = self.min_exponent + other.min_exponent;
        if precision <= min_exponent {
            return Self::zero(precision);
        }
        let len = (precision - min_exponent) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { min_exponent, coeffs, precision }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.precision - self.min_exponent);
        }
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut k = e;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    /// q d/dq: coefficient n·c(n) at exponent n. Precision unchanged.
    pub fn q_derivative(&self) -> Self {
        let coeffs = self
            .iter()
            .map(|(n, c)| c.clone() * C::from_i64(n))
            .collect();
        Self { min_exponent: self.min_exponent, coeffs, precision: self.precision }
    }

    /// Coefficientwise multiplication by a character attached to the fundamental discriminant `d`.
    pub fn twist_by_character(&self, d: i64, mode: TwistMode) -> Result<Self, SeriesError> {
        if !is_fundamental(d) {
            return Err(SeriesError::NotFundamental(d));
        }
        let coeffs = self
            .iter()
            .map(|(n, c)| {
                let chi = match mode {
                    TwistMode::Kronecker => kronecker(d, n),
                    TwistMode::TrivialModD => i32::from(gcd(n, d) == 1),
                };
                match chi {
                    0 => C::zero(),
                    1 => c.clone(),
                    _ => -c.clone(),
                }
            })
            .collect();
        Ok(Self { min_exponent: self.min_exponent, coeffs, precision: self.precision })
    }

    /// Substitute q ↦ q^m for m ≥ 1. Precision scales to precision·m.
    pub fn substitute_power(&self, m: i64) -> Self {
        assert!(m >= 1);
        let min_exponent = self.min_exponent * m;
        let precision = self.precision * m;
        let mut coeffs = vec![C::zero(); (precision - min_exponent) as usize];
        for (n, c) in self.iter() {
            coeffs[(n * m - min_exponent) as usize] = c.clone();
        }
        Self { min_exponent, coeffs, precision }
    }

    /// Apply `f` to every coefficient. This is the explicit promotion path between kinds.
    pub fn map<D, F: Fn(&C) -> D>(&self, f: F) -> LaurentQSeries<D> {
        LaurentQSeries {
            min_exponent: self.min_exponent,
            coeffs: self.coeffs.iter().map(f).collect(),
            precision: self.precision,
        }
    }
}

impl<C: Field> LaurentQSeries<C> {
    /// 1/a. For a = q^v·u with u known to relative precision r, the result is
    /// q^{-v}/u with precision r − v.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a = self.normalized();
        let v = a.valuation().ok_or(SeriesError::ZeroLeading)?;
        let r = (a.precision - v) as usize;
        let c0inv = C::one() / a.coeffs[0].clone();
        let mut b: Vec<C> = Vec::with_capacity(r);
        b.push(c0inv.clone());
        for k in 1..r {
            let mut s = C::zero();
            for j in 1..=k {
                let cj = &a.coeffs[j];
                if !cj.is_zero() {
                    s = s + cj.clone() * b[k - j].clone();
                }
            }
            b.push(-(s * c0inv.clone()));
        }
        Ok(Self { min_exponent: -v, coeffs: b, precision: r as i64 - v })
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// Formal substitution self(inner) where `inner` has valuation ≥ 1.
    ///
    /// With outer known below u^P, lowest exponent e, and inner = q^v·(unit)
    /// known to relative precision r, the result has precision min(P·v, e·v + r).
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        let g = inner.normalized();
        let v = match g.valuation() {
            Some(v) if v >= 1 => v,
            Some(_) => return Err(SeriesError::NonzeroConstant),
            None => return Err(SeriesError::ZeroLeading),
        };
        if inner.min_exponent < 1 && inner.iter().any(|(n, c)| n < 1 && !c.is_zero()) {
            return Err(SeriesError::NonzeroConstant);
        }
        let outer = self.clone();
        let e = outer.min_exponent;
        let p = outer.precision;
        let r = g.precision - v;
        let target = (p * v).min(e * v + r);
        // h(u) = Σ c_k u^{k-e}, evaluated by Horner to absolute precision target − e·v
        let h_prec = target - e * v;
        let mut h = Self::zero(h_prec);
        for k in (e..p).rev() {
            let c = outer.coeff(k);
            h = h.mul_to(&g, h_prec).add(&Self::monomial(c, 0, h_prec));
        }
        let ge = if e >= 0 {
            g.pow(e as u32)
        } else {
            g.reciprocal()?.pow((-e) as u32)
        };
        Ok(h.mul_to(&ge, target).truncate(target))
    }

    /// Evaluate Σ c(n) xⁿ at a scalar, ignoring the truncation error.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        let m = self.min_exponent;
        let xm = if m >= 0 {
            pow_field(x, m as u64)
        } else {
            C::one() / pow_field(x, (-m) as u64)
        };
        acc * xm
    }
}

fn pow_field<C: Ring>(x: &C, e: u64) -> C {
    let mut acc = C::one();
    let mut base = x.clone();
    let mut k = e;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        k >>= 1;
    }
    acc
}

/// Equality as truncated series: all coefficients agree below the smaller precision.
/// The all-zero series equals zero whatever its exponents.
impl<C: Ring> PartialEq for LaurentQSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        let hi = self.precision.min(other.precision);
        let lo = self.min_exponent.min(other.min_exponent);
        (lo..hi).all(|n| self.get(n) == other.get(n))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for LaurentQSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{n}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.precision)
    }
}

impl<C: fmt::Debug> fmt::Debug for LaurentQSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaurentQSeries")
            .field("min_exponent", &self.min_exponent)
            .field("precision", &self.precision)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}
