//! Scalar hierarchy shared by every crate in the workspace.
//!
//! `Ring` and `Field` are the coefficient traits used by series code. `Real`
//! adds the transcendental functions needed by lattice and L-function code and
//! is implemented for `f64` and for the multiprecision [`Mp`]. Exact rationals
//! are [`Q`]. Complex numbers are `num_complex::Complex<T>`.

use std::cmp::Ordering as CmpOrdering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::atomic::{AtomicU32, Ordering};

use num_complex::Complex;
use num_traits::{Num, One, Zero};
use rug::float::{Constant, Round};
use rug::{Float, Integer, Rational};

/// Complex numbers over a real scalar.
pub type Cx<T> = Complex<T>;

static DEFAULT_PREC: AtomicU32 = AtomicU32::new(256);

/// Mantissa bits used when an [`Mp`] is created without an explicit precision.
pub fn default_precision() -> u32 {
    DEFAULT_PREC.load(Ordering::Relaxed)
}

/// Set the process-wide default mantissa size. Values below 64 are raised to 64.
pub fn set_default_precision(bits: u32) {
    DEFAULT_PREC.store(bits.max(64), Ordering::Relaxed);
}

/// Commutative ring with unit.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

pub trait Field: Ring + Div<Output = Self> {
    fn from_q(x: &Q) -> Self;
}

/// Ordered real field with the elementary functions.
pub trait Real: Field + Num + PartialOrd {
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn pi() -> Self;
    /// Euler's constant γ.
    fn euler_gamma() -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn abs(&self) -> Self;
    fn floor(&self) -> Self;
    fn round(&self) -> Self;
    /// Unit roundoff, 2^-bits.
    fn epsilon() -> Self;
    fn bits() -> u32;
    /// Nearest integer; `None` if not representable as i64.
    fn to_i64(&self) -> Option<i64>;
    /// Scientific notation with `digits` significant digits.
    fn to_sci(&self, digits: usize) -> String;

    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }
}

// ---------------------------------------------------------------- f64

impl Ring for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Field for f64 {
    fn from_q(x: &Q) -> Self {
        x.0.to_f64()
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn euler_gamma() -> Self {
        0.577_215_664_901_532_9
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn round(&self) -> Self {
        f64::round(*self)
    }
    fn epsilon() -> Self {
        f64::EPSILON / 2.0
    }
    fn bits() -> u32 {
        53
    }
    fn to_i64(&self) -> Option<i64> {
        let r = self.round();
        (r.is_finite() && r.abs() < 9.0e18).then_some(r as i64)
    }
    fn to_sci(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self)
    }
}

// ---------------------------------------------------------------- Mp

/// Multiprecision real backed by MPFR. Binary operations use the larger of the
/// operand precisions; constants use [`default_precision`].
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Mp(pub Float);

impl Mp {
    pub fn with_prec(bits: u32, x: f64) -> Self {
        Mp(Float::with_val(bits, x))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn from_integer(n: &Integer) -> Self {
        Mp(Float::with_val(default_precision(), n))
    }

    /// Round to the nearest integer as a GMP integer.
    pub fn to_integer(&self) -> Option<Integer> {
        self.0.to_integer_round(Round::Nearest).map(|(i, _)| i)
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}

impl fmt::Debug for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

impl fmt::Display for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(30))
    }
}

macro_rules! mp_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $op:tt) => {
        impl $tr<&Mp> for &Mp {
            type Output = Mp;
            fn $m(self, r: &Mp) -> Mp {
                let p = self.0.prec().max(r.0.prec());
                Mp(Float::with_val(p, &self.0 $op &r.0))
            }
        }
        impl $tr<Mp> for Mp {
            type Output = Mp;
            fn $m(self, r: Mp) -> Mp {
                (&self).$m(&r)
            }
        }
        impl $tr<&Mp> for Mp {
            type Output = Mp;
            fn $m(self, r: &Mp) -> Mp {
                (&self).$m(r)
            }
        }
        impl $tr<Mp> for &Mp {
            type Output = Mp;
            fn $m(self, r: Mp) -> Mp {
                self.$m(&r)
            }
        }
        impl $atr<&Mp> for Mp {
            fn $am(&mut self, r: &Mp) {
                *self = (&*self).$m(r);
            }
        }
        impl $atr<Mp> for Mp {
            fn $am(&mut self, r: Mp) {
                *self = (&*self).$m(&r);
            }
        }
    };
}

mp_binop!(Add, add, AddAssign, add_assign, +);
mp_binop!(Sub, sub, SubAssign, sub_assign, -);
mp_binop!(Mul, mul, MulAssign, mul_assign, *);
mp_binop!(Div, div, DivAssign, div_assign, /);

impl std::ops::Rem for Mp {
    type Output = Mp;
    fn rem(self, r: Mp) -> Mp {
        let p = self.0.prec().max(r.0.prec());
        Mp(Float::with_val(p, &self.0 % &r.0))
    }
}

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(-self.0)
    }
}

impl Neg for &Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(Float::with_val(self.0.prec(), -&self.0))
    }
}

impl Zero for Mp {
    fn zero() -> Self {
        Mp(Float::with_val(default_precision(), 0))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Mp {
    fn one() -> Self {
        Mp(Float::with_val(default_precision(), 1))
    }
}

impl Sum for Mp {
    fn sum<I: Iterator<Item = Mp>>(iter: I) -> Mp {
        iter.fold(Mp::zero(), |a, b| a + b)
    }
}

impl Product for Mp {
    fn product<I: Iterator<Item = Mp>>(iter: I) -> Mp {
        iter.fold(Mp::one(), |a, b| a * b)
    }
}

impl Num for Mp {
    type FromStrRadixErr = rug::float::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let parsed = Float::parse_radix(s, radix as i32)?;
        Ok(Mp(Float::with_val(default_precision(), parsed)))
    }
}

impl Ring for Mp {
    fn from_i64(n: i64) -> Self {
        Mp(Float::with_val(default_precision(), n))
    }
}

impl Field for Mp {
    fn from_q(x: &Q) -> Self {
        Mp(Float::with_val(default_precision(), &x.0))
    }
}

impl Real for Mp {
    fn from_f64(x: f64) -> Self {
        Mp(Float::with_val(default_precision(), x))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn pi() -> Self {
        Mp(Float::with_val(default_precision(), Constant::Pi))
    }
    fn euler_gamma() -> Self {
        Mp(Float::with_val(default_precision(), Constant::Euler))
    }
    fn sqrt(&self) -> Self {
        Mp(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        Mp(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        Mp(self.0.clone().ln())
    }
    fn sin(&self) -> Self {
        Mp(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        Mp(self.0.clone().cos())
    }
    fn atan2(&self, x: &Self) -> Self {
        Mp(self.0.clone().atan2(&x.0))
    }
    fn abs(&self) -> Self {
        Mp(self.0.clone().abs())
    }
    fn floor(&self) -> Self {
        Mp(self.0.clone().floor())
    }
    fn round(&self) -> Self {
        Mp(self.0.clone().round())
    }
    fn epsilon() -> Self {
        let p = default_precision();
        Mp(Float::with_val(p, Float::i_exp(1, -(p as i32))))
    }
    fn bits() -> u32 {
        default_precision()
    }
    fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|i| i.to_i64())
    }
    fn to_sci(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return format!("{:.*e}", digits.saturating_sub(1), 0.0);
        }
        let s = self.0.to_string_radix(10, Some(digits.max(1)));
        normalize_sci(&s)
    }
}

/// Rewrite MPFR's `d.ddde±x` output into the `d.ddde±x` form Rust uses for `f64`.
fn normalize_sci(s: &str) -> String {
    let (mant, exp) = match s.find(['e', '@']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let (sign, digits) = match mant.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mant),
    };
    let (int, frac) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    // shift so that exactly one nonzero digit precedes the point
    let all: String = format!("{int}{frac}");
    let lead = all.find(|c: char| c != '0').unwrap_or(0);
    let body = &all[lead..];
    let e = exp + int.len() as i64 - 1 - lead as i64;
    if body.len() <= 1 {
        format!("{sign}{body}e{e}")
    } else {
        format!("{sign}{}.{}e{e}", &body[..1], &body[1..])
    }
}

// ---------------------------------------------------------------- Q

/// Exact rational backed by GMP.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Q(pub Rational);

impl Q {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Q(Rational::from((num, den)))
    }

    pub fn from_int(n: impl Into<Integer>) -> Self {
        Q(Rational::from(n.into()))
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denom() == 1
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// p-adic valuation; `None` for zero.
    pub fn valuation(&self, p: u64) -> Option<i64> {
        if self.0.cmp0() == CmpOrdering::Equal {
            return None;
        }
        Some(int_valuation(self.0.numer(), p) as i64 - int_valuation(self.0.denom(), p) as i64)
    }

    /// Residue in [0, m) when the denominator is invertible mod m.
    pub fn residue_mod(&self, m: &Integer) -> Option<Integer> {
        let inv = self.0.denom().clone().invert(m).ok()?;
        let mut r = self.0.numer() * inv;
        r %= m;
        if r < 0 {
            r += m;
        }
        Some(r)
    }

    pub fn abs(&self) -> Q {
        Q(self.0.clone().abs())
    }

    pub fn recip(&self) -> Q {
        Q(self.0.clone().recip())
    }

    pub fn pow(&self, e: i32) -> Q {
        let mut acc = Q::one();
        let base = if e < 0 { self.recip() } else { self.clone() };
        for _ in 0..e.unsigned_abs() {
            acc *= &base;
        }
        acc
    }

    pub fn parse(s: &str) -> Option<Q> {
        let s = s.trim();
        if let Ok(r) = s.parse::<Rational>() {
            return Some(Q(r));
        }
        // allow finite decimals such as "-0.25"
        let (sign, body) = match s.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int, frac) = body.split_once('.')?;
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || int.len() + frac.len() == 0 {
            return None;
        }
        let digits: Integer = format!("{int}{frac}").parse().ok()?;
        let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
        Some(Q(Rational::from((digits * sign, den))))
    }
}

pub fn int_valuation(n: &Integer, p: u64) -> u32 {
    if n.cmp0() == CmpOrdering::Equal {
        return u32::MAX;
    }
    let p = Integer::from(p);
    let mut m = n.clone().abs();
    let mut v = 0;
    while m.is_divisible(&p) {
        m /= &p;
        v += 1;
    }
    v
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q(Rational::from(n))
    }
}

impl From<Integer> for Q {
    fn from(n: Integer) -> Self {
        Q(Rational::from(n))
    }
}

macro_rules! q_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $op:tt, $aop:tt) => {
        impl $tr<&Q> for &Q {
            type Output = Q;
            fn $m(self, r: &Q) -> Q {
                Q(Rational::from(&self.0 $op &r.0))
            }
        }
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(mut self, r: Q) -> Q {
                self.0 $aop r.0;
                self
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $m(mut self, r: &Q) -> Q {
                self.0 $aop &r.0;
                self
            }
        }
        impl $tr<Q> for &Q {
            type Output = Q;
            fn $m(self, r: Q) -> Q {
                Q(Rational::from(&self.0 $op &r.0))
            }
        }
        impl $atr<&Q> for Q {
            fn $am(&mut self, r: &Q) {
                self.0 $aop &r.0;
            }
        }
        impl $atr<Q> for Q {
            fn $am(&mut self, r: Q) {
                self.0 $aop r.0;
            }
        }
    };
}

q_binop!(Add, add, AddAssign, add_assign, +, +=);
q_binop!(Sub, sub, SubAssign, sub_assign, -, -=);
q_binop!(Mul, mul, MulAssign, mul_assign, *, *=);
q_binop!(Div, div, DivAssign, div_assign, /, /=);

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(Rational::from(-&self.0))
    }
}

impl Zero for Q {
    fn zero() -> Self {
        Q(Rational::new())
    }
    fn is_zero(&self) -> bool {
        self.0.cmp0() == CmpOrdering::Equal
    }
}

impl One for Q {
    fn one() -> Self {
        Q(Rational::from(1))
    }
}

impl Sum for Q {
    fn sum<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::zero(), |a, b| a + b)
    }
}

impl Ring for Q {
    fn from_i64(n: i64) -> Self {
        Q::from(n)
    }
}

impl Field for Q {
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
}

// ---------------------------------------------------------------- complex

impl<T: Real> Ring for Complex<T> {
    fn from_i64(n: i64) -> Self {
        Complex::new(T::from_i64(n), T::zero())
    }
}

impl<T: Real> Field for Complex<T> {
    fn from_q(x: &Q) -> Self {
        Complex::new(T::from_q(x), T::zero())
    }
}

/// Elementary functions on `Complex<T>` for any [`Real`] `T`.
pub trait ComplexFns<T: Real> {
    fn cabs(&self) -> T;
    fn carg(&self) -> T;
    fn cexp(&self) -> Self;
    fn csqrt(&self) -> Self;
    fn cln(&self) -> Self;
    fn cpowi(&self, n: i32) -> Self;
    fn real(x: T) -> Self;
    fn i() -> Self;
}

impl<T: Real> ComplexFns<T> for Complex<T> {
    fn cabs(&self) -> T {
        let a = self.re.abs();
        let b = self.im.abs();
        if a.is_zero() && b.is_zero() {
            return T::zero();
        }
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        let r = small / big.clone();
        big * (T::one() + r.clone() * r).sqrt()
    }

    fn carg(&self) -> T {
        self.im.atan2(&self.re)
    }

    fn cexp(&self) -> Self {
        let m = self.re.exp();
        Complex::new(m.clone() * self.im.cos(), m * self.im.sin())
    }

    fn csqrt(&self) -> Self {
        if self.re.is_zero() && self.im.is_zero() {
            return self.clone();
        }
        let r = self.cabs();
        let two = T::from_i64(2);
        let u = ((r.clone() + self.re.abs()) / two.clone()).sqrt();
        if self.re >= T::zero() {
            Complex::new(u.clone(), self.im.clone() / (two * u))
        } else {
            let v = self.im.abs() / (two * u.clone());
            let w = if self.im >= T::zero() { u } else { -u };
            Complex::new(v, w)
        }
    }

    fn cln(&self) -> Self {
        Complex::new(self.cabs().ln(), self.carg())
    }

    fn cpowi(&self, n: i32) -> Self {
        let mut base = if n < 0 { Complex::<T>::one() / self.clone() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Complex::<T>::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    fn real(x: T) -> Self {
        Complex::new(x, T::zero())
    }

    fn i() -> Self {
        Complex::new(T::zero(), T::one())
    }
}

/// Promote an exact rational to a complex scalar at the default precision.
pub fn q_to_cx<T: Real>(x: &Q) -> Complex<T> {
    Complex::new(T::from_q(x), T::zero())
}

/// Best rational approximation with denominator ≤ `max_den`, accepted only if
/// it lies within `tol` of `x` (continued-fraction convergents).
pub fn rationalize<T: Real>(x: &T, max_den: i64, tol: &T) -> Option<Q> {
    let mut rem = x.clone();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = rem.floor();
        let ai = a.to_i64()? as i128;
        let p2 = ai.checked_mul(p1)?.checked_add(p0)?;
        let q2 = ai.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let approx = T::from_q(&Q(Rational::from((Integer::from(p1), Integer::from(q1)))));
        if (approx - x.clone()).abs() < *tol {
            return Some(Q(Rational::from((Integer::from(p1), Integer::from(q1)))));
        }
        let frac = rem.clone() - a;
        if frac.is_zero() {
            break;
        }
        rem = T::one() / frac;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mp_sqrt2_has_requested_bits() {
        let x = Mp::from_i64(2).sqrt();
        let back = x.clone() * x;
        assert!((back - Mp::from_i64(2)).abs() < Mp::epsilon() * Mp::from_i64(4));
    }

    #[test]
    fn sci_format_matches_f64_style() {
        assert_eq!(Mp::from_f64(1.5).to_sci(3), "1.50e0");
        assert_eq!(Mp::from_f64(-0.000123).to_sci(2), "-1.2e-4");
        assert_eq!(1.5f64.to_sci(3), "1.50e0");
    }

    #[test]
    fn q_valuation_and_residue() {
        assert_eq!(Q::new(25, 4).valuation(5), Some(2));
        assert_eq!(Q::new(-50, 3).valuation(5), Some(2));
        assert_eq!(Q::new(9525, 4).valuation(5), Some(2));
        assert_eq!(Q::zero().valuation(5), None);
        // -38/3 mod 5: 3^{-1} = 2, -76 mod 5 = 4
        assert_eq!(Q::new(-38, 3).residue_mod(&Integer::from(5)), Some(Integer::from(4)));
    }

    #[test]
    fn q_parses_fractions_and_decimals() {
        assert_eq!(Q::parse("-7/3"), Some(Q::new(-7, 3)));
        assert_eq!(Q::parse("-0.25"), Some(Q::new(-1, 4)));
        assert_eq!(Q::parse("12"), Some(Q::from(12)));
        assert_eq!(Q::parse("x"), None);
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        let x = Mp::from_i64(-7) / Mp::from_i64(3);
        let tol = Mp::from_f64(1e-30);
        assert_eq!(rationalize(&x, 10_000, &tol), Some(Q::new(-7, 3)));
        assert_eq!(rationalize(&Mp::from_i64(2).sqrt(), 10_000, &tol), None);
        assert_eq!(rationalize(&Mp::from_i64(-2), 10, &tol), Some(Q::from(-2)));
    }

    #[test]
    fn complex_sqrt_and_exp() {
        let z = Complex::new(Mp::from_f64(-3.0), Mp::from_f64(4.0));
        let s = z.csqrt();
        assert!((s.clone() * s - z).cabs() < Mp::from_f64(1e-70));
        let e = Complex::new(Mp::zero(), Mp::pi()).cexp();
        assert!((e.re + Mp::one()).abs() < Mp::from_f64(1e-70));
    }
}
