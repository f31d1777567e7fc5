//! Twisted traces tr±_{Δ,r}(F; d) of weight-0 functions over Heegner classes,
//! the lift coefficients built from them and Zagier's f_d.

use mock_modular::{MockFormPackage, PackageOptions};
use num_traits::Zero;
use series_core::arith::is_fundamental;
use series_core::eta::j_eval;
use series_core::{ComplexFns, Cx, QSeries, Real, Q};

use crate::classes::{best_point, cm_point, heegner_classes, Sign};
use crate::forms::BinaryQF;
use crate::genus::genus_character;
use crate::TraceError;

/// Package options whose coefficient cache reaches Im z = √3/(2N), the lowest
/// point a Heegner point can be forced down to when only Γ₀(N) and W_N are used.
pub fn trace_package_options(level: u64) -> PackageOptions {
    PackageOptions { min_im: 0.99 * 3f64.sqrt() / (2.0 * level as f64), ..PackageOptions::default() }
}

/// A Γ₀(N)-invariant function on ℍ that can be evaluated pointwise.
pub trait ModularFunction<T: Real> {
    fn level(&self) -> u64;
    fn eval(&self, z: &Cx<T>) -> Result<Cx<T>, TraceError>;
    /// f(W_N·w), if the function has its own expansion at the Fricke-flipped cusp.
    fn eval_fricke(&self, _w: &Cx<T>) -> Option<Result<Cx<T>, TraceError>> {
        None
    }
}

/// ẑ_E − shift, including the non-holomorphic completion.
pub struct ZhatFunction<'a, T: Real> {
    pub package: &'a MockFormPackage<T>,
    pub shift: Cx<T>,
}

impl<'a, T: Real> ZhatFunction<'a, T> {
    pub fn new(package: &'a MockFormPackage<T>) -> Self {
        ZhatFunction { package, shift: Cx::zero() }
    }

    /// ẑ_E minus its constant term at ∞.
    pub fn centered(package: &'a MockFormPackage<T>) -> Self {
        ZhatFunction { package, shift: package.cusp_constants[&1].clone() }
    }
}

impl<T: Real> ModularFunction<T> for ZhatFunction<'_, T> {
    fn level(&self) -> u64 {
        self.package.curve.conductor
    }

    fn eval(&self, z: &Cx<T>) -> Result<Cx<T>, TraceError> {
        Ok(self.package.zhat_eval(z)?.total() - self.shift.clone())
    }

    fn eval_fricke(&self, w: &Cx<T>) -> Option<Result<Cx<T>, TraceError>> {
        let n = self.package.curve.conductor;
        self.package.omega.get(&n)?;
        Some(
            self.package
                .zhat_eval_fricke(w)
                .map(|v| v.total() - self.shift.clone())
                .map_err(Into::into),
        )
    }
}

/// j(z) − 744 on level 1.
pub struct KleinJ;

impl<T: Real> ModularFunction<T> for KleinJ {
    fn level(&self) -> u64 {
        1
    }

    fn eval(&self, z: &Cx<T>) -> Result<Cx<T>, TraceError> {
        Ok(j_eval(z) - Cx::real(T::from_i64(744)))
    }
}

pub struct ConstantFunction<T: Real> {
    pub level: u64,
    pub value: Cx<T>,
}

impl<T: Real> ModularFunction<T> for ConstantFunction<T> {
    fn level(&self) -> u64 {
        self.level
    }

    fn eval(&self, _z: &Cx<T>) -> Result<Cx<T>, TraceError> {
        Ok(self.value.clone())
    }
}

/// One Heegner class and its contribution.
#[derive(Clone, Debug)]
pub struct TraceTerm<T: Real> {
    pub form: BinaryQF,
    pub sign: Sign,
    pub stabilizer_order: u32,
    pub character: i32,
    pub cm_point: Cx<T>,
    /// Point actually evaluated; the function was taken at W_N·point when `fricke`.
    pub eval_point: Cx<T>,
    pub fricke: bool,
    /// F(D_λ); `None` when χ vanishes and the class is skipped.
    pub value: Option<Cx<T>>,
}

#[derive(Clone, Debug)]
pub struct TwistedTrace<T: Real> {
    pub level: u64,
    pub delta: i64,
    pub d: i64,
    pub r: i64,
    pub h: i64,
    /// Discriminant Δ·d of the forms summed over.
    pub discriminant: i64,
    pub beta: i64,
    pub tr_plus: Cx<T>,
    pub tr_minus: Cx<T>,
    /// Working-precision budget summed over the evaluated classes.
    pub error_bound: T,
    pub terms: Vec<TraceTerm<T>>,
}

fn check_square(what: &'static str, value: i64, target: i64, modulus: i64) -> Result<(), TraceError> {
    if (value * value - target).rem_euclid(modulus) != 0 {
        return Err(TraceError::Congruence { what, value, target, modulus });
    }
    Ok(())
}

/// tr⁺ = Σ_{a>0} χ_Δ(λ)/|Γ̄_λ|·F(D_λ) and tr⁻ = Σ_{a<0} sgn(Δ)·χ_Δ(λ)/|Γ̄_λ|·F(D_λ)
/// over forms of discriminant Δ·d with b ≡ r·h mod 2N, where r² ≡ Δ and h² ≡ d mod 4N.
pub fn twisted_trace<T: Real, F: ModularFunction<T> + ?Sized>(
    f: &F,
    delta: i64,
    d: i64,
    r: i64,
    h: i64,
) -> Result<TwistedTrace<T>, TraceError> {
    if !is_fundamental(delta) {
        return Err(TraceError::NotFundamental(delta));
    }
    let n = f.level();
    let ni = n as i64;
    check_square("r", r, delta, 4 * ni)?;
    check_square("h", h, d, 4 * ni)?;
    let disc = delta * d;
    let beta = (r * h).rem_euclid(2 * ni);
    let classes = heegner_classes(n, disc, beta)?;
    let sgn = if delta < 0 { -1 } else { 1 };
    let budget = T::epsilon() * T::from_i64(1 << 20);
    let mut tr_plus = Cx::<T>::zero();
    let mut tr_minus = Cx::<T>::zero();
    let mut error_bound = T::zero();
    let mut terms = Vec::with_capacity(classes.len());
    for c in classes {
        let character = genus_character(&c.form, delta, n)?;
        let z = cm_point::<T>(&c.form)?;
        let probe = f.eval_fricke(&z);
        let (w, fricke) = best_point(&z, n, probe.is_some());
        let value = if character == 0 {
            None
        } else if fricke {
            Some(f.eval_fricke(&w).expect("checked above")?)
        } else {
            Some(f.eval(&w)?)
        };
        if let Some(v) = &value {
            let weight = T::from_i64(character as i64) / T::from_i64(c.stabilizer_order as i64);
            error_bound = error_bound + budget.clone() * (T::one() + v.cabs()) * weight.abs();
            match c.sign {
                Sign::Plus => tr_plus = tr_plus + v.clone().scale(weight),
                Sign::Minus => tr_minus = tr_minus + v.clone().scale(weight * T::from_i64(sgn)),
            }
        }
        terms.push(TraceTerm {
            form: c.form,
            sign: c.sign,
            stabilizer_order: c.stabilizer_order,
            character,
            cm_point: z,
            eval_point: w,
            fricke,
            value,
        });
    }
    Ok(TwistedTrace { level: n, delta, d, r, h, discriminant: disc, beta, tr_plus, tr_minus, error_bound, terms })
}

/// How tr± are combined into a coefficient of index d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// √Δ/(2√m)·(tr⁺ − tr⁻) with m = d/(4N).
    RootDelta,
    /// (tr⁺ − tr⁻)/(2√d).
    Antisymmetric,
    /// (tr⁺ + tr⁻)/(2√d); the canonical mode.
    Symmetric,
}

impl Normalization {
    pub const ALL: [Normalization; 3] = [Normalization::RootDelta, Normalization::Antisymmetric, Normalization::Symmetric];
    pub const CANONICAL: Normalization = Normalization::Symmetric;

    pub fn as_str(&self) -> &'static str {
        match self {
            Normalization::RootDelta => "root_delta",
            Normalization::Antisymmetric => "antisymmetric",
            Normalization::Symmetric => "symmetric",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LiftCoefficient<T: Real> {
    pub d: i64,
    pub normalization: Normalization,
    pub value: Cx<T>,
    pub error_bound: T,
}

pub fn lift_coefficient<T: Real>(tr: &TwistedTrace<T>, mode: Normalization) -> LiftCoefficient<T> {
    let sqrt_d = T::from_i64(tr.d).sqrt();
    let two = T::from_i64(2);
    let (value, scale) = match mode {
        Normalization::RootDelta => {
            let root_delta = if tr.delta < 0 {
                Cx::new(T::zero(), T::from_i64(-tr.delta).sqrt())
            } else {
                Cx::real(T::from_i64(tr.delta).sqrt())
            };
            // √Δ/(2√m) with m = d/(4N) is √Δ·√N/√d
            let s = T::from_i64(tr.level as i64).sqrt() / sqrt_d;
            let v = (tr.tr_plus.clone() - tr.tr_minus.clone()) * root_delta.scale(s.clone());
            (v, s * T::from_i64(tr.delta.abs()).sqrt())
        }
        Normalization::Antisymmetric => {
            let s = T::one() / (two * sqrt_d);
            ((tr.tr_plus.clone() - tr.tr_minus.clone()).scale(s.clone()), s)
        }
        Normalization::Symmetric => {
            let s = T::one() / (two * sqrt_d);
            ((tr.tr_plus.clone() + tr.tr_minus.clone()).scale(s.clone()), s)
        }
    };
    LiftCoefficient { d: tr.d, normalization: mode, value, error_bound: tr.error_bound.clone() * scale }
}

/// Least x in [0, m) with x² ≡ t mod m.
pub(crate) fn sqrt_mod(t: i64, m: i64) -> Option<i64> {
    (0..m).find(|x| (x * x - t).rem_euclid(m) == 0)
}

/// Zagier's f_d = q^{−|d|} + Σ_{0<D≤D_max} A(D)·q^D for a negative fundamental d,
/// with A(D) = tr_{d}(j − 744; D)/√D. Every coefficient must round to an integer
/// within 10⁻⁶.
pub fn zagier_fd<T: Real>(d: i64, d_max: i64) -> Result<QSeries, TraceError> {
    if d >= 0 {
        return Err(TraceError::NotNegative(-d));
    }
    if !is_fundamental(d) {
        return Err(TraceError::NotFundamental(d));
    }
    let r = sqrt_mod(d, 4).expect("discriminants are squares mod 4");
    let lo = d;
    let mut coeffs = vec![Q::from(0); (d_max - lo + 1) as usize];
    coeffs[0] = Q::from(1);
    for big_d in 1..=d_max {
        if !matches!(big_d % 4, 0 | 1) {
            continue;
        }
        let tr = twisted_trace::<T, _>(&KleinJ, d, big_d, r, big_d % 2)?;
        let v = lift_coefficient(&tr, Normalization::CANONICAL).value;
        let rounded = v.re.round();
        let residual = (v.re.clone() - rounded.clone()).abs().to_f64().max(v.im.abs().to_f64());
        let k = rounded.to_i64().filter(|_| residual < 1e-6).ok_or_else(|| TraceError::NotIntegral {
            index: big_d,
            value: v.re.to_sci(20),
        })?;
        coeffs[(big_d - lo) as usize] = Q::from(k);
    }
    Ok(QSeries::from_coeffs(lo, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_trace() {
        let one = ConstantFunction { level: 1, value: Cx::<f64>::real(1.0) };
        let tr = twisted_trace(&one, 1, -3, 1, 1).unwrap();
        assert!((tr.tr_plus.re - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(tr.terms.len(), 2);
    }

    #[test]
    fn congruences_are_checked() {
        let one = ConstantFunction { level: 37, value: Cx::<f64>::real(1.0) };
        assert!(matches!(twisted_trace(&one, -3, 1, 20, 1), Err(TraceError::Congruence { what: "r", .. })));
        assert!(matches!(twisted_trace(&one, -3, 1, 21, 2), Err(TraceError::Congruence { what: "h", .. })));
        assert!(matches!(twisted_trace(&one, -4 * 3, 1, 21, 1), Err(TraceError::NotFundamental(_))));
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_mod(-3, 148), Some(21));
        assert_eq!(sqrt_mod(2, 4), None);
    }
}
