//! Everything attached to one curve: 𝓔_E, ẑ⁺_E, the completion, Ω_q and the
//! cusp expansions.

use std::collections::BTreeMap;

use curve_arith::{atkin_lehner_data, newform_coefficients, AtkinLehnerData, EllipticCurve, NewformCoefficients};
use num_traits::Zero;
use series_core::arith::{divisors, gcd, is_fundamental};
use series_core::eta::q_of_tau;
use series_core::{promote, ComplexFns, Cx, LaurentQSeries, QSeries, Real, Q};
use weierstrass_fn::{HarmonicFormValue, WeierstrassFn};

use crate::atkin::{atkin_lehner_matrix, mobius};
use crate::eichler::{eichler_eval, eichler_series, eichler_terms};
use crate::exact::{rationalize_series, zeta_of_eichler_exact};
use crate::MockError;

#[derive(Clone, Debug)]
pub struct PackageOptions {
    /// Expansions are computed through q^{n_max}.
    pub n_max: usize,
    /// Smallest Im z at which 𝓔_E must be evaluable without a flip.
    pub min_im: f64,
}

impl Default for PackageOptions {
    fn default() -> Self {
        PackageOptions { n_max: 20, min_im: 0.05 }
    }
}

/// The holomorphic part of ẑ_E|W_q, expanded in q.
#[derive(Clone, Debug)]
pub struct CuspExpansion<T: Real> {
    pub divisor: u64,
    pub series: LaurentQSeries<Cx<T>>,
    pub constant: Cx<T>,
    /// Ω_q ∈ Λ_E: the expansion is λ_q·ẑ⁺_E and has a pole in place of a constant shift.
    pub omega_in_lattice: bool,
}

/// (ẑ⁺ − c)/√(|Δ|N) at ∞, with c the common constant term at every cusp.
#[derive(Clone, Debug)]
pub struct StarForm<T: Real> {
    pub discriminant: i64,
    pub scale: T,
    pub removed_constant: Cx<T>,
    pub series: LaurentQSeries<Cx<T>>,
}

#[derive(Clone, Debug)]
pub struct MockFormPackage<T: Real> {
    pub curve: EllipticCurve,
    pub coeffs: NewformCoefficients,
    pub atkin_lehner: Option<AtkinLehnerData>,
    pub weierstrass: WeierstrassFn<T>,
    pub n_max: usize,
    pub eichler: QSeries,
    /// ζ(Λ_E; 𝓔_E), exact.
    pub zeta_eichler: QSeries,
    pub zhat_plus: LaurentQSeries<Cx<T>>,
    /// π/a(Λ_E).
    pub completion_coefficient: T,
    /// Ω_q for every exact divisor q > 1 of a squarefree level.
    pub omega: BTreeMap<u64, Cx<T>>,
    /// Constant term of the holomorphic part at the cusp W_q·∞; key 1 is ∞.
    pub cusp_constants: BTreeMap<u64, Cx<T>>,
    budget: f64,
}

fn working_budget<T: Real>() -> f64 {
    2f64.powi(-(T::bits() as i32) - 4)
}

impl<T: Real> MockFormPackage<T> {
    pub fn new(curve: &EllipticCurve, opts: &PackageOptions) -> Result<Self, MockError> {
        let budget = working_budget::<T>();
        let n = curve.conductor;
        // the basepoint i/√N and its Atkin–Lehner images must be evaluable
        let base = 1.0 / (n as f64).sqrt();
        let mut min_im = opts.min_im.min(base);
        for q in divisors(n) {
            if let Some(w) = atkin_lehner_matrix(n, q) {
                min_im = min_im.min(mobius(&w, &Cx::new(0.0, base)).im);
            }
        }
        let n_cache = (opts.n_max + 2).max(eichler_terms(min_im, budget));
        let coeffs = newform_coefficients(curve, n_cache)?;
        let atkin_lehner = atkin_lehner_data(curve, &coeffs).ok();
        let weierstrass = WeierstrassFn::<T>::from_curve(curve)?;
        let eichler = eichler_series(&coeffs, opts.n_max);
        let zeta_eichler = zeta_of_eichler_exact(curve, &coeffs, opts.n_max as i64);
        let s = weierstrass.lattice().s.clone();
        let zhat_plus = promote::<T>(&zeta_eichler).sub(&promote::<T>(&eichler).scale(&s));
        let completion_coefficient = weierstrass.completion_coefficient();
        let mut pkg = MockFormPackage {
            curve: curve.clone(),
            coeffs,
            atkin_lehner,
            weierstrass,
            n_max: opts.n_max,
            eichler,
            zeta_eichler,
            zhat_plus,
            completion_coefficient,
            omega: BTreeMap::new(),
            cusp_constants: BTreeMap::new(),
            budget,
        };
        pkg.cusp_constants.insert(1, pkg.zhat_plus.coeff(0));
        if let Some(al) = pkg.atkin_lehner.clone() {
            for q in divisors(n) {
                if q == 1 || gcd(q as i64, (n / q) as i64) != 1 {
                    continue;
                }
                let om = pkg.omega_at(q, &pkg.default_basepoint())?;
                pkg.omega.insert(q, om);
                let c = pkg.cusp_constant(q, al.lambda_of(q))?;
                pkg.cusp_constants.insert(q, c);
            }
        }
        Ok(pkg)
    }

    pub fn lambda(&self, q: u64) -> Option<i32> {
        self.atkin_lehner.as_ref().map(|al| al.lambda_of(q))
    }

    /// i/√N.
    pub fn default_basepoint(&self) -> Cx<T> {
        Cx::new(T::zero(), T::one() / T::from_i64(self.curve.conductor as i64).sqrt())
    }

    /// Tolerance for deciding membership in Λ_E.
    pub fn lattice_tolerance(&self) -> T {
        self.weierstrass.radius().clone() * T::epsilon().sqrt()
    }

    pub fn eichler_eval(&self, z: &Cx<T>) -> Result<Cx<T>, MockError> {
        eichler_eval(&self.coeffs, z, self.budget)
    }

    /// Ω_q = 𝓔(z) − λ_q·𝓔(W_q z) at the given basepoint.
    pub fn omega_at(&self, q: u64, z: &Cx<T>) -> Result<Cx<T>, MockError> {
        let n = self.curve.conductor;
        let w = atkin_lehner_matrix(n, q).ok_or(MockError::NotHallDivisor(q, n))?;
        let lambda = self.lambda(q).ok_or(MockError::Curve(curve_arith::CurveError::NotSquarefree(n)))?;
        let wz = mobius(&w, z);
        let a = self.eichler_eval(z)?;
        let b = self.eichler_eval(&wz)?;
        Ok(a - b.scale(T::from_i64(lambda as i64)))
    }

    /// Ω_q/ω₁, for recognising Ω_q as a rational multiple of the real period.
    pub fn omega_ratio(&self, q: u64) -> Option<Cx<T>> {
        self.omega.get(&q).map(|o| o.clone() / self.weierstrass.lattice().omega1.clone())
    }

    fn cusp_constant(&self, q: u64, lambda: i32) -> Result<Cx<T>, MockError> {
        let om = &self.omega[&q];
        let l = T::from_i64(lambda as i64);
        let c_inf = self.zhat_plus.coeff(0);
        if self.weierstrass.lattice().contains(om, &self.lattice_tolerance()) {
            return Ok(c_inf.scale(l));
        }
        Ok(-self.weierstrass.completed_zeta(om)?.total().scale(l))
    }

    /// ẑ_E(z) = 𝔷_E(𝓔_E(z)), split into ẑ⁺_E(z) and −(π/a)·conj(𝓔_E(z)).
    pub fn zhat_eval(&self, z: &Cx<T>) -> Result<HarmonicFormValue<T>, MockError> {
        let e = self.eichler_eval(z)?;
        if self.weierstrass.lattice().contains(&e, &self.lattice_tolerance()) {
            return Err(MockError::Pole);
        }
        Ok(self.weierstrass.completed_zeta(&e)?)
    }

    /// ẑ_E(W_N z′) evaluated as 𝔷_E(λ_N(𝓔_E(z′) − Ω_N)); use when z = W_N z′ is low in ℍ.
    pub fn zhat_eval_fricke(&self, z_prime: &Cx<T>) -> Result<HarmonicFormValue<T>, MockError> {
        let n = self.curve.conductor;
        let om = self.omega.get(&n).ok_or(MockError::Curve(curve_arith::CurveError::NotSquarefree(n)))?;
        let l = T::from_i64(self.lambda(n).expect("omega implies λ") as i64);
        let u = (self.eichler_eval(z_prime)? - om.clone()).scale(l);
        if self.weierstrass.lattice().contains(&u, &self.lattice_tolerance()) {
            return Err(MockError::Pole);
        }
        Ok(self.weierstrass.completed_zeta(&u)?)
    }

    /// Σ c(n)qⁿ of ẑ⁺ summed at z, plus the completion term; for cross-checking zhat_eval.
    pub fn zhat_from_series(&self, z: &Cx<T>) -> Result<HarmonicFormValue<T>, MockError> {
        let q = q_of_tau(z);
        let mut acc = Cx::<T>::zero();
        for (n, c) in self.zhat_plus.iter() {
            acc = acc + c.clone() * q.cpowi(n as i32);
        }
        let e = self.eichler_eval(z)?;
        Ok(HarmonicFormValue { holomorphic: acc, completion: -e.conj().scale(self.completion_coefficient.clone()) })
    }

    /// Holomorphic part of ẑ_E|W_q through q^{n_max}:
    /// λ_q·[ζ(𝓔 − Ω_q) − S·(𝓔 − Ω_q) + (π/a)·conj(Ω_q)], using the Taylor
    /// expansion of ζ at −Ω_q.
    pub fn cusp_expansion(&self, q: u64) -> Result<CuspExpansion<T>, MockError> {
        if q == 1 {
            return Ok(CuspExpansion {
                divisor: 1,
                series: self.zhat_plus.clone(),
                constant: self.zhat_plus.coeff(0),
                omega_in_lattice: true,
            });
        }
        let n = self.curve.conductor;
        let om = self.omega.get(&q).ok_or(MockError::NotHallDivisor(q, n))?.clone();
        let l = T::from_i64(self.lambda(q).expect("omega implies λ") as i64);
        let constant = self.cusp_constants[&q].clone();
        if self.weierstrass.lattice().contains(&om, &self.lattice_tolerance()) {
            return Ok(CuspExpansion {
                divisor: q,
                series: self.zhat_plus.scale(&Cx::real(l)),
                constant,
                omega_in_lattice: true,
            });
        }
        let order = self.n_max + 1;
        let taylor = self.weierstrass.zeta_taylor(&-om.clone(), order)?;
        let e = promote::<T>(&self.eichler);
        let s = self.weierstrass.lattice().s.clone();
        let shift = s.clone() * om.clone() + om.conj().scale(self.completion_coefficient.clone());
        let composed = taylor.compose(&e).expect("𝓔 has valuation 1");
        let series = composed
            .sub(&e.scale(&s))
            .add(&LaurentQSeries::monomial(shift, 0, order as i64))
            .scale(&Cx::real(l));
        Ok(CuspExpansion { divisor: q, series, constant, omega_in_lattice: false })
    }

    /// (ẑ_E − c)/√(|Δ|N) at ∞, where c is the constant term shared by all cusps.
    pub fn normalize_star(&self, delta: i64) -> Result<StarForm<T>, MockError> {
        if !is_fundamental(delta) {
            return Err(MockError::NotFundamental(delta));
        }
        let n = self.curve.conductor;
        if self.atkin_lehner.is_none() {
            return Err(MockError::Curve(curve_arith::CurveError::NotSquarefree(n)));
        }
        let c = self.cusp_constants[&1].clone();
        let tol = T::from_f64(1e-20);
        if self.cusp_constants.values().any(|v| (v.clone() - c.clone()).cabs() > tol) {
            let listing = self
                .cusp_constants
                .iter()
                .map(|(q, v)| format!("{q}: {}", v.re.to_sci(12)))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(MockError::CuspConstantsDiffer(listing));
        }
        let scale = T::one() / T::from_i64(delta.abs() * n as i64).sqrt();
        let series = self
            .zhat_plus
            .sub(&LaurentQSeries::monomial(c.clone(), 0, self.zhat_plus.precision()))
            .scale(&Cx::real(scale.clone()));
        Ok(StarForm { discriminant: delta, scale, removed_constant: c, series })
    }

    /// The constant c with ξ₀(ẑ_E) = c·F_E in the normalization used here: π/a(Λ_E).
    pub fn xi0_coefficient(&self) -> T {
        self.completion_coefficient.clone()
    }

    /// ẑ⁺ with coefficients recognised as rationals of denominator ≤ max_den within tol.
    pub fn zhat_plus_rational(&self, max_den: i64, tol: f64) -> Option<QSeries> {
        rationalize_series(&self.zhat_plus, max_den, tol)
    }

    /// S(Λ_E) recognised as a rational, if it is one with small denominator.
    pub fn s_rational(&self, max_den: i64, tol: f64) -> Option<Q> {
        let s = &self.weierstrass.lattice().s;
        if s.im.abs() >= T::from_f64(tol) {
            return None;
        }
        series_core::rationalize(&s.re, max_den, &T::from_f64(tol))
    }
}
