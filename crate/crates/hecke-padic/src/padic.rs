//! The congruences T_n(E) − c·F_E ≡ 0 mod pᵗ and the digits of 𝔖_E(p).

use curve_arith::{newform_coefficients, EllipticCurve, NewformCoefficients};
use mock_modular::zeta_of_eichler_exact;
use rug::Integer;
use series_core::arith::is_prime;
use series_core::{QSeries, Q};

use crate::hecke::hecke_weight2;
use crate::PadicError;

/// Default upper end of the coefficient window q^{−pⁿ} … q^K.
pub const DEFAULT_WINDOW: i64 = 10;

/// Exact data for one curve and prime: ζ(Λ_E; 𝓔_E) far enough out for T(p^{max_n}).
#[derive(Clone, Debug)]
pub struct PadicContext {
    pub curve: EllipticCurve,
    pub p: u64,
    pub max_n: u32,
    pub window_hi: i64,
    pub coeffs: NewformCoefficients,
    /// ζ(Λ_E; 𝓔_E) = ẑ⁺_E + S·𝓔_E, exact.
    pub zeta_eichler: QSeries,
}

#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub p: u64,
    pub n: u32,
    pub t: i64,
    pub a_pn: i64,
    /// The c in T_n − c·F.
    pub multiplier: Q,
    pub window: (i64, i64),
    /// T_n = [q d/dq ζ(𝓔)]|T(pⁿ)/a(pⁿ).
    pub t_n: QSeries,
    pub residual: QSeries,
    /// Least ord_p over nonzero residual coefficients; `None` if the residual vanishes.
    pub min_valuation: Option<i64>,
    pub passes: bool,
}

impl PadicContext {
    pub fn new(curve: &EllipticCurve, p: u64, max_n: u32, window_hi: i64) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        let level = curve.conductor;
        if level % p == 0 {
            return Err(PadicError::PDividesLevel { p, level });
        }
        let top = (p as i64).pow(max_n) * window_hi.max(1);
        let coeffs = newform_coefficients(curve, top as usize + 4)?;
        let ap = coeffs.get(p as usize);
        if ap.rem_euclid(p as i64) == 0 {
            return Err(PadicError::Supersingular { p, ap });
        }
        let zeta_eichler = zeta_of_eichler_exact(curve, &coeffs, top);
        Ok(PadicContext { curve: curve.clone(), p, max_n, window_hi, coeffs, zeta_eichler })
    }

    fn pn(&self, n: u32) -> i64 {
        (self.p as i64).pow(n)
    }

    pub fn a_pn(&self, n: u32) -> Result<i64, PadicError> {
        let a = self.coeffs.get(self.pn(n) as usize);
        if a == 0 {
            return Err(PadicError::ZeroEigenvalue(n));
        }
        Ok(a)
    }

    /// T_n on the window [−pⁿ, window_hi].
    pub fn t_n(&self, n: u32) -> Result<QSeries, PadicError> {
        let a = self.a_pn(n)?;
        let t = hecke_weight2(&self.zeta_eichler, self.p, n, self.curve.conductor, self.window_hi)?;
        Ok(t.scale(&Q::new(1, a)))
    }

    /// c_n, the q¹ coefficient of T_n: pⁿ·R(pⁿ)/a(pⁿ).
    pub fn c_n(&self, n: u32) -> Result<Q, PadicError> {
        let pn = self.pn(n);
        let r = self.zeta_eichler.get(pn).ok_or(PadicError::Precision {
            n,
            hi: 1,
            needed: pn,
            known: self.zeta_eichler.precision() - 1,
        })?;
        Ok(r * Q::new(pn, self.a_pn(n)?))
    }
}

/// T_n − c·F_E with every window coefficient checked for ord_p ≥ t.
/// With `multiplier = None`, c is c_n itself.
pub fn padic_congruence_check(
    ctx: &PadicContext,
    n: u32,
    t: i64,
    multiplier: Option<Q>,
) -> Result<CongruenceReport, PadicError> {
    let t_n = ctx.t_n(n)?;
    let c = match multiplier {
        Some(c) => c,
        None => t_n.coeff(1),
    };
    let f = ctx.coeffs.series().truncate(t_n.precision());
    let residual = t_n.sub(&f.scale(&c));
    let lo = t_n.min_exponent();
    let hi = t_n.precision() - 1;
    let min_valuation = (lo..=hi).filter_map(|m| residual.get(m).and_then(|x| x.valuation(ctx.p))).min();
    let passes = min_valuation.is_none_or(|v| v >= t);
    Ok(CongruenceReport {
        p: ctx.p,
        n,
        t,
        a_pn: ctx.a_pn(n)?,
        multiplier: c,
        window: (lo, hi),
        t_n,
        residual,
        min_valuation,
        passes,
    })
}

fn digits_mod(x: &Q, p: u64, n: u32) -> Result<Vec<u64>, PadicError> {
    let modulus = Integer::from(Integer::u_pow_u(p as u32, n));
    let mut r = x
        .residue_mod(&modulus)
        .ok_or_else(|| PadicError::NotIntegral { n, value: x.to_string() })?;
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let d = Integer::from(&r % p);
        out.push(d.to_u64().expect("digit below p"));
        r /= p;
    }
    Ok(out)
}

/// Base-p digits of 𝔖_E(p) for p⁰ … p^{n_terms−1}, read from c_{n_terms} and
/// checked against every later level the context holds.
pub fn s_p_digits(ctx: &PadicContext, n_terms: u32) -> Result<Vec<u64>, PadicError> {
    if n_terms > ctx.max_n {
        return Err(PadicError::Precision {
            n: n_terms,
            hi: 1,
            needed: ctx.pn(n_terms),
            known: ctx.zeta_eichler.precision() - 1,
        });
    }
    let levels: Vec<Vec<u64>> = (1..=ctx.max_n)
        .map(|n| digits_mod(&ctx.c_n(n)?, ctx.p, n))
        .collect::<Result<_, _>>()?;
    for k in 0..n_terms as usize {
        let first = levels[k][k];
        for (m, lv) in levels.iter().enumerate().skip(k + 1) {
            if lv[k] != first {
                return Err(PadicError::NonStabilizing { k, n: k as u32 + 1, m: m as u32 + 1 });
            }
        }
    }
    Ok(levels[n_terms as usize - 1].clone())
}
