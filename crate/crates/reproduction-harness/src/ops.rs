//! Operations referenced from the case file.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use curve_arith::known::by_label;
use curve_arith::{newform_coefficients, EllipticCurve};
use hecke_padic::{padic_congruence_check, s_p_digits, PadicContext};
use heegner_traces::{lift_coefficient, trace_package_options, twisted_trace, zagier_fd, Normalization, ZhatFunction};
use l_values::{central_derivative, central_value, LSeriesJob, Target};
use mock_modular::{MockFormPackage, PackageOptions};
use serde_json::{json, Value};
use series_core::eta::eta_product;
use series_core::{rationalize, ComplexFns, Cx, Field, Mp, Real, Ring, Q};

use crate::format::{certified_complex, certified_real, work_err};
use crate::{properties, Outcome, ReproCase};

pub const OPS: &[&str] = &[
    "newform_vs_eta",
    "newform_coefficients",
    "zhat_plus",
    "zhat_plus_rational",
    "s_invariant",
    "s_rational",
    "omega",
    "omega_period_ratio",
    "cusp_constant_rational",
    "fricke_u_relation",
    "padic_congruence",
    "padic_residual",
    "sp_digits",
    "zagier_fd",
    "lift_coefficient",
    "central_value",
    "central_derivative",
    "addition_law",
    "gamma0_invariance",
    "eisenstein_recursion",
    "hecke_composition",
    "class_numbers",
    "hasse_bound",
];

/// Recognition thresholds for rational coefficients.
const MAX_DEN: i64 = 10_000;
const RAT_TOL: f64 = 1e-30;

type Slot<V> = Arc<OnceLock<Result<Arc<V>, String>>>;

/// Shared expensive objects; each is built once even when several cases
/// request it concurrently.
#[derive(Default)]
pub struct Cache {
    packages: Mutex<HashMap<String, Slot<MockFormPackage<Mp>>>>,
    contexts: Mutex<HashMap<String, Slot<PadicContext>>>,
}

fn cached<V>(map: &Mutex<HashMap<String, Slot<V>>>, key: String, build: impl FnOnce() -> Result<V, String>) -> Result<Arc<V>, String> {
    let slot = map.lock().unwrap().entry(key).or_default().clone();
    slot.get_or_init(|| build().map(Arc::new)).clone()
}

impl Cache {
    pub fn package(&self, e: &EllipticCurve, opts: &PackageOptions) -> Result<Arc<MockFormPackage<Mp>>, String> {
        let key = format!("{}:{}:{}", e.label, opts.n_max, opts.min_im);
        cached(&self.packages, key, || MockFormPackage::new(e, opts).map_err(|x| x.to_string()))
    }

    fn context(&self, e: &EllipticCurve, p: u64, max_n: u32, window: i64) -> Result<Arc<PadicContext>, String> {
        let key = format!("{}:{p}:{max_n}:{window}", e.label);
        cached(&self.contexts, key, || PadicContext::new(e, p, max_n, window).map_err(|x| x.to_string()))
    }
}

pub struct Args<'a> {
    id: &'a str,
    v: &'a Value,
}

impl Args<'_> {
    fn get(&self, k: &str) -> Result<&Value, String> {
        self.v.get(k).ok_or_else(|| format!("{}: missing argument {k:?}", self.id))
    }
    pub fn int(&self, k: &str) -> Result<i64, String> {
        self.get(k)?.as_i64().ok_or_else(|| format!("{}: {k:?} is not an integer", self.id))
    }
    pub fn float(&self, k: &str) -> Result<f64, String> {
        self.get(k)?.as_f64().ok_or_else(|| format!("{}: {k:?} is not a number", self.id))
    }
    pub fn flag(&self, k: &str) -> bool {
        self.v.get(k).and_then(Value::as_bool).unwrap_or(false)
    }
    pub fn str(&self, k: &str) -> Result<&str, String> {
        self.get(k)?.as_str().ok_or_else(|| format!("{}: {k:?} is not a string", self.id))
    }
    pub fn ints(&self, k: &str) -> Result<Vec<i64>, String> {
        let a = self.get(k)?.as_array().ok_or_else(|| format!("{}: {k:?} is not a list", self.id))?;
        a.iter().map(|x| x.as_i64().ok_or_else(|| format!("{}: {k:?} has a non-integer", self.id))).collect()
    }
    pub fn rational(&self, k: &str) -> Result<Q, String> {
        parse_q(self.str(k)?).ok_or_else(|| format!("{}: {k:?} is not a rational", self.id))
    }
    pub fn curve(&self) -> Result<EllipticCurve, String> {
        curve(self.str("curve")?)
    }
    pub fn curves(&self) -> Result<Vec<EllipticCurve>, String> {
        let a = self.get("curves")?.as_array().ok_or_else(|| format!("{}: \"curves\" is not a list", self.id))?;
        a.iter().map(|x| curve(x.as_str().unwrap_or_default())).collect()
    }
}

fn curve(label: &str) -> Result<EllipticCurve, String> {
    by_label(label).ok_or_else(|| format!("unknown curve {label:?}"))
}

pub fn parse_q(s: &str) -> Option<Q> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let (n, d) = (n.trim().parse::<i64>().ok()?, d.trim().parse::<i64>().ok()?);
    (d != 0).then(|| Q::new(n, d))
}

fn q_json(x: &Q) -> Value {
    Value::String(x.to_string())
}

fn q_int(x: &Q) -> Option<i64> {
    if *x.0.denom() == 1 {
        x.0.numer().to_i64()
    } else {
        None
    }
}

fn reals<T: Real>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(|x| certified_real(&x, work_err(&x))).collect())
}

fn exponents(a: &Args) -> Result<Vec<i64>, String> {
    if a.v.get("exponents").is_some() {
        return a.ints("exponents");
    }
    Ok((a.int("from")?..=a.int("to")?).collect())
}

/// A package holding ẑ⁺ through q^{n_max}, evaluable down to Im z = 0.3.
fn expansion_package(cache: &Cache, e: &EllipticCurve, n_max: i64) -> Result<Arc<MockFormPackage<Mp>>, String> {
    cache.package(e, &PackageOptions { n_max: n_max.max(4) as usize, min_im: 0.3 })
}

pub fn run(case: &ReproCase, cache: &Cache) -> Result<Outcome, String> {
    let a = Args { id: &case.id, v: &case.args };
    let e = || a.curve();
    let out = |computed: Value| Ok(Outcome { computed, detail: Value::Null });
    match case.op.as_str() {
        "newform_vs_eta" => {
            let through = a.int("through")? as usize;
            let spec: Vec<(u64, i64)> = a
                .get("eta")?
                .as_array()
                .ok_or("eta: not a list")?
                .iter()
                .map(|p| (p[0].as_u64().unwrap_or(1), p[1].as_i64().unwrap_or(0)))
                .collect();
            let c = newform_coefficients(&e()?, through).map_err(|x| x.to_string())?;
            let eta = eta_product(&spec, through as i64 + 1).map_err(|x| x.to_string())?;
            let agree = (1..=through).take_while(|&n| eta.coeff(n as i64) == Q::from(c.get(n))).count();
            out(json!(agree))
        }
        "newform_coefficients" => {
            let (lo, hi) = (a.int("from")? as usize, a.int("to")? as usize);
            let c = newform_coefficients(&e()?, hi).map_err(|x| x.to_string())?;
            out(json!(c.as_slice()[lo..=hi]))
        }
        "zhat_plus" => {
            let ks = exponents(&a)?;
            let pkg = expansion_package(cache, &e()?, *ks.iter().max().unwrap_or(&1))?;
            let im = ks.iter().map(|&k| pkg.zhat_plus.coeff(k).im.abs().to_f64()).fold(0.0, f64::max);
            Ok(Outcome {
                computed: reals(ks.iter().map(|&k| pkg.zhat_plus.coeff(k).re)),
                detail: json!({ "max_imaginary_part": format!("{im:.1e}") }),
            })
        }
        "zhat_plus_rational" => {
            let ks = exponents(&a)?;
            let pkg = expansion_package(cache, &e()?, *ks.iter().max().unwrap_or(&1))?;
            let r = pkg.zhat_plus_rational(MAX_DEN, RAT_TOL).ok_or("coefficients are not recognisably rational")?;
            out(Value::Array(ks.iter().map(|&k| q_json(&r.coeff(k))).collect()))
        }
        "s_invariant" => {
            let pkg = expansion_package(cache, &e()?, 4)?;
            let s = &pkg.weierstrass.lattice().s;
            Ok(Outcome { computed: certified_real(&s.re, work_err(&s.re)), detail: json!({ "s": certified_complex(s, work_err(&s.re)) }) })
        }
        "s_rational" => {
            let pkg = expansion_package(cache, &e()?, 4)?;
            out(pkg.s_rational(MAX_DEN, RAT_TOL).map(|q| q_json(&q)).unwrap_or(Value::Null))
        }
        "omega" => {
            let q = a.int("q")? as u64;
            let pkg = expansion_package(cache, &e()?, 12)?;
            let om = pkg.omega.get(&q).ok_or_else(|| format!("no period for q = {q}"))?;
            Ok(Outcome { computed: certified_real(&om.re, 1e-30), detail: json!({ "omega": certified_complex(om, 1e-30) }) })
        }
        "omega_period_ratio" => {
            let q = a.int("q")? as u64;
            let pkg = expansion_package(cache, &e()?, 12)?;
            let om = pkg.omega.get(&q).ok_or_else(|| format!("no period for q = {q}"))?;
            let ratio = om.clone() / pkg.weierstrass.lattice().omega1.clone();
            Ok(Outcome {
                computed: certified_real(&ratio.re, 1e-30),
                detail: json!({ "real_period": certified_complex(&pkg.weierstrass.lattice().omega1, 1e-30) }),
            })
        }
        "cusp_constant_rational" => {
            let q = a.int("q")? as u64;
            let pkg = expansion_package(cache, &e()?, 12)?;
            let c = pkg.cusp_constants.get(&q).ok_or_else(|| format!("no cusp constant for q = {q}"))?;
            let r = (c.im.abs().to_f64() < RAT_TOL).then(|| rationalize(&c.re, MAX_DEN, &Mp::from_f64(RAT_TOL))).flatten();
            Ok(Outcome { computed: r.map(|q| q_json(&q)).unwrap_or(Value::Null), detail: json!({ "value": certified_complex(c, 1e-30) }) })
        }
        "fricke_u_relation" => fricke_u_relation(&a, cache),
        "padic_congruence" => {
            let (p, n, t) = (a.int("p")? as u64, a.int("n")? as u32, a.int("t")?);
            let ctx = cache.context(&e()?, p, n, a.int("window")?)?;
            let rep = padic_congruence_check(&ctx, n, t, Some(a.rational("multiplier")?)).map_err(|x| x.to_string())?;
            Ok(Outcome {
                computed: json!(rep.passes),
                detail: json!({
                    "window": [rep.window.0, rep.window.1],
                    "a_pn": rep.a_pn,
                    "multiplier": q_json(&rep.multiplier),
                    "min_valuation": rep.min_valuation,
                }),
            })
        }
        "padic_residual" => {
            let (p, n) = (a.int("p")? as u64, a.int("n")? as u32);
            let ks = a.ints("exponents")?;
            let hi = (*ks.iter().max().unwrap_or(&1)).max(1);
            let ctx = cache.context(&e()?, p, n, hi)?;
            let rep = padic_congruence_check(&ctx, n, n as i64, Some(a.rational("multiplier")?)).map_err(|x| x.to_string())?;
            out(Value::Array(ks.iter().map(|&k| q_json(&rep.residual.coeff(k))).collect()))
        }
        "sp_digits" => {
            let (p, terms) = (a.int("p")? as u64, a.int("terms")? as u32);
            // one level beyond the last digit, so that it is checked too
            let ctx = cache.context(&e()?, p, terms + 1, 1)?;
            let d = s_p_digits(&ctx, terms).map_err(|x| x.to_string())?;
            out(json!(d))
        }
        "zagier_fd" => {
            let ks = a.ints("exponents")?;
            let f = zagier_fd::<Mp>(a.int("d")?, *ks.iter().max().unwrap_or(&1)).map_err(|x| x.to_string())?;
            let cs: Option<Vec<i64>> = ks.iter().map(|&k| q_int(&f.coeff(k))).collect();
            out(json!(cs.ok_or("non-integral coefficient")?))
        }
        "lift_coefficient" => lift(&a, cache),
        "central_value" | "central_derivative" => lvalue(&a, &case.op),
        "addition_law" => properties::addition_law(&a),
        "gamma0_invariance" => properties::gamma0_invariance(&a),
        "eisenstein_recursion" => properties::eisenstein_vs_direct(&a),
        "hecke_composition" => properties::hecke_composition(&a),
        "class_numbers" => properties::class_numbers(&a),
        "hasse_bound" => properties::hasse_bound(&a),
        other => Err(format!("unknown op {other:?}")),
    }
}

/// max_n |H(n) − factor·c⁺(qn) − constant·[n = 0]| for the holomorphic part H
/// of ẑ at the cusp W_q·∞.
fn fricke_u_relation(a: &Args, cache: &Cache) -> Result<Outcome, String> {
    let e = a.curve()?;
    let (q, through) = (a.int("q")?, a.int("through")?);
    let factor = Mp::from_q(&a.rational("factor")?);
    let constant = Mp::from_q(&a.rational("constant")?);
    let small = cache.package(&e, &PackageOptions { n_max: (through + 2) as usize, min_im: 0.2 })?;
    let big = cache.package(&e, &PackageOptions { n_max: (q * through + q) as usize, min_im: 0.2 })?;
    let h = small.cusp_expansion(q as u64).map_err(|x| x.to_string())?;
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for n in 0..=through {
        let lhs = h.series.coeff(n);
        let mut rhs = big.zhat_plus.coeff(q * n).scale(factor.clone());
        if n == 0 {
            rhs = rhs + Cx::new(constant.clone(), Mp::from_i64(0));
        }
        worst = worst.max((lhs.clone() - rhs.clone()).cabs().to_f64());
        rows.push(json!({ "n": n, "cusp": certified_real(&lhs.re, 1e-30), "relation": certified_real(&rhs.re, 1e-30) }));
    }
    Ok(Outcome { computed: Value::String(format!("{worst:.3e}")), detail: Value::Array(rows) })
}

fn sqrt_mod(t: i64, m: i64) -> Option<i64> {
    (0..m).find(|x| (x * x - t).rem_euclid(m) == 0)
}

fn lift(a: &Args, cache: &Cache) -> Result<Outcome, String> {
    let e = a.curve()?;
    let (delta, d) = (a.int("delta")?, a.int("d")?);
    let n = e.conductor as i64;
    let pkg = cache.package(&e, &trace_package_options(e.conductor))?;
    let f = ZhatFunction::centered(&pkg);
    let r = sqrt_mod(delta, 4 * n).ok_or_else(|| format!("{delta} is not a square mod {}", 4 * n))?;
    let h = sqrt_mod(d, 4 * n).ok_or_else(|| format!("{d} is not a square mod {}", 4 * n))?;
    let tr = twisted_trace(&f, delta, d, r, h).map_err(|x| x.to_string())?;
    let c = lift_coefficient(&tr, Normalization::CANONICAL);
    let err = c.error_bound.to_f64().max(work_err(&c.value.re));
    Ok(Outcome {
        computed: certified_real(&c.value.re, err),
        detail: json!({
            "normalization": Normalization::CANONICAL.as_str(),
            "imaginary_part": certified_real(&c.value.im, err),
            "error_bound": format!("{err:.1e}"),
            "r": r,
            "h": h,
            "classes": tr.terms.len(),
            "fricke_flipped": tr.terms.iter().filter(|t| t.fricke).count(),
        }),
    })
}

fn lvalue(a: &Args, op: &str) -> Result<Outcome, String> {
    let e = a.curve()?;
    let job = LSeriesJob::for_twist(&e, a.int("root_number")? as i32, a.int("d")?, a.float("err")?).map_err(|x| x.to_string())?;
    let want = if op == "central_value" { Target::Value } else { Target::Derivative };
    if job.target != want {
        return Err(format!("root number {} does not give a {op}", job.root_number));
    }
    // double precision is enough for a vanishing check and ten times faster
    let (value, err) = match (a.flag("double"), want) {
        (true, Target::Value) => central_value::<f64>(&job).map(|v| (Mp::from_f64(v.value), v.err_bound)),
        (true, Target::Derivative) => central_derivative::<f64>(&job).map(|v| (Mp::from_f64(v.value), v.err_bound)),
        (false, Target::Value) => central_value::<Mp>(&job).map(|v| (v.value, v.err_bound)),
        (false, Target::Derivative) => central_derivative::<Mp>(&job).map(|v| (v.value, v.err_bound)),
    }
    .map_err(|x| x.to_string())?;
    Ok(Outcome {
        computed: certified_real(&value, err),
        detail: json!({ "terms": job.terms, "level": job.level, "root_number": job.root_number, "error_bound": format!("{err:.1e}") }),
    })
}
