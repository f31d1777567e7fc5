//! One function per subcommand, each returning the JSON document to print.

use curve_arith::{atkin_lehner_data, newform_coefficients, CurveError, EllipticCurve};
use hecke_padic::{padic_congruence_check, s_p_digits, valuation, PadicContext};
use heegner_traces::{
    lift_coefficient, trace_package_options, twisted_trace, KleinJ, ModularFunction, Normalization, TwistedTrace,
    ZhatFunction,
};
use l_values::{central_derivative, central_value, LSeriesJob, LValue, Target};
use mock_modular::{MockFormPackage, PackageOptions};
use reproduction_harness::{certified_complex, certified_real, run_all, work_err, HarnessError};
use serde_json::{json, Map, Value};
use series_core::{Cx, Mp, Real, Q};

use crate::{Builtin, Cli, Command, CurveArgs, Failure, TargetArg};

/// Returns the document and whether every check it reports succeeded.
pub fn dispatch(cli: &Cli) -> Result<(Value, bool), Failure> {
    let mut doc = Map::new();
    let (name, body, ok) = match &cli.command {
        Command::Mockform { curve, terms } => ("mockform", mockform(cli, curve, *terms)?, true),
        Command::Padic { curve, p, max_n, target_t, multiplier, window } => {
            let (v, ok) = padic(curve, *p, *max_n, *target_t, multiplier.as_deref(), *window)?;
            ("padic", v, ok)
        }
        Command::Trace { curve, conductor, function, delta, r, d, brief } => {
            ("trace", trace(curve.as_deref(), *conductor, *function, *delta, *r, d, *brief)?, true)
        }
        Command::Lvalues { curve, d, target, err, root_number, double } => {
            ("lvalues", lvalues(curve, d, *target, *err, *root_number, *double)?, true)
        }
        Command::Verify { filter, table } => {
            let report = run_all(filter, cli.precision).map_err(|e| match e {
                HarnessError::UnknownCase(_) | HarnessError::Filter(_) => Failure::Usage(e.to_string()),
                other => Failure::compute("harness", other),
            })?;
            if *table {
                eprint!("{}", report.table());
            }
            let ok = report.ok();
            ("verify", serde_json::to_value(&report).expect("serializable"), ok)
        }
    };
    doc.insert("command".into(), json!(name));
    doc.insert("precision_bits".into(), json!(cli.precision));
    doc.insert("series_terms".into(), json!(cli.series_terms));
    doc.insert("result".into(), body);
    Ok((Value::Object(doc), ok))
}

fn curve_error(e: CurveError) -> Failure {
    match e {
        CurveError::Parse(m) => Failure::Usage(format!("--curve: {m}")),
        other => Failure::compute("curve", other),
    }
}

fn parse_curve(c: &CurveArgs) -> Result<EllipticCurve, Failure> {
    EllipticCurve::parse(&c.curve, c.conductor).map_err(curve_error)
}

fn curve_json(e: &EllipticCurve) -> Value {
    json!({ "a": e.a.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "conductor": e.conductor })
}

fn q_json(x: &Q) -> Value {
    Value::String(x.to_string())
}

fn parse_q(s: &str) -> Option<Q> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let (n, d) = (n.trim().parse::<i64>().ok()?, d.trim().parse::<i64>().ok()?);
    (d != 0).then(|| Q::new(n, d))
}

fn cx_json(z: &Cx<Mp>) -> Value {
    let err = work_err(&z.re).max(work_err(&z.im));
    certified_complex(z, err)
}

fn mockform(cli: &Cli, c: &CurveArgs, terms: usize) -> Result<Value, Failure> {
    let e = parse_curve(c)?;
    let n_max = (cli.series_terms as usize).max(terms);
    let pkg = MockFormPackage::<Mp>::new(&e, &PackageOptions { n_max, ..PackageOptions::default() })
        .map_err(|x| Failure::compute("mockform", x))?;
    let rational = pkg.zhat_plus_rational(10_000, 1e-30);
    let coeffs: Vec<Value> = (-1..=terms as i64)
        .map(|n| {
            let z = pkg.zhat_plus.coeff(n);
            json!({
                "n": n,
                "value": cx_json(&z),
                "rational": rational.as_ref().map(|r| q_json(&r.coeff(n))),
            })
        })
        .collect();
    let lat = pkg.weierstrass.lattice();
    let omega: Vec<Value> = pkg.omega.iter().map(|(q, v)| json!({ "q": q, "value": cx_json(v) })).collect();
    let cusps: Vec<Value> = pkg
        .cusp_constants
        .iter()
        .map(|(q, v)| {
            let r = series_core::rationalize(&v.re, 10_000, &Mp::from_f64(1e-30));
            json!({ "q": q, "value": cx_json(v), "rational": r.map(|x| q_json(&x)) })
        })
        .collect();
    Ok(json!({
        "curve": curve_json(&e),
        "root_number": pkg.atkin_lehner.as_ref().map(|a| a.root_number),
        "lattice": {
            "omega1": cx_json(&lat.omega1),
            "omega2": cx_json(&lat.omega2),
            "area": certified_real(&lat.area, work_err(&lat.area)),
        },
        "s": cx_json(&lat.s),
        "s_rational": pkg.s_rational(10_000, 1e-30).map(|x| q_json(&x)),
        "completion_coefficient": certified_real(&pkg.completion_coefficient, work_err(&pkg.completion_coefficient)),
        "zhat_plus": coeffs,
        "omega": omega,
        "cusp_constants": cusps,
    }))
}

fn padic(
    c: &CurveArgs,
    p: u64,
    max_n: u32,
    target_t: i64,
    multiplier: Option<&str>,
    window: i64,
) -> Result<(Value, bool), Failure> {
    let e = parse_curve(c)?;
    if max_n == 0 {
        return Err(Failure::Usage("--max-n must be at least 1".into()));
    }
    let mult = match multiplier {
        Some(s) => Some(parse_q(s).ok_or_else(|| Failure::Usage(format!("--multiplier: {s:?} is not a rational")))?),
        None => None,
    };
    let ctx = PadicContext::new(&e, p, max_n, window).map_err(|x| Failure::compute("padic", x))?;
    let mut rows = Vec::new();
    let mut all = true;
    for n in 1..=max_n {
        let t = target_t.min(n as i64);
        let rep = padic_congruence_check(&ctx, n, t, mult.clone()).map_err(|x| Failure::compute("padic", x))?;
        all &= rep.passes;
        let vals: Vec<Value> = rep
            .residual
            .iter()
            .filter(|(k, x)| (rep.window.0..=rep.window.1).contains(k) && **x != Q::from(0))
            .map(|(k, x)| json!({ "exponent": k, "coefficient": q_json(x), "valuation": valuation(x, p) }))
            .collect();
        rows.push(json!({
            "n": n,
            "t": t,
            "a_pn": rep.a_pn,
            "multiplier": q_json(&rep.multiplier),
            "window": [rep.window.0, rep.window.1],
            "min_valuation": rep.min_valuation,
            "passes": rep.passes,
            "residual": vals,
        }));
    }
    let digits = s_p_digits(&ctx, max_n).map_err(|x| Failure::compute("padic", x))?;
    let v = json!({
        "curve": curve_json(&e),
        "p": p,
        "rows": rows,
        "all_pass": all,
        "digits": digits,
    });
    Ok((v, all))
}

fn sqrt_mod(t: i64, m: i64) -> Option<i64> {
    (0..m).find(|x| (x * x - t).rem_euclid(m) == 0)
}

fn trace_json<F: ModularFunction<Mp> + ?Sized>(f: &F, delta: i64, r: i64, d: i64, brief: bool) -> Result<Value, Failure> {
    let m = 4 * f.level() as i64;
    let h = sqrt_mod(d, m).ok_or_else(|| Failure::compute("trace", format!("{d} is not a square mod {m}")))?;
    let tr: TwistedTrace<Mp> = twisted_trace(f, delta, d, r, h).map_err(|x| Failure::compute("trace", x))?;
    let err = tr.error_bound.to_f64();
    let coeffs: Vec<Value> = Normalization::ALL
        .iter()
        .map(|&mode| {
            let c = lift_coefficient(&tr, mode);
            let e = c.error_bound.to_f64().max(work_err(&c.value.re));
            json!({ "normalization": mode.as_str(), "canonical": mode == Normalization::CANONICAL, "value": certified_complex(&c.value, e) })
        })
        .collect();
    let mut v = json!({
        "d": d,
        "discriminant": tr.discriminant,
        "r": tr.r,
        "h": tr.h,
        "beta": tr.beta,
        "tr_plus": certified_complex(&tr.tr_plus, err.max(work_err(&tr.tr_plus.re))),
        "tr_minus": certified_complex(&tr.tr_minus, err.max(work_err(&tr.tr_minus.re))),
        "error_bound": format!("{err:.1e}"),
        "coefficients": coeffs,
    });
    if !brief {
        let classes: Vec<Value> = tr
            .terms
            .iter()
            .map(|t| {
                json!({
                    "form": [t.form.a, t.form.b, t.form.c],
                    "sign": t.sign.as_str(),
                    "stabilizer_order": t.stabilizer_order,
                    "character": t.character,
                    "cm_point": cx_json(&t.cm_point),
                    "fricke": t.fricke,
                    "eval_point": cx_json(&t.eval_point),
                    "value": t.value.as_ref().map(cx_json),
                })
            })
            .collect();
        v["classes"] = Value::Array(classes);
    }
    Ok(v)
}

fn trace(
    curve: Option<&str>,
    conductor: Option<u64>,
    function: Option<Builtin>,
    delta: i64,
    r: Option<i64>,
    ds: &[i64],
    brief: bool,
) -> Result<Value, Failure> {
    let run = |f: &dyn ModularFunction<Mp>, label: Value| -> Result<Value, Failure> {
        let m = 4 * f.level() as i64;
        let r = match r {
            Some(r) => r,
            None => sqrt_mod(delta, m).ok_or_else(|| Failure::compute("trace", format!("{delta} is not a square mod {m}")))?,
        };
        let rows = ds.iter().map(|&d| trace_json(f, delta, r, d, brief)).collect::<Result<Vec<_>, _>>()?;
        Ok(json!({ "function": label, "level": f.level(), "delta": delta, "r": r, "traces": rows }))
    };
    match (curve, function) {
        (_, Some(Builtin::J)) => run(&KleinJ, json!("j-744")),
        (Some(spec), None) => {
            let n = conductor.ok_or_else(|| Failure::Usage("--conductor is required with --curve".into()))?;
            let e = EllipticCurve::parse(spec, n).map_err(curve_error)?;
            let pkg = MockFormPackage::<Mp>::new(&e, &trace_package_options(n)).map_err(|x| Failure::compute("trace", x))?;
            let f = ZhatFunction::centered(&pkg);
            run(&f, json!({ "zhat_minus_constant": curve_json(&e) }))
        }
        (None, None) => Err(Failure::Usage("one of --curve or --function is required".into())),
    }
}

fn root_number(e: &EllipticCurve, given: Option<i32>) -> Result<i32, Failure> {
    if let Some(r) = given {
        return match r {
            1 | -1 => Ok(r),
            _ => Err(Failure::Usage("--root-number must be 1 or -1".into())),
        };
    }
    let coeffs = newform_coefficients(e, 64).map_err(curve_error)?;
    match atkin_lehner_data(e, &coeffs) {
        Ok(al) => Ok(al.root_number),
        Err(CurveError::NotSquarefree(n)) => Err(Failure::Usage(format!("level {n} is not squarefree; pass --root-number"))),
        Err(other) => Err(curve_error(other)),
    }
}

fn lvalue_json<T: Real>(v: LValue<T>, d: i64, target: Target) -> Value {
    json!({
        "d": d,
        "level": v.level,
        "root_number": v.root_number,
        "target": if target == Target::Value { "value" } else { "derivative" },
        "value": certified_real(&v.value, v.err_bound),
        "error_bound": format!("{:.1e}", v.err_bound),
        "terms": v.terms,
        "note": v.note,
    })
}

fn lvalues(c: &CurveArgs, ds: &[i64], target: TargetArg, err: f64, root: Option<i32>, double: bool) -> Result<Value, Failure> {
    let e = parse_curve(c)?;
    let eps = root_number(&e, root)?;
    let mut rows = Vec::new();
    for &d in ds {
        let job = LSeriesJob::for_twist(&e, eps, d, err).map_err(|x| Failure::compute("lvalues", x))?;
        let want = match target {
            TargetArg::Auto => job.target,
            TargetArg::Value => Target::Value,
            TargetArg::Derivative => Target::Derivative,
        };
        let fail = |x: l_values::LError| Failure::compute("lvalues", x);
        let row = match (want, double) {
            (Target::Value, false) => lvalue_json(central_value::<Mp>(&job).map_err(fail)?, d, want),
            (Target::Value, true) => lvalue_json(central_value::<f64>(&job).map_err(fail)?, d, want),
            (Target::Derivative, false) => lvalue_json(central_derivative::<Mp>(&job).map_err(fail)?, d, want),
            (Target::Derivative, true) => lvalue_json(central_derivative::<f64>(&job).map_err(fail)?, d, want),
        };
        rows.push(row);
    }
    Ok(json!({ "curve": curve_json(&e), "root_number": eps, "rows": rows }))
}
