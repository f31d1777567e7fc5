//! `wmock`: JSON front end to the workspace crates.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const PRECISION_ENV: &str = "WMOCK_PRECISION";

#[derive(Parser, Debug)]
#[command(name = "wmock", version, about = "Weierstrass mock modular forms, p-adic Hecke limits, Heegner traces and L-values")]
pub struct Cli {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = PRECISION_ENV, default_value_t = 256, value_parser = clap::value_parser!(u32).range(64..))]
    pub precision: u32,
    /// Length of internal q-expansions (at least 16).
    #[arg(long, global = true, default_value_t = 32, value_parser = clap::value_parser!(u64).range(16..))]
    pub series_terms: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    /// Weierstrass coefficients a1,a2,a3,a4,a6.
    #[arg(long, allow_hyphen_values = true)]
    pub curve: String,
    /// Conductor of the curve.
    #[arg(long)]
    pub conductor: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ẑ⁺ expansion, S, Atkin–Lehner periods and cusp constants.
    Mockform {
        #[command(flatten)]
        curve: CurveArgs,
        /// Print coefficients q⁻¹ through q^terms.
        #[arg(long, default_value_t = 6)]
        terms: usize,
    },
    /// Congruences T_n − c·F ≡ 0 mod p^t and the digits of the p-adic limit.
    Padic {
        #[command(flatten)]
        curve: CurveArgs,
        /// Prime of good ordinary reduction.
        #[arg(short, long)]
        p: u64,
        /// Highest power n of T(pⁿ).
        #[arg(long, default_value_t = 3)]
        max_n: u32,
        /// Level n is checked mod p^min(n, t).
        #[arg(long, default_value_t = 1)]
        target_t: i64,
        /// Multiplier c as a rational; defaults to c_n = pⁿR(pⁿ)/a(pⁿ).
        #[arg(long, allow_hyphen_values = true)]
        multiplier: Option<String>,
        /// Check coefficients q^{−pⁿ} through q^window.
        #[arg(long, default_value_t = hecke_padic::DEFAULT_WINDOW)]
        window: i64,
    },
    /// Twisted traces of ẑ (or j − 744) over Heegner points.
    Trace {
        /// Weierstrass coefficients a1,a2,a3,a4,a6.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "function")]
        curve: Option<String>,
        /// Conductor of the curve.
        #[arg(long, requires = "curve")]
        conductor: Option<u64>,
        /// Builtin level-1 function instead of a curve.
        #[arg(long, value_enum, conflicts_with = "curve")]
        function: Option<Builtin>,
        /// Fundamental discriminant Δ of the twisting character.
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
        /// Square root of Δ mod 4N; the least one by default.
        #[arg(long)]
        r: Option<i64>,
        /// Discriminants d; forms of discriminant Δ·d are summed.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        d: Vec<i64>,
        /// Omit the per-class table.
        #[arg(long)]
        brief: bool,
    },
    /// Central values or derivatives of quadratic twists.
    Lvalues {
        #[command(flatten)]
        curve: CurveArgs,
        /// Twisting discriminants; 1 is E itself.
        #[arg(long, value_delimiter = ',', default_value = "1", allow_hyphen_values = true)]
        d: Vec<i64>,
        /// Value or derivative; auto follows the sign of the twist.
        #[arg(long, value_enum, default_value_t = TargetArg::Auto)]
        target: TargetArg,
        /// Absolute error budget.
        #[arg(long, default_value_t = 1e-20)]
        err: f64,
        /// Sign of the functional equation of E; computed when the conductor is squarefree.
        #[arg(long, allow_hyphen_values = true)]
        root_number: Option<i32>,
        /// Sum in double precision (err must stay above ~1e-10).
        #[arg(long)]
        double: bool,
    },
    /// Run the reproduction cases and emit the report.
    Verify {
        /// Regular expression matched against the start of case ids.
        #[arg(long, default_value = ".*")]
        filter: String,
        /// Also print a table on standard error.
        #[arg(long)]
        table: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Builtin {
    /// j(z) − 744.
    J,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetArg {
    Auto,
    Value,
    Derivative,
}

/// Failure classes and their exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute { kind: &'static str, message: String },
}

impl Failure {
    pub fn compute(kind: &'static str, e: impl std::fmt::Display) -> Self {
        Failure::Compute { kind, message: e.to_string() }
    }
}

/// Pretty JSON on stdout; a closed pipe is not an error.
fn emit(v: &serde_json::Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("serializable");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    series_core::set_default_precision(cli.precision);
    match commands::dispatch(&cli) {
        Ok((value, ok)) => {
            emit(&value);
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute { kind, message }) => {
            eprintln!("error: {message}");
            let v = serde_json::json!({ "error": { "kind": kind, "message": message } });
            emit(&v);
            ExitCode::from(1)
        }
    }
}
