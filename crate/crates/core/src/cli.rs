//! The `newtonpoly` command line: `analyze` prints the exact report, `verify` runs one
//! numerical verifier and compares it with the exact prediction.
//!
//! Exit codes: 0 success, 2 malformed input or flags, 3 pipeline failure,
//! 4 quadrature budget exceeded, 5 inconclusive or failed verification.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{InvariantError, NumericError, ParseError};
use crate::invariants::{critical_exponents, InvariantReport};
use crate::numeric::Prediction;
use crate::oscillatory::{decay_fit, dyadic_grid, CutoffSpec, QuadratureConfig, CSV_HEADER};
use crate::poly::{parse_polynomial, rational_string, Rational};
use crate::report::{AnalysisReport, ToolInfo, SCHEMA_VERSION};
use crate::sublevel::{
    dyadic_eps, eligible_knapp_edges, iosevich_sawyer_check, knapp_series, sublevel_fit, IntegrabilityPrediction,
    KnappConfig, KnappEdge, SublevelConfig, Trend, KNAPP_CSV_HEADER, SUBLEVEL_CSV_HEADER,
};

/// Tolerance on the fitted decay slope.
pub const DECAY_TOLERANCE: f64 = 0.05;
/// Tolerance on the fitted sublevel exponent when there is no log factor.
pub const SUBLEVEL_TOLERANCE: f64 = 0.03;
/// With a log factor the fitted exponent sits below `1/h`; this is the accepted shortfall.
pub const SUBLEVEL_LOG_WINDOW: f64 = 0.08;

#[derive(Debug, Parser)]
#[command(name = "newtonpoly", version, about = "Newton-polyhedron invariants of bivariate polynomial phases")]
pub struct Cli {
    /// Worker threads for the numerical verifiers (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// File of `key=value` lines supplying defaults for any long flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

// Parsed once per process, so the size gap between variants does not matter.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the exact invariants and print the JSON report.
    Analyze {
        expr: String,
        #[command(flatten)]
        out: OutputFlags,
    },
    /// Run a numerical verifier against the exact prediction.
    Verify {
        expr: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        out: OutputFlags,
        #[command(flatten)]
        num: NumericFlags,
    },
}

#[derive(Debug, Args, Default)]
pub struct OutputFlags {
    /// Write the JSON document to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the JSON summary on standard output (verify prints a text line otherwise).
    #[arg(long)]
    pub json: bool,
    /// Omit the generation timestamp so repeated runs are byte-identical.
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Debug, Args, Default)]
pub struct NumericFlags {
    /// Directory for CSV plot data.
    #[arg(long)]
    pub csv_dir: Option<PathBuf>,
    /// Smallest λ, a number or `2^k` (default 2^7).
    #[arg(long)]
    pub lambda_min: Option<String>,
    /// Largest λ (default 2^15).
    #[arg(long)]
    pub lambda_max: Option<String>,
    /// Smallest ε (default 2^-20).
    #[arg(long)]
    pub eps_min: Option<String>,
    /// Largest ε (default 2^-4).
    #[arg(long)]
    pub eps_max: Option<String>,
    /// Knapp ε sequence `a:b`, meaning ε = 2^-a, …, 2^-b.
    #[arg(long)]
    pub eps_seq: Option<String>,
    /// Knapp face: an edge index, `horizontal` or `principal` (default: all eligible).
    #[arg(long)]
    pub edge: Option<String>,
    /// Exponent for the integrability check, e.g. `5/4` (default 2).
    #[arg(long)]
    pub p: Option<String>,
    /// Seed for Monte Carlo sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Quadrature budget in node evaluations.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Radius of the cutoff and of the sublevel domain (default 1).
    #[arg(long)]
    pub radius: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Decay,
    Sublevel,
    Knapp,
    Integrability,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        Self::usage(format!("parse error: {e}"))
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        Self { code: 3, message: e.to_string() }
    }
}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        let code = match e {
            NumericError::BudgetExceeded { .. } => 4,
            NumericError::IllConditioned(_) => 5,
            NumericError::Precondition(_) | NumericError::Invariant(_) => 3,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self { code: 3, message: format!("i/o error: {e}") }
    }
}

/// Parses `2^k`, `2^-k` or a plain float.
pub fn parse_scale(s: &str) -> Result<f64, CliError> {
    let s = s.trim();
    let v = match s.split_once('^') {
        Some((b, e)) => {
            let b: f64 = b.trim().parse().map_err(|_| CliError::usage(format!("bad number {s:?}")))?;
            let e: f64 = e.trim().parse().map_err(|_| CliError::usage(format!("bad number {s:?}")))?;
            b.powf(e)
        }
        None => s.parse().map_err(|_| CliError::usage(format!("bad number {s:?}")))?,
    };
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::usage(format!("{s:?} must be a positive number")))
    }
}

fn dyadic_exponent(v: f64, name: &str) -> Result<i32, CliError> {
    let k = v.log2().round();
    if (2f64.powf(k) / v - 1.0).abs() > 1e-9 {
        return Err(CliError::usage(format!("{name} must be a power of two, got {v}")));
    }
    Ok(k as i32)
}

/// Reads `key=value` lines; blank lines and `#` comments are skipped.
pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("{}:{}: expected key=value", path.display(), n + 1)))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

const CONFIG_KEYS: &[&str] = &[
    "threads", "csv-dir", "lambda-min", "lambda-max", "eps-min", "eps-max", "eps-seq", "edge", "p", "seed", "budget",
    "radius", "out", "json", "no-timestamp",
];

/// Flag values after merging the config file underneath the command line.
struct Settings {
    config: BTreeMap<String, String>,
}

impl Settings {
    fn new(config: BTreeMap<String, String>) -> Result<Self, CliError> {
        if let Some(k) = config.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
            return Err(CliError::usage(format!("unknown config key {k:?}")));
        }
        Ok(Self { config })
    }

    fn string(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.config.get(key).cloned())
    }

    fn parsed<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self
                .config
                .get(key)
                .map(|v| v.parse().map_err(|_| CliError::usage(format!("bad config value {key}={v}"))))
                .transpose(),
        }
    }

    fn flag(&self, set: bool, key: &str) -> bool {
        set || matches!(self.config.get(key).map(String::as_str), Some("true" | "1" | "yes"))
    }
}

/// Runs the CLI on already-parsed arguments, writing to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn std::io::Write) -> Result<(), CliError> {
    let settings = Settings::new(match &cli.config {
        Some(p) => read_config(p)?,
        None => BTreeMap::new(),
    })?;
    if let Some(n) = settings.parsed(cli.threads, "threads")? {
        // Fails only if the pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Analyze { expr, out } => {
            let phi = parse_polynomial(&expr)?;
            let rep = critical_exponents(&phi)?;
            let ts = timestamp(&settings, &out);
            let doc = AnalysisReport::new(&expr, &rep, ts).to_json();
            emit(&settings, &out, &doc, true, stdout, "")
        }
        Command::Verify { expr, mode, out, num } => {
            let phi_text = expr.clone();
            let phi = parse_polynomial(&expr)?;
            let rep = critical_exponents(&phi)?;
            let outcome = match mode {
                Mode::Decay => verify_decay(&rep, &num, &settings)?,
                Mode::Sublevel => verify_sublevel(&rep, &num, &settings)?,
                Mode::Knapp => verify_knapp(&rep, &num, &settings)?,
                Mode::Integrability => verify_integrability(&rep, &num, &settings)?,
            };
            let csv_dir = settings.string(&num.csv_dir.as_ref().map(|p| p.display().to_string()), "csv-dir");
            let mut files = Vec::new();
            if let Some(dir) = csv_dir {
                fs::create_dir_all(&dir)?;
                for (name, body) in &outcome.csv {
                    let path = Path::new(&dir).join(name);
                    fs::write(&path, body)?;
                    files.push(path.display().to_string());
                }
            }
            let summary = VerifySummary {
                schema_version: SCHEMA_VERSION,
                tool: tool(),
                generated_at: timestamp(&settings, &out),
                input: phi_text,
                mode,
                status: outcome.status,
                pass: outcome.status == Status::Pass,
                prediction: outcome.prediction,
                tolerance: outcome.tolerance,
                result: outcome.result,
                csv_files: files,
            };
            let doc = serde_json::to_string_pretty(&summary).expect("summary serializes");
            let line = format!("{mode:?} {}: {}\n", outcome.status.as_str(), outcome.headline).to_lowercase();
            emit(&settings, &out, &doc, false, stdout, &line)?;
            match outcome.status {
                Status::Pass => Ok(()),
                Status::Fail | Status::Inconclusive => Err(CliError {
                    code: 5,
                    message: format!("verification {}: {}", outcome.status.as_str(), outcome.headline),
                }),
            }
        }
    }
}

fn tool() -> ToolInfo {
    ToolInfo {
        name: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
    }
}

fn timestamp(settings: &Settings, out: &OutputFlags) -> Option<u64> {
    if settings.flag(out.no_timestamp, "no-timestamp") {
        return None;
    }
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .ok()
        .map(|d| d.as_secs())
}

fn emit(
    settings: &Settings,
    out: &OutputFlags,
    doc: &str,
    json_default: bool,
    stdout: &mut dyn std::io::Write,
    text: &str,
) -> Result<(), CliError> {
    let path = settings.string(&out.out.as_ref().map(|p| p.display().to_string()), "out");
    let json = json_default || settings.flag(out.json, "json");
    match path {
        Some(p) => {
            fs::write(&p, format!("{doc}\n"))?;
            if !json_default && json {
                writeln!(stdout, "{doc}")?;
            } else if !json_default {
                stdout.write_all(text.as_bytes())?;
            }
        }
        None if json => writeln!(stdout, "{doc}")?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct VerifySummary {
    schema_version: &'static str,
    tool: ToolInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<u64>,
    input: String,
    mode: Mode,
    status: Status,
    pass: bool,
    prediction: Value,
    tolerance: Value,
    result: Value,
    csv_files: Vec<String>,
}

struct Outcome {
    status: Status,
    headline: String,
    prediction: Value,
    tolerance: Value,
    result: Value,
    csv: Vec<(String, String)>,
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn radius(num: &NumericFlags, settings: &Settings) -> Result<f64, CliError> {
    Ok(settings.parsed(num.radius, "radius")?.unwrap_or(1.0))
}

fn range(
    settings: &Settings,
    lo: &Option<String>,
    hi: &Option<String>,
    keys: (&str, &str),
    default: (i32, i32),
) -> Result<(i32, i32), CliError> {
    let pick = |flag: &Option<String>, key: &str, dflt: i32| -> Result<i32, CliError> {
        match settings.string(flag, key) {
            Some(s) => dyadic_exponent(parse_scale(&s)?, key),
            None => Ok(dflt),
        }
    };
    let a = pick(lo, keys.0, default.0)?;
    let b = pick(hi, keys.1, default.1)?;
    if a >= b {
        return Err(CliError::usage(format!("--{} must be below --{}", keys.0, keys.1)));
    }
    Ok((a, b))
}

fn csv(header: &str, rows: impl Iterator<Item = String>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

fn verify_decay(rep: &InvariantReport, num: &NumericFlags, settings: &Settings) -> Result<Outcome, CliError> {
    let (k0, k1) = range(settings, &num.lambda_min, &num.lambda_max, ("lambda-min", "lambda-max"), (7, 15))?;
    let mut cfg = QuadratureConfig::default();
    if let Some(b) = settings.parsed(num.budget, "budget")? {
        cfg.budget = b;
    }
    let cut = CutoffSpec::new(radius(num, settings)?)?;
    let inv_h = to_f64(&rep.decay_rate);
    let pred = Prediction {
        slope: -inv_h,
        log_power: rep.log_exponent as f64,
    };
    let fit = decay_fit(&rep.phi, cut, &dyadic_grid(k0, k1), (0.0, 0.0), Some(pred), &cfg)?;
    let ok = (fit.fit.slope - pred.slope).abs() <= DECAY_TOLERANCE;
    Ok(Outcome {
        status: if ok { Status::Pass } else { Status::Fail },
        headline: format!("slope={:.4} predicted={:.4}±{DECAY_TOLERANCE}", fit.fit.slope, pred.slope),
        prediction: json!({
            "decayRate": rational_string(&rep.decay_rate),
            "slope": pred.slope,
            "logExponent": rep.log_exponent,
        }),
        tolerance: json!({ "slope": DECAY_TOLERANCE }),
        result: json!({
            "cutoff": { "kind": cut.kind(), "radius": cut.radius },
            "quadrature": cfg,
            "fit": fit.fit,
            "integrals": fit.results,
        }),
        csv: vec![("decay.csv".into(), csv(CSV_HEADER, fit.results.iter().map(|r| r.csv_row())))],
    })
}

fn sublevel_config(num: &NumericFlags, settings: &Settings) -> Result<SublevelConfig, CliError> {
    let mut cfg = SublevelConfig::default();
    if let Some(s) = settings.parsed(num.seed, "seed")? {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn verify_sublevel(rep: &InvariantReport, num: &NumericFlags, settings: &Settings) -> Result<Outcome, CliError> {
    let (k0, k1) = range(settings, &num.eps_min, &num.eps_max, ("eps-min", "eps-max"), (-20, -4))?;
    let cfg = sublevel_config(num, settings)?;
    let r = radius(num, settings)?;
    let grid = dyadic_eps((-k1) as u32, (-k0) as u32);
    let fit = sublevel_fit(&rep.phi, r, &grid, &cfg)?;
    let target = to_f64(&rep.decay_rate);
    let sigma = fit.sigma();
    let (lo, hi) = if rep.log_exponent == 0 {
        (target - SUBLEVEL_TOLERANCE, target + SUBLEVEL_TOLERANCE)
    } else {
        (target - SUBLEVEL_LOG_WINDOW, target)
    };
    let ok = (lo..=hi).contains(&sigma);
    Ok(Outcome {
        status: if ok { Status::Pass } else { Status::Fail },
        headline: format!("exponent={sigma:.4} accepted=[{lo:.4}, {hi:.4}]"),
        prediction: json!({
            "exponent": rational_string(&rep.decay_rate),
            "logExponent": rep.log_exponent,
        }),
        tolerance: json!({ "low": lo, "high": hi }),
        result: json!({
            "radius": r,
            "config": cfg,
            "fit": fit.fit,
            "powerExponent": fit.power_exponent,
            "estimates": fit.estimates,
        }),
        csv: vec![("sublevel.csv".into(), csv(SUBLEVEL_CSV_HEADER, fit.estimates.iter().map(|e| e.csv_row())))],
    })
}

fn eps_sequence(num: &NumericFlags, settings: &Settings) -> Result<Vec<f64>, CliError> {
    let (a, b) = match settings.string(&num.eps_seq, "eps-seq") {
        Some(s) => {
            let (a, b) = s
                .split_once(':')
                .ok_or_else(|| CliError::usage(format!("--eps-seq expects a:b, got {s:?}")))?;
            let a: u32 = a.trim().parse().map_err(|_| CliError::usage(format!("bad --eps-seq {s:?}")))?;
            let b: u32 = b.trim().parse().map_err(|_| CliError::usage(format!("bad --eps-seq {s:?}")))?;
            (a, b)
        }
        None => {
            let (k0, k1) = range(settings, &num.eps_min, &num.eps_max, ("eps-min", "eps-max"), (-20, -4))?;
            ((-k1) as u32, (-k0) as u32)
        }
    };
    if a == 0 || b <= a {
        return Err(CliError::usage("--eps-seq a:b needs 0 < a < b"));
    }
    Ok((a..=b).map(|k| 2f64.powi(-(k as i32))).collect())
}

fn verify_knapp(rep: &InvariantReport, num: &NumericFlags, settings: &Settings) -> Result<Outcome, CliError> {
    let eps = eps_sequence(num, settings)?;
    let edges = match settings.string(&num.edge, "edge") {
        Some(e) => vec![KnappEdge::from_str(&e).map_err(CliError::usage)?],
        None => eligible_knapp_edges(rep),
    };
    if edges.is_empty() {
        return Err(CliError {
            code: 3,
            message: "the phase is linearly adaptable, so no Knapp box applies".into(),
        });
    }
    let cfg = KnappConfig::default();
    let series = edges
        .iter()
        .map(|&e| knapp_series(rep, e, &eps, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let best = series
        .iter()
        .map(|s| s.lower_bound_pc_prime.clone())
        .max()
        .expect("at least one edge");
    let bounded = series.iter().all(|s| s.bounded);
    // A single requested box only has to be consistent; the full set must be sharp.
    let bound_ok = if num.edge.is_some() || settings.config.contains_key("edge") {
        best <= rep.restriction_pc_prime
    } else {
        best == rep.restriction_pc_prime
    };
    let ok = bounded && bound_ok;
    let mut files = Vec::new();
    for s in &series {
        files.push((format!("knapp_{}.csv", s.edge), csv(KNAPP_CSV_HEADER, s.boxes.iter().map(|b| b.csv_row()))));
    }
    Ok(Outcome {
        status: if ok { Status::Pass } else { Status::Fail },
        headline: format!(
            "bound p'>={} computed p'_c={} bounded={bounded}",
            rational_string(&best),
            rational_string(&rep.restriction_pc_prime)
        ),
        prediction: json!({ "restrictionPcPrime": rational_string(&rep.restriction_pc_prime) }),
        tolerance: json!({ "spread": crate::sublevel::KNAPP_SPREAD_TOLERANCE }),
        result: json!({
            "necessityBound": rational_string(&best),
            "series": series,
        }),
        csv: files,
    })
}

fn verify_integrability(rep: &InvariantReport, num: &NumericFlags, settings: &Settings) -> Result<Outcome, CliError> {
    let p: Rational = match settings.string(&num.p, "p") {
        Some(s) => s.trim().parse().map_err(|_| CliError::usage(format!("bad --p {s:?}")))?,
        None => Rational::from_integer(2.into()),
    };
    let (k0, k1) = range(settings, &num.eps_min, &num.eps_max, ("eps-min", "eps-max"), (-20, -4))?;
    let cfg = sublevel_config(num, settings)?;
    let r = radius(num, settings)?;
    let v = iosevich_sawyer_check(&rep.phi, &rep.h, r, &p, ((-k1) as u32, (-k0) as u32), &cfg)?;
    let status = match (v.prediction, v.numeric_trend) {
        (IntegrabilityPrediction::Convergent, Trend::Convergent) => Status::Pass,
        (IntegrabilityPrediction::Divergent, Trend::Divergent) => Status::Pass,
        (IntegrabilityPrediction::BoundaryDivergent, t) if t != Trend::Convergent => Status::Pass,
        (_, Trend::Inconclusive) => Status::Inconclusive,
        _ => Status::Fail,
    };
    Ok(Outcome {
        status,
        headline: format!(
            "p={} predicted={} trend={} slope={:.4}±{:.4}",
            rational_string(&p),
            json!(v.prediction).as_str().unwrap_or_default(),
            json!(v.numeric_trend).as_str().unwrap_or_default(),
            v.shell_slope,
            v.shell_slope_error
        ),
        prediction: json!({ "h": rational_string(&rep.h), "prediction": v.prediction }),
        tolerance: json!({ "trend": crate::sublevel::TREND_TOLERANCE }),
        csv: vec![(
            "integrability.csv".into(),
            csv("k,shell,term", v.shells.iter().map(|(k, s, t)| format!("{k},{s:e},{t:e}"))),
        )],
        result: serde_json::to_value(&v).expect("verdict serializes"),
    })
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("newtonpoly: {e}");
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scales() {
        assert_eq!(parse_scale("2^7").unwrap(), 128.0);
        assert_eq!(parse_scale("2^-4").unwrap(), 0.0625);
        assert_eq!(parse_scale("1e3").unwrap(), 1000.0);
        assert!(parse_scale("-1").is_err());
        assert_eq!(dyadic_exponent(0.0625, "x").unwrap(), -4);
        assert!(dyadic_exponent(3.0, "x").is_err());
    }

    #[test]
    fn exit_codes() {
        let mut sink = Vec::new();
        let run_args = |args: &[&str], sink: &mut Vec<u8>| run(Cli::try_parse_from(args).unwrap(), sink);
        assert_eq!(run_args(&["np", "analyze", "x1^"], &mut sink).unwrap_err().code, 2);
        assert_eq!(run_args(&["np", "analyze", "x1"], &mut sink).unwrap_err().code, 3);
        let e = run_args(&["np", "verify", "x1^2+x2^2", "--mode", "decay", "--budget", "1000"], &mut sink);
        assert_eq!(e.unwrap_err().code, 4);
        assert_eq!(
            run_args(&["np", "verify", "x1^2+x2^2", "--mode", "knapp"], &mut sink).unwrap_err().code,
            3
        );
    }
}
