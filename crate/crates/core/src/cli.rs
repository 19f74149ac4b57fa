//! `drisk` command-line front end.
//!
//! Settings come from flags and an optional flat `key=value` config file
//! (`--config`); flags win. Keys use the flag names without the dashes,
//! e.g. `grid-n = 2000` or `grid_n = 2000`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::dist_core::grid::{midpoints, MomentTarget};
use crate::dist_core::reference::{load_empirical, ReferenceDistribution};
use crate::distortion::{gamma_grid, DistortionSpec};
use crate::error::{Error, Result};
use crate::oracle::{self, OracleConfig, DEFAULT_ORACLE_N};
use crate::solver::{
    default_a4_grid, ProblemSpec, Regime, Solution, Solver, SolverOptions, DEFAULT_GRID_N,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_ASSUMPTION: u8 = 4;
pub const EXIT_VERIFICATION: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "drisk", version, about = "Robust distortion risk with a Wasserstein penalty")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one problem and print the optimum as JSON.
    Solve(CommonArgs),
    /// Solve along a delta or eps axis and write one CSV row per point.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Check the solver against random sampling and projected ascent.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Print eps_min, eps_max, rho, sigma0 and assumption checks without solving.
    Info(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Delta,
    Eps,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// normal:mu,sigma | uniform:lo,hi | empirical:path
    #[arg(long)]
    reference: Option<String>,
    /// cvar:a | var:a | dualpower:b | piecewise:x,y;... | gammafile:path
    #[arg(long)]
    distortion: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Squared ball radius; omit for the moment set alone.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<f64>,
    #[arg(long)]
    grid_n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Accept VaR distortions despite their grid dependence.
    #[arg(long)]
    allow_var: bool,
    /// Take the isotonic path even for concave distortions.
    #[arg(long)]
    force_general: bool,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    axis: Option<Axis>,
    #[arg(long, allow_hyphen_values = true)]
    from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    to: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    ascent_iters: Option<usize>,
    #[arg(long)]
    ascent_runs: Option<usize>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    gap_tol: Option<f64>,
    /// Add this offset to the solver value (harness self-test).
    #[arg(long, allow_hyphen_values = true)]
    corrupt: Option<f64>,
}

const KNOWN_KEYS: &[&str] = &[
    "reference",
    "distortion",
    "mu",
    "sigma",
    "delta",
    "eps",
    "grid_n",
    "seed",
    "out",
    "format",
    "allow_var",
    "force_general",
    "axis",
    "from",
    "to",
    "steps",
    "samples",
    "ascent_iters",
    "ascent_runs",
    "step",
    "gap_tol",
    "corrupt",
];

/// Parsed `key=value` config file.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    entries: BTreeMap<String, (u64, String)>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx as u64 + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected key=value, got {line:?}"),
            })?;
            let key = k.trim().trim_start_matches("--").replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown key {:?}", k.trim()),
                });
            }
            entries.insert(key, (line_no, v.trim().to_string()));
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|_| Error::Parse {
                line: *line,
                message: format!("bad value for {key}: {v:?}"),
            }),
        }
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.entries.get(key) {
            None => Ok(false),
            Some((line, v)) => match v.to_ascii_lowercase().as_str() {
                "1" | "true" | "yes" | "on" => Ok(true),
                "0" | "false" | "no" | "off" | "" => Ok(false),
                _ => Err(Error::Parse {
                    line: *line,
                    message: format!("bad boolean for {key}: {v:?}"),
                }),
            },
        }
    }

    fn value_enum<T: ValueEnum>(&self, key: &str) -> Result<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, v)) => T::from_str(v, true).map(Some).map_err(|_| Error::Parse {
                line: *line,
                message: format!("bad value for {key}: {v:?}"),
            }),
        }
    }
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub reference: String,
    pub distortion: String,
    pub mu: f64,
    pub sigma: f64,
    pub delta: f64,
    pub eps: Option<f64>,
    pub grid_n: Option<usize>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub allow_var: bool,
    pub force_general: bool,
    pub axis: Option<Axis>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub steps: Option<usize>,
    pub oracle: OracleConfig,
}

impl RunConfig {
    fn resolve(common: &CommonArgs, sweep: Option<&SweepArgs>, oracle: Option<&OracleArgs>) -> Result<Self> {
        let file = match &common.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        fn pick<T: FromStr>(flag: Option<T>, file: &ConfigFile, key: &str) -> Result<Option<T>> {
            match flag {
                Some(v) => Ok(Some(v)),
                None => file.get(key),
            }
        }
        let missing = |what: &str| Error::InvalidProblem(format!("--{what} is required"));

        let defaults = OracleConfig::default();
        let o = |f: fn(&OracleArgs) -> Option<f64>| oracle.and_then(f);
        let ou = |f: fn(&OracleArgs) -> Option<usize>| oracle.and_then(f);
        let oracle_cfg = OracleConfig {
            samples: pick(ou(|a| a.samples), &file, "samples")?.unwrap_or(defaults.samples),
            ascent_iters: pick(ou(|a| a.ascent_iters), &file, "ascent_iters")?.unwrap_or(defaults.ascent_iters),
            ascent_runs: pick(ou(|a| a.ascent_runs), &file, "ascent_runs")?.unwrap_or(defaults.ascent_runs),
            step: pick(o(|a| a.step), &file, "step")?.unwrap_or(defaults.step),
            gap_tolerance: pick(o(|a| a.gap_tol), &file, "gap_tol")?.unwrap_or(defaults.gap_tolerance),
            corrupt_offset: pick(o(|a| a.corrupt), &file, "corrupt")?.unwrap_or(0.0),
            seed: pick(common.seed, &file, "seed")?.unwrap_or(defaults.seed),
        };

        Ok(Self {
            reference: pick(common.reference.clone(), &file, "reference")?.ok_or_else(|| missing("reference"))?,
            distortion: pick(common.distortion.clone(), &file, "distortion")?
                .ok_or_else(|| missing("distortion"))?,
            mu: pick(common.mu, &file, "mu")?.unwrap_or(0.0),
            sigma: pick(common.sigma, &file, "sigma")?.unwrap_or(1.0),
            delta: pick(common.delta, &file, "delta")?.unwrap_or(0.0),
            eps: pick(common.eps, &file, "eps")?,
            grid_n: pick(common.grid_n, &file, "grid_n")?,
            seed: oracle_cfg.seed,
            out: pick(common.out.clone(), &file, "out")?,
            format: match common.format {
                Some(f) => Some(f),
                None => file.value_enum("format")?,
            },
            allow_var: common.allow_var || file.flag("allow_var")?,
            force_general: common.force_general || file.flag("force_general")?,
            axis: match sweep.and_then(|s| s.axis) {
                Some(a) => Some(a),
                None => file.value_enum("axis")?,
            },
            from: pick(sweep.and_then(|s| s.from), &file, "from")?,
            to: pick(sweep.and_then(|s| s.to), &file, "to")?,
            steps: pick(sweep.and_then(|s| s.steps), &file, "steps")?,
            oracle: oracle_cfg,
        })
    }

    /// Build the problem, using `default_n` cells unless `grid_n` is set.
    pub fn problem_spec(&self, default_n: usize) -> Result<ProblemSpec> {
        let reference = parse_reference(&self.reference)?;
        let distortion = DistortionSpec::from_str(&self.distortion)?;
        let target = MomentTarget::new(self.mu, self.sigma)?;
        let spec = ProblemSpec::new(
            reference,
            distortion,
            target,
            self.delta,
            self.eps,
            self.grid_n.unwrap_or(default_n),
        )?;
        Ok(spec.with_options(SolverOptions {
            allow_var: self.allow_var,
            force_general: self.force_general,
        }))
    }
}

/// `normal:mu,sigma`, `uniform:lo,hi` or `empirical:path` (CSV with a `loss`
/// column, or a single numeric column).
pub fn parse_reference(s: &str) -> Result<ReferenceDistribution> {
    let (kind, arg) = s
        .split_once(':')
        .ok_or_else(|| Error::InvalidReference(format!("expected kind:args, got {s:?}")))?;
    let pair = || -> Result<(f64, f64)> {
        let (a, b) = arg
            .split_once(',')
            .ok_or_else(|| Error::InvalidReference(format!("expected two numbers, got {arg:?}")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidReference(format!("not a number: {t:?}")))
        };
        Ok((num(a)?, num(b)?))
    };
    match kind.trim().to_ascii_lowercase().as_str() {
        "normal" => {
            let (m, s) = pair()?;
            ReferenceDistribution::normal(m, s)
        }
        "uniform" => {
            let (lo, hi) = pair()?;
            ReferenceDistribution::uniform(lo, hi)
        }
        "empirical" => load_empirical(arg.trim()),
        other => Err(Error::InvalidReference(format!("unknown reference kind {other:?}"))),
    }
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InfeasibleRadius { .. } => EXIT_INFEASIBLE,
        Error::InvalidGrid(_)
        | Error::DegenerateGrid
        | Error::GridSizeMismatch { .. }
        | Error::MomentMismatch { .. }
        | Error::InvalidReference(_)
        | Error::InvalidDistortion(_)
        | Error::InvalidProblem(_)
        | Error::Parse { .. }
        | Error::Csv(_)
        | Error::Io(_) => EXIT_PARSE,
        Error::AssumptionA1Violated
        | Error::VarRequiresOverride
        | Error::AssumptionA4Violated { .. }
        | Error::RhoDegenerate { .. }
        | Error::NotConcave => EXIT_ASSUMPTION,
        Error::VerificationFailed { .. } => EXIT_VERIFICATION,
        Error::RadiusOutOfRange { .. }
        | Error::DegenerateProjection
        | Error::SamplingExhausted { .. }
        | Error::Internal(_) => EXIT_FAILURE,
    }
}

/// Parse `args` (including the program name), run the command and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_PARSE } else { let _ = write!(stdout, "{}", e.render()); EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Solve(c) => RunConfig::resolve(c, None, None).and_then(|cfg| cmd_solve(&cfg, stdout, stderr)),
        Command::Sweep { common, sweep } => {
            RunConfig::resolve(common, Some(sweep), None).and_then(|cfg| cmd_sweep(&cfg, stdout, stderr))
        }
        Command::Verify { common, oracle } => {
            RunConfig::resolve(common, None, Some(oracle)).and_then(|cfg| cmd_verify(&cfg, stdout, stderr))
        }
        Command::Info(c) => RunConfig::resolve(c, None, None).and_then(|cfg| cmd_info(&cfg, stdout, stderr)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(cfg: &RunConfig, stdout: &mut dyn Write, body: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body)?,
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn warn_all(sol: &Solution, stderr: &mut dyn Write) {
    for w in &sol.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
}

fn solution_json(cfg: &RunConfig, sol: &Solution) -> serde_json::Value {
    let d = &sol.diagnostics;
    json!({
        "regime": sol.regime,
        "value": sol.value,
        "risk_part": sol.risk_part,
        "achieved_distance_sq": sol.achieved_distance_sq,
        "eps_min": d.eps_min,
        "eps_max": d.eps_max,
        "rho": d.rho,
        "delta_star": d.delta_star,
        "eps_star": d.eps_star,
        "used_isotonic": d.used_isotonic,
        "sigma0": d.sigma0,
        "concave": d.concave,
        "delta": cfg.delta,
        "eps": cfg.eps,
        "n": sol.optimal_quantile.len(),
        "warnings": sol.warnings,
    })
}

fn quantile_csv(solver: &Solver, sol: &Solution) -> String {
    let mut s = String::from("u,optimal_quantile,reference_quantile\n");
    let n = sol.optimal_quantile.len();
    for ((u, q), f) in midpoints(n)
        .iter()
        .zip(sol.optimal_quantile.values())
        .zip(solver.reference_grid().values())
    {
        let _ = writeln!(s, "{u},{q},{f}");
    }
    s
}

pub fn cmd_solve(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    let spec = cfg.problem_spec(DEFAULT_GRID_N)?;
    let solver = Solver::new(&spec)?;
    let sol = match solver.solve() {
        Ok(sol) => sol,
        Err(e @ Error::InfeasibleRadius { .. }) => {
            let (eps_min, eps_max) = solver.epsilon_bounds();
            let report = json!({
                "regime": Regime::Infeasible,
                "value": null,
                "eps": cfg.eps,
                "eps_min": eps_min,
                "eps_max": eps_max,
                "rho": solver.rho_effective(),
            });
            stdout.write_all(to_json(&report)?.as_bytes())?;
            let _ = writeln!(stderr, "error: {e}");
            return Ok(EXIT_INFEASIBLE);
        }
        Err(e) => return Err(e),
    };
    warn_all(&sol, stderr);
    let summary = solution_json(cfg, &sol);
    match (cfg.format.unwrap_or(Format::Json), &cfg.out) {
        (Format::Json, None) => stdout.write_all(to_json(&summary)?.as_bytes())?,
        (Format::Json, Some(_)) => {
            let mut full = summary.clone();
            full["u"] = json!(midpoints(sol.optimal_quantile.len()));
            full["optimal_quantile"] = json!(sol.optimal_quantile.values());
            full["reference_quantile"] = json!(solver.reference_grid().values());
            emit(cfg, stdout, &to_json(&full)?)?;
            stdout.write_all(to_json(&summary)?.as_bytes())?;
        }
        (Format::Csv, None) => stdout.write_all(quantile_csv(&solver, &sol).as_bytes())?,
        (Format::Csv, Some(_)) => {
            emit(cfg, stdout, &quantile_csv(&solver, &sol))?;
            stdout.write_all(to_json(&summary)?.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

/// One row of a sweep; `value` and `achieved_distance_sq` are absent for infeasible points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis_value: f64,
    pub regime: Regime,
    pub value: Option<f64>,
    pub achieved_distance_sq: Option<f64>,
    pub delta_star_or_eps_star: Option<f64>,
}

/// `steps` evenly spaced points from `from` to `to` inclusive.
pub fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|k| {
            if k + 1 == steps {
                to
            } else {
                from + (to - from) * k as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

pub fn sweep_rows(solver: &Solver, axis: Axis, points: &[f64], delta: f64, eps: Option<f64>) -> Result<Vec<SweepRow>> {
    points
        .iter()
        .map(|&x| {
            let (d, e) = match axis {
                Axis::Delta => (x, eps),
                Axis::Eps => (delta, Some(x)),
            };
            match solver.solve_at(d, e) {
                Ok(sol) => {
                    let threshold = match axis {
                        Axis::Delta if e.is_some() => sol.diagnostics.delta_star,
                        _ => solver.epsilon_star(d).ok(),
                    };
                    Ok(SweepRow {
                        axis_value: x,
                        regime: sol.regime,
                        value: Some(sol.value),
                        achieved_distance_sq: Some(sol.achieved_distance_sq),
                        delta_star_or_eps_star: threshold,
                    })
                }
                Err(Error::InfeasibleRadius { .. }) => Ok(SweepRow {
                    axis_value: x,
                    regime: Regime::Infeasible,
                    value: None,
                    achieved_distance_sq: None,
                    delta_star_or_eps_star: None,
                }),
                Err(err) => Err(err),
            }
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut s = String::from("axis_value,regime,value,achieved_distance_sq,delta_star_or_eps_star\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.axis_value,
            r.regime,
            opt(r.value),
            opt(r.achieved_distance_sq),
            opt(r.delta_star_or_eps_star)
        );
    }
    s
}

pub fn cmd_sweep(cfg: &RunConfig, stdout: &mut dyn Write, _stderr: &mut dyn Write) -> Result<u8> {
    let axis = cfg.axis.ok_or_else(|| Error::InvalidProblem("--axis is required".into()))?;
    let (from, to) = match (cfg.from, cfg.to) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidProblem("--from and --to are required".into())),
    };
    let steps = cfg.steps.unwrap_or(50);
    if !(from < to) || steps < 2 {
        return Err(Error::InvalidProblem(format!(
            "need from < to and steps >= 2 (from {from}, to {to}, steps {steps})"
        )));
    }
    let mut base = cfg.clone();
    if axis == Axis::Eps {
        base.eps = None;
    }
    let spec = base.problem_spec(DEFAULT_GRID_N)?;
    let solver = Solver::new(&spec)?;
    let rows = sweep_rows(&solver, axis, &linspace(from, to, steps), cfg.delta, cfg.eps)?;
    let body = match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => sweep_csv(&rows),
        Format::Json => to_json(&rows)?,
    };
    emit(cfg, stdout, &body)?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    let spec = cfg.problem_spec(DEFAULT_ORACLE_N)?;
    let solver = Solver::new(&spec)?;
    let report = oracle::run(&solver, &cfg.oracle)?;
    emit(cfg, stdout, &to_json(&report)?)?;
    if report.passed {
        Ok(EXIT_OK)
    } else {
        let err = Error::VerificationFailed {
            report: Box::new(report),
        };
        let _ = writeln!(stderr, "error: {err}");
        Ok(EXIT_VERIFICATION)
    }
}

pub fn cmd_info(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    let spec = cfg.problem_spec(DEFAULT_GRID_N)?;
    if spec.distortion.is_var() && !spec.options.allow_var {
        return Err(Error::VarRequiresOverride);
    }
    let gamma = gamma_grid(&spec.distortion, spec.n)?;
    let reference = &spec.reference;
    let t = spec.target;
    let eps_min = (reference.mu_f() - t.mu).powi(2) + (reference.sigma_f() - t.sigma).powi(2);
    let mut info = json!({
        "n": spec.n,
        "mu_f": reference.mu_f(),
        "sigma_f": reference.sigma_f(),
        "eps_min": eps_min,
        "eps_max": null,
        "rho": null,
        "rho_effective": null,
        "sigma0": gamma.sigma0(),
        "concave": gamma.is_concave(),
        "assumption_a1": gamma.satisfies_a1(),
        "assumption_a4": null,
    });
    if !gamma.satisfies_a1() {
        stdout.write_all(to_json(&info)?.as_bytes())?;
        let _ = writeln!(stderr, "warning: {}", Error::AssumptionA1Violated);
        return Ok(EXIT_ASSUMPTION);
    }
    let solver = Solver::new(&spec)?;
    let (_, eps_max) = solver.epsilon_bounds();
    info["eps_min"] = json!(solver.eps_min());
    info["eps_max"] = json!(eps_max);
    info["rho"] = json!(solver.rho());
    info["rho_effective"] = json!(solver.rho_effective());
    if solver.is_general() {
        let report = solver.check_assumption_a4(&default_a4_grid());
        info["assumption_a4"] = json!(report);
    }
    stdout.write_all(to_json(&info)?.as_bytes())?;
    Ok(EXIT_OK)
}
