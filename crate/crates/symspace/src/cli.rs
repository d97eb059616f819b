//! Command-line front end: sampling runs, histogram/density output, kernel
//! evaluation grids, correlation values, and the verification suites.
//!
//! Subcommands: `sample | density | kernel | correlate | verify`.  Every
//! subcommand takes `--seed` (default 0), `--threads` (default: all cores),
//! `--out` (default stdout), `--format csv|jsonl`, and `--config FILE` where
//! the file holds flat `key=value` lines.  Precedence is flags > config file
//! > defaults.  When `--family` is given, the measure parameters (β, a, b)
//! come from the family table and explicit `--beta/--a/--b` are rejected.
//!
//! CSV output carries a header row plus a `# schema-version: 1` comment and
//! prints floats with 17 significant digits, so files round-trip losslessly
//! through [`load_samples`].  Exit codes: 0 success, 1 failed verification
//! gate, 2 usage/configuration/runtime error.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensembles::{mcmc_jacobi, sample_spectrum, stream_rng, table_params, EnsembleSpec};
use crate::error::{Error, Result};
use crate::kernels::finite::{cd_kernel, SummationKernel};
use crate::kernels::limit::{bessel_matrix, bessel_scalar, sine_matrix, sine_scalar};
use crate::kernels::KernelBlock;
use crate::qdet::{correlation, KernelEvaluator};
use crate::stats::{empirical_density, ks_distance};
use crate::verify::{run_suite, Suite};

const SCHEMA_COMMENT: &str = "# schema-version: 1";

/// Random-matrix ensembles on compact symmetric spaces.
#[derive(Parser, Debug)]
#[command(name = "symspace", version, about, arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw eigenangle samples from a matrix ensemble or its Metropolis chain.
    Sample(SampleArgs),
    /// Histogram samples (from a file or stdin) with optional reference curve.
    Density(DensityArgs),
    /// Evaluate a finite-rank or limiting kernel on a grid.
    Kernel(KernelArgs),
    /// n-point correlation function at listed points.
    Correlate(CorrelateArgs),
    /// Run a verification suite and emit its JSON report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Master seed; draw k uses the independent substream (seed, k).
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for sampling (default: all cores). Output does not
    /// depend on this.
    #[arg(long)]
    threads: Option<usize>,
    /// Output path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or jsonl.
    #[arg(long)]
    format: Option<String>,
    /// Flat key=value config file supplying defaults for absent flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV (requires --out).
    #[arg(long)]
    plot_script: bool,
}

#[derive(Args, Debug, Default)]
struct SampleArgs {
    /// Ensemble family (AI, AII, AIII, BDI, DIII, CI, CII, CUE, SO_odd,
    /// USp_group, SO_even).
    #[arg(long)]
    family: Option<String>,
    /// Rank R: the number of free eigenvalue pairs.
    #[arg(long)]
    rank: Option<usize>,
    /// Family parameter L (where applicable).
    #[arg(long = "L")]
    l: Option<usize>,
    /// Number of draws (matrix) or kept chain samples (mcmc).
    #[arg(long)]
    count: Option<usize>,
    /// Sampling method: matrix (default) or mcmc.
    #[arg(long)]
    method: Option<String>,
    /// Burn-in sweeps for the mcmc method.
    #[arg(long)]
    burn_in: Option<usize>,
    /// Repulsion exponent β (mcmc without --family only).
    #[arg(long)]
    beta: Option<f64>,
    /// Weight exponent at the +1 edge (mcmc without --family only).
    #[arg(long)]
    a: Option<f64>,
    /// Weight exponent at the −1 edge (mcmc without --family only).
    #[arg(long)]
    b: Option<f64>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug, Default)]
struct DensityArgs {
    /// Sample file (CSV or JSONL as written by `sample`); default stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Number of histogram bins.
    #[arg(long)]
    bins: Option<usize>,
    /// Histogram range lo:hi (defaults to the variable's natural range).
    #[arg(long)]
    range: Option<String>,
    /// Reference curve: arcsine (level density), uniform (angle density),
    /// or none.
    #[arg(long)]
    reference: Option<String>,
    /// Which variable to histogram: angle (θ) or level (cos θ).
    #[arg(long)]
    variable: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug, Default)]
struct KernelArgs {
    /// Limiting kernel: sine or bessel.
    #[arg(long)]
    limit: Option<String>,
    /// Finite-rank kernel: cd or summation.
    #[arg(long)]
    finite: Option<String>,
    /// Ensemble family supplying (β, a, b).
    #[arg(long)]
    family: Option<String>,
    /// Family parameter L (with --family).
    #[arg(long = "L")]
    l: Option<usize>,
    /// Symmetry parameter β ∈ {1, 2, 4}.
    #[arg(long)]
    beta: Option<u8>,
    /// Weight/edge exponent a.
    #[arg(long)]
    a: Option<f64>,
    /// Weight exponent b.
    #[arg(long)]
    b: Option<f64>,
    /// Rank of the finite kernel.
    #[arg(long)]
    rank: Option<usize>,
    /// Evaluation grid min:max:step, applied to both arguments.
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug, Default)]
struct CorrelateArgs {
    /// Comma-separated evaluation points.
    #[arg(long)]
    points: Option<String>,
    /// Limiting kernel: sine or bessel.
    #[arg(long)]
    limit: Option<String>,
    /// Finite-rank kernel: cd or summation.
    #[arg(long)]
    finite: Option<String>,
    /// Ensemble family supplying (β, a, b).
    #[arg(long)]
    family: Option<String>,
    /// Family parameter L (with --family).
    #[arg(long = "L")]
    l: Option<usize>,
    /// Symmetry parameter β ∈ {1, 2, 4}.
    #[arg(long)]
    beta: Option<u8>,
    /// Weight/edge exponent a.
    #[arg(long)]
    a: Option<f64>,
    /// Weight exponent b.
    #[arg(long)]
    b: Option<f64>,
    /// Rank of the finite kernel.
    #[arg(long)]
    rank: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug, Default)]
struct VerifyArgs {
    /// Suite scale: smoke (default) or full.
    #[arg(long)]
    suite: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

/// Flat key=value config file: one pair per line, `#` comments allowed.
struct ConfigMap(HashMap<String, String>);

impl ConfigMap {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path).map_err(|e| {
                Error::config(format!("cannot read config {}: {e}", path.display()))
            })?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Error::config(format!(
                        "{}:{}: expected key=value, got '{line}'",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(ConfigMap(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                Error::config(format!("config key {key}: cannot parse '{raw}'"))
            }),
        }
    }
}

/// flag > config > default
fn resolve<T: FromStr>(flag: Option<T>, cfg: &ConfigMap, key: &str, default: T) -> Result<T> {
    Ok(flag.or(cfg.get(key)?).unwrap_or(default))
}

fn resolve_opt<T: FromStr>(flag: Option<T>, cfg: &ConfigMap, key: &str) -> Result<Option<T>> {
    Ok(flag.or(cfg.get(key)?))
}

fn require<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| Error::config(format!("missing required field: {what}")))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OutFormat {
    Csv,
    Jsonl,
}

impl FromStr for OutFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutFormat::Csv),
            "jsonl" => Ok(OutFormat::Jsonl),
            other => Err(Error::config(format!(
                "unknown format '{other}' (expected csv|jsonl)"
            ))),
        }
    }
}

/// Settings shared by every subcommand, after precedence resolution.
struct Common {
    seed: u64,
    threads: usize,
    out: Option<PathBuf>,
    format: OutFormat,
    plot_script: bool,
}

impl Common {
    fn resolve(args: &CommonArgs, default_format: OutFormat) -> Result<(Common, ConfigMap)> {
        let cfg = ConfigMap::load(args.config.as_deref())?;
        let format = match resolve_opt(args.format.clone(), &cfg, "format")? {
            Some(text) => text.parse()?,
            None => default_format,
        };
        let threads = resolve(args.threads, &cfg, "threads", 0)?;
        Ok((
            Common {
                seed: resolve(args.seed, &cfg, "seed", 0)?,
                threads,
                out: resolve_opt(args.out.clone(), &cfg, "out")?,
                format,
                plot_script: args.plot_script || cfg.get("plot_script")?.unwrap_or(false),
            },
            cfg,
        ))
    }

    /// Writes the payload to `--out` or stdout, plus the optional gnuplot
    /// companion script.
    fn emit(&self, payload: &str, plot_body: Option<String>) -> Result<()> {
        match &self.out {
            Some(path) => {
                fs::write(path, payload)
                    .map_err(|e| Error::config(format!("cannot write {}: {e}", path.display())))?;
                if self.plot_script {
                    let body = plot_body.ok_or_else(|| {
                        Error::config("--plot-script applies to density and kernel output")
                    })?;
                    let script_path = path.with_extension("gnuplot");
                    let script = format!(
                        "set datafile separator ','\nset datafile commentschars '#'\n{}",
                        body.replace("{data}", &path.display().to_string())
                    );
                    fs::write(&script_path, script).map_err(|e| {
                        Error::config(format!("cannot write {}: {e}", script_path.display()))
                    })?;
                }
            }
            None => {
                if self.plot_script {
                    return Err(Error::config("--plot-script requires --out"));
                }
                print!("{payload}");
            }
        }
        Ok(())
    }
}

/// One sampling draw: the schema shared by the CSV and JSONL formats.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SampleRow {
    /// Family label.
    pub family: String,
    /// Rank R.
    pub r: usize,
    /// Family parameter L.
    pub l: usize,
    /// Master seed of the run that produced the row.
    pub seed: u64,
    /// Sorted fundamental angles θ_1 ≤ … ≤ θ_R.
    pub thetas: Vec<f64>,
    /// Multiplicity of the removed forced eigenvalue.
    pub forced: usize,
}

fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn samples_to_csv(rows: &[SampleRow]) -> String {
    let r = rows.first().map_or(0, |row| row.r);
    let mut text = String::new();
    let _ = writeln!(text, "{SCHEMA_COMMENT}");
    let mut header = String::from("family,R,L,seed");
    for k in 1..=r {
        let _ = write!(header, ",theta_{k}");
    }
    header.push_str(",forced");
    let _ = writeln!(text, "{header}");
    for row in rows {
        let _ = write!(text, "{},{},{},{}", row.family, row.r, row.l, row.seed);
        for &t in &row.thetas {
            let _ = write!(text, ",{}", fmt_float(t));
        }
        let _ = writeln!(text, ",{}", row.forced);
    }
    text
}

fn samples_to_jsonl(rows: &[SampleRow]) -> Result<String> {
    let mut text = String::new();
    for row in rows {
        let line = serde_json::to_string(row)
            .map_err(|e| Error::numerical(format!("cannot serialize row: {e}")))?;
        text.push_str(&line);
        text.push('\n');
    }
    Ok(text)
}

/// Parses sample output in either format (auto-detected): the inverse of the
/// `sample` writers.
pub fn load_samples(text: &str) -> Result<Vec<SampleRow>> {
    let mut rows = Vec::new();
    let mut saw_header = false;
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('{') {
            let row: SampleRow = serde_json::from_str(line)
                .map_err(|e| Error::config(format!("bad JSONL sample line: {e}")))?;
            rows.push(row);
            continue;
        }
        if !saw_header {
            if !line.starts_with("family,") {
                return Err(Error::config(format!(
                    "expected sample CSV header starting with 'family,', got '{line}'"
                )));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 5 {
            return Err(Error::config(format!("short sample CSV row: '{line}'")));
        }
        let r: usize = fields[1]
            .parse()
            .map_err(|_| Error::config(format!("bad rank in row: '{line}'")))?;
        if fields.len() != 5 + r {
            return Err(Error::config(format!(
                "sample row has {} fields, expected {} for rank {r}",
                fields.len(),
                5 + r
            )));
        }
        let parse_f = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::config(format!("bad float '{s}' in sample row")))
        };
        rows.push(SampleRow {
            family: fields[0].to_string(),
            r,
            l: fields[2]
                .parse()
                .map_err(|_| Error::config(format!("bad L in row: '{line}'")))?,
            seed: fields[3]
                .parse()
                .map_err(|_| Error::config(format!("bad seed in row: '{line}'")))?,
            thetas: fields[4..4 + r].iter().map(|s| parse_f(s)).collect::<Result<_>>()?,
            forced: fields[4 + r]
                .parse()
                .map_err(|_| Error::config(format!("bad forced count in row: '{line}'")))?,
        });
    }
    Ok(rows)
}

/// Enforces the parameter-closure invariant: with `--family`, the measure
/// parameters come from the family table and explicit overrides are errors.
fn closed_params(
    family: Option<&str>,
    l: usize,
    rank: usize,
    beta: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
) -> Result<(Option<EnsembleSpec>, f64, f64, f64)> {
    match family {
        Some(name) => {
            if beta.is_some() || a.is_some() || b.is_some() {
                return Err(Error::config(format!(
                    "--beta/--a/--b conflict with --family {name}: parameters are filled from the family table"
                )));
            }
            let spec = EnsembleSpec::new(name.parse()?, rank, l)?;
            let (beta, a, b) = table_params(&spec)?;
            Ok((Some(spec), beta, a, b))
        }
        None => Ok((
            None,
            require(beta, "--beta (or --family)")?,
            a.unwrap_or(0.0),
            b.unwrap_or(0.0),
        )),
    }
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::config(format!(
            "grid must be min:max:step, got '{text}'"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse()
                .map_err(|_| Error::config(format!("bad grid number '{p}'")))
        })
        .collect::<Result<_>>()?;
    let (min, max, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || max < min {
        return Err(Error::config(format!(
            "grid needs max >= min and step > 0, got '{text}'"
        )));
    }
    let n = ((max - min) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| min + step * k as f64).collect())
}

fn parse_range(text: &str) -> Result<(f64, f64)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Error::config(format!("range must be lo:hi, got '{text}'")))?;
    let lo: f64 = lo
        .parse()
        .map_err(|_| Error::config(format!("bad range bound '{lo}'")))?;
    let hi: f64 = hi
        .parse()
        .map_err(|_| Error::config(format!("bad range bound '{hi}'")))?;
    if !(hi > lo) {
        return Err(Error::config(format!("range needs hi > lo, got '{text}'")));
    }
    Ok((lo, hi))
}

fn run_sample(args: SampleArgs) -> Result<i32> {
    let (common, cfg) = Common::resolve(&args.common, OutFormat::Csv)?;
    let family = resolve_opt(args.family.clone(), &cfg, "family")?;
    let rank = require(resolve_opt(args.rank, &cfg, "rank")?, "--rank")?;
    let l = resolve(args.l, &cfg, "l", 0)?;
    let count = require(resolve_opt(args.count, &cfg, "count")?, "--count")?;
    let method = resolve(args.method.clone(), &cfg, "method", "matrix".to_string())?;
    let burn_in = resolve(args.burn_in, &cfg, "burn_in", 600)?;
    let beta = resolve_opt(args.beta, &cfg, "beta")?;
    let a = resolve_opt(args.a, &cfg, "a")?;
    let b = resolve_opt(args.b, &cfg, "b")?;
    if count == 0 {
        return Err(Error::config("--count must be at least 1"));
    }

    let rows = match method.as_str() {
        "matrix" => {
            let name = require(family, "--family")?;
            if beta.is_some() || a.is_some() || b.is_some() {
                return Err(Error::config(format!(
                    "--beta/--a/--b conflict with --family {name}: parameters are filled from the family table"
                )));
            }
            let spec = EnsembleSpec::new(name.parse()?, rank, l)?;
            let seed = common.seed;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(common.threads)
                .build()
                .map_err(|e| Error::config(format!("cannot build thread pool: {e}")))?;
            // Each draw owns the substream (seed, k): the result is a pure
            // function of (spec, seed, k), so worker count cannot change it.
            pool.install(|| {
                (0..count as u64)
                    .into_par_iter()
                    .map(|k| {
                        let mut rng = stream_rng(seed, k);
                        let s = sample_spectrum(&spec, &mut rng)?;
                        Ok(SampleRow {
                            family: spec.family.label().to_string(),
                            r: spec.r,
                            l: spec.l,
                            seed,
                            thetas: s.thetas,
                            forced: s.forced,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })?
        }
        "mcmc" => {
            let (spec, beta, a, b) = closed_params(family.as_deref(), l, rank, beta, a, b)?;
            let mut rng = stream_rng(common.seed, 0);
            let run = mcmc_jacobi(rank, beta, a, b, count, burn_in, &mut rng)?;
            let (label, forced) = match &spec {
                Some(s) => (s.family.label().to_string(), s.forced_multiplicity()),
                None => ("jacobi".to_string(), 0),
            };
            run.samples
                .into_iter()
                .map(|levels| {
                    // levels ascend in x = cos θ, so θ = acos x descends.
                    let mut thetas: Vec<f64> = levels.into_iter().map(f64::acos).collect();
                    thetas.reverse();
                    SampleRow {
                        family: label.clone(),
                        r: rank,
                        l,
                        seed: common.seed,
                        thetas,
                        forced,
                    }
                })
                .collect()
        }
        other => {
            return Err(Error::config(format!(
                "unknown method '{other}' (expected matrix|mcmc)"
            )))
        }
    };

    let payload = match common.format {
        OutFormat::Csv => samples_to_csv(&rows),
        OutFormat::Jsonl => samples_to_jsonl(&rows)?,
    };
    common.emit(&payload, None)?;
    Ok(0)
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::config(format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn run_density(args: DensityArgs) -> Result<i32> {
    let (common, cfg) = Common::resolve(&args.common, OutFormat::Csv)?;
    let input = resolve_opt(args.input.clone(), &cfg, "input")?;
    let bins = resolve(args.bins, &cfg, "bins", 60)?;
    let reference = resolve(args.reference.clone(), &cfg, "reference", "none".to_string())?;
    let variable = resolve_opt(args.variable.clone(), &cfg, "variable")?;
    let range = resolve_opt(args.range.clone(), &cfg, "range")?;

    let variable = variable.unwrap_or_else(|| {
        match reference.as_str() {
            "arcsine" => "level",
            _ => "angle",
        }
        .to_string()
    });

    let rows = load_samples(&read_input(input.as_deref())?)?;
    if rows.is_empty() {
        return Err(Error::config("no sample rows in input"));
    }
    let pooled: Vec<f64> = match variable.as_str() {
        "angle" => rows.iter().flat_map(|r| r.thetas.iter().copied()).collect(),
        "level" => rows
            .iter()
            .flat_map(|r| r.thetas.iter().map(|t| t.cos()))
            .collect(),
        other => {
            return Err(Error::config(format!(
                "unknown variable '{other}' (expected angle|level)"
            )))
        }
    };

    let default_range = if variable == "angle" {
        (0.0, std::f64::consts::PI)
    } else {
        (-1.0, 1.0)
    };
    let range = match range {
        Some(text) => parse_range(&text)?,
        None => default_range,
    };
    let hist = empirical_density(&pooled, bins, range)?;

    // reference density and CDF in the histogram variable
    type RefPair = (fn(f64) -> f64, fn(f64) -> f64);
    let reference_fns: Option<RefPair> = match reference.as_str() {
        "none" => None,
        "arcsine" => {
            if variable != "level" {
                return Err(Error::config("--reference arcsine applies to --variable level"));
            }
            Some((
                |x: f64| 1.0 / (std::f64::consts::PI * (1.0 - x * x).sqrt()),
                |x: f64| 1.0 - x.clamp(-1.0, 1.0).acos() / std::f64::consts::PI,
            ))
        }
        "uniform" => {
            if variable != "angle" {
                return Err(Error::config("--reference uniform applies to --variable angle"));
            }
            Some((
                |_t: f64| 1.0 / std::f64::consts::PI,
                |t: f64| (t / std::f64::consts::PI).clamp(0.0, 1.0),
            ))
        }
        other => {
            return Err(Error::config(format!(
                "unknown reference '{other}' (expected arcsine|uniform|none)"
            )))
        }
    };

    let ks = reference_fns.map(|(_, cdf)| ks_distance(&pooled, cdf));

    let payload = match common.format {
        OutFormat::Csv => {
            let mut text = String::new();
            let _ = writeln!(text, "{SCHEMA_COMMENT}");
            if let Some(ks) = ks {
                let _ = writeln!(text, "# ks: {}", fmt_float(ks));
            }
            let header = if reference_fns.is_some() {
                "bin_left,bin_right,density,reference"
            } else {
                "bin_left,bin_right,density"
            };
            let _ = writeln!(text, "{header}");
            for (left, right, dens) in hist.rows() {
                let _ = write!(
                    text,
                    "{},{},{}",
                    fmt_float(left),
                    fmt_float(right),
                    fmt_float(dens)
                );
                if let Some((pdf, _)) = reference_fns {
                    let _ = write!(text, ",{}", fmt_float(pdf(0.5 * (left + right))));
                }
                text.push('\n');
            }
            text
        }
        OutFormat::Jsonl => {
            let mut text = String::new();
            for (left, right, dens) in hist.rows() {
                let mut obj = serde_json::json!({
                    "bin_left": left, "bin_right": right, "density": dens,
                });
                if let Some((pdf, _)) = reference_fns {
                    obj["reference"] = serde_json::json!(pdf(0.5 * (left + right)));
                }
                let _ = writeln!(text, "{obj}");
            }
            if let Some(ks) = ks {
                let _ = writeln!(text, "{}", serde_json::json!({ "ks": ks }));
            }
            text
        }
    };

    if let Some(ks) = ks {
        eprintln!("ks = {ks:.6}");
    }
    let plot = if reference_fns.is_some() {
        "set style fill solid 0.4\nplot '{data}' using (($1+$2)/2):3 with boxes title 'empirical', \\\n     '{data}' using (($1+$2)/2):4 with lines lw 2 title 'reference'\npause -1\n"
    } else {
        "set style fill solid 0.4\nplot '{data}' using (($1+$2)/2):3 with boxes title 'empirical'\npause -1\n"
    };
    common.emit(&payload, Some(plot.to_string()))?;
    Ok(0)
}

enum KernelChoice {
    Scalar(Box<dyn Fn(f64, f64) -> Result<f64> + Sync>),
    Block(Box<dyn Fn(f64, f64) -> Result<KernelBlock> + Sync>),
}

/// Builds the kernel selected by the `kernel`/`correlate` flag set.
fn choose_kernel(
    limit: Option<String>,
    finite: Option<String>,
    family: Option<String>,
    l: usize,
    beta: Option<u8>,
    a: Option<f64>,
    b: Option<f64>,
    rank: Option<usize>,
) -> Result<(u8, KernelChoice)> {
    // family closure: (β, a, b) from the table, overrides rejected
    let (beta, a, b) = match family {
        Some(name) => {
            if beta.is_some() || a.is_some() || b.is_some() {
                return Err(Error::config(format!(
                    "--beta/--a/--b conflict with --family {name}: parameters are filled from the family table"
                )));
            }
            let spec = EnsembleSpec::new(name.parse()?, rank.unwrap_or(2), l)?;
            let (beta, a, b) = table_params(&spec)?;
            (beta as u8, a, b)
        }
        None => (beta.unwrap_or(2), a.unwrap_or(0.0), b.unwrap_or(0.0)),
    };
    if !matches!(beta, 1 | 2 | 4) {
        return Err(Error::config(format!("beta must be 1, 2, or 4, got {beta}")));
    }

    let choice = match (limit.as_deref(), finite.as_deref()) {
        (Some(kind), None) => match (kind, beta) {
            ("sine", 2) => KernelChoice::Scalar(Box::new(|x, y| Ok(sine_scalar(x, y)))),
            ("sine", _) => KernelChoice::Block(Box::new(move |x, y| sine_matrix(beta, x, y))),
            ("bessel", 2) => KernelChoice::Scalar(Box::new(move |x, y| bessel_scalar(a, x, y))),
            ("bessel", _) => {
                KernelChoice::Block(Box::new(move |x, y| bessel_matrix(beta, a, x, y)))
            }
            (other, _) => {
                return Err(Error::config(format!(
                    "unknown limit kernel '{other}' (expected sine|bessel)"
                )))
            }
        },
        (None, Some(kind)) => {
            let rank = require(rank, "--rank (finite kernels)")?;
            match kind {
                "cd" => {
                    if beta != 2 {
                        return Err(Error::config(
                            "the cd kernel is the beta=2 projector; pick --finite summation for beta 1 or 4",
                        ));
                    }
                    KernelChoice::Scalar(Box::new(move |x, y| cd_kernel(rank, a, b, x, y)))
                }
                "summation" => {
                    let kernel = SummationKernel::new(beta, rank, a, b)?;
                    KernelChoice::Block(Box::new(move |x, y| kernel.block(x, y)))
                }
                other => {
                    return Err(Error::config(format!(
                        "unknown finite kernel '{other}' (expected cd|summation)"
                    )))
                }
            }
        }
        _ => {
            return Err(Error::config(
                "pick exactly one of --limit sine|bessel or --finite cd|summation",
            ))
        }
    };
    Ok((beta, choice))
}

fn run_kernel(args: KernelArgs) -> Result<i32> {
    let (common, cfg) = Common::resolve(&args.common, OutFormat::Csv)?;
    let limit = resolve_opt(args.limit.clone(), &cfg, "limit")?;
    let finite = resolve_opt(args.finite.clone(), &cfg, "finite")?;
    let family = resolve_opt(args.family.clone(), &cfg, "family")?;
    let l = resolve(args.l, &cfg, "l", 0)?;
    let beta = resolve_opt(args.beta, &cfg, "beta")?;
    let a = resolve_opt(args.a, &cfg, "a")?;
    let b = resolve_opt(args.b, &cfg, "b")?;
    let rank = resolve_opt(args.rank, &cfg, "rank")?;
    let grid_text = require(resolve_opt(args.grid.clone(), &cfg, "grid")?, "--grid")?;
    let pts = parse_grid(&grid_text)?;

    let (_, choice) = choose_kernel(limit, finite, family, l, beta, a, b, rank)?;

    let mut csv = String::new();
    let mut jsonl = String::new();
    let _ = writeln!(csv, "{SCHEMA_COMMENT}");
    match &choice {
        KernelChoice::Scalar(f) => {
            let _ = writeln!(csv, "x,y,value");
            for &x in &pts {
                for &y in &pts {
                    let v = f(x, y)?;
                    let _ = writeln!(csv, "{},{},{}", fmt_float(x), fmt_float(y), fmt_float(v));
                    let _ = writeln!(jsonl, "{}", serde_json::json!({"x": x, "y": y, "value": v}));
                }
            }
        }
        KernelChoice::Block(f) => {
            let _ = writeln!(csv, "x,y,s,i_minus,d,st");
            for &x in &pts {
                for &y in &pts {
                    let blk = f(x, y)?;
                    let _ = writeln!(
                        csv,
                        "{},{},{},{},{},{}",
                        fmt_float(x),
                        fmt_float(y),
                        fmt_float(blk.s),
                        fmt_float(blk.i_minus),
                        fmt_float(blk.d),
                        fmt_float(blk.st)
                    );
                    let _ = writeln!(
                        jsonl,
                        "{}",
                        serde_json::json!({
                            "x": x, "y": y, "s": blk.s, "i_minus": blk.i_minus,
                            "d": blk.d, "st": blk.st,
                        })
                    );
                }
            }
        }
    }

    let payload = match common.format {
        OutFormat::Csv => csv,
        OutFormat::Jsonl => jsonl,
    };
    let plot = "set hidden3d\nsplot '{data}' using 1:2:3 with lines title 'kernel'\npause -1\n";
    common.emit(&payload, Some(plot.to_string()))?;
    Ok(0)
}

fn run_correlate(args: CorrelateArgs) -> Result<i32> {
    let (common, cfg) = Common::resolve(&args.common, OutFormat::Csv)?;
    let limit = resolve_opt(args.limit.clone(), &cfg, "limit")?;
    let finite = resolve_opt(args.finite.clone(), &cfg, "finite")?;
    let family = resolve_opt(args.family.clone(), &cfg, "family")?;
    let l = resolve(args.l, &cfg, "l", 0)?;
    let beta = resolve_opt(args.beta, &cfg, "beta")?;
    let a = resolve_opt(args.a, &cfg, "a")?;
    let b = resolve_opt(args.b, &cfg, "b")?;
    let rank = resolve_opt(args.rank, &cfg, "rank")?;
    let points_text = require(resolve_opt(args.points.clone(), &cfg, "points")?, "--points")?;

    let points: Vec<f64> = points_text
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::config(format!("bad point '{p}'")))
        })
        .collect::<Result<_>>()?;

    let (beta, choice) = choose_kernel(limit, finite, family, l, beta, a, b, rank)?;
    let value = match &choice {
        KernelChoice::Scalar(f) => correlation(beta, &KernelEvaluator::Scalar(f), &points)?,
        KernelChoice::Block(f) => correlation(beta, &KernelEvaluator::Block(f), &points)?,
    };

    let payload = match common.format {
        OutFormat::Csv => {
            let mut text = String::new();
            let _ = writeln!(text, "{SCHEMA_COMMENT}");
            let mut header = String::from("n");
            for k in 1..=points.len() {
                let _ = write!(header, ",x_{k}");
            }
            header.push_str(",value");
            let _ = writeln!(text, "{header}");
            let _ = write!(text, "{}", points.len());
            for &p in &points {
                let _ = write!(text, ",{}", fmt_float(p));
            }
            let _ = writeln!(text, ",{}", fmt_float(value));
            text
        }
        OutFormat::Jsonl => {
            format!("{}\n", serde_json::json!({"n": points.len(), "points": points, "value": value}))
        }
    };
    common.emit(&payload, None)?;
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<i32> {
    let (common, cfg) = Common::resolve(&args.common, OutFormat::Jsonl)?;
    let suite_text = resolve(args.suite.clone(), &cfg, "suite", "smoke".to_string())?;
    let suite: Suite = suite_text.parse()?;

    let entries = run_suite(suite, common.seed)?;
    let failed = entries.iter().filter(|e| !e.pass).count();

    let payload = match common.format {
        OutFormat::Jsonl => {
            let mut text = String::new();
            for e in &entries {
                let line = serde_json::to_string(e)
                    .map_err(|err| Error::numerical(format!("cannot serialize report: {err}")))?;
                let _ = writeln!(text, "{line}");
            }
            text
        }
        OutFormat::Csv => {
            let mut text = String::new();
            let _ = writeln!(text, "{SCHEMA_COMMENT}");
            let _ = writeln!(text, "test_name,metric,value,tolerance,pass");
            for e in &entries {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{}",
                    e.test_name,
                    e.metric,
                    fmt_float(e.value),
                    fmt_float(e.tolerance),
                    e.pass
                );
            }
            text
        }
    };
    common.emit(&payload, None)?;
    eprintln!(
        "verify {suite}: {} gates, {} failed",
        entries.len(),
        failed
    );
    Ok(if failed == 0 { 0 } else { 1 })
}

/// Parses argv and runs the selected subcommand; returns the process exit
/// code (0 success, 1 failed verification gate, 2 any error).
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors and 0 on --help/--version
            e.exit();
        }
    };
    let outcome = match cli.command {
        Command::Sample(args) => run_sample(args),
        Command::Density(args) => run_density(args),
        Command::Kernel(args) => run_kernel(args),
        Command::Correlate(args) => run_correlate(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parser_is_inclusive_and_validated() {
        let pts = parse_grid("0.1:3:0.1").unwrap();
        assert_eq!(pts.len(), 30);
        assert!((pts[0] - 0.1).abs() < 1e-12);
        assert!((pts[29] - 3.0).abs() < 1e-9);
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1").is_err());
    }

    #[test]
    fn config_precedence_flag_beats_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "seed = 9\nbins=17\n# comment\n").unwrap();
        let cfg = ConfigMap::load(Some(&path)).unwrap();
        assert_eq!(resolve(Some(3u64), &cfg, "seed", 0).unwrap(), 3);
        assert_eq!(resolve(None::<u64>, &cfg, "seed", 0).unwrap(), 9);
        assert_eq!(resolve(None::<usize>, &cfg, "bins", 60).unwrap(), 17);
        assert_eq!(resolve(None::<usize>, &cfg, "count", 5).unwrap(), 5);
    }

    #[test]
    fn config_rejects_malformed_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.conf");
        fs::write(&path, "seed 9\n").unwrap();
        assert!(ConfigMap::load(Some(&path)).is_err());
    }

    #[test]
    fn family_closure_rejects_overrides() {
        let err = closed_params(Some("AIII"), 0, 3, None, Some(1.0), None).unwrap_err();
        assert!(err.to_string().contains("family table"));
        let (spec, beta, a, b) = closed_params(Some("AIII"), 0, 3, None, None, None).unwrap();
        assert!(spec.is_some());
        assert_eq!((beta, a, b), (2.0, 0.0, 0.0));
        // without a family, beta is required
        assert!(closed_params(None, 0, 3, None, None, None).is_err());
    }

    #[test]
    fn sample_rows_round_trip_through_both_formats() {
        let rows = vec![
            SampleRow {
                family: "BDI".into(),
                r: 2,
                l: 1,
                seed: 7,
                thetas: vec![0.123456789012345678, 2.9876543210987654],
                forced: 1,
            },
            SampleRow {
                family: "BDI".into(),
                r: 2,
                l: 1,
                seed: 7,
                // first value needs all 17 digits: the one-ulp-parse trap
                thetas: vec![f64::from_bits(0x40023a33b1c71919), std::f64::consts::PI * 0.75],
                forced: 1,
            },
        ];
        let csv = samples_to_csv(&rows);
        assert!(csv.starts_with("# schema-version: 1\n"));
        assert!(csv.contains("family,R,L,seed,theta_1,theta_2,forced"));
        assert_eq!(load_samples(&csv).unwrap(), rows);
        let jsonl = samples_to_jsonl(&rows).unwrap();
        assert_eq!(load_samples(&jsonl).unwrap(), rows);
    }

    #[test]
    fn loader_rejects_garbage() {
        assert!(load_samples("not,a,sample\n1,2,3\n").is_err());
        assert!(load_samples("family,R,L,seed,theta_1,forced\nAI,1,0,0,0.5\n").is_err());
        let empty = load_samples("# schema-version: 1\n").unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn kernel_choice_validates_combinations() {
        assert!(choose_kernel(None, None, None, 0, Some(2), None, None, None).is_err());
        assert!(choose_kernel(
            Some("sine".into()),
            Some("cd".into()),
            None,
            0,
            Some(2),
            None,
            None,
            Some(10)
        )
        .is_err());
        assert!(
            choose_kernel(None, Some("cd".into()), None, 0, Some(1), None, None, Some(10)).is_err()
        );
        let (beta, _) = choose_kernel(
            Some("bessel".into()),
            None,
            Some("CII".into()),
            0,
            None,
            None,
            None,
            None,
        )
        .unwrap();
        assert_eq!(beta, 4);
    }

    #[test]
    fn float_format_round_trips_exactly() {
        for &x in &[std::f64::consts::PI, 1.0 / 3.0, -2.5e-11, 0.0] {
            let text = fmt_float(x);
            assert_eq!(text.parse::<f64>().unwrap(), x);
        }
    }
}
