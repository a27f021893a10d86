//! `kcomb` command-line front end.
//!
//! Config file grammar (one directive per line):
//!
//! ```text
//! # comment            whole-line comments and blank lines are ignored
//! line m=<int> p=<decimal>
//! ```
//!
//! Exit codes: 0 success, 1 input or validation error, 2 a gated check
//! failed. Reports never contain timestamps or the thread count, so the
//! same arguments always produce the same bytes.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coupling::{a_k, coupling_error_growth, simulate_coupled};
use crate::error::{Error, Result};
use crate::geom_bound::{default_grid_check, DEFAULT_ALPHAS, DEFAULT_CS, DEFAULT_NS};
use crate::lattice::{exact_distribution, simulate_direct, validate_config, KCombConfig, RecordMode};
use crate::limit_stats::{
    chi_square_endpoint, chi_square_threshold, endpoint_ensemble, lil_checkpoints, lil_path, lil_statistics,
    limit_profile, position_invariance_test, scaling_exponents, x_lil_constant, EndpointCounts, Sampler,
    CHUNG_CONSTANT, Y_LIL_CONSTANT,
};
use crate::localtime::{kesten_sample, simple_walk_tables, uniformity_profile};
use crate::rng::SeedSpec;
use crate::{classical_comb, Config};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Parses the line-oriented config format.
pub fn parse_config(text: &str) -> Result<Config> {
    let mut raw = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::ConfigParse { line: lineno, msg: msg.to_string() };
        let mut parts = t.split_whitespace();
        if parts.next() != Some("line") {
            return Err(err("expected `line m=<int> p=<decimal>`"));
        }
        let (mut m, mut p) = (None, None);
        for kv in parts {
            match kv.split_once('=') {
                Some(("m", v)) if m.is_none() => {
                    m = Some(v.parse::<i64>().map_err(|_| err(&format!("bad integer `{v}`")))?)
                }
                Some(("p", v)) if p.is_none() => {
                    if !v.chars().all(|c| c.is_ascii_digit() || c == '.') {
                        return Err(err(&format!("bad decimal `{v}`")));
                    }
                    p = Some(v.parse::<f64>().map_err(|_| err(&format!("bad decimal `{v}`")))?)
                }
                _ => return Err(err(&format!("unexpected token `{kv}`"))),
            }
        }
        match (m, p) {
            (Some(m), Some(p)) => raw.push((m, p)),
            _ => return Err(err("both m= and p= are required")),
        }
    }
    validate_config(&raw)
}

/// Inverse of [`parse_config`]; `p` is written in shortest round-trip form.
pub fn format_config(config: &Config) -> String {
    config.lines().iter().map(|l| format!("line m={} p={}\n", l.m, l.p)).collect()
}

/// Decimal rendering with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.16e}");
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if (-5..17).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, v)
    } else {
        sci
    }
}

#[derive(Parser, Debug)]
#[command(name = "kcomb", version, about = "Random walks on the two-dimensional K-comb lattice")]
struct Cli {
    /// Worker threads (default: all cores). Never changes any output.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Master seed.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Lattice config file (default: one line m=0 p=0.25).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the payload here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate paths and write endpoints or full paths as CSV.
    Simulate(SimulateArgs),
    /// Exact distribution after N steps as CSV.
    Exact {
        #[arg(long, value_parser = parse_count)]
        steps: u64,
    },
    /// Chi-square of both samplers against the exact distribution.
    Compare {
        #[arg(long, value_parser = parse_count)]
        steps: u64,
        #[arg(long, value_parser = parse_count, default_value = "100000")]
        paths: u64,
    },
    /// Growth exponent of the coupling error.
    CoupleCheck {
        #[arg(long, value_parser = parse_count, value_delimiter = ',', default_value = "1e4,1e5,1e6")]
        grid: Vec<u64>,
        #[arg(long, value_parser = parse_count, default_value = "20")]
        paths: u64,
    },
    /// Geometric maximal tail bound against Monte Carlo.
    TailCheck {
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.5,0.8")]
        alphas: Vec<f64>,
        #[arg(long, value_parser = parse_count, value_delimiter = ',', default_value = "1e3,1e4,1e5")]
        ns: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        cs: Vec<f64>,
        #[arg(long, value_parser = parse_count, default_value = "10000")]
        reps: u64,
    },
    /// Scaling exponents of |C1(N)| and |C2(N)|.
    Scaling {
        #[arg(long, value_parser = parse_count, value_delimiter = ',', default_value = "1e3,1e4,1e5,1e6")]
        grid: Vec<u64>,
        #[arg(long, value_parser = parse_count, default_value = "2000")]
        paths: u64,
    },
    /// KS distances of the scaled coordinates to their limit laws.
    Limits {
        #[arg(long, value_parser = parse_count, value_delimiter = ',', default_value = "1e3,3e4,1e6")]
        grid: Vec<u64>,
        #[arg(long, value_parser = parse_count, default_value = "5000")]
        paths: u64,
        #[arg(long, value_parser = parse_count, default_value = "1000000")]
        reference_size: u64,
        #[arg(long, value_enum, default_value_t = SamplerArg::Coupled)]
        sampler: SamplerArg,
    },
    /// LIL and Chung statistic series of one path as CSV.
    Lil {
        #[arg(long, value_parser = parse_count, default_value = "10000000")]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        path_index: u64,
        #[arg(long, default_value_t = 1.5)]
        ratio: f64,
    },
    /// Local-time conservation, Kesten and adjacent-level statistics.
    LocaltimeCheck {
        #[arg(long, value_parser = parse_count, value_delimiter = ',', default_value = "1e4,1e5,1e6")]
        grid: Vec<u64>,
        #[arg(long, value_parser = parse_count, default_value = "50")]
        paths: u64,
        #[arg(long, value_parser = parse_count, default_value = "10000000")]
        kesten_steps: u64,
        #[arg(long, value_parser = parse_count, default_value = "1000")]
        conservation_paths: u64,
    },
    /// Two-sample KS of scaled x-endpoints between two configs.
    Invariance {
        #[arg(long)]
        config_a: PathBuf,
        #[arg(long)]
        config_b: PathBuf,
        #[arg(long, value_parser = parse_count, default_value = "1000000")]
        steps: u64,
        #[arg(long, value_parser = parse_count, default_value = "5000")]
        paths: u64,
    },
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, value_parser = parse_count)]
    steps: u64,
    #[arg(long, value_parser = parse_count, default_value = "1")]
    paths: u64,
    #[arg(long, value_enum, default_value_t = SamplerArg::Direct)]
    sampler: SamplerArg,
    #[arg(long, value_enum, default_value_t = RecordArg::Endpoint)]
    record: RecordArg,
    /// Step indices to record (implies checkpoint mode).
    #[arg(long, value_parser = parse_count, value_delimiter = ',')]
    checkpoints: Option<Vec<u64>>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SamplerArg {
    Direct,
    Coupled,
}

impl From<SamplerArg> for Sampler {
    fn from(s: SamplerArg) -> Self {
        match s {
            SamplerArg::Direct => Sampler::Direct,
            SamplerArg::Coupled => Sampler::Coupled,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RecordArg {
    Endpoint,
    Full,
}

/// Non-negative integer, also in `1e6` notation.
fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
    if f >= 0.0 && f.fract() == 0.0 && f < 1.8e19 {
        Ok(f as u64)
    } else {
        Err(format!("`{s}` is not a non-negative integer"))
    }
}

enum Failure {
    Input(String),
    Gate,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Ctx {
    seed: u64,
    config: Config,
    output: Option<PathBuf>,
}

impl Ctx {
    fn emit(&self, payload: &str) -> std::result::Result<(), Failure> {
        match &self.output {
            Some(path) => fs::write(path, payload).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(payload.as_bytes()).map_err(|e| Failure::Input(e.to_string()))
            }
        }
    }

    fn emit_json(&self, check: &str, target: Value, results: Value, pass: Option<bool>) -> std::result::Result<(), Failure> {
        let mut report = json!({
            "check": check,
            "config": config_json(&self.config),
            "a_k": a_k(&self.config),
            "seed": self.seed,
            "target": target,
            "tool_version": TOOL_VERSION,
            "results": results,
        });
        if let Some(p) = pass {
            report["pass"] = json!(p);
        }
        let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Input(e.to_string()))?;
        self.emit(&(text + "\n"))?;
        match pass {
            Some(false) => Err(Failure::Gate),
            _ => Ok(()),
        }
    }
}

fn config_json(c: &Config) -> Value {
    Value::Array(c.lines().iter().map(|l| json!({"m": l.m, "p": l.p})).collect())
}

fn load_config(path: &PathBuf) -> std::result::Result<Config, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("{}", first.trim());
            return 1;
        }
    };
    let result = match cli.threads {
        Some(k) if k > 0 => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Failure::Input(e.to_string())),
        },
        Some(_) => Err(Failure::Input("--threads must be positive".into())),
        None => dispatch(&cli),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Gate) => 2,
    }
}

fn dispatch(cli: &Cli) -> std::result::Result<(), Failure> {
    let config = match &cli.config {
        Some(p) => load_config(p)?,
        None => classical_comb(),
    };
    let ctx = Ctx { seed: cli.seed, config, output: cli.output.clone() };
    match &cli.command {
        Command::Simulate(args) => simulate(&ctx, args),
        Command::Exact { steps } => exact(&ctx, *steps),
        Command::Compare { steps, paths } => compare(&ctx, *steps, *paths as usize),
        Command::CoupleCheck { grid, paths } => couple_check(&ctx, grid, *paths as usize),
        Command::TailCheck { alphas, ns, cs, reps } => tail_check(&ctx, alphas, ns, cs, *reps as usize),
        Command::Scaling { grid, paths } => scaling(&ctx, grid, *paths as usize),
        Command::Limits { grid, paths, reference_size, sampler } => {
            limits(&ctx, grid, *paths as usize, *reference_size as usize, (*sampler).into())
        }
        Command::Lil { steps, path_index, ratio } => lil(&ctx, *steps, *path_index, *ratio),
        Command::LocaltimeCheck { grid, paths, kesten_steps, conservation_paths } => {
            localtime_check(&ctx, grid, *paths as usize, *kesten_steps, *conservation_paths)
        }
        Command::Invariance { config_a, config_b, steps, paths } => {
            let a = load_config(config_a)?;
            let b = load_config(config_b)?;
            invariance(&ctx, &a, &b, *steps, *paths as usize)
        }
    }
}

fn simulate(ctx: &Ctx, args: &SimulateArgs) -> std::result::Result<(), Failure> {
    let mode = match (&args.checkpoints, args.record) {
        (Some(c), _) => RecordMode::Checkpoints(c.clone()),
        (None, RecordArg::Full) => RecordMode::Full,
        (None, RecordArg::Endpoint) => RecordMode::Endpoint,
    };
    let sampler: Sampler = args.sampler.into();
    let run_one = |i: u64| {
        let seed = SeedSpec::path(ctx.seed, i);
        match sampler {
            Sampler::Direct => simulate_direct(&ctx.config, args.steps, seed, mode.clone()),
            Sampler::Coupled => simulate_coupled(&ctx.config, args.steps, seed, mode.clone()).0,
        }
    };
    use rayon::prelude::*;
    let trajectories: Vec<_> = (0..args.paths).into_par_iter().map(run_one).collect();
    let mut out = String::new();
    if mode == RecordMode::Endpoint {
        out.push_str("path_index,x,y\n");
        for (i, t) in trajectories.iter().enumerate() {
            let e = t.last();
            out.push_str(&format!("{i},{},{}\n", e.x, e.y));
        }
    } else {
        out.push_str("path_index,step,x,y\n");
        for (i, t) in trajectories.iter().enumerate() {
            for (s, p) in &t.positions {
                out.push_str(&format!("{i},{s},{},{}\n", p.x, p.y));
            }
        }
    }
    ctx.emit(&out)
}

fn exact(ctx: &Ctx, steps: u64) -> std::result::Result<(), Failure> {
    let table = exact_distribution(&ctx.config, steps)?;
    let mut out = String::from("x,y,probability\n");
    for (p, v) in &table.entries {
        out.push_str(&format!("{},{},{}\n", p.x, p.y, fmt17(*v)));
    }
    ctx.emit(&out)
}

/// Chi-square of both samplers at `steps`; shared with the acceptance suite.
pub fn compare_report<P: crate::Probability + Sync>(
    config: &KCombConfig<P>,
    steps: u64,
    paths: usize,
    seed: u64,
) -> Result<(f64, f64, usize, f64)> {
    let exact = exact_distribution(config, steps)?.to_f64();
    let direct = endpoint_ensemble(config, steps, paths, seed, Sampler::Direct);
    let coupled = endpoint_ensemble(config, steps, paths, seed, Sampler::Coupled);
    let cd = chi_square_endpoint(&EndpointCounts::from_positions(steps, &direct), &exact)?;
    let cc = chi_square_endpoint(&EndpointCounts::from_positions(steps, &coupled), &exact)?;
    let dof = cd.dof.max(cc.dof);
    Ok((cd.statistic, cc.statistic, dof, chi_square_threshold(dof)))
}

fn compare(ctx: &Ctx, steps: u64, paths: usize) -> std::result::Result<(), Failure> {
    if paths == 0 {
        return Err(Failure::Input("--paths must be positive".into()));
    }
    let (chi2_direct, chi2_coupled, dof, threshold) = compare_report(&ctx.config, steps, paths, ctx.seed)?;
    let pass = chi2_direct < threshold && chi2_coupled < threshold;
    let results = json!({
        "chi2_direct": chi2_direct,
        "chi2_coupled": chi2_coupled,
        "dof": dof,
        "threshold": threshold,
        "steps": steps,
        "paths": paths,
    });
    let target = json!({"statement": "direct and coupled samplers share the exact law", "quantile": 0.999});
    ctx.emit_json("compare", target, results, Some(pass))
}

pub const COUPLING_SLOPE_BAND: (f64, f64) = (0.15, 0.35);

fn couple_check(ctx: &Ctx, grid: &[u64], paths: usize) -> std::result::Result<(), Failure> {
    let g = coupling_error_growth(&ctx.config, grid, paths, ctx.seed)?;
    let slope = g.max_error_fit.slope;
    let pass = slope >= COUPLING_SLOPE_BAND.0 && slope <= COUPLING_SLOPE_BAND.1;
    let points: Vec<Value> = g
        .points
        .iter()
        .map(|p| {
            json!({
                "n": p.n,
                "mean_max_error": p.mean_max_error,
                "mean_occupation_error": p.mean_occupation_error,
                "mean_vertical_deficit": p.mean_vertical_deficit,
            })
        })
        .collect();
    let results = json!({
        "grid": grid,
        "paths_per_n": paths,
        "points": points,
        "max_error_slope": slope,
        "max_error_slope_stderr": g.max_error_fit.slope_stderr,
        "occupation_error_slope": g.occupation_error_fit.slope,
        "vertical_deficit_slope": g.vertical_deficit_fit.slope,
        "band": [COUPLING_SLOPE_BAND.0, COUPLING_SLOPE_BAND.1],
    });
    let target = json!({"max_error_exponent": 0.25, "occupation_error_exponent_max": 0.35, "vertical_deficit_exponent_max": 0.6});
    ctx.emit_json("couple-check", target, results, Some(pass))
}

fn tail_check(ctx: &Ctx, alphas: &[f64], ns: &[u64], cs: &[f64], reps: usize) -> std::result::Result<(), Failure> {
    let reports = default_grid_check(alphas, ns, cs, reps, ctx.seed)?;
    let pass = reports.iter().all(|r| r.dominated(3.0));
    let cells: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "alpha": r.alpha,
                "n": r.n,
                "lambda": r.lambda_grid,
                "bound": r.bound_values,
                "out_of_range": r.out_of_range,
                "empirical": r.empirical_tails,
                "std_error": r.std_errors,
                "dominated": r.dominated(3.0),
            })
        })
        .collect();
    let results = json!({"reps": reps, "cells": cells, "sigmas": 3.0});
    let defaults = json!({"alphas": DEFAULT_ALPHAS, "ns": DEFAULT_NS, "cs": DEFAULT_CS});
    let target = json!({"bound": "2 exp(-lambda^2 alpha^2 / (4 (1 - alpha) n))", "default_grid": defaults});
    ctx.emit_json("tail-check", target, results, Some(pass))
}

pub const VERTICAL_SLOPE: (f64, f64) = (0.5, 0.02);
pub const HORIZONTAL_SLOPE: (f64, f64) = (0.25, 0.03);

fn scaling(ctx: &Ctx, grid: &[u64], paths: usize) -> std::result::Result<(), Failure> {
    let [x, y] = scaling_exponents(&ctx.config, grid, paths, ctx.seed)?;
    let pass = (y.fit.slope - VERTICAL_SLOPE.0).abs() <= VERTICAL_SLOPE.1
        && (x.fit.slope - HORIZONTAL_SLOPE.0).abs() <= HORIZONTAL_SLOPE.1;
    let results = json!({
        "grid": grid,
        "paths": paths,
        "mean_abs_x": x.mean_abs,
        "mean_abs_y": y.mean_abs,
        "slope_x": x.fit.slope,
        "slope_x_stderr": x.fit.slope_stderr,
        "slope_y": y.fit.slope,
        "slope_y_stderr": y.fit.slope_stderr,
    });
    let target = json!({
        "slope_x": HORIZONTAL_SLOPE.0, "tolerance_x": HORIZONTAL_SLOPE.1,
        "slope_y": VERTICAL_SLOPE.0, "tolerance_y": VERTICAL_SLOPE.1,
    });
    ctx.emit_json("scaling", target, results, Some(pass))
}

pub const KS_VERTICAL_MAX: f64 = 0.03;
pub const KS_HORIZONTAL_MAX: f64 = 0.05;

fn limits(ctx: &Ctx, grid: &[u64], paths: usize, reference_size: usize, sampler: Sampler) -> std::result::Result<(), Failure> {
    if paths == 0 || reference_size == 0 || grid.is_empty() {
        return Err(Failure::Input("grid, --paths and --reference-size must be non-empty".into()));
    }
    let points = limit_profile(&ctx.config, grid, paths, reference_size, ctx.seed, sampler)?;
    let last = points.last().expect("non-empty grid");
    let pass = last.ks_vertical <= KS_VERTICAL_MAX && last.ks_horizontal <= KS_HORIZONTAL_MAX;
    let rows: Vec<Value> = points
        .iter()
        .map(|p| {
            json!({
                "n": p.n,
                "ks_vertical": p.ks_vertical,
                "ks_horizontal": p.ks_horizontal,
                "var_scaled_x": p.summary.moments_x.variance,
                "var_scaled_y": p.summary.moments_y.variance,
                "abs_mean_scaled_x": p.summary.moments_x.abs_mean,
                "abs_mean_scaled_y": p.summary.moments_y.abs_mean,
            })
        })
        .collect();
    let results = json!({
        "grid": grid,
        "paths": paths,
        "reference_size": reference_size,
        "sampler": sampler.name(),
        "points": rows,
    });
    let target = json!({
        "ks_vertical_max": KS_VERTICAL_MAX,
        "ks_horizontal_max": KS_HORIZONTAL_MAX,
        "horizontal_limit": "sqrt(A_K |Z2|) Z1",
        "vertical_limit": "Z",
    });
    ctx.emit_json("limits", target, results, Some(pass))
}

fn lil(ctx: &Ctx, steps: u64, path_index: u64, ratio: f64) -> std::result::Result<(), Failure> {
    if !(ratio > 1.0) {
        return Err(Failure::Input("--ratio must exceed 1".into()));
    }
    let cps = lil_checkpoints(steps, ratio);
    let path = lil_path(&ctx.config, &cps, SeedSpec::path(ctx.seed, path_index));
    let series = lil_statistics(&path, a_k(&ctx.config));
    eprintln!(
        "reference: limsup x_stat = {:.6}, limsup y_stat = {Y_LIL_CONSTANT}, liminf chung_stat = {CHUNG_CONSTANT} (ungated)",
        x_lil_constant()
    );
    let mut out = String::from("N,y_stat,x_stat,chung_stat\n");
    for r in &series.rows {
        out.push_str(&format!("{},{},{},{}\n", r.n, fmt17(r.y_stat), fmt17(r.x_stat), fmt17(r.chung_stat)));
    }
    ctx.emit(&out)
}

pub const KESTEN_MAX: f64 = 2.0;
pub const UNIFORMITY_EXPONENT: f64 = 0.3;

fn localtime_check(
    ctx: &Ctx,
    grid: &[u64],
    paths: usize,
    kesten_steps: u64,
    conservation_paths: u64,
) -> std::result::Result<(), Failure> {
    use rayon::prelude::*;
    let conserved = (0..conservation_paths).into_par_iter().all(|i| {
        let t = simple_walk_tables(&[10_000], SeedSpec::path(ctx.seed, i));
        t[0].total() == 10_000
    });
    let kesten = kesten_sample(kesten_steps, paths, crate::rng::derive_master(ctx.seed, 3));
    let kesten_max = kesten.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let profile = uniformity_profile(grid, paths, UNIFORMITY_EXPONENT, ctx.seed);
    let decreasing = profile.windows(2).all(|w| w[1].median_normalized < w[0].median_normalized);
    let pass = conserved && kesten_max <= KESTEN_MAX && decreasing;
    let results = json!({
        "conservation_paths": conservation_paths,
        "conserved": conserved,
        "kesten_steps": kesten_steps,
        "kesten_max": kesten_max,
        "uniformity": profile.iter().map(|p| json!({"n": p.n, "median_normalized": p.median_normalized})).collect::<Vec<_>>(),
        "uniformity_decreasing": decreasing,
        "paths": paths,
    });
    let target = json!({
        "kesten_limsup": 1.0,
        "kesten_sanity_max": KESTEN_MAX,
        "uniformity_exponent": UNIFORMITY_EXPONENT,
    });
    ctx.emit_json("localtime-check", target, results, Some(pass))
}

fn invariance(ctx: &Ctx, a: &Config, b: &Config, steps: u64, paths: usize) -> std::result::Result<(), Failure> {
    let r = position_invariance_test(a, b, steps, paths, ctx.seed)?;
    let results = json!({
        "config_a": config_json(a),
        "config_b": config_json(b),
        "steps": steps,
        "paths": paths,
        "ks": r.ks,
        "critical": r.critical,
    });
    let target = json!({"statement": "scaled x-endpoint law depends on the lines only through A_K", "level": 0.01});
    ctx.emit_json("invariance", target, results, Some(r.pass))
}
