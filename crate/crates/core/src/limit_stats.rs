//! Statistical checks of the limit behaviour of the K-comb walk.
//!
//! The scaled coordinates `C1(N) / N^{1/4}` and `C2(N) / N^{1/2}` are
//! compared with their limits `W1(A_K eta2(0,1))` and `W2(1)`. The first
//! limit is sampled as `sqrt(A_K |Z2|) Z1` for independent standard normals:
//! conditionally on `W2`, `W1(A_K eta2(0,1))` is centered normal with
//! variance `A_K eta2(0,1)`, and `eta2(0,1)` has the law of `|Z2|` (Lévy).
//! Only the two marginals are tested.

use std::collections::BTreeMap;

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::coupling::{a_k, coupled_endpoint, CoupledWalk};
use crate::error::{Error, Result};
use crate::lattice::{simulate_direct, DistributionTable, KCombConfig, Position, RecordMode};
use crate::rng::{derive_master, tag, SeedSpec};
use crate::scalar::Probability;
use crate::stats::{
    check_grid, chi_square_quantile, ks_critical_two_sample, ks_two_sample, log_log_fit, moments,
    quantile_sorted, LinearFit, Moments,
};

/// `2^{5/4} / 3^{3/4}`, the limsup of `C1(N) / (sqrt(A_K) N^{1/4} (log log N)^{3/4})`.
pub fn x_lil_constant() -> f64 {
    2f64.powf(1.25) / 3f64.powf(0.75)
}

/// Limsup of `C2(N) / sqrt(2 N log log N)`.
pub const Y_LIL_CONSTANT: f64 = 1.0;
/// Liminf of `sqrt(8 log log N / (pi^2 N)) max_{k <= N} |C2(k)|`.
pub const CHUNG_CONSTANT: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampler {
    Direct,
    Coupled,
}

impl Sampler {
    pub fn name(&self) -> &'static str {
        match self {
            Sampler::Direct => "direct",
            Sampler::Coupled => "coupled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    X,
    Y,
}

/// Endpoints of `paths` independent walks, in path order. Path `i` uses
/// `SeedSpec::path(master_seed, i)`.
pub fn endpoint_ensemble<P: Probability + Sync>(
    config: &KCombConfig<P>,
    n_steps: u64,
    paths: usize,
    master_seed: u64,
    sampler: Sampler,
) -> Vec<Position> {
    (0..paths as u64)
        .into_par_iter()
        .map(|i| {
            let seed = SeedSpec::path(master_seed, i);
            match sampler {
                Sampler::Direct => simulate_direct(config, n_steps, seed, RecordMode::Endpoint).last(),
                Sampler::Coupled => coupled_endpoint(config, n_steps, seed),
            }
        })
        .collect()
}

/// Endpoint positions at several step counts. For the coupled sampler the
/// grid points are prefixes of one path; the direct sampler reruns.
pub fn endpoint_ensembles<P: Probability + Sync>(
    config: &KCombConfig<P>,
    n_grid: &[u64],
    paths: usize,
    master_seed: u64,
    sampler: Sampler,
) -> Vec<Vec<Position>> {
    match sampler {
        Sampler::Direct => n_grid
            .iter()
            .map(|&n| endpoint_ensemble(config, n, paths, master_seed, sampler))
            .collect(),
        Sampler::Coupled => {
            let per_path: Vec<Vec<Position>> = (0..paths as u64)
                .into_par_iter()
                .map(|i| {
                    let mut walk = CoupledWalk::new(config, SeedSpec::path(master_seed, i));
                    n_grid
                        .iter()
                        .map(|&n| {
                            walk.run_until(n);
                            walk.position()
                        })
                        .collect()
                })
                .collect();
            (0..n_grid.len())
                .map(|g| per_path.iter().map(|p| p[g]).collect())
                .collect()
        }
    }
}

/// Empirical endpoint counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointCounts {
    pub n_steps: u64,
    pub counts: BTreeMap<Position, u64>,
}

impl EndpointCounts {
    pub fn from_positions(n_steps: u64, positions: &[Position]) -> Self {
        let mut counts = BTreeMap::new();
        for p in positions {
            *counts.entry(*p).or_insert(0) += 1;
        }
        Self { n_steps, counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    /// Number of merged bins.
    pub bins: usize,
}

/// Pearson statistic after merging cells so every bin expects at least 5
/// observations. Cells are merged in order of increasing expected count
/// (ties by position); a remainder below 5 joins the last bin formed.
/// Observations outside the exact support make the statistic infinite.
pub fn chi_square_endpoint(empirical: &EndpointCounts, exact: &DistributionTable<f64>) -> Result<ChiSquare> {
    if empirical.n_steps != exact.n_steps {
        return Err(Error::ShapeMismatch(format!(
            "empirical counts for N={} vs exact table for N={}",
            empirical.n_steps, exact.n_steps
        )));
    }
    let total = empirical.total();
    if total == 0 {
        return Err(Error::ShapeMismatch("empirical counts are empty".into()));
    }
    if empirical.counts.keys().any(|p| exact.prob(*p) <= 0.0) {
        return Ok(ChiSquare { statistic: f64::INFINITY, dof: 0, bins: 0 });
    }
    let m = total as f64;
    let mut cells: Vec<(f64, u64, Position)> = exact
        .entries
        .iter()
        .map(|(pos, &p)| (p * m, empirical.counts.get(pos).copied().unwrap_or(0), *pos))
        .collect();
    cells.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));

    let mut bins: Vec<(f64, u64)> = Vec::new();
    let (mut e, mut o) = (0.0, 0u64);
    for (exp, obs, _) in cells {
        e += exp;
        o += obs;
        if e >= 5.0 {
            bins.push((e, o));
            e = 0.0;
            o = 0;
        }
    }
    if e > 0.0 || o > 0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += e;
                last.1 += o;
            }
            None => bins.push((e, o)),
        }
    }
    let statistic = bins.iter().map(|&(e, o)| (o as f64 - e).powi(2) / e).sum();
    Ok(ChiSquare { statistic, dof: bins.len().saturating_sub(1), bins: bins.len() })
}

/// Upper 0.999 quantile used as the acceptance threshold.
pub fn chi_square_threshold(dof: usize) -> f64 {
    chi_square_quantile(dof, 0.999)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSummary {
    pub n_steps: u64,
    pub n_paths: usize,
    pub endpoints: Vec<Position>,
    /// `x / N^{1/4}`.
    pub scaled_x: Vec<f64>,
    /// `y / N^{1/2}`.
    pub scaled_y: Vec<f64>,
    pub moments_x: Moments,
    pub moments_y: Moments,
    pub quantile_levels: Vec<f64>,
    pub quantiles_x: Vec<f64>,
    pub quantiles_y: Vec<f64>,
}

pub const SUMMARY_QUANTILES: [f64; 7] = [0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99];

impl EnsembleSummary {
    pub fn new(n_steps: u64, endpoints: Vec<Position>) -> Self {
        let n = n_steps.max(1) as f64;
        let (sx, sy) = (n.powf(0.25), n.sqrt());
        let scaled_x: Vec<f64> = endpoints.iter().map(|p| p.x as f64 / sx).collect();
        let scaled_y: Vec<f64> = endpoints.iter().map(|p| p.y as f64 / sy).collect();
        let sorted = |v: &[f64]| {
            let mut s = v.to_vec();
            s.sort_unstable_by(f64::total_cmp);
            s
        };
        let (ox, oy) = (sorted(&scaled_x), sorted(&scaled_y));
        Self {
            n_steps,
            n_paths: endpoints.len(),
            moments_x: moments(&scaled_x),
            moments_y: moments(&scaled_y),
            quantile_levels: SUMMARY_QUANTILES.to_vec(),
            quantiles_x: SUMMARY_QUANTILES.iter().map(|&q| quantile_sorted(&ox, q)).collect(),
            quantiles_y: SUMMARY_QUANTILES.iter().map(|&q| quantile_sorted(&oy, q)).collect(),
            endpoints,
            scaled_x,
            scaled_y,
        }
    }
}

/// Samplers for the limits of the two scaled coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitOracle {
    pub a_k: f64,
}

impl LimitOracle {
    pub fn new(a_k: f64) -> Result<Self> {
        if !(a_k > 0.0 && a_k.is_finite()) {
            return Err(Error::InvalidScale(a_k));
        }
        Ok(Self { a_k })
    }

    pub fn for_config<P: Probability>(config: &KCombConfig<P>) -> Result<Self> {
        Self::new(a_k(config).to_f64_lossy())
    }

    pub fn sample_c1(&self, count: usize, seed: SeedSpec) -> Vec<f64> {
        let mut s = seed.stream(tag::ORACLE);
        let rng = s.rng_mut();
        (0..count)
            .map(|_| {
                let z1: f64 = StandardNormal.sample(rng);
                let z2: f64 = StandardNormal.sample(rng);
                (self.a_k * z2.abs()).sqrt() * z1
            })
            .collect()
    }

    pub fn sample_c2(&self, count: usize, seed: SeedSpec) -> Vec<f64> {
        standard_normal_sample(count, seed)
    }
}

/// `count` draws of `sqrt(a_k |Z2|) Z1`.
pub fn sample_limit_c1(a_k: f64, count: usize, seed: SeedSpec) -> Result<Vec<f64>> {
    Ok(LimitOracle::new(a_k)?.sample_c1(count, seed))
}

pub fn standard_normal_sample(count: usize, seed: SeedSpec) -> Vec<f64> {
    let mut s = seed.stream(tag::REFERENCE);
    let rng = s.rng_mut();
    (0..count).map(|_| StandardNormal.sample(rng)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitPoint {
    pub n: u64,
    /// KS distance of `C2(N)/sqrt(N)` to a standard normal sample.
    pub ks_vertical: f64,
    /// KS distance of `C1(N)/N^{1/4}` to the `sqrt(A_K|Z2|) Z1` sample.
    pub ks_horizontal: f64,
    pub summary: EnsembleSummary,
}

/// KS distances of both scaled coordinates to their limits along `n_grid`.
/// The reference samples (size `reference_size`) are drawn once and shared
/// across the grid.
pub fn limit_profile<P: Probability + Sync>(
    config: &KCombConfig<P>,
    n_grid: &[u64],
    paths: usize,
    reference_size: usize,
    master_seed: u64,
    sampler: Sampler,
) -> Result<Vec<LimitPoint>> {
    let oracle = LimitOracle::for_config(config)?;
    let ref_seed = SeedSpec::new(derive_master(master_seed, 1), 0);
    let ref_c1 = oracle.sample_c1(reference_size, ref_seed);
    let ref_c2 = oracle.sample_c2(reference_size, ref_seed);
    let ensembles = endpoint_ensembles(config, n_grid, paths, master_seed, sampler);
    Ok(n_grid
        .iter()
        .zip(ensembles)
        .map(|(&n, endpoints)| {
            let summary = EnsembleSummary::new(n, endpoints);
            LimitPoint {
                n,
                ks_vertical: ks_two_sample(&summary.scaled_y, &ref_c2),
                ks_horizontal: ks_two_sample(&summary.scaled_x, &ref_c1),
                summary,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub n_grid: Vec<u64>,
    /// Mean of `|coordinate(N)|` at each grid point.
    pub mean_abs: Vec<f64>,
    pub fit: LinearFit,
}

fn scaling_fit(n_grid: &[u64], ensembles: &[Vec<Position>], coordinate: Coordinate) -> Result<ScalingFit> {
    let mean_abs: Vec<f64> = ensembles
        .iter()
        .map(|e| {
            let s: f64 = e
                .iter()
                .map(|p| match coordinate {
                    Coordinate::X => p.x.unsigned_abs() as f64,
                    Coordinate::Y => p.y.unsigned_abs() as f64,
                })
                .sum();
            s / e.len() as f64
        })
        .collect();
    let ns: Vec<f64> = n_grid.iter().map(|&n| n as f64).collect();
    Ok(ScalingFit { n_grid: n_grid.to_vec(), fit: log_log_fit(&ns, &mean_abs)?, mean_abs })
}

/// Least-squares slope of `log E|coordinate(N)|` against `log N`. The grid
/// needs at least 4 points spanning 3 decades.
pub fn scaling_exponent<P: Probability + Sync>(
    config: &KCombConfig<P>,
    n_grid: &[u64],
    paths: usize,
    coordinate: Coordinate,
    master_seed: u64,
) -> Result<ScalingFit> {
    let [x, y] = scaling_exponents(config, n_grid, paths, master_seed)?;
    Ok(match coordinate {
        Coordinate::X => x,
        Coordinate::Y => y,
    })
}

/// Both coordinates' scaling fits from one coupled ensemble, `[x, y]`.
pub fn scaling_exponents<P: Probability + Sync>(
    config: &KCombConfig<P>,
    n_grid: &[u64],
    paths: usize,
    master_seed: u64,
) -> Result<[ScalingFit; 2]> {
    check_grid(n_grid, 4, 3.0)?;
    if paths == 0 {
        return Err(Error::InvalidArgument("paths must be positive".into()));
    }
    let ensembles = endpoint_ensembles(config, n_grid, paths, master_seed, Sampler::Coupled);
    Ok([
        scaling_fit(n_grid, &ensembles, Coordinate::X)?,
        scaling_fit(n_grid, &ensembles, Coordinate::Y)?,
    ])
}

/// Position and running height maximum at a checkpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LilCheckpoint {
    pub n: u64,
    pub position: Position,
    /// `max_{k <= n} |C2(k)|`.
    pub max_abs_y: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LilRow {
    pub n: u64,
    pub y_stat: f64,
    pub x_stat: f64,
    pub chung_stat: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LilSeries {
    pub rows: Vec<LilRow>,
    /// Checkpoints below 16, where `log log N` is too small to normalize by.
    pub skipped: Vec<u64>,
}

pub const LIL_MIN_N: u64 = 16;
pub const LIL_RATIO: f64 = 1.5;

/// Distinct values `floor(ratio^k) <= n_max`, at least [`LIL_MIN_N`].
pub fn lil_checkpoints(n_max: u64, ratio: f64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    let mut v = 1.0f64;
    while v.floor() as u64 <= n_max {
        let n = v.floor() as u64;
        if n >= LIL_MIN_N && out.last() != Some(&n) {
            out.push(n);
        }
        v *= ratio;
    }
    out
}

/// Normalized LIL and Chung statistics at each checkpoint.
pub fn lil_statistics(checkpoints: &[LilCheckpoint], a_k: f64) -> LilSeries {
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for cp in checkpoints {
        if cp.n < LIL_MIN_N {
            skipped.push(cp.n);
            continue;
        }
        let n = cp.n as f64;
        let ll = n.ln().ln();
        rows.push(LilRow {
            n: cp.n,
            y_stat: cp.position.y as f64 / (2.0 * n * ll).sqrt(),
            x_stat: cp.position.x as f64 / (a_k.sqrt() * n.powf(0.25) * ll.powf(0.75)),
            chung_stat: (8.0 * ll / (std::f64::consts::PI.powi(2) * n)).sqrt() * cp.max_abs_y as f64,
        });
    }
    LilSeries { rows, skipped }
}

/// Coupled path sampled at `checkpoints` with exact running maxima.
pub fn lil_path<P: Probability>(config: &KCombConfig<P>, checkpoints: &[u64], seed: SeedSpec) -> Vec<LilCheckpoint> {
    let mut walk = CoupledWalk::new(config, seed).with_max_tracking();
    checkpoints
        .iter()
        .map(|&n| {
            walk.run_until(n);
            LilCheckpoint { n, position: walk.position(), max_abs_y: walk.max_abs_y() }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub ks: f64,
    pub critical: f64,
    pub pass: bool,
}

fn sorted_alphas<P: Probability>(c: &KCombConfig<P>) -> Vec<f64> {
    let mut a: Vec<f64> = c.alphas().iter().map(|a| a.to_f64_lossy()).collect();
    a.sort_unstable_by(f64::total_cmp);
    a
}

/// Two-sample KS test on `x / N^{1/4}` between two configurations with the
/// same multiset of `alpha_j` at different levels. The second ensemble uses
/// a master seed derived from the first, so the samples are independent.
/// Acceptance is at the 0.99 two-sample critical value.
pub fn position_invariance_test<P: Probability + Sync>(
    config_a: &KCombConfig<P>,
    config_b: &KCombConfig<P>,
    n_steps: u64,
    paths: usize,
    master_seed: u64,
) -> Result<InvarianceReport> {
    if sorted_alphas(config_a) != sorted_alphas(config_b) {
        return Err(Error::NotComparable("alpha multisets differ".into()));
    }
    if paths == 0 {
        return Err(Error::InvalidArgument("paths must be positive".into()));
    }
    let scale = (n_steps.max(1) as f64).powf(0.25);
    let xs = |c: &KCombConfig<P>, seed| -> Vec<f64> {
        endpoint_ensemble(c, n_steps, paths, seed, Sampler::Coupled)
            .iter()
            .map(|p| p.x as f64 / scale)
            .collect()
    };
    let a = xs(config_a, master_seed);
    let b = xs(config_b, derive_master(master_seed, 2));
    let ks = ks_two_sample(&a, &b);
    let critical = ks_critical_two_sample(paths, paths, 0.01);
    Ok(InvarianceReport { ks, critical, pass: ks <= critical })
}
