//! Exponential maximal inequality for centered geometric partial sums.
//!
//! For i.i.d. `G_i` with `P(G = k) = alpha (1 - alpha)^k` the bound reads
//!
//! ```text
//! P( max_{j <= n} |sum_{i <= j} (G_i - (1-alpha)/alpha)| > lambda )
//!     <= 2 exp( -lambda^2 alpha^2 / (4 (1 - alpha) n) )
//! ```
//!
//! for `n` large and `0 < lambda < a n` with an unspecified `a > 0`. The
//! range is made explicit here as `lambda <= cap * n`, default cap
//! `0.1 (1 - alpha) / alpha`, which keeps the exponential tilt
//! `lambda alpha^2 / (2 n (1 - alpha))` at or below `0.05`. Values outside
//! the range are still computed, only flagged.

use num_traits::Float;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::{tag, SeedSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundValue<F> {
    pub value: F,
    /// `lambda` exceeded `cap * n`.
    pub out_of_range: bool,
}

pub fn default_cap<F: Float>(alpha: F) -> F {
    F::from(0.1).unwrap() * (F::one() - alpha) / alpha
}

/// `2 exp(-lambda^2 alpha^2 / (4 (1 - alpha) n))`; `cap` defaults to
/// [`default_cap`].
pub fn lemma21_bound<F: Float>(alpha: F, n: u64, lambda: F, cap: Option<F>) -> Result<BoundValue<F>> {
    if !(alpha > F::zero() && alpha < F::one()) {
        return Err(Error::InvalidProbability { value: alpha.to_f64().unwrap_or(f64::NAN), range: "(0, 1)" });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !(lambda > F::zero()) {
        return Err(Error::InvalidArgument("lambda must be positive".into()));
    }
    let nf = F::from(n).unwrap();
    let two = F::one() + F::one();
    let four = two + two;
    let value = two * (-(lambda * lambda * alpha * alpha) / (four * (F::one() - alpha) * nf)).exp();
    let cap = cap.unwrap_or_else(|| default_cap(alpha));
    Ok(BoundValue { value, out_of_range: lambda > cap * nf })
}

/// `max_{j <= n} |sum_{i <= j} (G_i - (1-alpha)/alpha)|` for one
/// replication, drawn from the `TAIL` stream of `seed`.
pub fn max_centered_deviation(alpha: f64, n: u64, seed: SeedSpec) -> f64 {
    let mut s = seed.stream(tag::TAIL);
    let ln_q = (-alpha).ln_1p();
    let mean = (1.0 - alpha) / alpha;
    let mut sum: i64 = 0;
    let mut best: f64 = 0.0;
    for j in 1..=n {
        sum += (s.uniform_open0().ln() / ln_q).floor() as i64;
        let dev = (sum as f64 - mean * j as f64).abs();
        if dev > best {
            best = dev;
        }
    }
    best
}

/// Centered sum at `j = n` for one replication (same draws as
/// [`max_centered_deviation`]).
pub fn centered_endpoint(alpha: f64, n: u64, seed: SeedSpec) -> f64 {
    let mut s = seed.stream(tag::TAIL);
    let ln_q = (-alpha).ln_1p();
    let sum: i64 = (0..n).map(|_| (s.uniform_open0().ln() / ln_q).floor() as i64).sum();
    sum as f64 - n as f64 * (1.0 - alpha) / alpha
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidProbability { value: alpha, range: "(0, 1)" })
    }
}

/// Maximal deviations of `reps` replications; replication `r` uses
/// `SeedSpec::path(master_seed, r)`.
pub fn deviation_sample(alpha: f64, n: u64, reps: usize, master_seed: u64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    if reps == 0 {
        return Err(Error::InvalidArgument("reps must be positive".into()));
    }
    Ok((0..reps as u64)
        .into_par_iter()
        .map(|r| max_centered_deviation(alpha, n, SeedSpec::path(master_seed, r)))
        .collect())
}

/// Monte Carlo estimate of `P(max deviation > lambda)`. At least `10^3`
/// replications are recommended.
pub fn empirical_tail(alpha: f64, n: u64, lambda: f64, reps: usize, master_seed: u64) -> Result<f64> {
    Ok(empirical_tails(alpha, n, &[lambda], reps, master_seed)?[0])
}

/// [`empirical_tail`] for several thresholds from one set of replications.
pub fn empirical_tails(alpha: f64, n: u64, lambdas: &[f64], reps: usize, master_seed: u64) -> Result<Vec<f64>> {
    let devs = deviation_sample(alpha, n, reps, master_seed)?;
    Ok(lambdas
        .iter()
        .map(|&l| devs.iter().filter(|&&d| d > l).count() as f64 / reps as f64)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailCheckReport {
    pub alpha: f64,
    pub n: u64,
    pub reps: usize,
    pub lambda_grid: Vec<f64>,
    pub bound_values: Vec<f64>,
    pub out_of_range: Vec<bool>,
    pub empirical_tails: Vec<f64>,
    /// Binomial standard error of each tail estimate.
    pub std_errors: Vec<f64>,
}

impl TailCheckReport {
    /// Domination `empirical <= bound + sigmas * stderr` at every grid point.
    pub fn dominated(&self, sigmas: f64) -> bool {
        self.violations(sigmas).is_empty()
    }

    pub fn violations(&self, sigmas: f64) -> Vec<usize> {
        (0..self.lambda_grid.len())
            .filter(|&i| self.empirical_tails[i] > self.bound_values[i] + sigmas * self.std_errors[i])
            .collect()
    }
}

/// `lambda = c sqrt((1 - alpha) n) / alpha`, i.e. `c` standard deviations
/// of the centered sum at `j = n`.
pub fn lambda_for(alpha: f64, n: u64, c: f64) -> f64 {
    c * ((1.0 - alpha) * n as f64).sqrt() / alpha
}

pub fn tail_check(alpha: f64, n: u64, cs: &[f64], reps: usize, master_seed: u64) -> Result<TailCheckReport> {
    let lambda_grid: Vec<f64> = cs.iter().map(|&c| lambda_for(alpha, n, c)).collect();
    let bounds = lambda_grid
        .iter()
        .map(|&l| lemma21_bound(alpha, n, l, None))
        .collect::<Result<Vec<_>>>()?;
    let empirical_tails = empirical_tails(alpha, n, &lambda_grid, reps, master_seed)?;
    let std_errors = empirical_tails.iter().map(|p| (p * (1.0 - p) / reps as f64).sqrt()).collect();
    Ok(TailCheckReport {
        alpha,
        n,
        reps,
        bound_values: bounds.iter().map(|b| b.value).collect(),
        out_of_range: bounds.iter().map(|b| b.out_of_range).collect(),
        lambda_grid,
        empirical_tails,
        std_errors,
    })
}

pub const DEFAULT_ALPHAS: [f64; 3] = [0.2, 0.5, 0.8];
pub const DEFAULT_NS: [u64; 3] = [1_000, 10_000, 100_000];
pub const DEFAULT_CS: [f64; 4] = [1.0, 2.0, 3.0, 4.0];

/// The full default grid. Each `(alpha, n)` cell gets its own derived
/// master seed.
pub fn default_grid_check(
    alphas: &[f64],
    ns: &[u64],
    cs: &[f64],
    reps: usize,
    master_seed: u64,
) -> Result<Vec<TailCheckReport>> {
    let mut out = Vec::new();
    for (ai, &alpha) in alphas.iter().enumerate() {
        for (ni, &n) in ns.iter().enumerate() {
            let cell = crate::rng::derive_master(master_seed, (ai * 1000 + ni) as u64);
            out.push(tail_check(alpha, n, cs, reps, cell)?);
        }
    }
    Ok(out)
}
