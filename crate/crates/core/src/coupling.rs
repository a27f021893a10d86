//! The two-walk construction of the K-comb walk.
//!
//! Vertical steps come from a simple symmetric walk `S2`, horizontal steps
//! from an independent walk `S1`. Each arrival of `S2` at a line `m_j`
//! (and the start, if `0` is a line) triggers a run of `G` horizontal
//! steps, where `G` is the next unused variate of an i.i.d. geometric
//! sequence with parameter `alpha_j` belonging to that line. The resulting
//! position process has the same law as the direct chain.
//!
//! Bookkeeping follows the step counts `H_i` (horizontal) and `V_i`
//! (vertical), the local times `xi2(m_j, V_i)` of `S2` at the lines
//! (time 0 excluded), the expected occupation
//! `D2(V_i) = sum_j xi2(m_j, V_i) (1 - alpha_j) / alpha_j` and the running
//! coupling error `max_{l <= i} |H_l - D2(V_l)|`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{KCombConfig, Position, RecordMode, Trajectory};
use crate::rng::{tag, BitWalk, SeedSpec, Stream};
use crate::scalar::Probability;
use crate::stats::{check_grid, log_log_fit, LinearFit};

/// Inversion sampler for `P(k) = alpha (1 - alpha)^k`, `k >= 0`:
/// `k = floor(ln u / ln(1 - alpha))` for `u` in `(0, 1]`.
pub fn sample_geometric(alpha: f64, u: f64) -> Result<u64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidProbability { value: alpha, range: "(0, 1)" });
    }
    Ok(geometric_from_log(u, (-alpha).ln_1p()))
}

#[inline]
fn geometric_from_log(u: f64, ln_q: f64) -> u64 {
    debug_assert!(u > 0.0 && u <= 1.0);
    // `as` saturates for astronomically small alpha.
    (u.ln() / ln_q).floor() as u64
}

/// Aggregate line weight `A_K = sum_j (1 - alpha_j) / alpha_j`.
pub fn a_k<P: Probability>(config: &KCombConfig<P>) -> P {
    config
        .alphas()
        .into_iter()
        .map(|a| (P::one() - a.clone()) / a)
        .fold(P::zero(), |acc, w| acc + w)
}

/// `D2 = sum_j counts[j] (1 - alpha_j) / alpha_j`, with `counts` in the
/// config's level order.
pub fn d2_expected_occupation<P: Probability>(counts: &[u64], config: &KCombConfig<P>) -> Result<P> {
    if counts.len() != config.k() {
        return Err(Error::ShapeMismatch(format!(
            "{} level counts for a config with K={}",
            counts.len(),
            config.k()
        )));
    }
    let mut total = P::zero();
    for (c, a) in counts.iter().zip(config.alphas()) {
        let c = P::from_u64(*c).ok_or_else(|| Error::InvalidArgument("count not representable".into()))?;
        total = total + c * ((P::one() - a.clone()) / a);
    }
    Ok(total)
}

/// One geometric variate drawn for a line visit, and how many of its
/// horizontal steps were actually taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeomRun {
    pub value: u64,
    pub taken: u64,
}

impl GeomRun {
    pub fn truncated(&self) -> bool {
        self.taken < self.value
    }
}

/// Accounting of a coupled path after `n_steps` steps.
///
/// The `*_series` vectors are indexed by step `i = 0..=n_steps` and are
/// only filled in [`RecordMode::Full`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledDecomposition {
    pub n_steps: u64,
    pub h: u64,
    pub v: u64,
    /// `xi2(m_j, V_N)` in the config's level order.
    pub xi2_per_level: Vec<u64>,
    /// `xi2(0, V_N)`, tracked whether or not `0` is a line.
    pub xi2_zero: u64,
    pub d2: f64,
    /// `max_{1 <= i <= N} |H_i - D2(V_i)|` (0 for `N = 0`).
    pub max_error: f64,
    /// Geometric variates per level, in consumption order. Only the very
    /// last run of the path can be truncated.
    pub geom_ledger: Vec<Vec<GeomRun>>,
    pub h_series: Vec<u64>,
    pub v_series: Vec<u64>,
    pub d2_series: Vec<f64>,
    pub error_series: Vec<f64>,
}

impl CoupledDecomposition {
    /// `H_N^+`: horizontal steps counting the last run in full.
    pub fn h_plus(&self) -> u64 {
        self.geom_ledger.iter().flatten().map(|r| r.value).sum()
    }

    pub fn truncated_run(&self) -> Option<(usize, GeomRun)> {
        self.geom_ledger
            .iter()
            .enumerate()
            .find_map(|(j, runs)| runs.iter().find(|r| r.truncated()).map(|r| (j, *r)))
    }
}

/// Incremental state of the coupled construction.
///
/// Vertical moves away from every line (and from 0) are taken in bulk: a
/// stretch shorter than the distance to the nearest watched level cannot
/// visit one, so it is summed with a popcount instead of stepped.
pub struct CoupledWalk {
    levels: Vec<i64>,
    watched: Vec<i64>,
    weights: Vec<f64>,
    ln_q: Vec<f64>,
    s1: BitWalk,
    s2: BitWalk,
    geometric: Vec<Stream>,

    steps: u64,
    x: i64,
    y: i64,
    h: u64,
    v: u64,
    pending: u64,
    current_level: usize,
    need_draw: Option<usize>,
    xi2: Vec<u64>,
    xi2_zero: u64,
    d2: f64,
    max_error: f64,
    ledger: Vec<Vec<GeomRun>>,
    track_max: bool,
    max_abs_y: u64,
}

impl CoupledWalk {
    pub fn new<P: Probability>(config: &KCombConfig<P>, seed: SeedSpec) -> Self {
        let levels = config.levels();
        let alphas: Vec<f64> = config.alphas().iter().map(|a| a.to_f64_lossy()).collect();
        let mut watched = levels.clone();
        if let Err(i) = watched.binary_search(&0) {
            watched.insert(i, 0);
        }
        let k = levels.len();
        let need_draw = levels.binary_search(&0).ok();
        Self {
            weights: alphas.iter().map(|a| (1.0 - a) / a).collect(),
            ln_q: alphas.iter().map(|a| (-a).ln_1p()).collect(),
            s1: BitWalk::new(seed.stream(tag::HORIZONTAL)),
            s2: BitWalk::new(seed.stream(tag::VERTICAL)),
            geometric: (0..k as u64).map(|j| seed.stream(tag::GEOMETRIC_BASE + j)).collect(),
            levels,
            watched,
            steps: 0,
            x: 0,
            y: 0,
            h: 0,
            v: 0,
            pending: 0,
            current_level: 0,
            need_draw,
            xi2: vec![0; k],
            xi2_zero: 0,
            d2: 0.0,
            max_error: 0.0,
            ledger: vec![Vec::new(); k],
            track_max: false,
            max_abs_y: 0,
        }
    }

    /// Keep `max_{k <= N} |C2(k)|` exact, at the price of single-stepping
    /// whenever the walk is at its running maximum height.
    pub fn with_max_tracking(mut self) -> Self {
        self.track_max = true;
        self
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn position(&self) -> Position {
        Position::new(self.x, self.y)
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn d2(&self) -> f64 {
        self.d2
    }

    pub fn max_error(&self) -> f64 {
        self.max_error
    }

    pub fn xi2_zero(&self) -> u64 {
        self.xi2_zero
    }

    pub fn xi2_per_level(&self) -> &[u64] {
        &self.xi2
    }

    /// Only meaningful after [`CoupledWalk::with_max_tracking`].
    pub fn max_abs_y(&self) -> u64 {
        self.max_abs_y
    }

    fn distance_to_watched(&self, y: i64) -> u64 {
        let i = self.watched.partition_point(|&m| m < y);
        let above = self.watched.get(i).map(|&m| (m - y) as u64);
        let below = i.checked_sub(1).map(|i| (y - self.watched[i]) as u64);
        match (above, below) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => u64::MAX,
        }
    }

    #[inline]
    fn update_error(&mut self) {
        let e = (self.h as f64 - self.d2).abs();
        if e > self.max_error {
            self.max_error = e;
        }
    }

    /// Advances until exactly `target` steps have been taken. Targets below
    /// the current step count are a no-op.
    pub fn run_until(&mut self, target: u64) {
        while self.steps < target {
            let remaining = target - self.steps;
            if self.pending > 0 {
                let c = self.pending.min(remaining);
                self.x += self.s1.advance(c);
                self.h += c;
                self.steps += c;
                self.pending -= c;
                if let Some(run) = self.ledger[self.current_level].last_mut() {
                    run.taken += c;
                }
                self.update_error();
                continue;
            }
            if let Some(j) = self.need_draw.take() {
                let u = self.geometric[j].uniform_open0();
                let g = geometric_from_log(u, self.ln_q[j]);
                self.ledger[j].push(GeomRun { value: g, taken: 0 });
                self.pending = g;
                self.current_level = j;
                continue;
            }

            let d = self.distance_to_watched(self.y);
            let mut c = if d >= 2 { (d - 1).min(remaining) } else { 1 };
            if self.track_max {
                let slack = self.max_abs_y.saturating_sub(self.y.unsigned_abs());
                c = c.min(slack.max(1));
            }
            self.y += self.s2.advance(c);
            self.v += c;
            self.steps += c;
            if self.track_max {
                self.max_abs_y = self.max_abs_y.max(self.y.unsigned_abs());
            }
            if self.y == 0 {
                self.xi2_zero += 1;
            }
            if let Ok(j) = self.levels.binary_search(&self.y) {
                self.xi2[j] += 1;
                self.d2 += self.weights[j];
                self.need_draw = Some(j);
                self.update_error();
            }
        }
    }

    /// Snapshot of the accounting (series left empty).
    pub fn decomposition(&self) -> CoupledDecomposition {
        CoupledDecomposition {
            n_steps: self.steps,
            h: self.h,
            v: self.v,
            xi2_per_level: self.xi2.clone(),
            xi2_zero: self.xi2_zero,
            d2: self.d2,
            max_error: self.max_error,
            geom_ledger: self.ledger.clone(),
            h_series: Vec::new(),
            v_series: Vec::new(),
            d2_series: Vec::new(),
            error_series: Vec::new(),
        }
    }
}

/// Runs the coupled construction for `n_steps` steps.
pub fn simulate_coupled<P: Probability>(
    config: &KCombConfig<P>,
    n_steps: u64,
    seed: SeedSpec,
    record_mode: RecordMode,
) -> (Trajectory<P>, CoupledDecomposition) {
    let mut walk = CoupledWalk::new(config, seed);
    let record = record_mode.resolved_steps(n_steps);
    let full = record_mode == RecordMode::Full;
    let mut positions = Vec::with_capacity(record.len());
    let mut series = (Vec::new(), Vec::new(), Vec::new(), Vec::new());

    for &s in &record {
        walk.run_until(s);
        positions.push((s, walk.position()));
        if full {
            series.0.push(walk.h);
            series.1.push(walk.v);
            series.2.push(walk.d2);
            series.3.push(walk.max_error);
        }
    }
    walk.run_until(n_steps);

    let mut decomposition = walk.decomposition();
    decomposition.h_series = series.0;
    decomposition.v_series = series.1;
    decomposition.d2_series = series.2;
    decomposition.error_series = series.3;
    let trajectory = Trajectory { config: config.clone(), n_steps, seed, record_mode, positions };
    (trajectory, decomposition)
}

/// Endpoint of one coupled path, without trajectory bookkeeping.
pub fn coupled_endpoint<P: Probability>(config: &KCombConfig<P>, n_steps: u64, seed: SeedSpec) -> Position {
    let mut walk = CoupledWalk::new(config, seed);
    walk.run_until(n_steps);
    walk.position()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorGrowthPoint {
    pub n: u64,
    /// Mean over paths of `max_{i <= N} |H_i - D2(V_i)|`.
    pub mean_max_error: f64,
    /// Mean over paths of `|H_N - A_K xi2(0, V_N)|`.
    pub mean_occupation_error: f64,
    /// Mean over paths of `N - V_N`.
    pub mean_vertical_deficit: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorGrowth {
    pub points: Vec<ErrorGrowthPoint>,
    pub paths_per_n: usize,
    pub max_error_fit: LinearFit,
    pub occupation_error_fit: LinearFit,
    pub vertical_deficit_fit: LinearFit,
}

/// Growth of the coupling errors along `n_grid`.
///
/// Each path is simulated once up to the largest `N`; smaller grid points
/// are prefixes of the same paths. Path `i` uses `SeedSpec::path(master_seed, i)`.
pub fn coupling_error_growth<P: Probability + Sync>(
    config: &KCombConfig<P>,
    n_grid: &[u64],
    paths_per_n: usize,
    master_seed: u64,
) -> Result<ErrorGrowth> {
    check_grid(n_grid, 3, 2.0)?;
    if paths_per_n == 0 {
        return Err(Error::InvalidArgument("paths_per_n must be positive".into()));
    }
    let a = a_k(config).to_f64_lossy();
    let per_path: Vec<Vec<(f64, f64, f64)>> = (0..paths_per_n as u64)
        .into_par_iter()
        .map(|i| {
            let mut walk = CoupledWalk::new(config, SeedSpec::path(master_seed, i));
            n_grid
                .iter()
                .map(|&n| {
                    walk.run_until(n);
                    let occ = (walk.h as f64 - a * walk.xi2_zero as f64).abs();
                    (walk.max_error, occ, (n - walk.v) as f64)
                })
                .collect()
        })
        .collect();

    let m = paths_per_n as f64;
    let points: Vec<ErrorGrowthPoint> = n_grid
        .iter()
        .enumerate()
        .map(|(g, &n)| {
            let (mut e, mut o, mut d) = (0.0, 0.0, 0.0);
            for path in &per_path {
                e += path[g].0;
                o += path[g].1;
                d += path[g].2;
            }
            ErrorGrowthPoint {
                n,
                mean_max_error: e / m,
                mean_occupation_error: o / m,
                mean_vertical_deficit: d / m,
            }
        })
        .collect();

    let ns: Vec<f64> = points.iter().map(|p| p.n as f64).collect();
    let fit = |f: fn(&ErrorGrowthPoint) -> f64| {
        let ys: Vec<f64> = points.iter().map(f).collect();
        log_log_fit(&ns, &ys)
    };
    Ok(ErrorGrowth {
        max_error_fit: fit(|p| p.mean_max_error)?,
        occupation_error_fit: fit(|p| p.mean_occupation_error)?,
        vertical_deficit_fit: fit(|p| p.mean_vertical_deficit)?,
        points,
        paths_per_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate_config;
    use approx::assert_relative_eq;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn geometric_examples() {
        assert_eq!(sample_geometric(0.5, 0.6).unwrap(), 0);
        for a in [0.01, 0.2, 0.5, 0.9] {
            assert_eq!(sample_geometric(a, 0.999999).unwrap(), 0);
        }
        assert_eq!(sample_geometric(0.5, 0.5).unwrap(), 1);
        assert_eq!(sample_geometric(0.5, 0.3).unwrap(), 1);
        assert_eq!(sample_geometric(0.5, 0.2).unwrap(), 2);
        for bad in [0.0, 1.0, -0.3, 1.5, f64::NAN] {
            assert!(matches!(sample_geometric(bad, 0.5), Err(Error::InvalidProbability { .. })));
        }
    }

    #[test]
    fn geometric_mean_matches_closed_form() {
        let mut s = SeedSpec::new(2024, 0).stream(tag::ORACLE);
        let n = 1_000_000;
        let total: u64 = (0..n).map(|_| sample_geometric(0.5, s.uniform_open0()).unwrap()).sum();
        let mean = total as f64 / n as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn geometric_pmf_frequencies() {
        let alpha = 0.3;
        let mut s = SeedSpec::new(5, 0).stream(tag::ORACLE);
        let n = 200_000;
        let mut counts = [0u64; 6];
        for _ in 0..n {
            let k = sample_geometric(alpha, s.uniform_open0()).unwrap() as usize;
            if k < counts.len() {
                counts[k] += 1;
            }
        }
        for (k, &c) in counts.iter().enumerate() {
            let p = alpha * (1.0f64 - alpha).powi(k as i32);
            let sd = (p * (1.0 - p) / n as f64).sqrt();
            assert!((c as f64 / n as f64 - p).abs() < 5.0 * sd, "k={k}");
        }
    }

    #[test]
    fn a_k_examples() {
        let c = validate_config(&[(0, 0.25)]).unwrap();
        assert_eq!(a_k(&c), 1.0);
        let r = validate_config(&[(0, BigRational::new(BigInt::from(1), BigInt::from(4)))]).unwrap();
        assert_eq!(a_k(&r), BigRational::from_integer(BigInt::from(1)));
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let r = validate_config(&[(0, third)]).unwrap();
        assert_eq!(a_k(&r), BigRational::new(BigInt::from(1), BigInt::from(2)));
        let c1 = validate_config(&[(-1, 0.1), (4, 0.3)]).unwrap();
        let c2 = validate_config(&[(2, 0.45)]).unwrap();
        assert_relative_eq!(a_k(&c1.merged(&c2).unwrap()), a_k(&c1) + a_k(&c2), epsilon = 1e-12);
    }

    #[test]
    fn d2_examples() {
        let c = validate_config(&[(0, 0.25), (3, 0.4)]).unwrap();
        assert_relative_eq!(d2_expected_occupation(&[3, 5], &c).unwrap(), 4.25, epsilon = 1e-12);
        assert_eq!(d2_expected_occupation(&[0, 0], &c).unwrap(), 0.0);
        assert!(matches!(d2_expected_occupation(&[1], &c), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn zero_steps() {
        let c = validate_config(&[(0, 0.25)]).unwrap();
        let (t, d) = simulate_coupled(&c, 0, SeedSpec::new(1, 0), RecordMode::Full);
        assert_eq!(t.positions, vec![(0, Position::ORIGIN)]);
        assert_eq!((d.h, d.v), (0, 0));
        assert_eq!(d.max_error, 0.0);
    }

    #[test]
    fn start_on_a_line_draws_first() {
        let c = validate_config(&[(0, 0.25)]).unwrap();
        for i in 0..50 {
            let (_, d) = simulate_coupled(&c, 1, SeedSpec::new(3, i), RecordMode::Endpoint);
            assert_eq!(d.geom_ledger[0].len(), 1);
            let first = d.geom_ledger[0][0];
            assert_eq!(d.h, first.value.min(1));
        }
        // Off the origin no draw happens until the line is hit.
        let c = validate_config(&[(7, 0.25)]).unwrap();
        let (_, d) = simulate_coupled(&c, 6, SeedSpec::new(3, 0), RecordMode::Endpoint);
        assert!(d.geom_ledger[0].is_empty());
        assert_eq!((d.h, d.v), (0, 6));
        assert_eq!(d.max_error, 0.0);
    }

    fn check_full_path(config: &KCombConfig<f64>, n: u64, seed: SeedSpec) {
        let (t, d) = simulate_coupled(config, n, seed, RecordMode::Full);
        assert_eq!(t.positions.len() as u64, n + 1);
        for i in 0..=n as usize {
            assert_eq!(d.h_series[i] + d.v_series[i], i as u64);
        }
        for i in 1..=n as usize {
            let dh = d.h_series[i] - d.h_series[i - 1];
            let dv = d.v_series[i] - d.v_series[i - 1];
            assert!(dh + dv == 1);
            let (a, b) = (t.positions[i - 1].1, t.positions[i].1);
            if a.x != b.x {
                assert_eq!(dh, 1);
                assert!(config.contains_level(a.y));
            } else {
                assert_eq!(dv, 1);
            }
            let running = d.error_series[i - 1].max((d.h_series[i] as f64 - d.d2_series[i]).abs());
            assert_eq!(d.error_series[i], running);
        }
        let recomputed = d2_expected_occupation(&d.xi2_per_level, config).unwrap();
        assert!((d.d2 - recomputed).abs() < 1e-9);
        let taken: u64 = d.geom_ledger.iter().flatten().map(|r| r.taken).sum();
        assert_eq!(taken, d.h);
        let truncated = d.geom_ledger.iter().flatten().filter(|r| r.truncated()).count();
        assert!(truncated <= 1);
        assert_eq!(d.h_plus() - d.h, d.truncated_run().map_or(0, |(_, r)| r.value - r.taken));

        // Bulk stepping reproduces the per-step run.
        let (e, de) = simulate_coupled(config, n, seed, RecordMode::Endpoint);
        assert_eq!(e.last(), t.last());
        assert_eq!(de.max_error, *d.error_series.last().unwrap());
        assert_eq!(de.geom_ledger, d.geom_ledger);
        assert_eq!(coupled_endpoint(config, n, seed), t.last());
    }

    #[test]
    fn full_paths_satisfy_accounting() {
        let configs = [
            validate_config(&[(0, 0.25)]).unwrap(),
            validate_config(&[(-2, 0.1), (5, 0.4)]).unwrap(),
            validate_config(&[(-1, 0.25), (0, 0.3), (3, 0.45)]).unwrap(),
            validate_config(&[(1, 0.05), (2, 0.2)]).unwrap(),
        ];
        for c in &configs {
            for i in 0..40 {
                check_full_path(c, 3000, SeedSpec::new(17, i));
            }
        }
    }

    #[test]
    fn checkpoints_are_prefix_consistent() {
        let c = validate_config(&[(-2, 0.1), (5, 0.4)]).unwrap();
        let seed = SeedSpec::new(4, 4);
        let (full, _) = simulate_coupled(&c, 5000, seed, RecordMode::Full);
        let (cp, _) = simulate_coupled(&c, 5000, seed, RecordMode::Checkpoints(vec![1, 10, 4999, 5000]));
        for (s, p) in cp.positions {
            assert_eq!(full.positions[s as usize].1, p);
        }
        let (short, _) = simulate_coupled(&c, 1234, seed, RecordMode::Endpoint);
        assert_eq!(short.last(), full.positions[1234].1);
    }

    #[test]
    fn max_tracking_is_exact() {
        let c = validate_config(&[(0, 0.3), (4, 0.2)]).unwrap();
        let seed = SeedSpec::new(8, 1);
        let (full, _) = simulate_coupled(&c, 20_000, seed, RecordMode::Full);
        let mut walk = CoupledWalk::new(&c, seed).with_max_tracking();
        for n in [10u64, 500, 7_000, 20_000] {
            walk.run_until(n);
            let expect = full.positions[..=n as usize].iter().map(|(_, p)| p.y.unsigned_abs()).max().unwrap();
            assert_eq!(walk.max_abs_y(), expect);
            assert_eq!(walk.position(), full.positions[n as usize].1);
        }
    }

    #[test]
    fn growth_rejects_short_grids() {
        let c = validate_config(&[(0, 0.25)]).unwrap();
        assert!(matches!(coupling_error_growth(&c, &[100, 1000], 2, 1), Err(Error::InsufficientGrid(_))));
        assert!(matches!(coupling_error_growth(&c, &[100, 200, 500], 2, 1), Err(Error::InsufficientGrid(_))));
    }

    #[test]
    fn growth_identity_and_small_grid() {
        let c = validate_config(&[(0, 0.25)]).unwrap();
        let g = coupling_error_growth(&c, &[100, 1000, 10_000], 8, 3).unwrap();
        assert_eq!(g.points.len(), 3);
        assert!(g.points.windows(2).all(|w| w[1].mean_max_error >= w[0].mean_max_error));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn steps_split_into_horizontal_and_vertical(
            p in 0.02f64..0.48, m in -3i64..3, n in 0u64..2000, idx in 0u64..1000,
        ) {
            let c = validate_config(&[(m, p)]).unwrap();
            let (t, d) = simulate_coupled(&c, n, SeedSpec::new(99, idx), RecordMode::Endpoint);
            prop_assert_eq!(d.h + d.v, n);
            let e = t.last();
            prop_assert!(e.x.unsigned_abs() <= d.h && e.y.unsigned_abs() <= d.v);
            prop_assert_eq!((e.x + e.y - n as i64).rem_euclid(2), 0);
        }
    }
}
