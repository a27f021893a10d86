//! Local times of one-dimensional simple symmetric walks.
//!
//! `xi(x, n)` counts the times `1 <= k <= n` with `S(k) = x`; time 0 is not
//! a visit.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::{tag, BitWalk, SeedSpec};

/// Dense visit counts over the visited range.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocalTimeTable {
    n_steps: u64,
    offset: i64,
    counts: Vec<u64>,
}

impl LocalTimeTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the position `S(n + 1)` of the next step. The caller is
    /// responsible for unit increments; [`local_time_table`] checks them.
    pub fn push(&mut self, x: i64) {
        if self.counts.is_empty() {
            self.offset = x;
            self.counts.push(0);
        } else if x < self.offset {
            let grow = (self.offset - x) as usize;
            let mut v = vec![0; grow];
            v.extend_from_slice(&self.counts);
            self.counts = v;
            self.offset = x;
        } else if (x - self.offset) as usize >= self.counts.len() {
            self.counts.resize((x - self.offset) as usize + 1, 0);
        }
        self.counts[(x - self.offset) as usize] += 1;
        self.n_steps += 1;
    }

    pub fn n_steps(&self) -> u64 {
        self.n_steps
    }

    pub fn count(&self, x: i64) -> u64 {
        if x < self.offset {
            return 0;
        }
        self.counts.get((x - self.offset) as usize).copied().unwrap_or(0)
    }

    /// `(min, max)` of the levels visited at times `1..=n`.
    pub fn range(&self) -> Option<(i64, i64)> {
        if self.counts.is_empty() {
            None
        } else {
            Some((self.offset, self.offset + self.counts.len() as i64 - 1))
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().enumerate().map(move |(i, &c)| (self.offset + i as i64, c))
    }
}

/// Builds the table of a path `S(0), ..., S(n)` with `S(0) = 0`.
pub fn local_time_table(path: &[i64]) -> Result<LocalTimeTable> {
    let mut table = LocalTimeTable::new();
    let Some(&first) = path.first() else {
        return Ok(table);
    };
    if first != 0 {
        return Err(Error::InvalidPath { index: 0 });
    }
    for (i, w) in path.windows(2).enumerate() {
        if (w[1] - w[0]).abs() != 1 {
            return Err(Error::InvalidPath { index: i + 1 });
        }
        table.push(w[1]);
    }
    Ok(table)
}

/// Largest local time `xi(n) = sup_x xi(x, n)` and the smallest level
/// attaining it.
pub fn max_local_time(table: &LocalTimeTable) -> Result<(i64, u64)> {
    table
        .iter()
        .fold(None, |best: Option<(i64, u64)>, (x, c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((x, c)),
        })
        .ok_or(Error::EmptyTable)
}

/// `sup_x |xi(x+1, n) - xi(x, n)|`. Outside the visited range both counts
/// vanish, so the pairs straddling the range ends are included and the
/// rest of `Z` adds nothing.
pub fn adjacent_uniformity_stat(table: &LocalTimeTable) -> u64 {
    let Some((lo, hi)) = table.range() else {
        return 0;
    };
    (lo - 1..=hi)
        .map(|x| table.count(x + 1).abs_diff(table.count(x)))
        .max()
        .unwrap_or(0)
}

/// `xi(n) / sqrt(2 n log log n)`; `None` when `log log n <= 0`.
pub fn kesten_statistic(max_local_time: u64, n: u64) -> Option<f64> {
    let ll = (n as f64).ln().ln();
    (ll > 0.0).then(|| max_local_time as f64 / (2.0 * n as f64 * ll).sqrt())
}

/// Simple symmetric walk `S(0..=n)` from the `SIMPLE_WALK` stream.
pub fn simple_walk_path(n: u64, seed: SeedSpec) -> Vec<i64> {
    let mut walk = BitWalk::new(seed.stream(tag::SIMPLE_WALK));
    let mut path = Vec::with_capacity(n as usize + 1);
    let mut s = 0i64;
    path.push(0);
    for _ in 0..n {
        s += walk.step();
        path.push(s);
    }
    path
}

/// Local-time tables of one simple walk taken at each of `checkpoints`
/// (ascending), built incrementally without storing the path.
pub fn simple_walk_tables(checkpoints: &[u64], seed: SeedSpec) -> Vec<LocalTimeTable> {
    let mut walk = BitWalk::new(seed.stream(tag::SIMPLE_WALK));
    let mut table = LocalTimeTable::new();
    let mut s = 0i64;
    let mut out = Vec::with_capacity(checkpoints.len());
    for &cp in checkpoints {
        while table.n_steps() < cp {
            s += walk.step();
            table.push(s);
        }
        out.push(table.clone());
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformityPoint {
    pub n: u64,
    /// Median over paths of `sup_x |xi(x+1,n) - xi(x,n)| / n^exponent`.
    pub median_normalized: f64,
}

/// Median normalized adjacent-level statistic along `n_grid`. Path `i`
/// uses `SeedSpec::path(master_seed, i)`; grid points share the paths.
pub fn uniformity_profile(n_grid: &[u64], paths: usize, exponent: f64, master_seed: u64) -> Vec<UniformityPoint> {
    let per_path: Vec<Vec<u64>> = (0..paths as u64)
        .into_par_iter()
        .map(|i| {
            simple_walk_tables(n_grid, SeedSpec::path(master_seed, i))
                .iter()
                .map(adjacent_uniformity_stat)
                .collect()
        })
        .collect();
    n_grid
        .iter()
        .enumerate()
        .map(|(g, &n)| {
            let vals: Vec<f64> = per_path.iter().map(|p| p[g] as f64 / (n as f64).powf(exponent)).collect();
            UniformityPoint { n, median_normalized: crate::stats::median(&vals) }
        })
        .collect()
}

/// Kesten statistic of each path's maximal local time at step `n`.
pub fn kesten_sample(n: u64, paths: usize, master_seed: u64) -> Vec<f64> {
    (0..paths as u64)
        .into_par_iter()
        .map(|i| {
            let t = simple_walk_tables(&[n], SeedSpec::path(master_seed, i)).pop().unwrap_or_default();
            let (_, m) = max_local_time(&t).unwrap_or((0, 0));
            kesten_statistic(m, n).unwrap_or(f64::NAN)
        })
        .collect()
}
