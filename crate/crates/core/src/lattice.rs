//! The K-comb lattice: configuration, the direct Markov-chain stepper and
//! the exact finite-N law of the walk.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rng::{tag, SeedSpec};
use crate::scalar::Probability;

/// Largest step count accepted by [`exact_distribution`].
pub const MAX_EXACT_STEPS: u64 = 64;

/// One horizontal line `y = m` on which the walk may move sideways.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSpec<P = f64> {
    pub m: i64,
    /// Probability of each vertical direction while on the line.
    pub p: P,
}

impl<P: Probability> LineSpec<P> {
    /// Probability of leaving the line vertically, `alpha = 2p`.
    pub fn alpha(&self) -> P {
        self.p.clone() + self.p.clone()
    }

    /// Probability of each horizontal direction, `1/2 - p`.
    pub fn horizontal(&self) -> P {
        P::half() - self.p.clone()
    }
}

/// A validated lattice: `K >= 1` lines with distinct levels, sorted by `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct KCombConfig<P = f64> {
    lines: Vec<LineSpec<P>>,
}

impl<P: Probability> KCombConfig<P> {
    pub fn new(raw: &[(i64, P)]) -> Result<Self> {
        validate_config(raw)
    }

    pub fn lines(&self) -> &[LineSpec<P>] {
        &self.lines
    }

    pub fn k(&self) -> usize {
        self.lines.len()
    }

    pub fn levels(&self) -> Vec<i64> {
        self.lines.iter().map(|l| l.m).collect()
    }

    pub fn alphas(&self) -> Vec<P> {
        self.lines.iter().map(LineSpec::alpha).collect()
    }

    /// Index of the line at height `y`, if any.
    pub fn line_index(&self, y: i64) -> Option<usize> {
        self.lines.binary_search_by_key(&y, |l| l.m).ok()
    }

    pub fn contains_level(&self, y: i64) -> bool {
        self.line_index(y).is_some()
    }

    /// Union of two configurations with disjoint levels.
    pub fn merged(&self, other: &Self) -> Result<Self> {
        let raw: Vec<(i64, P)> = self
            .lines
            .iter()
            .chain(other.lines.iter())
            .map(|l| (l.m, l.p.clone()))
            .collect();
        validate_config(&raw)
    }

    /// Same levels with probabilities converted to `f64`.
    pub fn to_f64(&self) -> KCombConfig<f64> {
        KCombConfig {
            lines: self
                .lines
                .iter()
                .map(|l| LineSpec { m: l.m, p: l.p.to_f64_lossy() })
                .collect(),
        }
    }
}

/// Checks and sorts a list of `(m, p)` pairs.
pub fn validate_config<P: Probability>(raw: &[(i64, P)]) -> Result<KCombConfig<P>> {
    if raw.is_empty() {
        return Err(Error::EmptyConfig);
    }
    let half = P::half();
    let mut lines = Vec::with_capacity(raw.len());
    for (m, p) in raw {
        if !(*p > P::zero() && *p < half) {
            return Err(Error::InvalidProbability { value: p.to_f64_lossy(), range: "(0, 1/2)" });
        }
        lines.push(LineSpec { m: *m, p: p.clone() });
    }
    lines.sort_by_key(|l| l.m);
    if let Some(w) = lines.windows(2).find(|w| w[0].m == w[1].m) {
        return Err(Error::DuplicateLevel(w[0].m));
    }
    Ok(KCombConfig { lines })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Position {
    pub x: i64,
    pub y: i64,
}

impl Position {
    pub const ORIGIN: Position = Position { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn l1(&self) -> u64 {
        self.x.unsigned_abs() + self.y.unsigned_abs()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordMode {
    Endpoint,
    /// Record at the listed step indices; indices above `n_steps` are dropped.
    Checkpoints(Vec<u64>),
    Full,
}

impl RecordMode {
    pub(crate) fn resolved_steps(&self, n_steps: u64) -> Vec<u64> {
        match self {
            RecordMode::Endpoint => vec![n_steps],
            RecordMode::Full => (0..=n_steps).collect(),
            RecordMode::Checkpoints(steps) => {
                let mut s: Vec<u64> = steps.iter().copied().filter(|&s| s <= n_steps).collect();
                s.sort_unstable();
                s.dedup();
                s
            }
        }
    }
}

/// A realized walk. `positions` holds `(step, position)` pairs selected by
/// the record mode, in increasing step order.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<P = f64> {
    pub config: KCombConfig<P>,
    pub n_steps: u64,
    pub seed: SeedSpec,
    pub record_mode: RecordMode,
    pub positions: Vec<(u64, Position)>,
}

impl<P> Trajectory<P> {
    /// Position after the last recorded step.
    pub fn last(&self) -> Position {
        self.positions.last().map(|&(_, p)| p).unwrap_or(Position::ORIGIN)
    }
}

/// One step of the chain driven by a single uniform `u` in `[0, 1)`.
///
/// Off the lines: `u < 1/2` goes up, otherwise down. On line `j` the unit
/// interval is cut into `[p, p, 1/2-p, 1/2-p]` mapping to up, down, right,
/// left.
pub fn step_direct<P: Probability>(pos: Position, config: &KCombConfig<P>, u: f64) -> Position {
    match config.line_index(pos.y) {
        None => {
            if u < 0.5 {
                Position::new(pos.x, pos.y + 1)
            } else {
                Position::new(pos.x, pos.y - 1)
            }
        }
        Some(j) => {
            let p = config.lines[j].p.to_f64_lossy();
            step_on_line(pos, p, u)
        }
    }
}

#[inline]
fn step_on_line(pos: Position, p: f64, u: f64) -> Position {
    if u < p {
        Position::new(pos.x, pos.y + 1)
    } else if u < 2.0 * p {
        Position::new(pos.x, pos.y - 1)
    } else if u < 0.5 + p {
        Position::new(pos.x + 1, pos.y)
    } else {
        Position::new(pos.x - 1, pos.y)
    }
}

/// Runs the chain for `n_steps` steps from the origin, one uniform per step
/// from the `DIRECT` stream of `seed`.
pub fn simulate_direct<P: Probability>(
    config: &KCombConfig<P>,
    n_steps: u64,
    seed: SeedSpec,
    record_mode: RecordMode,
) -> Trajectory<P> {
    let record = record_mode.resolved_steps(n_steps);
    let mut positions = Vec::with_capacity(record.len());
    let mut next = record.iter().copied().peekable();
    let mut stream = seed.stream(tag::DIRECT);
    let levels = config.levels();
    let ps: Vec<f64> = config.lines.iter().map(|l| l.p.to_f64_lossy()).collect();

    let mut pos = Position::ORIGIN;
    for step in 0..=n_steps {
        if step > 0 {
            let u = stream.uniform();
            pos = match levels.binary_search(&pos.y) {
                Ok(j) => step_on_line(pos, ps[j], u),
                Err(_) if u < 0.5 => Position::new(pos.x, pos.y + 1),
                Err(_) => Position::new(pos.x, pos.y - 1),
            };
        }
        if next.peek() == Some(&step) {
            positions.push((step, pos));
            next.next();
        }
    }
    Trajectory { config: config.clone(), n_steps, seed, record_mode, positions }
}

/// Exact probability mass function of the position after `n_steps` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTable<P = f64> {
    pub n_steps: u64,
    pub entries: BTreeMap<Position, P>,
}

impl<P: Probability> DistributionTable<P> {
    pub fn prob(&self, pos: Position) -> P {
        self.entries.get(&pos).cloned().unwrap_or_else(P::zero)
    }

    pub fn total_mass(&self) -> P {
        self.entries.values().cloned().fold(P::zero(), |a, b| a + b)
    }

    pub fn to_f64(&self) -> DistributionTable<f64> {
        DistributionTable {
            n_steps: self.n_steps,
            entries: self.entries.iter().map(|(k, v)| (*k, v.to_f64_lossy())).collect(),
        }
    }
}

/// Dynamic programming over the reachable diamond `|x| + |y| <= n`.
pub fn exact_distribution<P: Probability>(
    config: &KCombConfig<P>,
    n_steps: u64,
) -> Result<DistributionTable<P>> {
    if n_steps > MAX_EXACT_STEPS {
        return Err(Error::TooLargeForExact { n_steps, max: MAX_EXACT_STEPS });
    }
    let n = n_steps as i64;
    let width = (2 * n + 1) as usize;
    let idx = |x: i64, y: i64| ((y + n) as usize) * width + (x + n) as usize;

    let half = P::half();
    let kernel: Vec<Option<(P, P)>> = (-n..=n)
        .map(|y| config.line_index(y).map(|j| (config.lines[j].p.clone(), config.lines[j].horizontal())))
        .collect();

    let mut cur = vec![P::zero(); width * width];
    let mut nxt = vec![P::zero(); width * width];
    cur[idx(0, 0)] = P::one();

    for t in 0..n {
        for v in nxt.iter_mut() {
            *v = P::zero();
        }
        for y in -t..=t {
            let span = t - y.abs();
            let mut x = -span;
            while x <= span {
                let mass = &cur[idx(x, y)];
                if !mass.is_zero() {
                    match &kernel[(y + n) as usize] {
                        None => {
                            let share = mass.clone() * half.clone();
                            add(&mut nxt[idx(x, y + 1)], share.clone());
                            add(&mut nxt[idx(x, y - 1)], share);
                        }
                        Some((p, h)) => {
                            let vert = mass.clone() * p.clone();
                            let horiz = mass.clone() * h.clone();
                            add(&mut nxt[idx(x, y + 1)], vert.clone());
                            add(&mut nxt[idx(x, y - 1)], vert);
                            add(&mut nxt[idx(x + 1, y)], horiz.clone());
                            add(&mut nxt[idx(x - 1, y)], horiz);
                        }
                    }
                }
                x += 2;
            }
        }
        std::mem::swap(&mut cur, &mut nxt);
    }

    let mut entries = BTreeMap::new();
    for y in -n..=n {
        for x in -n..=n {
            let v = &cur[idx(x, y)];
            if !v.is_zero() {
                entries.insert(Position::new(x, y), v.clone());
            }
        }
    }
    Ok(DistributionTable { n_steps, entries })
}

#[inline]
fn add<P: Probability>(slot: &mut P, v: P) {
    let cur = std::mem::replace(slot, P::zero());
    *slot = cur + v;
}
