//! Every occupancy pattern of a small block.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::check::Verdict;
use crate::io::grid_text::emit_grid;
use crate::lattice::{GridConfig, SquareCoord, Window};

use super::audit::audit_grid;

/// At most 2^20 patterns.
pub const MAX_FREE_SQUARES: usize = 20;

/// Stored counterexamples per run; the count covers all of them.
const KEPT_COUNTEREXAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub width: i32,
    pub height: i32,
    /// Squares always occupied besides the origin.
    pub forced_occupied: BTreeSet<SquareCoord>,
    /// Vacant rings around the block.
    pub margin: i32,
}

impl EnumSpec {
    pub fn new(width: i32, height: i32, margin: i32) -> Self {
        Self {
            width,
            height,
            forced_occupied: BTreeSet::new(),
            margin,
        }
    }

    /// The block, positioned so that the origin sits at its centre (rounding
    /// down and left).
    pub fn block(&self) -> Window {
        let (x0, y0) = (-(self.width - 1) / 2, -(self.height - 1) / 2);
        Window::new(x0, y0, x0 + self.width - 1, y0 + self.height - 1)
    }

    pub fn window(&self) -> Window {
        let b = self.block();
        let m = self.margin;
        Window::new(b.x_min - m, b.y_min - m, b.x_max + m, b.y_max + m)
    }

    fn free_squares(&self) -> Vec<SquareCoord> {
        let origin = SquareCoord::new(0, 0);
        self.block()
            .squares()
            .filter(|&s| s != origin && !self.forced_occupied.contains(&s))
            .collect()
    }

    /// The pattern whose bit `k` occupies the `k`-th free square.
    pub fn grid(&self, pattern: u64) -> GridConfig {
        let window = self.window();
        let mut occupied: BTreeSet<SquareCoord> = self.forced_occupied.clone();
        occupied.insert(SquareCoord::new(0, 0));
        for (k, s) in self.free_squares().into_iter().enumerate() {
            if pattern >> k & 1 == 1 {
                occupied.insert(s);
            }
        }
        GridConfig::from_occupied_set(window, occupied, SquareCoord::new(0, 0)).expect("origin in block")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("{0} free squares, at most {MAX_FREE_SQUARES} allowed")]
    TooManyFreeSquares(usize),
    #[error("forced square {0} lies outside the block")]
    ForcedOutside(SquareCoord),
    #[error("block must be at least 1x1")]
    EmptyBlock,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub pattern: u64,
    /// The failing configuration in grid text form.
    pub grid: String,
    pub failed: Vec<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumReport {
    pub configs: u64,
    /// Patterns whose fence was built and checked.
    pub checked: u64,
    /// Patterns whose component came within two rings of the window side.
    pub window_too_tight: u64,
    pub failure_count: u64,
    /// The first failures in pattern order.
    pub failures: Vec<Counterexample>,
    /// How many patterns each named check failed on.
    pub failed_checks: BTreeMap<String, u64>,
}

impl EnumReport {
    fn empty() -> Self {
        Self {
            configs: 0,
            checked: 0,
            window_too_tight: 0,
            failure_count: 0,
            failures: Vec::new(),
            failed_checks: BTreeMap::new(),
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.configs += other.configs;
        self.checked += other.checked;
        self.window_too_tight += other.window_too_tight;
        self.failure_count += other.failure_count;
        self.failures.extend(other.failures);
        self.failures.sort_by_key(|c| c.pattern);
        self.failures.truncate(KEPT_COUNTEREXAMPLES);
        for (k, n) in other.failed_checks {
            *self.failed_checks.entry(k).or_default() += n;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

fn run_one(spec: &EnumSpec, pattern: u64) -> EnumReport {
    let grid = spec.grid(pattern);
    let audit = audit_grid(&grid);
    let mut r = EnumReport::empty();
    r.configs = 1;
    // The component is finite by construction; hitting the window side
    // only means the padding is too thin.
    if audit.precondition.is_some() {
        r.window_too_tight = 1;
    } else {
        r.checked = 1;
    }
    let failed: Vec<Verdict> = audit.failures().cloned().collect();
    if !failed.is_empty() {
        r.failure_count = 1;
        for v in &failed {
            *r.failed_checks.entry(v.name.clone()).or_default() += 1;
        }
        r.failures.push(Counterexample {
            pattern,
            grid: emit_grid(&grid),
            failed,
        });
    }
    r
}

/// Audits all patterns of the free squares, on `jobs` threads (0 for the
/// rayon default). The result does not depend on `jobs`.
pub fn enumerate_window(spec: &EnumSpec, jobs: usize) -> Result<EnumReport, EnumError> {
    if spec.width < 1 || spec.height < 1 {
        return Err(EnumError::EmptyBlock);
    }
    let block = spec.block();
    if let Some(&s) = spec.forced_occupied.iter().find(|&&s| !block.contains(s)) {
        return Err(EnumError::ForcedOutside(s));
    }
    let free = spec.free_squares().len();
    if free > MAX_FREE_SQUARES {
        return Err(EnumError::TooManyFreeSquares(free));
    }
    let total = 1u64 << free;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    Ok(pool.install(|| {
        (0..total)
            .into_par_iter()
            .map(|p| run_one(spec, p))
            .reduce(EnumReport::empty, EnumReport::merge)
    }))
}
