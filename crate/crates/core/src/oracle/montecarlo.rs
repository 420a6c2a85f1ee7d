//! Random grids: the fence exists exactly when the component is finite.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::components::{component_of, is_finite, margin, Adjacency};
use crate::duality::{DualityError, REQUIRED_MARGIN};
use crate::io::grid_text::emit_grid;

use super::audit::audit_grid;
use super::generate::{random_grid, trial_rng};

const KEPT_FAILURES: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McSpec {
    /// Occupation probability.
    pub p: f64,
    /// Window side.
    pub size: i32,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McFailure {
    pub trial: u64,
    pub grid: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McStats {
    pub trials: u64,
    /// Component clear of the window sides.
    pub finite: u64,
    /// Finite with at least two vacant rings to spare; the fence applies.
    pub applicable: u64,
    /// Applicable trials whose fence was built and passed every check.
    pub passed: u64,
    pub failure_count: u64,
    pub failures: Vec<McFailure>,
    pub failed_checks: BTreeMap<String, u64>,
}

impl McStats {
    fn empty() -> Self {
        Self {
            trials: 0,
            finite: 0,
            applicable: 0,
            passed: 0,
            failure_count: 0,
            failures: Vec::new(),
            failed_checks: BTreeMap::new(),
        }
    }

    fn merge(mut self, o: Self) -> Self {
        self.trials += o.trials;
        self.finite += o.finite;
        self.applicable += o.applicable;
        self.passed += o.passed;
        self.failure_count += o.failure_count;
        self.failures.extend(o.failures);
        self.failures.sort_by_key(|f| f.trial);
        self.failures.truncate(KEPT_FAILURES);
        for (k, n) in o.failed_checks {
            *self.failed_checks.entry(k).or_default() += n;
        }
        self
    }

    pub fn finite_fraction(&self) -> f64 {
        self.finite as f64 / self.trials.max(1) as f64
    }

    /// Every trial satisfied the equivalence and every check.
    pub fn all_passed(&self) -> bool {
        self.failure_count == 0
    }
}

fn run_trial(spec: &McSpec, trial: u64) -> McStats {
    let grid = random_grid(&mut trial_rng(spec.seed, trial), spec.size, spec.p);
    let comp = component_of(&grid, grid.origin(), Adjacency::Plus).expect("origin occupied");
    let finite = is_finite(&grid, &comp);
    let applicable = finite && margin(&grid, &comp) >= REQUIRED_MARGIN;
    let audit = audit_grid(&grid);
    let built = audit.report.is_some();
    let clean = built && audit.passed();

    let mut s = McStats::empty();
    s.trials = 1;
    s.finite = finite as u64;
    s.applicable = applicable as u64;
    s.passed = (applicable && clean) as u64;

    let reason = match (&audit.precondition, applicable) {
        (Some(e), true) => Some(format!("applicable but refused: {e}")),
        (Some(DualityError::ComponentNotFinite), false) if finite => {
            Some("finite component reported unbounded".to_string())
        }
        (None, false) if built => Some("fence built for an inapplicable grid".to_string()),
        _ if !audit.passed() => Some(
            audit
                .failures()
                .map(|v| format!("{}: {}", v.name, v.detail.as_deref().unwrap_or("")))
                .collect::<Vec<_>>()
                .join("; "),
        ),
        _ => None,
    };
    if let Some(reason) = reason {
        for v in audit.failures() {
            *s.failed_checks.entry(v.name.clone()).or_default() += 1;
        }
        s.failure_count = 1;
        s.failures.push(McFailure {
            trial,
            grid: emit_grid(&grid),
            reason,
        });
    }
    s
}

/// Runs `spec.trials` independent trials on `jobs` threads (0 for the
/// rayon default). Trial `k` draws from stream `k` of the seeded
/// generator, so the result does not depend on `jobs`.
pub fn mc_duality(spec: &McSpec, jobs: usize) -> McStats {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        (0..spec.trials)
            .into_par_iter()
            .map(|t| run_trial(spec, t))
            .reduce(McStats::empty, McStats::merge)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_lattice_always_finite() {
        let s = mc_duality(&McSpec { p: 0.0, size: 9, trials: 20, seed: 1 }, 2);
        assert_eq!((s.finite, s.applicable, s.passed, s.failure_count), (20, 20, 20, 0));
    }

    #[test]
    fn full_lattice_never_finite() {
        let s = mc_duality(&McSpec { p: 1.0, size: 9, trials: 20, seed: 1 }, 2);
        assert_eq!((s.finite, s.applicable, s.failure_count), (0, 0, 0));
    }

    #[test]
    fn independent_of_thread_count() {
        let spec = McSpec { p: 0.5, size: 12, trials: 60, seed: 42 };
        assert_eq!(mc_duality(&spec, 1), mc_duality(&spec, 4));
    }
}
