//! Every check that applies to one grid.

use std::collections::BTreeSet;

use crate::boundary::{outermost_boundary_of, verify_outermost_boundary};
use crate::check::Verdict;
use crate::components::{component_of, is_finite, Adjacency};
use crate::cycle::{bridge_decomposition, Cycle};
use crate::duality::{
    dual_fence, verify_extraction_invariance, verify_interior_plus_connected, verify_scycle_boundary,
    verify_fence, DualityError, DualityReport,
};
use crate::lattice::{GridConfig, SquareCoord};

use super::cycles::verify_by_definition;
use super::decomposition::brute_force_decomposition;
use super::ray::verify_interior_oracle;

#[derive(Debug, Clone)]
pub struct Audit {
    /// Set when the fence could not be built because the component is
    /// unbounded in the window or too close to its sides.
    pub precondition: Option<DualityError>,
    pub report: Option<DualityReport>,
    pub verdicts: Vec<Verdict>,
}

impl Audit {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }
}

/// Builds the fence and runs every verifier on it, on the boundaries of the
/// origin's plus and star components, and on the fence squares.
pub fn audit_grid(grid: &GridConfig) -> Audit {
    let mut verdicts = Vec::new();

    let plus = component_of(grid, grid.origin(), Adjacency::Plus).expect("origin occupied");
    let star = component_of(grid, grid.origin(), Adjacency::Star).expect("origin occupied");
    if is_finite(grid, &plus) {
        boundary_checks(&plus.squares, Adjacency::Plus, "plus", true, &mut verdicts);
    }
    if is_finite(grid, &star) {
        // Same squares, same cycles: listing them again adds nothing.
        let listed = is_finite(grid, &plus) && plus.squares == star.squares;
        boundary_checks(&star.squares, Adjacency::Star, "star", !listed, &mut verdicts);
    }

    let report = match dual_fence(grid) {
        Ok(r) => r,
        Err(e) if e.is_precondition() => {
            return Audit {
                precondition: Some(e),
                report: None,
                verdicts,
            }
        }
        Err(e) => {
            verdicts.push(Verdict::fail("fence built", e.to_string()));
            return Audit {
                precondition: None,
                report: None,
                verdicts,
            };
        }
    };

    verdicts.extend(report.checks.iter().cloned());
    verdicts.extend(verify_fence(&report));
    verdicts.push(verify_extraction_invariance(&report));

    let fence = report.h_out.square_set();
    verdicts.push(verify_scycle_boundary(&report.h_out).scoped("fence"));
    boundary_checks(&fence, Adjacency::Star, "fence", true, &mut verdicts);

    for (k, c) in std::iter::once(&report.outer).chain(&report.steps).enumerate() {
        push_scoped(&mut verdicts, &format!("cycle {k}"), verify_interior_plus_connected(c));
        push_scoped(&mut verdicts, &format!("cycle {k}"), verify_interior_oracle(c));
    }

    let mut prev = &report.outer;
    for (k, (next, &y)) in report.steps.iter().zip(&report.merged).enumerate() {
        verdicts.push(verify_step_decomposition(prev, y, next).scoped(&format!("step {k}")));
        prev = next;
    }

    Audit {
        precondition: None,
        report: Some(report),
        verdicts,
    }
}

/// Keeps passing verdicts under one shared name so the list stays short.
fn push_scoped(out: &mut Vec<Verdict>, scope: &str, v: Verdict) {
    if v.passed {
        if !out.iter().any(|o| o.name == v.name) {
            out.push(v);
        }
    } else {
        out.push(v.scoped(scope));
    }
}

fn boundary_checks(
    set: &BTreeSet<SquareCoord>,
    kind: Adjacency,
    scope: &str,
    by_definition: bool,
    out: &mut Vec<Verdict>,
) {
    let b = match outermost_boundary_of(set) {
        Ok(b) => b,
        Err(e) => {
            out.push(Verdict::fail(format!("{scope}/boundary traced"), e.to_string()));
            return;
        }
    };
    out.extend(verify_outermost_boundary(set, kind, &b).into_iter().map(|v| v.scoped(scope)));
    for c in &b.cycles {
        push_scoped(out, scope, verify_interior_oracle(c));
        push_scoped(out, scope, verify_interior_plus_connected(c));
    }
    if by_definition {
        out.extend(verify_by_definition(set, &b).into_iter().flatten().map(|v| v.scoped(scope)));
    }
}

/// Merging square `y` into `prev` gave `next`; the bridge decomposition and
/// its exhaustive counterpart must both give `next` as well.
fn verify_step_decomposition(prev: &Cycle, y: SquareCoord, next: &Cycle) -> Verdict {
    let sq = Cycle::square(y);
    let r = match (bridge_decomposition(&sq, prev), brute_force_decomposition(&sq, prev)) {
        (Ok(fast), Ok(slow)) if fast == slow && &fast.merged == next => Ok(()),
        (Ok(fast), Ok(slow)) => Err(format!(
            "merged {y}: decomposition {} vs exhaustive {} vs step {next}",
            fast.merged, slow.merged
        )),
        (a, b) => Err(format!("merged {y}: {:?} / {:?}", a.err(), b.err())),
    };
    Verdict::from_result("unique decomposition", r)
}
