//! The vacant star-connected fence around a finite plus component.
//!
//! Starting from the outermost boundary cycle of the origin's plus
//! component, every vacant square sharing an edge with it from outside is
//! merged in, one at a time, until no edge of the original cycle is left on
//! the current one. Walking the final cycle edge by edge and recording the
//! vacant square behind each edge yields a star-connected cycle of vacant
//! squares; its outermost boundary is the final cycle itself.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::boundary::{outermost_boundary, outermost_boundary_of, BoundaryError};
use crate::check::Verdict;
use crate::components::{
    component_of, contains_cycle, is_finite, lambda_sets, margin, vacant_graph, Adjacency, Component,
    LambdaSets,
};
use crate::cycle::{merge_square, Cycle, CycleError};
use crate::lattice::{square_boundary, star_adjacent, GridConfig, LatticeEdge, SquareCoord};

/// Vacant rings required between the component and the window sides.
pub const REQUIRED_MARGIN: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("component not finite")]
    ComponentNotFinite,
    #[error("window too tight: margin {0}, need {REQUIRED_MARGIN}")]
    WindowTooTight(i32),
    #[error("duality violated: {0}")]
    DualityViolated(String),
}

impl DualityError {
    /// True for the two precondition failures (as opposed to a broken
    /// construction).
    pub fn is_precondition(&self) -> bool {
        !matches!(self, DualityError::DualityViolated(_))
    }
}

impl From<CycleError> for DualityError {
    fn from(e: CycleError) -> Self {
        DualityError::DualityViolated(e.to_string())
    }
}

impl From<BoundaryError> for DualityError {
    fn from(e: BoundaryError) -> Self {
        DualityError::DualityViolated(e.to_string())
    }
}

/// A cyclic sequence of at least three distinct squares, consecutive ones
/// (including last and first) star-adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SCycle {
    squares: Vec<SquareCoord>,
}

impl SCycle {
    pub fn new(squares: Vec<SquareCoord>) -> Result<Self, String> {
        let n = squares.len();
        if n < 3 {
            return Err(format!("{n} squares"));
        }
        if squares.iter().collect::<HashSet<_>>().len() != n {
            return Err("repeated square".into());
        }
        for i in 0..n {
            let (a, b) = (squares[i], squares[(i + 1) % n]);
            if !star_adjacent(a, b) {
                return Err(format!("{a} and {b} are not star adjacent"));
            }
        }
        Ok(Self { squares })
    }

    pub fn squares(&self) -> &[SquareCoord] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn square_set(&self) -> BTreeSet<SquareCoord> {
        self.squares.iter().copied().collect()
    }

    /// Equal as cyclic sequences, up to rotation and reversal.
    pub fn same_cycle(&self, other: &SCycle) -> bool {
        let n = self.squares.len();
        if n != other.squares.len() {
            return false;
        }
        let Some(k) = other.squares.iter().position(|&s| s == self.squares[0]) else {
            return false;
        };
        let fwd = (0..n).all(|i| self.squares[i] == other.squares[(k + i) % n]);
        let bwd = (0..n).all(|i| self.squares[i] == other.squares[(k + n - i) % n]);
        fwd || bwd
    }
}

/// Which eligible boundary edge to merge next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeOrder {
    /// The least index, as in the original construction.
    LeastIndex,
    /// `rank[j]` is the priority of boundary edge `j`; lowest wins.
    Ranked(Vec<usize>),
}

impl MergeOrder {
    fn pick(&self, eligible: &[usize]) -> usize {
        match self {
            MergeOrder::LeastIndex => eligible[0],
            MergeOrder::Ranked(rank) => *eligible.iter().min_by_key(|&&j| rank[j]).expect("non-empty"),
        }
    }

    /// Reverse order plus `shuffles` seeded permutations of `0..t`.
    pub fn permutations(t: usize, shuffles: usize, seed: u64) -> Vec<MergeOrder> {
        let mut out = vec![MergeOrder::Ranked((0..t).rev().collect())];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..shuffles {
            let mut rank: Vec<usize> = (0..t).collect();
            rank.shuffle(&mut rng);
            out.push(MergeOrder::Ranked(rank));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct DualityReport {
    /// The plus component of the origin.
    pub component: Component,
    /// Its outermost boundary cycle.
    pub outer: Cycle,
    /// Edges of `outer` in canonical traversal order.
    pub outer_edges: Vec<LatticeEdge>,
    /// The vacant square outside each of `outer_edges`.
    pub outer_neighbors: Vec<SquareCoord>,
    pub lambdas: LambdaSets,
    /// Cycles after each merge of the growing loop; the last is `d_fin`.
    pub steps: Vec<Cycle>,
    /// The square merged at each step.
    pub merged: Vec<SquareCoord>,
    pub d_fin: Cycle,
    pub h_out: SCycle,
    /// Outermost boundary of `h_out`; the same cycle as `d_fin`.
    pub partial_h: Cycle,
    /// Invariants checked while building.
    pub checks: Vec<Verdict>,
}

/// Runs the merging loop and the extraction walk on `grid`.
pub fn dual_fence(grid: &GridConfig) -> Result<DualityReport, DualityError> {
    let component = component_of(grid, grid.origin(), Adjacency::Plus)
        .expect("grid origin is occupied");
    if !is_finite(grid, &component) {
        return Err(DualityError::ComponentNotFinite);
    }
    let m = margin(grid, &component);
    if m < REQUIRED_MARGIN {
        return Err(DualityError::WindowTooTight(m));
    }
    let boundary = outermost_boundary(&component)?;
    let [outer] = boundary.cycles.as_slice() else {
        return Err(DualityError::DualityViolated(format!(
            "plus component has {} boundary cycles",
            boundary.cycles.len()
        )));
    };
    let outer = outer.clone();
    let outer_edges: Vec<LatticeEdge> = outer.edges().collect();
    let outer_mask = outer.interior_mask();
    let outer_neighbors: Vec<SquareCoord> = outer_edges
        .iter()
        .map(|e| {
            let (p, q) = e.cosquares();
            if outer_mask.contains(p) {
                q
            } else {
                p
            }
        })
        .collect();
    let lambdas = lambda_sets(grid, &component, &outer);

    let mut checks = Vec::new();
    let (steps, merged) = grow(
        &component,
        &outer,
        &outer_edges,
        &outer_neighbors,
        &MergeOrder::LeastIndex,
        Some(&mut checks),
    )?;
    let d_fin = steps.last().cloned().unwrap_or_else(|| outer.clone());

    let squares = extract_sequence(&d_fin, &lambdas.lambda_exterior, 0, false)?;
    let h_out = SCycle::new(squares).map_err(DualityError::DualityViolated)?;
    Ok(DualityReport {
        component,
        outer,
        outer_edges,
        outer_neighbors,
        lambdas,
        partial_h: d_fin.clone(),
        steps,
        merged,
        d_fin,
        h_out,
        checks,
    })
}

/// The merging loop. Returns the cycle after each merge and the merged
/// squares.
fn grow(
    component: &Component,
    outer: &Cycle,
    edges: &[LatticeEdge],
    neighbors: &[SquareCoord],
    order: &MergeOrder,
    mut checks: Option<&mut Vec<Verdict>>,
) -> Result<(Vec<Cycle>, Vec<SquareCoord>), DualityError> {
    let allowed: HashSet<LatticeEdge> = edges
        .iter()
        .copied()
        .chain(neighbors.iter().flat_map(|&y| square_boundary(y)))
        .collect();
    let mut cur = outer.clone();
    let mut merged: Vec<SquareCoord> = Vec::new();
    let mut steps = Vec::new();
    let mut remaining = edges.len();
    let mut failures: Vec<String> = Vec::new();
    loop {
        let on = cur.edge_set();
        let eligible: Vec<usize> = (0..edges.len()).filter(|&j| on.contains(&edges[j])).collect();
        if checks.is_some() && eligible.len() >= remaining && !steps.is_empty() {
            failures.push(format!("progress stalled at {} edges", eligible.len()));
        }
        remaining = eligible.len();
        if eligible.is_empty() {
            break;
        }
        if steps.len() > edges.len() {
            return Err(DualityError::DualityViolated("merging loop did not terminate".into()));
        }
        let j = order.pick(&eligible);
        cur = merge_square(&cur, neighbors[j])?;
        merged.push(neighbors[j]);
        if checks.is_some() {
            failures.extend(step_invariants(component, edges, neighbors, &allowed, &merged, &cur));
        }
        steps.push(cur.clone());
    }
    if let Some(checks) = checks.as_deref_mut() {
        checks.push(Verdict::from_result(
            "merge loop invariants",
            failures.first().map_or(Ok(()), |f| Err(f.clone())),
        ));
    }
    Ok((steps, merged))
}

fn step_invariants(
    component: &Component,
    edges: &[LatticeEdge],
    neighbors: &[SquareCoord],
    allowed: &HashSet<LatticeEdge>,
    merged: &[SquareCoord],
    cur: &Cycle,
) -> Vec<String> {
    let mask = cur.interior_mask();
    let on = cur.edge_set();
    let mut out = Vec::new();
    if let Some(s) = component.squares.iter().find(|&&s| !mask.contains(s)) {
        out.push(format!("(a1.1) component square {s} left the interior"));
    }
    if let Some(e) = on.iter().find(|e| !allowed.contains(e)) {
        out.push(format!("(a1.2) foreign edge {e}"));
    }
    for (j, e) in edges.iter().enumerate() {
        let on_cycle = on.contains(e);
        if !on_cycle && !cur.edge_is_interior(&mask, *e) {
            out.push(format!("(a1.2) boundary edge {e} neither on nor inside"));
        }
        if on_cycle == mask.contains(neighbors[j]) {
            out.push(format!("(a1.2) edge {e} and square {} disagree", neighbors[j]));
        }
    }
    if let Some(y) = merged.iter().find(|&&y| !mask.contains(y)) {
        out.push(format!("(a1.3) merged square {y} not interior"));
    }
    out
}

/// Walks `d_fin` from edge `start` (backwards if `reverse`) and records the
/// interior square behind each edge, collapsing repeats.
pub fn extract_sequence(
    d_fin: &Cycle,
    lambda: &BTreeSet<SquareCoord>,
    start: usize,
    reverse: bool,
) -> Result<Vec<SquareCoord>, DualityError> {
    let mask = d_fin.interior_mask();
    let mut edges: Vec<LatticeEdge> = d_fin.edges().collect();
    let shift = start % edges.len().max(1);
    edges.rotate_left(shift);
    if reverse {
        edges.reverse();
    }
    let mut seq: Vec<SquareCoord> = Vec::new();
    for e in edges {
        let (p, q) = e.cosquares();
        let z = if mask.contains(p) { p } else { q };
        if !lambda.contains(&z) {
            return Err(DualityError::DualityViolated(format!(
                "interior square {z} behind edge {e} is not a merged square"
            )));
        }
        if seq.last() != Some(&z) {
            seq.push(z);
        }
    }
    if seq.len() > 1 && seq.first() == seq.last() {
        seq.pop();
    }
    Ok(seq)
}

/// Recomputes the final cycle under a different merge order.
pub fn rerun_merge(report: &DualityReport, order: &MergeOrder) -> Result<Cycle, DualityError> {
    let (steps, _) = grow(
        &report.component,
        &report.outer,
        &report.outer_edges,
        &report.outer_neighbors,
        order,
        None,
    )?;
    Ok(steps.last().cloned().unwrap_or_else(|| report.outer.clone()))
}

/// Checks the fence properties of a report, including that `orders` all
/// reproduce the same final cycle.
pub fn verify_fence_with(report: &DualityReport, orders: &[MergeOrder]) -> Vec<Verdict> {
    let mut out = Vec::new();
    let h = report.h_out.square_set();
    let lam = &report.lambdas;
    let dmask = report.partial_h.interior_mask();
    let d_edges = report.partial_h.edge_set();

    out.push(Verdict::from_result(
        "S-cycle",
        SCycle::new(report.h_out.squares().to_vec()).map(|_| ()),
    ));
    out.push(Verdict::from_result(
        "(i) fence squares vacant neighbours",
        match h.iter().find(|s| !lam.lambda_all.contains(s)) {
            Some(s) => Err(format!("{s} not in lambda_all")),
            None => Ok(()),
        },
    ));
    out.push(Verdict::from_result(
        "fence within exterior neighbours",
        match (
            h.iter().find(|s| !lam.lambda_exterior.contains(s)),
            lam.lambda_exterior.iter().find(|s| !lam.lambda_all.contains(s)),
        ) {
            (Some(s), _) => Err(format!("{s} not in lambda_exterior")),
            (_, Some(s)) => Err(format!("{s} exterior but not in lambda_all")),
            _ => Ok(()),
        },
    ));
    out.push(Verdict::from_result(
        "(ii) fence boundary is the final cycle",
        match outermost_boundary_of(&h) {
            Ok(b) if b.cycles == [report.partial_h.clone()] => Ok(()),
            Ok(b) => Err(format!("{} cycles, first {}", b.cycles.len(), b.cycles[0])),
            Err(e) => Err(e.to_string()),
        },
    ));
    out.push(Verdict::from_result(
        "(ii) every fence square touches the boundary",
        match h
            .iter()
            .find(|&&s| !square_boundary(s).iter().any(|e| d_edges.contains(e)))
        {
            Some(s) => Err(format!("{s} has no edge on the boundary")),
            None => Ok(()),
        },
    ));
    out.push(Verdict::from_result(
        "(iii) component enclosed",
        match report.component.squares.iter().find(|&&s| !dmask.contains(s)) {
            Some(s) => Err(format!("{s} outside")),
            None => Ok(()),
        },
    ));
    out.push(Verdict::from_result(
        "(iii) vacant neighbours enclosed",
        match lam.lambda_all.iter().find(|&&s| !dmask.contains(s)) {
            Some(s) => Err(format!("{s} outside")),
            None => Ok(()),
        },
    ));
    out.push(Verdict::from_result("final cycle uses merged squares' edges", {
        let own: HashSet<LatticeEdge> = lam
            .lambda_exterior
            .iter()
            .flat_map(|&y| square_boundary(y))
            .collect();
        match d_edges.iter().find(|e| !own.contains(e)) {
            Some(e) => Err(format!("edge {e}")),
            None => Ok(()),
        }
    }));
    out.push(Verdict::from_result(
        "original boundary strictly inside",
        match report
            .outer_edges
            .iter()
            .find(|&&e| d_edges.contains(&e) || !report.d_fin.edge_is_interior(&dmask, e))
        {
            Some(e) => Err(format!("edge {e}")),
            None => Ok(()),
        },
    ));
    out.push(Verdict::from_result(
        "component and exterior neighbours enclosed",
        match report
            .component
            .squares
            .iter()
            .chain(&lam.lambda_exterior)
            .find(|&&s| !dmask.contains(s))
        {
            Some(s) => Err(format!("{s} outside")),
            None => Ok(()),
        },
    ));
    out.push(Verdict::from_result("merge order independence", {
        let mut r = Ok(());
        for (k, order) in orders.iter().enumerate() {
            match rerun_merge(report, order) {
                Ok(c) if c == report.d_fin => {}
                Ok(c) => {
                    r = Err(format!("order #{k} gave {c}"));
                    break;
                }
                Err(e) => {
                    r = Err(format!("order #{k}: {e}"));
                    break;
                }
            }
        }
        r
    }));
    out.push(Verdict::from_result(
        "fence graph has a cycle",
        if contains_cycle(&vacant_graph(&h)) {
            Ok(())
        } else {
            Err("star graph on fence squares is a forest".into())
        },
    ));
    out
}

/// [`verify_fence_with`] using the reverse order and two seeded shuffles.
pub fn verify_fence(report: &DualityReport) -> Vec<Verdict> {
    let t = report.outer_edges.len();
    verify_fence_with(report, &MergeOrder::permutations(t, 2, 0x5eed ^ t as u64))
}

/// The outermost boundary of an S-cycle's squares is a single cycle.
pub fn verify_scycle_boundary(s: &SCycle) -> Verdict {
    Verdict::from_result(
        "S-cycle boundary is one cycle",
        match outermost_boundary_of(&s.square_set()) {
            Ok(b) if b.is_single_cycle() => Ok(()),
            Ok(b) => Err(format!("{} cycles", b.cycles.len())),
            Err(e) => Err(e.to_string()),
        },
    )
}

/// The squares inside `c` are plus connected and have `c` as their
/// outermost boundary.
pub fn verify_interior_plus_connected(c: &Cycle) -> Verdict {
    let inside = c.interior_squares();
    let r = if !plus_connected(&inside) {
        Err(format!("interior of {c} is not plus connected"))
    } else {
        match outermost_boundary_of(&inside) {
            Ok(b) if b.cycles == [c.clone()] => Ok(()),
            Ok(b) => Err(format!("interior boundary has {} cycles", b.cycles.len())),
            Err(e) => Err(e.to_string()),
        }
    };
    Verdict::from_result("interior plus connected with boundary", r)
}

fn plus_connected(set: &BTreeSet<SquareCoord>) -> bool {
    let Some(&first) = set.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([first]);
    let mut stack = vec![first];
    while let Some(s) = stack.pop() {
        for n in s.plus_neighbors() {
            if set.contains(&n) && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen.len() == set.len()
}

/// Every starting edge and both directions give the same fence up to
/// rotation and reversal.
pub fn verify_extraction_invariance(report: &DualityReport) -> Verdict {
    let r = report.d_fin.len();
    for start in 0..r {
        for reverse in [false, true] {
            let seq = extract_sequence(&report.d_fin, &report.lambdas.lambda_exterior, start, reverse);
            let same = seq
                .ok()
                .and_then(|s| SCycle::new(s).ok())
                .is_some_and(|s| s.same_cycle(&report.h_out));
            if !same {
                return Verdict::fail(
                    "extraction start invariance",
                    format!("start {start} reverse {reverse}"),
                );
            }
        }
    }
    Verdict::pass("extraction start invariance")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Window;

    fn sq(x: i32, y: i32) -> SquareCoord {
        SquareCoord::new(x, y)
    }

    fn grid(w: Window, occ: &[(i32, i32)]) -> GridConfig {
        GridConfig::from_occupied_set(w, occ.iter().map(|&(x, y)| sq(x, y)), sq(0, 0)).unwrap()
    }

    #[test]
    fn scycle_validation() {
        assert!(SCycle::new(vec![sq(0, 0), sq(1, 1)]).is_err());
        assert!(SCycle::new(vec![sq(0, 0), sq(1, 0), sq(0, 1)]).is_ok());
        assert!(SCycle::new(vec![sq(0, 0), sq(1, 0), sq(2, 0)]).is_err());
        assert!(SCycle::new(vec![sq(0, 0), sq(1, 0), sq(0, 0), sq(1, 1)]).is_err());
        let a = SCycle::new(vec![sq(0, 1), sq(1, 0), sq(0, -1), sq(-1, 0)]).unwrap();
        let b = SCycle::new(vec![sq(0, -1), sq(1, 0), sq(0, 1), sq(-1, 0)]).unwrap();
        assert!(a.same_cycle(&b));
        let c = SCycle::new(vec![sq(0, 1), sq(0, -1), sq(1, 0), sq(-1, 0)]);
        assert!(c.is_err());
    }

    #[test]
    fn lone_origin() {
        let g = grid(Window::new(-3, -3, 3, 3), &[(0, 0)]);
        let r = dual_fence(&g).unwrap();
        assert_eq!(r.h_out.len(), 4);
        assert_eq!(r.partial_h.len(), 12);
        assert_eq!(r.partial_h.interior_squares().len(), 5);
        assert!(r.checks.iter().all(|v| v.passed));
        assert!(verify_fence(&r).iter().all(|v| v.passed), "{:?}", verify_fence(&r));
    }

    #[test]
    fn preconditions() {
        let g = grid(Window::new(-1, -1, 1, 1), &[(0, 0)]);
        assert_eq!(dual_fence(&g).unwrap_err(), DualityError::WindowTooTight(1));
        let g = grid(Window::new(-1, -1, 1, 1), &[(0, 0), (1, 0)]);
        assert_eq!(dual_fence(&g).unwrap_err(), DualityError::ComponentNotFinite);
    }

    #[test]
    fn scycle_boundary_examples() {
        let block = SCycle::new(vec![sq(0, 0), sq(1, 0), sq(1, 1), sq(0, 1)]).unwrap();
        assert!(verify_scycle_boundary(&block).passed);
        let ring: Vec<_> = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
            .iter()
            .map(|&(x, y)| sq(x, y))
            .collect();
        assert!(verify_scycle_boundary(&SCycle::new(ring).unwrap()).passed);
    }

    #[test]
    fn interior_plus_connected_examples() {
        assert!(verify_interior_plus_connected(&Cycle::square(sq(0, 0))).passed);
        let domino = crate::cycle::merge_square(&Cycle::square(sq(0, 0)), sq(1, 0)).unwrap();
        assert!(verify_interior_plus_connected(&domino).passed);
    }
}
