//! Outermost boundaries of finite star or plus connected square sets.
//!
//! The boundary is traced as the frontier between the set and the unbounded
//! region of its complement (vacant squares plus-connected to infinity).
//! Where two diagonal squares of the set meet at a corner with both other
//! quadrants outside, the corner is a pinch: each set square keeps its own
//! two edges there, which splits the frontier into cycles that touch at
//! single vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::check::Verdict;
use crate::components::{bounding_box, is_finite, Adjacency, Component};
use crate::cycle::{Cycle, CycleError, InteriorMask};
use crate::lattice::{square_boundary, CornerCoord, GridConfig, LatticeEdge, SquareCoord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("unbounded: component reaches the window border")]
    Unbounded,
    #[error("empty square set")]
    Empty,
    #[error("square {0} is not in the component")]
    NotInComponent(SquareCoord),
    #[error("traced frontier is not a union of cycles: {0}")]
    Trace(#[from] CycleError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutermostBoundary {
    /// Sorted by canonical vertex sequence.
    pub cycles: Vec<Cycle>,
    /// Corners shared by two or more cycles, with the indices meeting there.
    pub pinch_vertices: BTreeMap<CornerCoord, BTreeSet<usize>>,
}

impl OutermostBoundary {
    pub fn edge_set(&self) -> BTreeSet<LatticeEdge> {
        self.cycles.iter().flat_map(|c| c.edges()).collect()
    }

    pub fn is_single_cycle(&self) -> bool {
        self.cycles.len() == 1
    }
}

/// Square-level bitmap over a bounding box with a one-square ring.
struct LocalGrid {
    x0: i32,
    y0: i32,
    w: usize,
    h: usize,
}

impl LocalGrid {
    fn around(squares: &BTreeSet<SquareCoord>) -> Self {
        let (x_min, y_min, x_max, y_max) = bounding_box(squares);
        Self {
            x0: x_min - 1,
            y0: y_min - 1,
            w: (x_max - x_min + 3) as usize,
            h: (y_max - y_min + 3) as usize,
        }
    }

    fn index(&self, s: SquareCoord) -> Option<usize> {
        let (dx, dy) = (s.x - self.x0, s.y - self.y0);
        (dx >= 0 && dy >= 0 && (dx as usize) < self.w && (dy as usize) < self.h)
            .then(|| dy as usize * self.w + dx as usize)
    }

    fn coord(&self, k: usize) -> SquareCoord {
        SquareCoord::new(self.x0 + (k % self.w) as i32, self.y0 + (k / self.w) as i32)
    }
}

/// Squares outside `set` that are plus-connected to infinity, as a
/// predicate valid for every square of the plane.
struct Exterior {
    grid: LocalGrid,
    reached: Vec<bool>,
}

impl Exterior {
    fn of(set: &BTreeSet<SquareCoord>) -> Self {
        let grid = LocalGrid::around(set);
        let mut blocked = vec![false; grid.w * grid.h];
        for &s in set {
            blocked[grid.index(s).expect("inside box")] = true;
        }
        let mut reached = vec![false; grid.w * grid.h];
        let mut stack = vec![0usize];
        reached[0] = true;
        while let Some(k) = stack.pop() {
            for n in grid.coord(k).plus_neighbors() {
                if let Some(nk) = grid.index(n) {
                    if !blocked[nk] && !reached[nk] {
                        reached[nk] = true;
                        stack.push(nk);
                    }
                }
            }
        }
        Self { grid, reached }
    }

    fn contains(&self, s: SquareCoord) -> bool {
        self.grid.index(s).is_none_or(|k| self.reached[k])
    }
}

/// Traces the outermost boundary of a finite, non-empty square set.
pub fn outermost_boundary_of(set: &BTreeSet<SquareCoord>) -> Result<OutermostBoundary, BoundaryError> {
    if set.is_empty() {
        return Err(BoundaryError::Empty);
    }
    let exterior = Exterior::of(set);

    // Frontier edges, each owned by its in-set cosquare.
    let mut owner: HashMap<LatticeEdge, SquareCoord> = HashMap::new();
    let mut incident: HashMap<CornerCoord, Vec<LatticeEdge>> = HashMap::new();
    for &s in set {
        for e in square_boundary(s) {
            let other = e.other_cosquare(s).expect("edge of s");
            if exterior.contains(other) {
                owner.insert(e, s);
                let (a, b) = e.endpoints();
                incident.entry(a).or_default().push(e);
                incident.entry(b).or_default().push(e);
            }
        }
    }

    // At each corner pair up the frontier edges; at a pinch the pairs are
    // the two edges of each in-set square.
    let mut partner: HashMap<(CornerCoord, LatticeEdge), LatticeEdge> = HashMap::new();
    for (&v, edges) in &incident {
        match edges.len() {
            2 => {
                partner.insert((v, edges[0]), edges[1]);
                partner.insert((v, edges[1]), edges[0]);
            }
            4 => {
                for (i, &e) in edges.iter().enumerate() {
                    let mate = edges
                        .iter()
                        .enumerate()
                        .find(|&(j, f)| j != i && owner[f] == owner[&e])
                        .map(|(_, &f)| f)
                        .ok_or_else(|| CycleError::NotACycle(format!("unpaired edge at {v}")))?;
                    partner.insert((v, e), mate);
                }
            }
            d => {
                return Err(CycleError::NotACycle(format!("frontier degree {d} at {v}")).into());
            }
        }
    }

    let mut remaining: BTreeSet<LatticeEdge> = owner.keys().copied().collect();
    let mut cycles = Vec::new();
    while let Some(first) = remaining.pop_first() {
        let (start, mut cur) = first.endpoints();
        let mut walk = vec![start];
        let mut edge = first;
        while cur != start {
            walk.push(cur);
            edge = partner[&(cur, edge)];
            remaining.remove(&edge);
            let (a, b) = edge.endpoints();
            cur = if a == cur { b } else { a };
        }
        cycles.push(Cycle::from_walk(walk)?);
    }
    cycles.sort();

    let mut meeting: BTreeMap<CornerCoord, BTreeSet<usize>> = BTreeMap::new();
    for (i, c) in cycles.iter().enumerate() {
        for &v in c.vertices() {
            meeting.entry(v).or_default().insert(i);
        }
    }
    meeting.retain(|_, ids| ids.len() > 1);
    Ok(OutermostBoundary {
        cycles,
        pinch_vertices: meeting,
    })
}

pub fn outermost_boundary(comp: &Component) -> Result<OutermostBoundary, BoundaryError> {
    outermost_boundary_of(&comp.squares)
}

/// As [`outermost_boundary`], refusing components that touch the window
/// border (their true extent is unknown).
pub fn outermost_boundary_in(grid: &GridConfig, comp: &Component) -> Result<OutermostBoundary, BoundaryError> {
    if !is_finite(grid, comp) {
        return Err(BoundaryError::Unbounded);
    }
    outermost_boundary(comp)
}

/// The boundary cycle enclosing the member square `s`.
pub fn outermost_cycle_of(comp: &Component, s: SquareCoord) -> Result<Cycle, BoundaryError> {
    if !comp.contains(s) {
        return Err(BoundaryError::NotInComponent(s));
    }
    let b = outermost_boundary(comp)?;
    b.cycles
        .into_iter()
        .find(|c| c.interior_mask().contains(s))
        .ok_or(BoundaryError::NotInComponent(s))
}

/// Edges with one cosquare in `comp` and the other vacant.
pub fn boundary_edges(grid: &GridConfig, comp: &Component) -> BTreeSet<LatticeEdge> {
    comp.squares
        .iter()
        .flat_map(|&s| square_boundary(s).into_iter().map(move |e| (s, e)))
        .filter(|&(s, e)| {
            let other = e.other_cosquare(s).expect("edge of s");
            !comp.contains(other) && !grid.is_occupied(other)
        })
        .map(|(_, e)| e)
        .collect()
}

/// Intersection graph of the boundary cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleGraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl CycleGraph {
    pub fn is_acyclic(&self) -> bool {
        let mut parent: Vec<usize> = self.vertices.clone();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &(a, b) in &self.edges {
                let next = if a == i { b } else if b == i { a } else { continue };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn cycle_graph(b: &OutermostBoundary) -> CycleGraph {
    let sets: Vec<_> = b.cycles.iter().map(|c| c.vertex_set()).collect();
    let mut edges = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].iter().any(|v| sets[j].contains(v)) {
                edges.push((i, j));
            }
        }
    }
    CycleGraph {
        vertices: (0..sets.len()).collect(),
        edges,
    }
}

/// Checks the characterising properties of an outermost boundary of the
/// labelled set `set` (every other square counts as vacant), using the
/// cycles' own interiors rather than the tracer's exterior flood.
pub fn verify_outermost_boundary(
    set: &BTreeSet<SquareCoord>,
    kind: Adjacency,
    b: &OutermostBoundary,
) -> Vec<Verdict> {
    let masks: Vec<InteriorMask> = b.cycles.iter().map(|c| c.interior_mask()).collect();
    let mut out = Vec::new();

    out.push(Verdict::from_result("(i) boundary edges", {
        let bad = b.cycles.iter().flat_map(|c| c.edges()).find(|e| {
            let (p, q) = e.cosquares();
            set.contains(&p) == set.contains(&q)
        });
        bad.map_or(Ok(()), |e| Err(format!("edge {e} is not a boundary edge")))
    }));

    let graph = cycle_graph(b);
    out.push(Verdict::from_result(
        "(ii) connected",
        if graph.is_connected() {
            Ok(())
        } else {
            Err(format!("{} cycles, {} contacts", b.cycles.len(), graph.edges.len()))
        },
    ));

    out.push(Verdict::from_result("(iii) disjoint interiors", {
        let mut r = Ok(());
        'outer: for i in 0..b.cycles.len() {
            for j in i + 1..b.cycles.len() {
                if masks[i].intersects(&masks[j]) {
                    r = Err(format!("cycles {i} and {j} overlap"));
                    break 'outer;
                }
                let vi = b.cycles[i].vertex_set();
                let shared = b.cycles[j].vertices().iter().filter(|v| vi.contains(v)).count();
                if shared > 1 {
                    r = Err(format!("cycles {i} and {j} share {shared} vertices"));
                    break 'outer;
                }
            }
        }
        r
    }));

    out.push(Verdict::from_result("(iv) squares enclosed", {
        let bad = set
            .iter()
            .find(|&&s| masks.iter().filter(|m| m.contains(s)).count() != 1);
        bad.map_or(Ok(()), |s| Err(format!("square {s} not in exactly one cycle")))
    }));

    out.push(Verdict::from_result("(v) edge sides", {
        let mut r = Ok(());
        'cycles: for (j, c) in b.cycles.iter().enumerate() {
            for e in c.edges() {
                let (p, q) = e.cosquares();
                let (inside, outside) = if set.contains(&p) { (p, q) } else { (q, p) };
                if !masks[j].contains(inside) || masks.iter().any(|m| m.contains(outside)) {
                    r = Err(format!("edge {e} of cycle {j}"));
                    break 'cycles;
                }
            }
        }
        r
    }));

    out.push(Verdict::from_result(
        "cycle graph acyclic",
        if graph.is_acyclic() {
            Ok(())
        } else {
            Err(format!("{:?}", graph.edges))
        },
    ));

    if kind == Adjacency::Plus {
        out.push(Verdict::from_result(
            "plus gives one cycle",
            if b.is_single_cycle() {
                Ok(())
            } else {
                Err(format!("{} cycles", b.cycles.len()))
            },
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::component_of;
    use crate::lattice::Window;

    fn sq(x: i32, y: i32) -> SquareCoord {
        SquareCoord::new(x, y)
    }

    fn set(pts: &[(i32, i32)]) -> BTreeSet<SquareCoord> {
        pts.iter().map(|&(x, y)| sq(x, y)).collect()
    }

    #[test]
    fn single_square() {
        let b = outermost_boundary_of(&set(&[(0, 0)])).unwrap();
        assert_eq!(b.cycles, vec![Cycle::square(sq(0, 0))]);
        assert!(b.pinch_vertices.is_empty());
    }

    #[test]
    fn diagonal_pair_splits_at_corner() {
        let s = set(&[(0, 0), (1, 1)]);
        let b = outermost_boundary_of(&s).unwrap();
        assert_eq!(b.cycles.len(), 2);
        assert!(b.cycles.iter().all(|c| c.len() == 4));
        let pinch = CornerCoord::new(1, 1).unwrap();
        assert_eq!(b.pinch_vertices.keys().copied().collect::<Vec<_>>(), vec![pinch]);
        let g = cycle_graph(&b);
        assert_eq!(g.edges, vec![(0, 1)]);
        let comp = Component {
            kind: Adjacency::Star,
            squares: s,
            seed: sq(0, 0),
        };
        assert_eq!(outermost_cycle_of(&comp, sq(1, 1)).unwrap(), Cycle::square(sq(1, 1)));
        assert!(outermost_cycle_of(&comp, sq(1, 0)).is_err());
    }

    #[test]
    fn staircase_cycle_graph_is_a_path() {
        let s = set(&[(0, 0), (1, 1), (2, 2)]);
        let b = outermost_boundary_of(&s).unwrap();
        let g = cycle_graph(&b);
        assert_eq!(g.vertices.len(), 3);
        assert_eq!(g.edges.len(), 2);
        assert!(g.is_acyclic() && g.is_connected());
        assert!(verify_outermost_boundary(&s, Adjacency::Star, &b).iter().all(|v| v.passed));
    }

    #[test]
    fn ring_has_one_outer_cycle() {
        let ring = set(&[(-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0)]);
        let b = outermost_boundary_of(&ring).unwrap();
        assert_eq!(b.cycles.len(), 1);
        assert_eq!(b.cycles[0].len(), 12);
        assert!(b.cycles[0].interior_mask().contains(sq(0, 0)));
    }

    #[test]
    fn pinch_with_enclosed_hole_is_not_split() {
        // ring closed by a diagonal contact at its lower-left corner
        let s = set(&[(1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)]);
        let b = outermost_boundary_of(&s).unwrap();
        assert_eq!(b.cycles.len(), 1);
        assert!(b.cycles[0].interior_mask().contains(sq(1, 1)));
        assert!(verify_outermost_boundary(&s, Adjacency::Star, &b).iter().all(|v| v.passed));
    }

    #[test]
    fn boundary_edge_counts() {
        let w = Window::new(-3, -3, 3, 3);
        let count = |pts: &[(i32, i32)]| {
            let g = GridConfig::from_occupied_set(w, set(pts), sq(0, 0)).unwrap();
            let c = component_of(&g, sq(0, 0), Adjacency::Plus).unwrap();
            boundary_edges(&g, &c).len()
        };
        assert_eq!(count(&[(0, 0)]), 4);
        assert_eq!(count(&[(0, 0), (1, 0)]), 6);
        assert_eq!(
            count(&[(0, -1), (1, -1), (2, -1), (2, 0), (2, 1), (1, 1), (0, 1), (0, 0)]),
            16
        );
    }

    #[test]
    fn unbounded_component_rejected() {
        let w = Window::new(-1, -1, 1, 1);
        let g = GridConfig::from_occupied_set(w, set(&[(0, 0), (1, 0)]), sq(0, 0)).unwrap();
        let c = component_of(&g, sq(0, 0), Adjacency::Plus).unwrap();
        assert_eq!(outermost_boundary_in(&g, &c), Err(BoundaryError::Unbounded));
    }

    #[test]
    fn diamond_around_hole_is_one_cycle() {
        // the centre (1,0) is a hole, so none of the diagonal contacts pinch
        let s = set(&[(0, 0), (1, 1), (2, 0), (1, -1)]);
        let b = outermost_boundary_of(&s).unwrap();
        assert_eq!(b.cycles.len(), 1);
        assert_eq!(b.cycles[0].interior_squares().len(), 5);
        assert!(verify_outermost_boundary(&s, Adjacency::Star, &b).iter().all(|v| v.passed));
    }
}
