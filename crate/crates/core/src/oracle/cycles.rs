//! Outermost boundaries straight from the definition, by listing every
//! cycle in the edge graph of a small set.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::boundary::{outermost_boundary_of, OutermostBoundary};
use crate::check::Verdict;
use crate::components::bounding_box;
use crate::cycle::Cycle;
use crate::lattice::{square_boundary, CornerCoord, LatticeEdge, SquareCoord};

use super::ray::ray_cast_interior_set;

/// Sets whose bounding box fits in this many squares per side get the
/// exhaustive check.
pub const DEFINITION_MAX_SIDE: i32 = 4;

/// Every simple cycle in the graph formed by the corners and edges of the
/// squares in `set`.
pub fn simple_cycles(set: &BTreeSet<SquareCoord>) -> Vec<Cycle> {
    let mut adj: BTreeMap<CornerCoord, BTreeSet<CornerCoord>> = BTreeMap::new();
    for &s in set {
        for e in square_boundary(s) {
            let (a, b) = e.endpoints();
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
    }
    let corners: Vec<CornerCoord> = adj.keys().copied().collect();
    let index: BTreeMap<CornerCoord, usize> = corners.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let graph: Vec<Vec<usize>> = adj.values().map(|ns| ns.iter().map(|n| index[n]).collect()).collect();

    let mut found = Vec::new();
    let mut on_path = vec![false; corners.len()];
    // Each cycle is rooted at its smallest vertex and walked in the
    // direction whose second vertex is smaller than its last.
    for root in 0..corners.len() {
        let mut path = vec![root];
        on_path[root] = true;
        extend(&graph, &mut path, &mut on_path, &mut |p| {
            found.push(Cycle::from_walk(p.iter().map(|&i| corners[i]).collect()).expect("simple cycle"))
        });
        on_path[root] = false;
    }
    found
}

fn extend(graph: &[Vec<usize>], path: &mut Vec<usize>, on_path: &mut [bool], emit: &mut impl FnMut(&[usize])) {
    let root = path[0];
    let last = *path.last().expect("non-empty");
    for &next in &graph[last] {
        if next == root {
            if path.len() >= 4 && path[1] < last {
                emit(path);
            }
        } else if next > root && !on_path[next] {
            path.push(next);
            on_path[next] = true;
            extend(graph, path, on_path, emit);
            on_path[next] = false;
            path.pop();
        }
    }
}

/// A listed cycle with its edges and ray cast interior.
struct Listed {
    cycle: Cycle,
    edges: HashSet<LatticeEdge>,
    inside: BTreeSet<SquareCoord>,
}

impl Listed {
    fn new(cycle: Cycle) -> Self {
        Listed {
            edges: cycle.edge_set(),
            inside: ray_cast_interior_set(&cycle),
            cycle,
        }
    }

    fn edge_outside(&self, e: LatticeEdge) -> bool {
        let (p, q) = e.cosquares();
        !self.inside.contains(&p) && !self.inside.contains(&q)
    }

    fn edge_inside(&self, e: LatticeEdge) -> bool {
        let (p, q) = e.cosquares();
        self.inside.contains(&p) && self.inside.contains(&q)
    }
}

fn listed(set: &BTreeSet<SquareCoord>) -> Vec<Listed> {
    simple_cycles(set).into_iter().map(Listed::new).collect()
}


fn small(set: &BTreeSet<SquareCoord>) -> bool {
    if set.is_empty() {
        return false;
    }
    let (x0, y0, x1, y1) = bounding_box(set);
    x1 - x0 < DEFINITION_MAX_SIDE && y1 - y0 < DEFINITION_MAX_SIDE
}

/// The outermost edges by definition (on every cycle or outside it) are
/// exactly the edges of `b`. `None` when `set` is too large to enumerate.
pub fn verify_outermost_by_definition(set: &BTreeSet<SquareCoord>, b: &OutermostBoundary) -> Option<Verdict> {
    small(set).then(|| outermost_by_definition(set, b, &listed(set)))
}

/// For each square, any cycle enclosing it has every edge on or inside the
/// boundary cycle around that square. `None` when `set` is too large.
pub fn verify_enclosing_cycles(set: &BTreeSet<SquareCoord>) -> Option<Verdict> {
    if !small(set) {
        return None;
    }
    Some(match outermost_boundary_of(set) {
        Ok(b) => enclosing_cycles(set, &b, &listed(set)),
        Err(e) => Verdict::fail("enclosing cycles stay inside", e.to_string()),
    })
}

/// Both checks above from one listing of the cycles.
pub fn verify_by_definition(set: &BTreeSet<SquareCoord>, b: &OutermostBoundary) -> Option<[Verdict; 2]> {
    if !small(set) {
        return None;
    }
    let cycles = listed(set);
    Some([outermost_by_definition(set, b, &cycles), enclosing_cycles(set, b, &cycles)])
}

fn outermost_by_definition(set: &BTreeSet<SquareCoord>, b: &OutermostBoundary, cycles: &[Listed]) -> Verdict {
    let all_edges: BTreeSet<LatticeEdge> = set.iter().flat_map(|&s| square_boundary(s)).collect();
    let outermost: BTreeSet<LatticeEdge> = all_edges
        .into_iter()
        .filter(|&e| cycles.iter().all(|c| c.edges.contains(&e) || c.edge_outside(e)))
        .collect();
    let traced = b.edge_set();
    if outermost == traced {
        Verdict::pass("outermost edges by definition")
    } else {
        let extra: Vec<String> = traced.difference(&outermost).map(|e| e.to_string()).collect();
        let missing: Vec<String> = outermost.difference(&traced).map(|e| e.to_string()).collect();
        Verdict::fail(
            "outermost edges by definition",
            format!("traced only: [{}], definition only: [{}]", extra.join(" "), missing.join(" ")),
        )
    }
}

fn enclosing_cycles(set: &BTreeSet<SquareCoord>, b: &OutermostBoundary, cycles: &[Listed]) -> Verdict {
    let own: Vec<Listed> = b.cycles.iter().cloned().map(Listed::new).collect();
    for &s in set {
        let Some(own) = own.iter().find(|c| c.inside.contains(&s)) else {
            return Verdict::fail("enclosing cycles stay inside", format!("{s} not enclosed"));
        };
        for c in cycles.iter().filter(|c| c.inside.contains(&s)) {
            if let Some(e) = c.cycle.edges().find(|&e| !own.edges.contains(&e) && !own.edge_inside(e)) {
                return Verdict::fail("enclosing cycles stay inside", format!("square {s}: edge {e} of {}", c.cycle));
            }
        }
    }
    Verdict::pass("enclosing cycles stay inside")
}
