//! Cycles and self-avoiding paths on the corner lattice, exact interiors,
//! bridges, gaps and cycle merging.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::lattice::{square_boundary, CornerCoord, LatticeEdge, SquareCoord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("not mergeable: cycles share {0} vertices")]
    NotMergeable(usize),
    #[error("interiors intersect")]
    InteriorsIntersect,
    #[error("gap undefined for bridge {0}")]
    GapUndefined(String),
    #[error("no bridge gap contains the host cycle")]
    NoContainingGap,
    #[error("uniqueness violated: {0} candidates")]
    UniquenessViolated(usize),
    #[error("square {0} is interior to the cycle")]
    SquareInterior(SquareCoord),
    #[error("detached square {0}")]
    DetachedSquare(SquareCoord),
    #[error("merge did not terminate after {0} steps")]
    MergeDiverged(usize),
}

/// Twice the signed area enclosed by a closed vertex walk, in doubled units.
fn signed_area2(verts: &[CornerCoord]) -> i64 {
    let n = verts.len();
    (0..n)
        .map(|i| {
            let (p, q) = (verts[i], verts[(i + 1) % n]);
            p.u as i64 * q.v as i64 - q.u as i64 * p.v as i64
        })
        .sum()
}

fn is_step(p: CornerCoord, q: CornerCoord) -> bool {
    let (du, dv) = ((p.u - q.u).abs(), (p.v - q.v).abs());
    (du == 2 && dv == 0) || (du == 0 && dv == 2)
}

/// A simple closed edge loop on the corner lattice.
///
/// Stored as its vertex sequence, starting from the lexicographically
/// smallest corner and running counterclockwise. Two cycles with the same
/// edge set therefore compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    verts: Vec<CornerCoord>,
}

impl Cycle {
    /// Builds a cycle from a closed vertex walk (the closing vertex is not
    /// repeated).
    pub fn from_walk(mut verts: Vec<CornerCoord>) -> Result<Self, CycleError> {
        if verts.len() > 1 && verts.first() == verts.last() {
            verts.pop();
        }
        if verts.len() < 4 {
            return Err(CycleError::NotACycle(format!("{} vertices", verts.len())));
        }
        if let Some(bad) = verts
            .iter()
            .find(|c| CornerCoord::new(c.u, c.v).is_none())
        {
            return Err(CycleError::NotACycle(format!("{bad} is not a corner")));
        }
        let n = verts.len();
        for i in 0..n {
            if !is_step(verts[i], verts[(i + 1) % n]) {
                return Err(CycleError::NotACycle(format!(
                    "{} and {} are not adjacent",
                    verts[i],
                    verts[(i + 1) % n]
                )));
            }
        }
        let distinct: HashSet<_> = verts.iter().collect();
        if distinct.len() != n {
            return Err(CycleError::NotACycle("repeated vertex".into()));
        }
        Ok(Self::canonical(verts))
    }

    /// Builds a cycle from an unordered edge set; every incident corner must
    /// have degree exactly 2 and the edges must form a single loop.
    pub fn from_edges<I>(edges: I) -> Result<Self, CycleError>
    where
        I: IntoIterator<Item = LatticeEdge>,
    {
        let edges: BTreeSet<LatticeEdge> = edges.into_iter().collect();
        let mut adj: HashMap<CornerCoord, Vec<CornerCoord>> = HashMap::new();
        for e in &edges {
            let (a, b) = e.endpoints();
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        if let Some((v, nb)) = adj.iter().find(|(_, nb)| nb.len() != 2) {
            return Err(CycleError::NotACycle(format!("{v} has degree {}", nb.len())));
        }
        let Some(start) = edges.first().map(|e| e.endpoints().0) else {
            return Err(CycleError::NotACycle("no edges".into()));
        };
        let mut verts = vec![start];
        let mut prev = start;
        let mut cur = adj[&start][0];
        while cur != start {
            verts.push(cur);
            let nb = &adj[&cur];
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        if verts.len() != edges.len() {
            return Err(CycleError::NotACycle(format!(
                "edges form {} loops",
                if verts.len() < edges.len() { "several" } else { "degenerate" }
            )));
        }
        Self::from_walk(verts)
    }

    /// The 4-edge boundary of a single square.
    pub fn square(s: SquareCoord) -> Self {
        Self::canonical(s.corners().to_vec())
    }

    fn canonical(mut verts: Vec<CornerCoord>) -> Self {
        if signed_area2(&verts) < 0 {
            verts.reverse();
        }
        let start = verts
            .iter()
            .enumerate()
            .min_by_key(|(_, c)| **c)
            .map(|(i, _)| i)
            .unwrap_or(0);
        verts.rotate_left(start);
        Self { verts }
    }

    pub fn vertices(&self) -> &[CornerCoord] {
        &self.verts
    }

    /// Number of edges (equal to the number of vertices).
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Edges in traversal order, starting with the edge leaving the first
    /// vertex.
    pub fn edges(&self) -> impl Iterator<Item = LatticeEdge> + '_ {
        let n = self.verts.len();
        (0..n).map(move |i| LatticeEdge::between(self.verts[i], self.verts[(i + 1) % n]))
    }

    pub fn edge_set(&self) -> HashSet<LatticeEdge> {
        self.edges().collect()
    }

    pub fn vertex_set(&self) -> HashSet<CornerCoord> {
        self.verts.iter().copied().collect()
    }

    pub fn index_of(&self, c: CornerCoord) -> Option<usize> {
        self.verts.iter().position(|&v| v == c)
    }

    /// Twice the enclosed area in doubled units; the square count is this
    /// divided by 8.
    pub fn area2(&self) -> i64 {
        signed_area2(&self.verts)
    }

    /// Vertices from index `from` forward to index `to`, inclusive.
    fn arc(&self, from: usize, to: usize) -> Vec<CornerCoord> {
        let n = self.verts.len();
        let mut out = vec![self.verts[from]];
        let mut i = from;
        while i != to {
            i = (i + 1) % n;
            out.push(self.verts[i]);
        }
        out
    }

    /// Corners closed into a walk with the first vertex repeated at the end.
    pub fn closed_walk(&self) -> Vec<CornerCoord> {
        let mut w = self.verts.clone();
        w.extend(self.verts.first().copied());
        w
    }

    pub fn interior_mask(&self) -> InteriorMask {
        InteriorMask::of(self)
    }

    pub fn interior_squares(&self) -> BTreeSet<SquareCoord> {
        self.interior_mask().squares().collect()
    }

    /// True when both cosquares of `e` are interior.
    pub fn edge_is_interior(&self, mask: &InteriorMask, e: LatticeEdge) -> bool {
        let (p, q) = e.cosquares();
        mask.contains(p) && mask.contains(q)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.verts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn interior_squares(c: &Cycle) -> BTreeSet<SquareCoord> {
    c.interior_squares()
}

/// Interior squares of a cycle as a bitmap over its bounding box.
///
/// Computed by flooding squares from outside the bounding box with the
/// cycle's edges as walls; whatever the flood cannot reach is interior.
#[derive(Debug, Clone)]
pub struct InteriorMask {
    x0: i32,
    y0: i32,
    w: usize,
    h: usize,
    bits: Vec<bool>,
}

impl InteriorMask {
    fn of(c: &Cycle) -> Self {
        let (mut umin, mut umax, mut vmin, mut vmax) = (i32::MAX, i32::MIN, i32::MAX, i32::MIN);
        for p in c.vertices() {
            umin = umin.min(p.u);
            umax = umax.max(p.u);
            vmin = vmin.min(p.v);
            vmax = vmax.max(p.v);
        }
        // One ring of squares beyond the bounding box.
        let x0 = (umin + 1) / 2 - 1;
        let y0 = (vmin + 1) / 2 - 1;
        let w = ((umax - 1) / 2 + 1 - x0 + 1) as usize;
        let h = ((vmax - 1) / 2 + 1 - y0 + 1) as usize;
        let idx = |x: i32, y: i32| (y - y0) as usize * w + (x - x0) as usize;

        // east[i]: wall between square i and its east neighbour; north[i] likewise.
        let mut east = vec![false; w * h];
        let mut north = vec![false; w * h];
        for e in c.edges() {
            let (a, _) = e.endpoints();
            if e.is_vertical() {
                east[idx((a.u - 1) / 2, (a.v + 1) / 2)] = true;
            } else {
                north[idx((a.u + 1) / 2, (a.v - 1) / 2)] = true;
            }
        }

        let mut outside = vec![false; w * h];
        let mut stack = vec![(0usize, 0usize)];
        outside[0] = true;
        while let Some((i, j)) = stack.pop() {
            let k = j * w + i;
            let mut visit = |ni: usize, nj: usize, stack: &mut Vec<(usize, usize)>| {
                let nk = nj * w + ni;
                if !outside[nk] {
                    outside[nk] = true;
                    stack.push((ni, nj));
                }
            };
            if i + 1 < w && !east[k] {
                visit(i + 1, j, &mut stack);
            }
            if i > 0 && !east[k - 1] {
                visit(i - 1, j, &mut stack);
            }
            if j + 1 < h && !north[k] {
                visit(i, j + 1, &mut stack);
            }
            if j > 0 && !north[k - w] {
                visit(i, j - 1, &mut stack);
            }
        }
        let bits = outside.into_iter().map(|o| !o).collect();
        Self { x0, y0, w, h, bits }
    }

    pub fn contains(&self, s: SquareCoord) -> bool {
        let (dx, dy) = (s.x - self.x0, s.y - self.y0);
        if dx < 0 || dy < 0 || dx as usize >= self.w || dy as usize >= self.h {
            return false;
        }
        self.bits[dy as usize * self.w + dx as usize]
    }

    /// Interior squares in row-major order from the bottom row.
    pub fn squares(&self) -> impl Iterator<Item = SquareCoord> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(k, _)| {
            SquareCoord::new(self.x0 + (k % self.w) as i32, self.y0 + (k / self.w) as i32)
        })
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn intersects(&self, other: &InteriorMask) -> bool {
        self.squares().any(|s| other.contains(s))
    }

    pub fn contains_all(&self, other: &InteriorMask) -> bool {
        other.squares().all(|s| self.contains(s))
    }
}

/// A self-avoiding path of lattice edges, stored as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    verts: Vec<CornerCoord>,
}

impl LatticePath {
    pub fn from_vertices(verts: Vec<CornerCoord>) -> Result<Self, CycleError> {
        if verts.len() < 2 {
            return Err(CycleError::NotAPath("fewer than two vertices".into()));
        }
        if !verts.windows(2).all(|w| is_step(w[0], w[1])) {
            return Err(CycleError::NotAPath("non-adjacent consecutive vertices".into()));
        }
        let distinct: HashSet<_> = verts.iter().collect();
        if distinct.len() != verts.len() {
            return Err(CycleError::NotAPath("repeated vertex".into()));
        }
        Ok(Self { verts })
    }

    pub fn vertices(&self) -> &[CornerCoord] {
        &self.verts
    }

    pub fn endvertices(&self) -> (CornerCoord, CornerCoord) {
        (self.verts[0], self.verts[self.verts.len() - 1])
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.verts.len() < 2
    }

    pub fn edges(&self) -> impl Iterator<Item = LatticeEdge> + '_ {
        self.verts.windows(2).map(|w| LatticeEdge::between(w[0], w[1]))
    }

    pub fn reversed(&self) -> Self {
        let mut verts = self.verts.clone();
        verts.reverse();
        Self { verts }
    }

    /// The same path oriented so that its first vertex is the smaller end.
    pub fn normalized(&self) -> Self {
        if self.verts[0] <= self.verts[self.verts.len() - 1] {
            self.clone()
        } else {
            self.reversed()
        }
    }

    fn min_edge(&self) -> LatticeEdge {
        self.edges().min().expect("path has an edge")
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.verts.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Closes `path` (from `a` to `b`) with `back` (from `b` to `a`) into a cycle.
fn close(path: &[CornerCoord], back: &[CornerCoord]) -> Result<Cycle, CycleError> {
    let mut walk = path.to_vec();
    walk.extend_from_slice(&back[1..back.len() - 1]);
    Cycle::from_walk(walk)
}

/// All bridges of `host` for `target`.
#[derive(Debug, Clone)]
pub struct BridgeSet {
    pub bridges: Vec<LatticePath>,
    pub host: Cycle,
    pub target: Cycle,
}

/// Maximal subpaths of `c` that run through the exterior of `d` and end on
/// `d`. Vertices of `c` lying on `d` split bridges. Sorted by smallest edge.
pub fn find_bridges(c: &Cycle, d: &Cycle) -> BridgeSet {
    let d_mask = d.interior_mask();
    let bridges = bridges_with_mask(c, d, &d_mask);
    BridgeSet {
        bridges,
        host: c.clone(),
        target: d.clone(),
    }
}

fn bridges_with_mask(c: &Cycle, d: &Cycle, d_mask: &InteriorMask) -> Vec<LatticePath> {
    let on_d = d.vertex_set();
    let d_edges = d.edge_set();
    let cv = c.vertices();
    let n = cv.len();
    let Some(start) = cv.iter().position(|v| on_d.contains(v)) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut seg = vec![cv[start]];
    for k in 1..=n {
        let v = cv[(start + k) % n];
        seg.push(v);
        if on_d.contains(&v) {
            let first = LatticeEdge::between(seg[0], seg[1]);
            let exterior = !d_edges.contains(&first) && {
                let (p, _) = first.cosquares();
                !d_mask.contains(p)
            };
            if exterior && seg[0] != v {
                out.push(LatticePath { verts: std::mem::take(&mut seg) });
            }
            seg = vec![v];
        }
    }
    out.sort_by_key(|p| p.min_edge());
    out
}

/// A gap cycle together with the base it uses on the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap {
    pub cycle: Cycle,
    /// Subpath of the target from the bridge's first to its last vertex.
    pub base: LatticePath,
    /// The complementary subpath of the target, same orientation.
    pub rest: LatticePath,
}

/// The gap between a bridge and `d`: of the two ways to close the bridge
/// along `d`, the one enclosing no interior square of `d`.
pub fn gap_of(bridge: &LatticePath, d: &Cycle) -> Result<Gap, CycleError> {
    gap_with_mask(bridge, d, &d.interior_mask())
}

fn gap_with_mask(bridge: &LatticePath, d: &Cycle, d_mask: &InteriorMask) -> Result<Gap, CycleError> {
    let (a, b) = bridge.endvertices();
    let (Some(ia), Some(ib)) = (d.index_of(a), d.index_of(b)) else {
        return Err(CycleError::GapUndefined(format!("{bridge}: endvertex off target")));
    };
    if ia == ib {
        return Err(CycleError::GapUndefined(format!("{bridge}: closed bridge")));
    }
    // Two arcs of d from a to b: one forward, one backward.
    let fwd = d.arc(ia, ib);
    let mut bwd = d.arc(ib, ia);
    bwd.reverse();
    let mut fwd_back = fwd.clone();
    fwd_back.reverse();
    let mut bwd_back = bwd.clone();
    bwd_back.reverse();

    let empty_of_d = |cyc: &Cycle| !cyc.interior_mask().intersects(d_mask);
    let via_fwd = close(bridge.vertices(), &fwd_back)?;
    let via_bwd = close(bridge.vertices(), &bwd_back)?;
    match (empty_of_d(&via_fwd), empty_of_d(&via_bwd)) {
        (true, false) => Ok(Gap {
            cycle: via_fwd,
            base: LatticePath { verts: fwd },
            rest: LatticePath { verts: bwd },
        }),
        (false, true) => Ok(Gap {
            cycle: via_bwd,
            base: LatticePath { verts: bwd },
            rest: LatticePath { verts: fwd },
        }),
        _ => Err(CycleError::GapUndefined(bridge.to_string())),
    }
}

/// One iteration of a merge: `bridge` replaced `gap.base` in the evolving
/// cycle, producing `result`.
#[derive(Debug, Clone)]
pub struct MergeStep {
    pub bridge: LatticePath,
    pub gap: Gap,
    pub result: Cycle,
}

fn shared_vertex_count(c: &Cycle, d: &Cycle) -> usize {
    let dv = d.vertex_set();
    c.vertices().iter().filter(|v| dv.contains(v)).count()
}

/// Merges `c` into `d` bridge by bridge, taking the bridge with the
/// smallest edge first at every step.
pub fn merge_cycles(c: &Cycle, d: &Cycle) -> Result<Cycle, CycleError> {
    merge_cycles_by(c, d, |_| 0).map(|(cycle, _)| cycle)
}

/// Like [`merge_cycles`], with `pick` choosing which of the current
/// (sorted) bridges to merge next. Returns the per-step trace as well.
pub fn merge_cycles_by<F>(c: &Cycle, d: &Cycle, mut pick: F) -> Result<(Cycle, Vec<MergeStep>), CycleError>
where
    F: FnMut(&[LatticePath]) -> usize,
{
    let shared = shared_vertex_count(c, d);
    if shared < 2 {
        return Err(CycleError::NotMergeable(shared));
    }
    let mut e = d.clone();
    let mut steps = Vec::new();
    // Each step moves at least one edge of c onto e.
    for _ in 0..=c.len() {
        let mask = e.interior_mask();
        let bridges = bridges_with_mask(c, &e, &mask);
        if bridges.is_empty() {
            return Ok((e, steps));
        }
        let k = pick(&bridges).min(bridges.len() - 1);
        let bridge = bridges[k].clone();
        let gap = gap_with_mask(&bridge, &e, &mask)?;
        let mut back = gap.rest.vertices().to_vec();
        back.reverse();
        let next = close(bridge.vertices(), &back)?;
        steps.push(MergeStep {
            bridge,
            gap,
            result: next.clone(),
        });
        e = next;
    }
    Err(CycleError::MergeDiverged(c.len()))
}

/// The unique cycle `merged = p1 ∪ p2`, `p1 ⊂ d` a bridge for `c` and
/// `p2 ⊂ c` a bridge for `d`, enclosing both inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeDecomposition {
    pub p1: LatticePath,
    pub p2: LatticePath,
    pub merged: Cycle,
}

pub fn bridge_decomposition(c: &Cycle, d: &Cycle) -> Result<BridgeDecomposition, CycleError> {
    let c_mask = c.interior_mask();
    let d_mask = d.interior_mask();
    if c_mask.intersects(&d_mask) {
        return Err(CycleError::InteriorsIntersect);
    }
    let shared = shared_vertex_count(c, d);
    if shared < 2 {
        return Err(CycleError::NotMergeable(shared));
    }
    let mut found = Vec::new();
    for bridge in bridges_with_mask(c, d, &d_mask) {
        let gap = gap_with_mask(&bridge, d, &d_mask)?;
        if gap.cycle.interior_mask().contains_all(&c_mask) {
            found.push((bridge, gap));
        }
    }
    match found.len() {
        0 => Err(CycleError::NoContainingGap),
        1 => {
            let (bridge, gap) = found.pop().expect("one candidate");
            let mut back = gap.rest.vertices().to_vec();
            back.reverse();
            let merged = close(bridge.vertices(), &back)?;
            Ok(BridgeDecomposition {
                p1: gap.rest.normalized(),
                p2: bridge.normalized(),
                merged,
            })
        }
        n => Err(CycleError::UniquenessViolated(n)),
    }
}

/// Merges the exterior square `y` into `c`.
pub fn merge_square(c: &Cycle, y: SquareCoord) -> Result<Cycle, CycleError> {
    let mask = c.interior_mask();
    if mask.contains(y) {
        return Err(CycleError::SquareInterior(y));
    }
    let edges = c.edge_set();
    if !square_boundary(y).iter().any(|e| edges.contains(e)) {
        return Err(CycleError::DetachedSquare(y));
    }
    merge_cycles(&Cycle::square(y), c)
}
