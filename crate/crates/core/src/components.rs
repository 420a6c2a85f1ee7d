//! Occupied components under plus and star adjacency, the vacant neighbour
//! sets of a plus component, and the star-adjacency graph on vacant squares.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::Cycle;
use crate::lattice::{star_adjacent, GridConfig, SquareCoord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Adjacency {
    Plus,
    Star,
}

impl Adjacency {
    pub fn neighbors(self, s: SquareCoord) -> Vec<SquareCoord> {
        match self {
            Adjacency::Plus => s.plus_neighbors().to_vec(),
            Adjacency::Star => s.star_neighbors().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComponentError {
    #[error("seed vacant: {0}")]
    SeedVacant(SquareCoord),
}

/// A maximal connected set of occupied squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: Adjacency,
    pub squares: BTreeSet<SquareCoord>,
    pub seed: SquareCoord,
}

impl Component {
    pub fn contains(&self, s: SquareCoord) -> bool {
        self.squares.contains(&s)
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// `(x_min, y_min, x_max, y_max)`.
    pub fn bounding_box(&self) -> (i32, i32, i32, i32) {
        bounding_box(&self.squares)
    }
}

pub(crate) fn bounding_box(squares: &BTreeSet<SquareCoord>) -> (i32, i32, i32, i32) {
    squares.iter().fold(
        (i32::MAX, i32::MAX, i32::MIN, i32::MIN),
        |(a, b, c, d), s| (a.min(s.x), b.min(s.y), c.max(s.x), d.max(s.y)),
    )
}

/// Breadth-first flood of occupied squares from `seed`.
pub fn component_of(grid: &GridConfig, seed: SquareCoord, kind: Adjacency) -> Result<Component, ComponentError> {
    if !grid.is_occupied(seed) {
        return Err(ComponentError::SeedVacant(seed));
    }
    let window = grid.window();
    let (w, h) = (window.width(), window.height());
    let cells = grid.cells();
    let idx = |s: SquareCoord| (s.y - window.y_min) as usize * w + (s.x - window.x_min) as usize;
    let mut seen = vec![false; w * h];
    let mut squares = BTreeSet::new();
    let mut queue = VecDeque::from([seed]);
    seen[idx(seed)] = true;
    while let Some(s) = queue.pop_front() {
        squares.insert(s);
        for n in kind.neighbors(s) {
            if window.contains(n) && !seen[idx(n)] && cells[idx(n)] {
                seen[idx(n)] = true;
                queue.push_back(n);
            }
        }
    }
    Ok(Component { kind, squares, seed })
}

/// No square of the component lies on the window's outer ring.
pub fn is_finite(grid: &GridConfig, comp: &Component) -> bool {
    comp.squares.iter().all(|&s| grid.window().inset(s) >= 1)
}

/// Smallest distance from the component to the window sides, in squares.
pub fn margin(grid: &GridConfig, comp: &Component) -> i32 {
    comp.squares
        .iter()
        .map(|&s| grid.window().inset(s))
        .min()
        .unwrap_or(i32::MAX)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaSets {
    /// Every vacant square sharing an edge with the component.
    pub lambda_all: BTreeSet<SquareCoord>,
    /// Those outside `outer` that share an edge with it.
    pub lambda_exterior: BTreeSet<SquareCoord>,
}

/// `outer` is the outermost boundary cycle of the plus component `comp`.
pub fn lambda_sets(grid: &GridConfig, comp: &Component, outer: &Cycle) -> LambdaSets {
    let lambda_all = comp
        .squares
        .iter()
        .flat_map(|s| s.plus_neighbors())
        .filter(|&n| !grid.is_occupied(n))
        .collect();
    let mask = outer.interior_mask();
    let lambda_exterior = outer
        .edges()
        .map(|e| {
            let (p, q) = e.cosquares();
            if mask.contains(p) {
                q
            } else {
                p
            }
        })
        .filter(|&s| !grid.is_occupied(s) && !mask.contains(s))
        .collect();
    LambdaSets {
        lambda_all,
        lambda_exterior,
    }
}

/// Star-adjacency graph induced on a set of (vacant) squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VacantGraph {
    pub vertices: BTreeSet<SquareCoord>,
    pub edges: Vec<(SquareCoord, SquareCoord)>,
}

pub fn vacant_graph(squares: &BTreeSet<SquareCoord>) -> VacantGraph {
    let mut edges = Vec::new();
    for &s in squares {
        for n in s.star_neighbors() {
            if s < n && squares.contains(&n) {
                debug_assert!(star_adjacent(s, n));
                edges.push((s, n));
            }
        }
    }
    edges.sort();
    VacantGraph {
        vertices: squares.clone(),
        edges,
    }
}

/// True when some edge closes a loop in the union-find forest.
pub fn contains_cycle(g: &VacantGraph) -> bool {
    let index: std::collections::HashMap<SquareCoord, usize> =
        g.vertices.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut parent: Vec<usize> = (0..g.vertices.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (a, b) in &g.edges {
        let (ra, rb) = (find(&mut parent, index[a]), find(&mut parent, index[b]));
        if ra == rb {
            return true;
        }
        parent[ra] = rb;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Window;

    fn sq(x: i32, y: i32) -> SquareCoord {
        SquareCoord::new(x, y)
    }

    fn grid(occ: &[(i32, i32)]) -> GridConfig {
        GridConfig::from_occupied_set(
            Window::new(-3, -3, 3, 3),
            occ.iter().map(|&(x, y)| sq(x, y)),
            sq(0, 0),
        )
        .unwrap()
    }

    #[test]
    fn components_by_kind() {
        let g = grid(&[(0, 0)]);
        let c = component_of(&g, sq(0, 0), Adjacency::Plus).unwrap();
        assert_eq!(c.squares, [sq(0, 0)].into());
        let g = grid(&[(0, 0), (1, 1)]);
        let plus = component_of(&g, sq(0, 0), Adjacency::Plus).unwrap();
        assert_eq!(plus.squares, [sq(0, 0)].into());
        let star = component_of(&g, sq(0, 0), Adjacency::Star).unwrap();
        assert_eq!(star.squares, [sq(0, 0), sq(1, 1)].into());
        assert_eq!(
            component_of(&g, sq(2, 2), Adjacency::Plus),
            Err(ComponentError::SeedVacant(sq(2, 2)))
        );
    }

    #[test]
    fn finiteness() {
        let g = grid(&[(0, 0)]);
        let c = component_of(&g, sq(0, 0), Adjacency::Plus).unwrap();
        assert!(is_finite(&g, &c));
        assert_eq!(margin(&g, &c), 3);
        let g = grid(&[(0, 0), (1, 0), (2, 0), (3, 0)]);
        let c = component_of(&g, sq(0, 0), Adjacency::Plus).unwrap();
        assert!(!is_finite(&g, &c));
        let row: Vec<_> = (-3..=3).map(|x| (x, 0)).collect();
        let g = grid(&row);
        let c = component_of(&g, sq(0, 0), Adjacency::Star).unwrap();
        assert!(!is_finite(&g, &c));
    }

    #[test]
    fn vacant_graph_examples() {
        let ring: BTreeSet<_> = [sq(0, 1), sq(1, 0), sq(0, -1), sq(-1, 0)].into();
        let g = vacant_graph(&ring);
        assert_eq!(g.edges.len(), 4);
        assert!(contains_cycle(&g));
        let g = vacant_graph(&BTreeSet::new());
        assert!(g.vertices.is_empty() && g.edges.is_empty());
        assert!(!contains_cycle(&g));
        let g = vacant_graph(&[sq(0, 0), sq(2, 2)].into());
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 0));
        let path: BTreeSet<_> = [sq(0, 0), sq(1, 1), sq(2, 2), sq(3, 2)].into();
        assert!(!contains_cycle(&vacant_graph(&path)));
        let tri: BTreeSet<_> = [sq(0, 0), sq(1, 0), sq(0, 1)].into();
        assert!(contains_cycle(&vacant_graph(&tri)));
    }
}
