//! Exact integer geometry of the unit-square tiling.
//!
//! A square is addressed by its centre `(x, y)`. Corners sit at half-integer
//! positions, so they are stored doubled: the corners of square `(x, y)` are
//! `(2x ± 1, 2y ± 1)`, and every corner coordinate is odd. All predicates in
//! the crate are therefore exact.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A unit square, identified by the integer coordinates of its centre.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct SquareCoord {
    pub x: i32,
    pub y: i32,
}

impl SquareCoord {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    /// The four edge-sharing neighbours, in E, N, W, S order.
    pub fn plus_neighbors(self) -> [SquareCoord; 4] {
        let Self { x, y } = self;
        [
            Self::new(x + 1, y),
            Self::new(x, y + 1),
            Self::new(x - 1, y),
            Self::new(x, y - 1),
        ]
    }

    /// The eight corner-sharing neighbours, counterclockwise from east.
    pub fn star_neighbors(self) -> [SquareCoord; 8] {
        let Self { x, y } = self;
        [
            Self::new(x + 1, y),
            Self::new(x + 1, y + 1),
            Self::new(x, y + 1),
            Self::new(x - 1, y + 1),
            Self::new(x - 1, y),
            Self::new(x - 1, y - 1),
            Self::new(x, y - 1),
            Self::new(x + 1, y - 1),
        ]
    }

    /// Corners counterclockwise from the bottom-left one.
    pub fn corners(self) -> [CornerCoord; 4] {
        let (u, v) = (2 * self.x, 2 * self.y);
        [
            CornerCoord::new_unchecked(u - 1, v - 1),
            CornerCoord::new_unchecked(u + 1, v - 1),
            CornerCoord::new_unchecked(u + 1, v + 1),
            CornerCoord::new_unchecked(u - 1, v + 1),
        ]
    }
}

impl fmt::Display for SquareCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A square corner in doubled coordinates; both components are odd.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct CornerCoord {
    pub u: i32,
    pub v: i32,
}

impl CornerCoord {
    /// Returns `None` unless both doubled coordinates are odd.
    pub fn new(u: i32, v: i32) -> Option<Self> {
        (u.rem_euclid(2) == 1 && v.rem_euclid(2) == 1).then_some(Self { u, v })
    }

    pub(crate) const fn new_unchecked(u: i32, v: i32) -> Self {
        Self { u, v }
    }

    /// The four squares sharing this corner: SW, SE, NE, NW.
    pub fn squares(self) -> [SquareCoord; 4] {
        let (l, r) = ((self.u - 1) / 2, (self.u + 1) / 2);
        let (b, t) = ((self.v - 1) / 2, (self.v + 1) / 2);
        [
            SquareCoord::new(l, b),
            SquareCoord::new(r, b),
            SquareCoord::new(r, t),
            SquareCoord::new(l, t),
        ]
    }

    /// Unit steps along the lattice, E, N, W, S.
    pub fn neighbors(self) -> [CornerCoord; 4] {
        let Self { u, v } = self;
        [
            Self::new_unchecked(u + 2, v),
            Self::new_unchecked(u, v + 2),
            Self::new_unchecked(u - 2, v),
            Self::new_unchecked(u, v - 2),
        ]
    }
}

impl fmt::Display for CornerCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.u, self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("not a lattice edge: {0} - {1}")]
pub struct EdgeError(pub CornerCoord, pub CornerCoord);

/// An axis-aligned unit segment between two corners, stored with the
/// lexicographically smaller endpoint first.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct LatticeEdge {
    a: CornerCoord,
    b: CornerCoord,
}

impl LatticeEdge {
    pub fn new(p: CornerCoord, q: CornerCoord) -> Result<Self, EdgeError> {
        let du = (p.u - q.u).abs();
        let dv = (p.v - q.v).abs();
        let odd = |c: CornerCoord| CornerCoord::new(c.u, c.v).is_some();
        if !(odd(p) && odd(q) && du + dv == 2 && (du == 0 || dv == 0)) {
            return Err(EdgeError(p, q));
        }
        Ok(Self::between(p, q))
    }

    /// Caller guarantees `p` and `q` are lattice neighbours.
    pub(crate) fn between(p: CornerCoord, q: CornerCoord) -> Self {
        if p <= q {
            Self { a: p, b: q }
        } else {
            Self { a: q, b: p }
        }
    }

    pub fn endpoints(self) -> (CornerCoord, CornerCoord) {
        (self.a, self.b)
    }

    pub fn is_vertical(self) -> bool {
        self.a.u == self.b.u
    }

    /// The two squares having this edge on their boundary, ordered
    /// lexicographically. They are always plus-adjacent.
    pub fn cosquares(self) -> (SquareCoord, SquareCoord) {
        if self.is_vertical() {
            // a.v + 1 == b.v - 1 is the doubled ordinate of the edge midpoint.
            let y = (self.a.v + 1) / 2;
            (
                SquareCoord::new((self.a.u - 1) / 2, y),
                SquareCoord::new((self.a.u + 1) / 2, y),
            )
        } else {
            let x = (self.a.u + 1) / 2;
            (
                SquareCoord::new(x, (self.a.v - 1) / 2),
                SquareCoord::new(x, (self.a.v + 1) / 2),
            )
        }
    }

    /// The cosquare other than `s`, if `s` is one of them.
    pub fn other_cosquare(self, s: SquareCoord) -> Option<SquareCoord> {
        let (p, q) = self.cosquares();
        if p == s {
            Some(q)
        } else if q == s {
            Some(p)
        } else {
            None
        }
    }
}

impl fmt::Display for LatticeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

pub fn plus_adjacent(a: SquareCoord, b: SquareCoord) -> bool {
    (a.x - b.x).abs() + (a.y - b.y).abs() == 1
}

pub fn star_adjacent(a: SquareCoord, b: SquareCoord) -> bool {
    a != b && (a.x - b.x).abs().max((a.y - b.y).abs()) == 1
}

/// The four edges of `s`, counterclockwise starting from the bottom edge.
pub fn square_boundary(s: SquareCoord) -> [LatticeEdge; 4] {
    let [sw, se, ne, nw] = s.corners();
    [
        LatticeEdge::between(sw, se),
        LatticeEdge::between(se, ne),
        LatticeEdge::between(ne, nw),
        LatticeEdge::between(nw, sw),
    ]
}

pub fn edge_cosquares(e: LatticeEdge) -> (SquareCoord, SquareCoord) {
    e.cosquares()
}

/// Inclusive rectangle of squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub x_min: i32,
    pub y_min: i32,
    pub x_max: i32,
    pub y_max: i32,
}

impl Window {
    pub fn new(x_min: i32, y_min: i32, x_max: i32, y_max: i32) -> Self {
        assert!(x_min <= x_max && y_min <= y_max, "empty window");
        Self {
            x_min,
            y_min,
            x_max,
            y_max,
        }
    }

    pub fn width(&self) -> usize {
        (self.x_max - self.x_min + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.y_max - self.y_min + 1) as usize
    }

    pub fn contains(&self, s: SquareCoord) -> bool {
        (self.x_min..=self.x_max).contains(&s.x) && (self.y_min..=self.y_max).contains(&s.y)
    }

    /// Distance (in squares) from `s` to the nearest window side; 0 on the
    /// outer ring. Negative outside.
    pub fn inset(&self, s: SquareCoord) -> i32 {
        (s.x - self.x_min)
            .min(self.x_max - s.x)
            .min(s.y - self.y_min)
            .min(self.y_max - s.y)
    }

    fn index(&self, s: SquareCoord) -> usize {
        (s.y - self.y_min) as usize * self.width() + (s.x - self.x_min) as usize
    }

    /// Row-major from the bottom row.
    pub fn squares(&self) -> impl Iterator<Item = SquareCoord> + '_ {
        (self.y_min..=self.y_max)
            .flat_map(move |y| (self.x_min..=self.x_max).map(move |x| SquareCoord::new(x, y)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("origin {0} lies outside the window")]
    OriginOutside(SquareCoord),
    #[error("origin must be occupied")]
    OriginVacant,
    #[error("occupancy has {got} cells, window needs {want}")]
    SizeMismatch { got: usize, want: usize },
}

/// A finite window of occupied/vacant squares. Every square outside the
/// window is vacant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridConfig {
    window: Window,
    occupied: Vec<bool>,
    origin: SquareCoord,
}

impl GridConfig {
    /// `occupied` is row-major from the bottom row of `window`.
    pub fn new(window: Window, occupied: Vec<bool>, origin: SquareCoord) -> Result<Self, GridError> {
        let want = window.width() * window.height();
        if occupied.len() != want {
            return Err(GridError::SizeMismatch {
                got: occupied.len(),
                want,
            });
        }
        if !window.contains(origin) {
            return Err(GridError::OriginOutside(origin));
        }
        let grid = Self {
            window,
            occupied,
            origin,
        };
        if !grid.is_occupied(origin) {
            return Err(GridError::OriginVacant);
        }
        Ok(grid)
    }

    pub fn from_occupied_set<I>(window: Window, occupied: I, origin: SquareCoord) -> Result<Self, GridError>
    where
        I: IntoIterator<Item = SquareCoord>,
    {
        let mut cells = vec![false; window.width() * window.height()];
        for s in occupied {
            if window.contains(s) {
                cells[window.index(s)] = true;
            }
        }
        Self::new(window, cells, origin)
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn origin(&self) -> SquareCoord {
        self.origin
    }

    pub fn is_occupied(&self, s: SquareCoord) -> bool {
        self.window.contains(s) && self.occupied[self.window.index(s)]
    }

    pub fn occupied_squares(&self) -> BTreeSet<SquareCoord> {
        self.window.squares().filter(|&s| self.is_occupied(s)).collect()
    }

    pub(crate) fn cells(&self) -> &[bool] {
        &self.occupied
    }
}
