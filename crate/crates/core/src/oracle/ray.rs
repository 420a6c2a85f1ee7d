//! Point-in-polygon by crossing parity.

use std::collections::BTreeSet;

use crate::check::Verdict;
use crate::cycle::Cycle;
use crate::lattice::SquareCoord;

/// Casts a ray from the centre of `s` towards +x and counts crossings with
/// the vertical edges of `c`.
pub fn ray_cast_interior(c: &Cycle, s: SquareCoord) -> bool {
    let (cu, cv) = (2 * s.x, 2 * s.y);
    let vs = c.vertices();
    let n = vs.len();
    let mut crossings = 0;
    for i in 0..n {
        let (p, q) = (vs[i], vs[(i + 1) % n]);
        if p.u == q.u && p.u > cu && p.v.min(q.v) == cv - 1 {
            crossings += 1;
        }
    }
    crossings % 2 == 1
}

/// All squares inside `c`, by ray casting every square of its bounding box.
pub fn ray_cast_interior_set(c: &Cycle) -> BTreeSet<SquareCoord> {
    let vs = c.vertices();
    let umin = vs.iter().map(|p| p.u).min().unwrap_or(0);
    let umax = vs.iter().map(|p| p.u).max().unwrap_or(0);
    let vmin = vs.iter().map(|p| p.v).min().unwrap_or(0);
    let vmax = vs.iter().map(|p| p.v).max().unwrap_or(0);
    let mut out = BTreeSet::new();
    for y in (vmin + 1) / 2..=(vmax - 1) / 2 {
        for x in (umin + 1) / 2..=(umax - 1) / 2 {
            let s = SquareCoord::new(x, y);
            if ray_cast_interior(c, s) {
                out.insert(s);
            }
        }
    }
    out
}

/// Flood fill and ray casting agree on every square near `c`.
pub fn verify_interior_oracle(c: &Cycle) -> Verdict {
    let flood = c.interior_squares();
    let ray = ray_cast_interior_set(c);
    if flood == ray {
        Verdict::pass("interior oracle")
    } else {
        let diff: Vec<String> = flood.symmetric_difference(&ray).map(|s| s.to_string()).collect();
        Verdict::fail("interior oracle", format!("{c}: disagree on {}", diff.join(" ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CornerCoord;

    #[test]
    fn unit_square() {
        let c = Cycle::square(SquareCoord::new(0, 0));
        assert!(ray_cast_interior(&c, SquareCoord::new(0, 0)));
        assert!(!ray_cast_interior(&c, SquareCoord::new(5, 5)));
        assert!(!ray_cast_interior(&c, SquareCoord::new(-1, 0)));
        assert_eq!(ray_cast_interior_set(&c), [SquareCoord::new(0, 0)].into());
    }

    #[test]
    fn plus_contour() {
        // The 12-edge contour around the origin and its four neighbours.
        let pts = [
            (-1, -3), (1, -3), (1, -1), (3, -1), (3, 1), (1, 1), (1, 3), (-1, 3), (-1, 1), (-3, 1),
            (-3, -1), (-1, -1),
        ];
        let c = Cycle::from_walk(pts.iter().map(|&(u, v)| CornerCoord::new(u, v).unwrap()).collect()).unwrap();
        assert!(ray_cast_interior(&c, SquareCoord::new(0, 1)));
        assert!(!ray_cast_interior(&c, SquareCoord::new(1, 1)));
        assert_eq!(ray_cast_interior_set(&c).len(), 5);
        assert!(verify_interior_oracle(&c).passed);
    }
}
