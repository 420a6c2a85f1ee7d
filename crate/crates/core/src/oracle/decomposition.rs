//! Bridge decomposition by exhaustive search.

use std::collections::BTreeSet;

use crate::cycle::{BridgeDecomposition, Cycle, CycleError, LatticePath};
use crate::lattice::{CornerCoord, SquareCoord};

use super::ray::{ray_cast_interior, ray_cast_interior_set};

/// The two arcs of `c` between the vertices at positions `i` and `j`, both
/// running from `c[i]` to `c[j]`.
fn arcs(c: &Cycle, i: usize, j: usize) -> [Vec<CornerCoord>; 2] {
    let vs = c.vertices();
    let n = vs.len();
    let mut fwd = vec![vs[i]];
    let mut k = i;
    while k != j {
        k = (k + 1) % n;
        fwd.push(vs[k]);
    }
    let mut bwd = vec![vs[i]];
    let mut k = i;
    while k != j {
        k = (k + n - 1) % n;
        bwd.push(vs[k]);
    }
    [fwd, bwd]
}

/// A corner lies outside `c` when it is not on `c` and the squares around
/// it are not inside. Off the cycle all four agree, so one is enough.
fn corner_outside(c: &Cycle, on: &BTreeSet<CornerCoord>, p: CornerCoord) -> bool {
    !on.contains(&p) && !ray_cast_interior(c, p.squares()[0])
}

/// Every inner vertex of `path` lies outside `c`.
fn is_bridge_for(path: &[CornerCoord], c: &Cycle, on: &BTreeSet<CornerCoord>) -> bool {
    path.len() >= 2
        && on.contains(&path[0])
        && on.contains(&path[path.len() - 1])
        && path[1..path.len() - 1].iter().all(|&p| corner_outside(c, on, p))
}

/// Tries every pair of shared vertices and every choice of arcs, and keeps
/// the pairs (arc of `d`, arc of `c`) that are bridges for each other and
/// close into a cycle enclosing both interiors. Exactly one must survive.
pub fn brute_force_decomposition(c: &Cycle, d: &Cycle) -> Result<BridgeDecomposition, CycleError> {
    let c_on: BTreeSet<CornerCoord> = c.vertices().iter().copied().collect();
    let d_on: BTreeSet<CornerCoord> = d.vertices().iter().copied().collect();
    let shared: Vec<CornerCoord> = c_on.intersection(&d_on).copied().collect();
    if shared.len() < 2 {
        return Err(CycleError::NotMergeable(shared.len()));
    }
    let c_in = ray_cast_interior_set(c);
    let d_in = ray_cast_interior_set(d);
    if !c_in.is_disjoint(&d_in) {
        return Err(CycleError::InteriorsIntersect);
    }
    let both: BTreeSet<SquareCoord> = c_in.union(&d_in).copied().collect();

    let mut found: Vec<BridgeDecomposition> = Vec::new();
    for (a_pos, &a) in shared.iter().enumerate() {
        for &b in &shared[a_pos + 1..] {
            let (ci, cj) = (c.index_of(a).expect("shared"), c.index_of(b).expect("shared"));
            let (di, dj) = (d.index_of(a).expect("shared"), d.index_of(b).expect("shared"));
            for from_d in &arcs(d, di, dj) {
                if !is_bridge_for(from_d, c, &c_on) {
                    continue;
                }
                for from_c in arcs(c, ci, cj) {
                    if !is_bridge_for(&from_c, d, &d_on) {
                        continue;
                    }
                    // from_d runs a..b, from_c reversed runs b..a.
                    let mut walk = from_d.clone();
                    walk.extend(from_c.iter().rev().skip(1).take(from_c.len() - 2));
                    let Ok(e) = Cycle::from_walk(walk) else {
                        continue;
                    };
                    if !ray_cast_interior_set(&e).is_superset(&both) {
                        continue;
                    }
                    let p1 = LatticePath::from_vertices(from_d.clone())?.normalized();
                    let p2 = LatticePath::from_vertices(from_c)?.normalized();
                    if !found.iter().any(|f| f.merged == e) {
                        found.push(BridgeDecomposition { p1, p2, merged: e });
                    }
                }
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one candidate")),
        n => Err(CycleError::UniquenessViolated(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::bridge_decomposition;

    fn sq(x: i32, y: i32) -> SquareCoord {
        SquareCoord::new(x, y)
    }

    #[test]
    fn adjacent_squares() {
        let (a, b) = (Cycle::square(sq(0, 0)), Cycle::square(sq(1, 0)));
        let bf = brute_force_decomposition(&a, &b).unwrap();
        assert_eq!((bf.p1.len(), bf.p2.len()), (3, 3));
        assert_eq!(bf.merged.interior_squares(), [sq(0, 0), sq(1, 0)].into());
        assert_eq!(bf, bridge_decomposition(&a, &b).unwrap());
    }

    #[test]
    fn one_shared_vertex() {
        let (a, b) = (Cycle::square(sq(0, 0)), Cycle::square(sq(1, 1)));
        assert_eq!(brute_force_decomposition(&a, &b), Err(CycleError::NotMergeable(1)));
    }

    #[test]
    fn overlapping() {
        let a = Cycle::square(sq(0, 0));
        assert_eq!(brute_force_decomposition(&a, &a), Err(CycleError::InteriorsIntersect));
    }
}
