//! Random inputs for fuzzing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::outermost_boundary_of;
use crate::components::{component_of, is_finite, margin, Adjacency};
use crate::cycle::Cycle;
use crate::duality::REQUIRED_MARGIN;
use crate::lattice::{GridConfig, SquareCoord, Window};

/// Stream `trial` of the generator seeded with `seed`. Streams do not
/// overlap, so trials can run in any order on any thread.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// The `size`×`size` window with the origin at column and row `size / 2`.
pub fn centred_window(size: i32) -> Window {
    let o = size / 2;
    Window::new(-o, -o, size - 1 - o, size - 1 - o)
}

/// Each square occupied with probability `p`, the origin always.
pub fn random_grid<R: Rng>(rng: &mut R, size: i32, p: f64) -> GridConfig {
    let window = centred_window(size);
    let origin = SquareCoord::new(0, 0);
    let cells: Vec<bool> = window
        .squares()
        .map(|s| rng.random_bool(p) || s == origin)
        .collect();
    GridConfig::new(window, cells, origin).expect("origin inside")
}

/// A random grid whose origin star component keeps at least two vacant
/// rings from the window sides. Gives up after `tries` samples.
pub fn random_star_grid<R: Rng>(rng: &mut R, size: i32, p: f64, tries: usize) -> Option<GridConfig> {
    (0..tries).find_map(|_| {
        let g = random_grid(rng, size, p);
        let comp = component_of(&g, g.origin(), Adjacency::Star).expect("origin occupied");
        (is_finite(&g, &comp) && margin(&g, &comp) >= REQUIRED_MARGIN).then_some(g)
    })
}

/// Two cycles with disjoint interiors and at least two shared vertices.
///
/// Squares of a `size`×`size` block get one of three labels; the outer
/// boundaries of two plus clusters with different labels are kept when
/// their filled interiors do not overlap and they touch.
pub fn random_cycle_pair<R: Rng>(rng: &mut R, size: i32, tries: usize) -> Option<(Cycle, Cycle)> {
    let window = Window::new(0, 0, size - 1, size - 1);
    for _ in 0..tries {
        let labels: Vec<u8> = window.squares().map(|_| rng.random_range(0..3u8)).collect();
        let a_seed = SquareCoord::new(rng.random_range(0..size), rng.random_range(0..size));
        let b_seed = SquareCoord::new(rng.random_range(0..size), rng.random_range(0..size));
        let label = |s: SquareCoord| labels[(s.y * size + s.x) as usize];
        let (la, lb) = (label(a_seed), label(b_seed));
        if la == 0 || lb == 0 || la == lb {
            continue;
        }
        let cluster = |seed: SquareCoord, l: u8| {
            let cells: Vec<bool> = window.squares().map(|s| label(s) == l || s == seed).collect();
            let g = GridConfig::new(window, cells, seed).expect("seed inside");
            component_of(&g, seed, Adjacency::Plus).expect("seed occupied").squares
        };
        let (Ok(ba), Ok(bb)) = (
            outermost_boundary_of(&cluster(a_seed, la)),
            outermost_boundary_of(&cluster(b_seed, lb)),
        ) else {
            continue;
        };
        let (c, d) = (ba.cycles[0].clone(), bb.cycles[0].clone());
        if c.interior_mask().intersects(&d.interior_mask()) {
            continue;
        }
        let dv = d.vertex_set();
        if c.vertices().iter().filter(|v| dv.contains(v)).count() < 2 {
            continue;
        }
        return Some((c, d));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a = random_grid(&mut trial_rng(9, 3), 8, 0.5);
        let b = random_grid(&mut trial_rng(9, 3), 8, 0.5);
        let c = random_grid(&mut trial_rng(9, 4), 8, 0.5);
        assert_eq!(a, b);
        assert_ne!(a.occupied_squares(), c.occupied_squares());
    }

    #[test]
    fn extremes() {
        let g = random_grid(&mut trial_rng(1, 0), 9, 0.0);
        assert_eq!(g.occupied_squares(), [SquareCoord::new(0, 0)].into());
        assert_eq!(g.window(), Window::new(-4, -4, 4, 4));
        let g = random_grid(&mut trial_rng(1, 0), 4, 1.0);
        assert_eq!(g.occupied_squares().len(), 16);
    }

    #[test]
    fn cycle_pairs_satisfy_preconditions() {
        let mut rng = trial_rng(5, 0);
        for _ in 0..20 {
            let (c, d) = random_cycle_pair(&mut rng, 6, 1000).expect("pair found");
            assert!(!c.interior_mask().intersects(&d.interior_mask()));
        }
    }
}
