//! Independent checks and the drivers that run them in bulk.
//!
//! The checks here recompute things the hard way (ray casting instead of
//! flooding, enumerating every candidate instead of following bridges) so
//! they can catch bugs in the constructions they audit.

mod audit;
mod cycles;
mod decomposition;
mod enumerate;
mod generate;
mod montecarlo;
mod ray;

pub use audit::{audit_grid, Audit};
pub use cycles::{simple_cycles, verify_by_definition, verify_enclosing_cycles, verify_outermost_by_definition, DEFINITION_MAX_SIDE};
pub use decomposition::brute_force_decomposition;
pub use enumerate::{enumerate_window, Counterexample, EnumError, EnumReport, EnumSpec, MAX_FREE_SQUARES};
pub use generate::{centred_window, random_cycle_pair, random_grid, random_star_grid, trial_rng};
pub use montecarlo::{mc_duality, McFailure, McSpec, McStats};
pub use ray::{ray_cast_interior, ray_cast_interior_set, verify_interior_oracle};
