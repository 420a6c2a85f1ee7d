//! Star/plus duality for site configurations on the square lattice.
//!
//! Given a finite window of occupied and vacant unit squares, this crate
//! traces outermost boundaries of star and plus connected components,
//! merges lattice cycles bridge by bridge, and builds the vacant
//! star-connected cycle of squares that fences in a finite plus component.
//! Every construction comes with a verifier, and [`oracle`] holds
//! independent brute-force checks plus exhaustive and Monte Carlo drivers.

pub mod boundary;
pub mod check;
pub mod components;
pub mod cycle;
pub mod duality;
pub mod io;
pub mod lattice;
pub mod oracle;

pub use boundary::{outermost_boundary, outermost_boundary_of, OutermostBoundary};
pub use check::Verdict;
pub use components::{component_of, Adjacency, Component, LambdaSets};
pub use cycle::{Cycle, CycleError, LatticePath};
pub use duality::{dual_fence, DualityError, DualityReport, SCycle};
pub use lattice::{CornerCoord, GridConfig, LatticeEdge, SquareCoord, Window};
