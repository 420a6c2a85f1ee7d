//! Text grid format, JSON reports and SVG figures.

pub mod grid_text;
pub mod report_json;
pub mod svg;

pub use grid_text::{emit_grid, parse_grid, ParseError};
