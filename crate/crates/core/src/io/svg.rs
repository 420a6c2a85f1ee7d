//! SVG figures: one square is 20 user units, y pointing up.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::cycle::Cycle;
use crate::lattice::{GridConfig, SquareCoord, Window};

pub const UNIT: i32 = 20;
const HALF: i32 = UNIT / 2;

/// What to draw on top of the occupied squares.
#[derive(Debug, Clone, Default)]
pub struct Overlay {
    /// Drawn with a dotted outline.
    pub lambda: BTreeSet<SquareCoord>,
    /// Thin solid cycles.
    pub outer: Vec<Cycle>,
    /// Bold cycle.
    pub fence: Option<Cycle>,
}

struct Frame {
    w: Window,
}

impl Frame {
    // One square of padding on each side.
    fn x(&self, u: i32) -> i32 {
        (u - 2 * self.w.x_min + 3) * HALF
    }

    fn y(&self, v: i32) -> i32 {
        (2 * self.w.y_max + 3 - v) * HALF
    }

    fn square(&self, s: SquareCoord) -> (i32, i32) {
        (self.x(2 * s.x - 1), self.y(2 * s.y + 1))
    }

    fn points(&self, c: &Cycle) -> String {
        c.vertices()
            .iter()
            .map(|p| format!("{},{}", self.x(p.u), self.y(p.v)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn render_svg(grid: &GridConfig, overlay: &Overlay) -> String {
    let f = Frame { w: grid.window() };
    let width = (f.w.width() as i32 + 2) * UNIT;
    let height = (f.w.height() as i32 + 2) * UNIT;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#);
    let (wx, wy) = f.square(SquareCoord::new(f.w.x_min, f.w.y_max));
    let _ = writeln!(
        out,
        r##"<rect x="{wx}" y="{wy}" width="{}" height="{}" fill="none" stroke="#bbbbbb" stroke-width="0.5"/>"##,
        f.w.width() as i32 * UNIT,
        f.w.height() as i32 * UNIT
    );

    let _ = writeln!(out, r##"<g id="occupied" fill="#555555">"##);
    for s in grid.occupied_squares() {
        let (x, y) = f.square(s);
        let _ = writeln!(out, r#"<rect x="{x}" y="{y}" width="{UNIT}" height="{UNIT}"/>"#);
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(
        out,
        r##"<g id="lambda" fill="none" stroke="#000000" stroke-width="1" stroke-dasharray="2,2">"##
    );
    for &s in &overlay.lambda {
        let (x, y) = f.square(s);
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
            x + 3,
            y + 3,
            UNIT - 6,
            UNIT - 6
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g id="outer" fill="none" stroke="#1f4e9a" stroke-width="1.5">"##);
    for c in &overlay.outer {
        let _ = writeln!(out, r#"<polygon points="{}"/>"#, f.points(c));
    }
    let _ = writeln!(out, "</g>");

    if let Some(c) = &overlay.fence {
        let _ = writeln!(
            out,
            r##"<g id="fence" fill="none" stroke="#b22222" stroke-width="4" stroke-linejoin="round"><polygon points="{}"/></g>"##,
            f.points(c)
        );
    }

    let (ox, oy) = f.square(grid.origin());
    let _ = writeln!(
        out,
        r##"<circle id="origin" cx="{}" cy="{}" r="3" fill="#ffffff"/>"##,
        ox + HALF,
        oy + HALF
    );
    out.push_str("</svg>\n");
    out
}
