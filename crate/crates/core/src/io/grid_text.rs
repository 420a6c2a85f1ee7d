//! The `lattice-grid v1` text format.
//!
//! ```text
//! lattice-grid v1 W H OX OY
//! <H rows of W characters, '#' occupied, '.' vacant, top row first>
//! ```
//!
//! The character in column `c` of row `r` is square `(c - OX, H - 1 - r - OY)`,
//! so the origin square sits at column `OX`, `OY` rows up from the bottom.

use std::fmt;

use thiserror::Error;

use crate::lattice::{GridConfig, SquareCoord, Window};

pub const HEADER_TAG: &str = "lattice-grid";
pub const VERSION: &str = "v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    BadHeader(String),
    RaggedRow { expected: usize, got: usize },
    IllegalChar(char),
    MissingRows { expected: usize, got: usize },
    ExtraRows,
    OriginOutside,
    OriginVacant,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::BadHeader(why) => write!(f, "bad header: {why}"),
            ParseErrorKind::RaggedRow { expected, got } => {
                write!(f, "ragged row: expected {expected} cells, got {got}")
            }
            ParseErrorKind::IllegalChar(c) => write!(f, "illegal character {c:?}"),
            ParseErrorKind::MissingRows { expected, got } => {
                write!(f, "expected {expected} rows, got {got}")
            }
            ParseErrorKind::ExtraRows => f.write_str("extra rows after grid"),
            ParseErrorKind::OriginOutside => f.write_str("origin lies outside the grid"),
            ParseErrorKind::OriginVacant => f.write_str("origin must be occupied"),
        }
    }
}

/// Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

pub fn parse_grid(text: &str) -> Result<GridConfig, ParseError> {
    let mut lines = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l));
    let header = lines
        .next()
        .ok_or_else(|| err(1, 1, ParseErrorKind::BadHeader("empty input".into())))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad = |why: &str| err(1, 1, ParseErrorKind::BadHeader(why.into()));
    if fields.len() != 6 || fields[0] != HEADER_TAG || fields[1] != VERSION {
        return Err(bad("expected `lattice-grid v1 W H OX OY`"));
    }
    let num = |s: &str, what: &str| s.parse::<i32>().map_err(|_| bad(&format!("{what} is not an integer")));
    let (w, h) = (num(fields[2], "W")?, num(fields[3], "H")?);
    let (ox, oy) = (num(fields[4], "OX")?, num(fields[5], "OY")?);
    if w < 1 || h < 1 {
        return Err(bad("W and H must be positive"));
    }
    if !(0..w).contains(&ox) || !(0..h).contains(&oy) {
        return Err(err(1, 1, ParseErrorKind::OriginOutside));
    }

    let (w_us, h_us) = (w as usize, h as usize);
    let mut rows: Vec<Vec<bool>> = Vec::with_capacity(h_us);
    let mut line_no = 1;
    for line in lines.by_ref() {
        line_no += 1;
        if rows.len() == h_us {
            if line.trim().is_empty() {
                continue;
            }
            return Err(err(line_no, 1, ParseErrorKind::ExtraRows));
        }
        let mut row = Vec::with_capacity(w_us);
        for (i, ch) in line.chars().enumerate() {
            match ch {
                '#' => row.push(true),
                '.' => row.push(false),
                other => return Err(err(line_no, i + 1, ParseErrorKind::IllegalChar(other))),
            }
        }
        if row.len() != w_us {
            return Err(err(
                line_no,
                row.len().min(w_us) + 1,
                ParseErrorKind::RaggedRow {
                    expected: w_us,
                    got: row.len(),
                },
            ));
        }
        rows.push(row);
    }
    if rows.len() != h_us {
        return Err(err(
            line_no + 1,
            1,
            ParseErrorKind::MissingRows {
                expected: h_us,
                got: rows.len(),
            },
        ));
    }

    let window = Window::new(-ox, -oy, w - 1 - ox, h - 1 - oy);
    // Stored bottom row first.
    let cells: Vec<bool> = rows.iter().rev().flatten().copied().collect();
    let origin_row = h_us - 1 - oy as usize;
    if !rows[origin_row][ox as usize] {
        return Err(err(origin_row + 2, ox as usize + 1, ParseErrorKind::OriginVacant));
    }
    Ok(GridConfig::new(window, cells, SquareCoord::new(0, 0)).expect("validated above"))
}

/// Writes `grid` in `lattice-grid v1` form, with coordinates taken
/// relative to its origin square.
pub fn emit_grid(grid: &GridConfig) -> String {
    let w = grid.window();
    let o = grid.origin();
    let mut out = format!(
        "{HEADER_TAG} {VERSION} {} {} {} {}\n",
        w.width(),
        w.height(),
        o.x - w.x_min,
        o.y - w.y_min
    );
    for y in (w.y_min..=w.y_max).rev() {
        for x in w.x_min..=w.x_max {
            out.push(if grid.is_occupied(SquareCoord::new(x, y)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}
