//! JSON documents written by the command line tool.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::boundary::OutermostBoundary;
use crate::check::Verdict;
use crate::components::Component;
use crate::cycle::Cycle;
use crate::duality::DualityReport;
use crate::lattice::SquareCoord;

pub const REPORT_SCHEMA: &str = "report v1";
pub const ANALYSIS_SCHEMA: &str = "analysis v1";

pub type Pair = (i32, i32);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema: String,
    pub component: Vec<Pair>,
    /// Closed corner walk, first corner repeated at the end.
    pub outer: Vec<Pair>,
    pub lambda_all: Vec<Pair>,
    pub lambda_exterior: Vec<Pair>,
    pub d_fin: Vec<Pair>,
    pub h_out: Vec<Pair>,
    /// Number of fence squares.
    pub q: usize,
    /// Number of edges of the fence boundary.
    pub boundary_edges: usize,
    pub merge_steps: usize,
    pub checks: BTreeMap<String, CheckJson>,
    /// Microseconds spent building the report, when measured.
    pub timing_us: Option<u64>,
}

pub fn squares_json<'a>(it: impl IntoIterator<Item = &'a SquareCoord>) -> Vec<Pair> {
    it.into_iter().map(|s| (s.x, s.y)).collect()
}

pub fn closed_walk_json(c: &Cycle) -> Vec<Pair> {
    c.closed_walk().iter().map(|p| (p.u, p.v)).collect()
}

pub fn checks_json<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> BTreeMap<String, CheckJson> {
    verdicts
        .into_iter()
        .map(|v| {
            (
                v.name.clone(),
                CheckJson {
                    passed: v.passed,
                    detail: v.detail.clone(),
                },
            )
        })
        .collect()
}

/// `extra` verdicts are added to those recorded while building.
pub fn report_json(report: &DualityReport, extra: &[Verdict], timing_us: Option<u64>) -> ReportJson {
    ReportJson {
        schema: REPORT_SCHEMA.into(),
        component: squares_json(&report.component.squares),
        outer: closed_walk_json(&report.outer),
        lambda_all: squares_json(&report.lambdas.lambda_all),
        lambda_exterior: squares_json(&report.lambdas.lambda_exterior),
        d_fin: closed_walk_json(&report.d_fin),
        h_out: squares_json(report.h_out.squares()),
        q: report.h_out.len(),
        boundary_edges: report.partial_h.len(),
        merge_steps: report.steps.len(),
        checks: checks_json(report.checks.iter().chain(extra)),
        timing_us,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub squares: Vec<Pair>,
    pub finite: bool,
    /// Closed corner walks; empty when the component touches the window side.
    pub boundary: Vec<Vec<Pair>>,
    pub pinch_vertices: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisJson {
    pub schema: String,
    pub plus: ComponentJson,
    pub star: ComponentJson,
    pub boundary_edge_count: usize,
    pub lambda_all: Vec<Pair>,
    pub lambda_exterior: Vec<Pair>,
}

pub fn component_json(comp: &Component, finite: bool, b: Option<&OutermostBoundary>) -> ComponentJson {
    ComponentJson {
        squares: squares_json(&comp.squares),
        finite,
        boundary: b.map_or_else(Vec::new, |b| b.cycles.iter().map(closed_walk_json).collect()),
        pinch_vertices: b.map_or_else(Vec::new, |b| b.pinch_vertices.keys().map(|p| (p.u, p.v)).collect()),
    }
}

/// One line of compact JSON.
pub fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("plain data serializes");
    s.push('\n');
    s
}
