//! Exhaustive check of the tightness characterization on small graphs.
//!
//! Every labeled simple graph with at least one edge on n = 2..=max_n
//! vertices is visited (edge subsets indexed by bitmask, no isomorphism
//! reduction). For each one the L_G frame is built and the following are
//! checked; a graph counts once per predicate it violates:
//!
//! * components: tight ⟹ every component regular
//! * two_eigenvalues: (tight ∧ no null vertex) ⟺ adjacency has two distinct eigenvalues
//! * complete: (connected ∧ tight) ⟺ complete
//! * uniform: tight ∧ no null vertex ⟹ every ‖fᵢ‖ = √r
//! * multiplicities: tight ∧ no null vertex ⟹ adjacency eigenvalues r and r − α
//!   with multiplicities n(α − r)/α and nr/α
//! * bounds: μ₁ ≥ Δ + 1, and μ_{n−1} ≤ nδ/(n − 1) when connected
//! * construction: Gramian = L and frame operator = diag(μ₁,…,μ_k)

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph_frame::{laplacian_bound_check, lg_frame, tightness_report};
use crate::linalg::TolerancePolicy;

pub const SURVEY_MIN_N: usize = 2;
pub const SURVEY_MAX_N: usize = 6;

/// Absolute tolerance for the construction identities and vector norms.
pub const SURVEY_RESIDUAL_TOL: f64 = 1e-9;
pub const SURVEY_NORM_TOL: f64 = 1e-8;
/// Bound slack may go this far below zero.
pub const SURVEY_SLACK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ViolationCounts {
    pub components: usize,
    pub two_eigenvalues: usize,
    pub complete: usize,
    pub uniform: usize,
    pub multiplicities: usize,
    pub bounds: usize,
    pub construction: usize,
}

impl ViolationCounts {
    pub fn total(&self) -> usize {
        self.components
            + self.two_eigenvalues
            + self.complete
            + self.uniform
            + self.multiplicities
            + self.bounds
            + self.construction
    }

    fn add(&mut self, o: &ViolationCounts) {
        self.components += o.components;
        self.two_eigenvalues += o.two_eigenvalues;
        self.complete += o.complete;
        self.uniform += o.uniform;
        self.multiplicities += o.multiplicities;
        self.bounds += o.bounds;
        self.construction += o.construction;
    }
}

/// Results for all graphs on exactly `n` vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyRow {
    pub n: usize,
    pub graphs: usize,
    pub tight: usize,
    pub tight_without_null_vertex: usize,
    pub connected: usize,
    pub connected_tight: usize,
    /// Edge-subset indices of the connected graphs with a tight frame.
    pub connected_tight_masks: Vec<u64>,
    pub violations: ViolationCounts,
    pub max_gramian_residual: f64,
    pub max_operator_residual: f64,
    pub min_bound_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyReport {
    pub max_n: usize,
    pub rows: Vec<SurveyRow>,
    pub total_graphs: usize,
    pub violations: usize,
}

impl SurveyReport {
    pub fn row(&self, n: usize) -> Option<&SurveyRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Per-graph outcome, merged in mask order.
#[derive(Debug, Clone, Default)]
struct Outcome {
    tight: bool,
    tight_without_null: bool,
    connected: bool,
    violations: ViolationCounts,
    gramian_residual: f64,
    operator_residual: f64,
    bound_slack: f64,
}

/// Graph on `n` vertices whose edges are the set bits of `mask`, bit t
/// standing for the t-th pair in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Result<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .enumerate()
        .filter(|(t, _)| mask >> t & 1 == 1)
        .map(|(_, p)| p)
        .collect();
    Graph::from_edge_list(n, &pairs)
}

pub fn survey(max_n: usize, tol: &TolerancePolicy) -> Result<SurveyReport> {
    survey_with(max_n, tol, Execution::Parallel)
}

pub fn survey_with(max_n: usize, tol: &TolerancePolicy, exec: Execution) -> Result<SurveyReport> {
    if !(SURVEY_MIN_N..=SURVEY_MAX_N).contains(&max_n) {
        return Err(Error::SurveyRange(max_n));
    }
    let mut rows = Vec::new();
    for n in SURVEY_MIN_N..=max_n {
        let pairs = n * (n - 1) / 2;
        let masks = 1u64..(1u64 << pairs);
        let eval = |mask| evaluate(&graph_from_mask(n, mask).expect("valid pairs"), tol);
        let outcomes: Vec<Outcome> = match exec {
            Execution::Sequential => masks.map(eval).collect(),
            Execution::Parallel => masks.into_par_iter().map(eval).collect(),
        };
        rows.push(merge(n, &outcomes));
    }
    let total_graphs = rows.iter().map(|r| r.graphs).sum();
    let violations = rows.iter().map(|r| r.violations.total()).sum();
    Ok(SurveyReport {
        max_n,
        rows,
        total_graphs,
        violations,
    })
}

fn merge(n: usize, outcomes: &[Outcome]) -> SurveyRow {
    let mut row = SurveyRow {
        n,
        graphs: outcomes.len(),
        tight: 0,
        tight_without_null_vertex: 0,
        connected: 0,
        connected_tight: 0,
        connected_tight_masks: Vec::new(),
        violations: ViolationCounts::default(),
        max_gramian_residual: 0.0,
        max_operator_residual: 0.0,
        min_bound_slack: f64::INFINITY,
    };
    for (i, o) in outcomes.iter().enumerate() {
        row.tight += o.tight as usize;
        row.tight_without_null_vertex += o.tight_without_null as usize;
        row.connected += o.connected as usize;
        if o.connected && o.tight {
            row.connected_tight += 1;
            row.connected_tight_masks.push(i as u64 + 1);
        }
        row.violations.add(&o.violations);
        row.max_gramian_residual = row.max_gramian_residual.max(o.gramian_residual);
        row.max_operator_residual = row.max_operator_residual.max(o.operator_residual);
        row.min_bound_slack = row.min_bound_slack.min(o.bound_slack);
    }
    row
}

fn evaluate(g: &Graph, tol: &TolerancePolicy) -> Outcome {
    let mut out = Outcome::default();
    let lg = match lg_frame(g, tol) {
        Ok(lg) => lg,
        Err(_) => {
            out.violations.construction = 1;
            return out;
        }
    };
    let res = lg.residuals(g);
    out.gramian_residual = res.gramian;
    out.operator_residual = res.frame_operator;
    if res.gramian > SURVEY_RESIDUAL_TOL || res.frame_operator > SURVEY_RESIDUAL_TOL {
        out.violations.construction = 1;
    }

    match laplacian_bound_check(g, tol) {
        Ok(b) => {
            out.bound_slack = b.min_slack();
            if out.bound_slack < -SURVEY_SLACK_TOL {
                out.violations.bounds = 1;
            }
        }
        Err(_) => out.violations.bounds = 1,
    }

    let report = match tightness_report(g, tol) {
        Ok(r) => r,
        Err(_) => {
            // only raised when a connected tight graph is not complete
            out.tight = true;
            out.connected = true;
            out.violations.complete = 1;
            return out;
        }
    };
    out.tight = report.is_tight;
    out.connected = report.is_connected;
    out.tight_without_null = report.is_tight && !report.has_null_vertex;

    if report.is_tight && !report.components_regular.iter().all(|c| c.is_regular) {
        out.violations.components = 1;
    }
    if out.tight_without_null != (report.adjacency_distinct.len() == 2) {
        out.violations.two_eigenvalues = 1;
    }
    if (report.is_connected && report.is_tight) != report.is_complete {
        out.violations.complete = 1;
    }

    if out.tight_without_null {
        let (Some(r), Some(alpha)) = (report.regular_degree, report.alpha) else {
            out.violations.uniform = 1;
            out.violations.multiplicities = 1;
            return out;
        };
        let want = (r as f64).sqrt();
        if lg
            .frame
            .norms()
            .iter()
            .any(|c| (c - want).abs() > SURVEY_NORM_TOL)
        {
            out.violations.uniform = 1;
        }
        if !multiplicities_match(g.n(), r, alpha, &report.adjacency_distinct, tol) {
            out.violations.multiplicities = 1;
        }
    }
    out
}

/// Adjacency clusters must be (r, n(α−r)/α) and (r−α, nr/α) with integer
/// multiplicities.
fn multiplicities_match(
    n: usize,
    r: usize,
    alpha: f64,
    clusters: &[(f64, usize)],
    tol: &TolerancePolicy,
) -> bool {
    let alpha_int = alpha.round();
    if (alpha - alpha_int).abs() > SURVEY_NORM_TOL || clusters.len() != 2 {
        return false;
    }
    let (a, r_f, n_f) = (alpha_int, r as f64, n as f64);
    let m_top = n_f * (a - r_f) / a;
    let m_bottom = n_f * r_f / a;
    let integral = |m: f64| (m - m.round()).abs() < 1e-12 && m >= 0.0;
    if !integral(m_top) || !integral(m_bottom) {
        return false;
    }
    let close = |x: f64, y: f64| (x - y).abs() <= tol.tau_cluster * n_f.max(1.0);
    close(clusters[0].0, r_f)
        && clusters[0].1 == m_top as usize
        && close(clusters[1].0, r_f - a)
        && clusters[1].1 == m_bottom as usize
}
