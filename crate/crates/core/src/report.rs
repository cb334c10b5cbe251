//! The JSON report written by the `frame` and `analyze` commands.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::frame::FrameBounds;
use crate::graph::Graph;
use crate::graph_frame::{
    canonical_dual_lg, laplacian_bound_check, lg_frame, tightness_report, BoundCheck,
    ConstructionResiduals, TightnessReport,
};
use crate::linalg::{eigh, TolerancePolicy};

pub const REPORT_FORMAT: u32 = 1;
pub const TOOL_NAME: &str = "graph-frames";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format: u32,
    pub tool: String,
    pub version: String,
    pub tolerances: TolerancePolicy,
    pub graph: GraphSummary,
    pub spectrum: SpectrumSummary,
    pub frame: FrameSummary,
    pub tightness: TightnessReport,
    pub eigenvalue_bounds: BoundCheck,
    pub residuals: Residuals,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub components: usize,
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub laplacian: Vec<f64>,
    pub adjacency: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameSummary {
    pub dim: usize,
    pub vectors: Vec<Vec<f64>>,
    pub bounds: FrameBounds,
    pub is_tight: bool,
    pub alpha: Option<f64>,
    pub is_parseval: bool,
    pub is_uniform: bool,
    pub uniform_norm: Option<f64>,
    pub is_unit_norm: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub eigen_orthogonality: f64,
    pub eigen_reconstruction: f64,
    pub construction: ConstructionResiduals,
    /// Diagonal-inverse dual against the generic S⁻¹ dual.
    pub canonical_dual_paths: f64,
    pub canonical_dual: f64,
}

impl Report {
    /// Runs the construction and every check on `g`.
    pub fn build(g: &Graph, tol: &TolerancePolicy) -> Result<Report> {
        let lg = lg_frame(g, tol)?;
        let laplacian = g.laplacian_matrix();
        let eig = eigh(&laplacian, tol)?;
        let adjacency = eigh(&g.adjacency_matrix(), tol)?.values;
        let frame = &lg.frame;

        let fast_dual = canonical_dual_lg(&lg);
        let dual = frame.canonical_dual(tol)?;
        let canonical_dual_paths = fast_dual
            .vectors()
            .iter()
            .zip(dual.vectors())
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);

        let tightness = tightness_report(g, tol)?;
        Ok(Report {
            format: REPORT_FORMAT,
            tool: TOOL_NAME.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            tolerances: *tol,
            graph: GraphSummary {
                n: g.n(),
                edges: g.edges().to_vec(),
                components: lg.components.count,
                degrees: g.degrees(),
            },
            spectrum: SpectrumSummary {
                laplacian: lg.laplacian_spectrum.clone(),
                adjacency,
            },
            frame: FrameSummary {
                dim: frame.dim(),
                vectors: frame.vectors().to_vec(),
                bounds: tightness.bounds,
                is_tight: tightness.is_tight,
                alpha: tightness.alpha,
                is_parseval: frame.is_parseval(tol),
                is_uniform: tightness.is_uniform,
                uniform_norm: tightness.uniform_norm,
                is_unit_norm: frame.is_unit_norm(tol),
            },
            eigenvalue_bounds: laplacian_bound_check(g, tol)?,
            residuals: Residuals {
                eigen_orthogonality: eig.orthogonality_residual(),
                eigen_reconstruction: eig.reconstruction_residual(&laplacian),
                construction: lg.residuals(g),
                canonical_dual_paths,
                canonical_dual: frame.verify_dual(&dual, tol)?.residual,
            },
            tightness,
        })
    }
}

/// Pretty JSON with keys in declaration order.
pub fn report_to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports contain no maps with non-string keys")
}
