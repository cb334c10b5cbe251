//! When is the L_G frame of a graph tight?
//!
//! The frame operator of an L_G frame is diag(μ₁,…,μ_k), so the frame is
//! tight exactly when all nonzero Laplacian eigenvalues coincide. That forces
//! every component to be regular, and with no null vertex the graph is
//! r-regular with α = r + 1 and its adjacency matrix has exactly two distinct
//! eigenvalues, r and r − α. A connected graph is tight only if complete.

use serde::{Deserialize, Serialize};

use super::lg_frame;
use crate::error::{Error, Result};
use crate::frame::FrameBounds;
use crate::graph::Graph;
use crate::linalg::{cluster_distinct, eigh, TolerancePolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRegularity {
    pub size: usize,
    pub is_regular: bool,
    /// Common degree when regular.
    pub degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub bounds: FrameBounds,
    pub is_tight: bool,
    /// Tight bound α (mean frame-operator eigenvalue) when tight.
    pub alpha: Option<f64>,
    pub components_regular: Vec<ComponentRegularity>,
    pub graph_regular: bool,
    /// r when the graph is r-regular.
    pub regular_degree: Option<usize>,
    pub has_null_vertex: bool,
    pub is_connected: bool,
    pub is_complete: bool,
    /// Distinct adjacency eigenvalues with multiplicities, descending.
    pub adjacency_distinct: Vec<(f64, usize)>,
    /// r + 1 for an r-regular graph with r ≥ 1.
    pub predicted_alpha: Option<f64>,
    pub is_uniform: bool,
    /// Common vector norm when uniform.
    pub uniform_norm: Option<f64>,
}

/// Tightness of the L_G frame of `g` next to the graph data that
/// characterizes it.
///
/// Returns [`Error::InternalConsistency`] if the frame is tight, the graph
/// connected and yet not complete.
pub fn tightness_report(g: &Graph, tol: &TolerancePolicy) -> Result<TightnessReport> {
    let lg = lg_frame(g, tol)?;
    let frame = &lg.frame;
    let bounds = frame.frame_bounds(tol)?;
    let alpha = frame.tight_bound(tol);

    let degrees = g.degrees();
    let components_regular = lg
        .components
        .members()
        .into_iter()
        .map(|members| {
            let d = degrees[members[0]];
            let is_regular = members.iter().all(|&v| degrees[v] == d);
            ComponentRegularity {
                size: members.len(),
                is_regular,
                degree: is_regular.then_some(d),
            }
        })
        .collect();

    let regular_degree = g.regularity();
    let adjacency = eigh(&g.adjacency_matrix(), tol)?;
    let uniform_norm = frame.uniform_norm(tol);
    let is_connected = lg.components.count == 1;

    let report = TightnessReport {
        bounds,
        is_tight: alpha.is_some(),
        alpha,
        components_regular,
        graph_regular: regular_degree.is_some(),
        regular_degree,
        has_null_vertex: g.has_null_vertex(),
        is_connected,
        is_complete: g.is_complete(),
        adjacency_distinct: cluster_distinct(&adjacency.values, tol.tau_cluster),
        predicted_alpha: regular_degree.filter(|&r| r > 0).map(|r| (r + 1) as f64),
        is_uniform: uniform_norm.is_some(),
        uniform_norm,
    };
    if report.is_tight && is_connected && !report.is_complete {
        return Err(Error::InternalConsistency(
            "connected graph with a tight frame is not complete".into(),
        ));
    }
    Ok(report)
}

/// μ₁ ≥ Δ + 1, checked for every graph with an edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub largest_eigenvalue: f64,
    pub max_degree_plus_one: f64,
    /// μ₁ − (Δ + 1)
    pub slack: f64,
    pub holds: bool,
    /// Present only for connected graphs.
    pub connectivity: Option<ConnectivityBound>,
}

/// μ_{n−1} ≤ n·δ/(n − 1) for connected graphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectivityBound {
    pub algebraic_connectivity: f64,
    pub bound: f64,
    /// n·δ/(n − 1) − μ_{n−1}
    pub slack: f64,
    pub holds: bool,
}

impl BoundCheck {
    pub fn all_hold(&self) -> bool {
        self.holds && self.connectivity.is_none_or(|c| c.holds)
    }

    pub fn min_slack(&self) -> f64 {
        self.connectivity
            .map_or(self.slack, |c| c.slack.min(self.slack))
    }
}

/// Evaluates both Laplacian eigenvalue bounds with slack `tau_zero`.
pub fn laplacian_bound_check(g: &Graph, tol: &TolerancePolicy) -> Result<BoundCheck> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let spectrum = eigh(&g.laplacian_matrix(), tol)?.values;
    let info = g.degree_info();
    let n = g.n();

    let max_degree_plus_one = (info.max_degree + 1) as f64;
    let slack = spectrum[0] - max_degree_plus_one;

    let connectivity = (g.connected_components().count == 1).then(|| {
        let mu = spectrum[n - 2];
        let bound = n as f64 * info.min_degree as f64 / (n - 1) as f64;
        ConnectivityBound {
            algebraic_connectivity: mu,
            bound,
            slack: bound - mu,
            holds: bound - mu >= -tol.tau_zero,
        }
    });

    Ok(BoundCheck {
        largest_eigenvalue: spectrum[0],
        max_degree_plus_one,
        slack,
        holds: slack >= -tol.tau_zero,
        connectivity,
    })
}
