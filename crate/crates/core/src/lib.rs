//! Finite frames generated by graph Laplacians.
//!
//! A frame {f₁,…,fₙ} in real k-space is *generated* by a simple graph G on n
//! vertices when its Gramian ⟨fⱼ, fᵢ⟩ equals the Laplacian L(G); then
//! k = n − p for a graph with p connected components. This crate builds such
//! frames from a symmetric eigendecomposition of L(G), computes their frame
//! operators, bounds and duals, relates any two of them by an orthogonal map,
//! and checks when they are tight.
//!
//! ```
//! use graph_frames::{lg_frame, Graph, TolerancePolicy};
//!
//! let tol = TolerancePolicy::default();
//! let c4 = Graph::cycle(4).unwrap();
//! let r = lg_frame(&c4, &tol).unwrap();
//! assert_eq!((r.frame.len(), r.frame.dim()), (4, 3));
//! let bounds = r.frame.frame_bounds(&tol).unwrap();
//! assert!((bounds.lower - 2.0).abs() < 1e-9 && (bounds.upper - 4.0).abs() < 1e-9);
//! ```

pub mod error;
pub mod frame;
pub mod graph;
pub mod graph_frame;
pub mod io;
pub mod linalg;
pub mod report;
pub mod survey;

pub use error::{Error, ErrorClass, Result};
pub use frame::{DualCheck, Frame, FrameBounds};
pub use graph::{ComponentPartition, DegreeInfo, Graph, RANDOM_GRAPH_ALGORITHM};
pub use graph_frame::{
    canonical_dual_lg, dual_from_shifts, dual_is_in_family, frame_from_eigenbasis, is_g_frame,
    is_lg_frame, laplacian_bound_check, lg_frame, tightness_report, unitary_equivalence_map,
    BoundCheck, ConstructionResiduals, DualSpec, EquivalenceMap, FamilyCheck, GraphFrameCheck,
    LgFrameResult, TightnessReport,
};
pub use linalg::{
    cluster_distinct, eigh, EigenDecomposition, Matrix, SymmetricMatrix, TolerancePolicy,
};
pub use report::{report_to_json, Report};
pub use survey::{survey, survey_with, Execution, SurveyReport, SurveyRow, ViolationCounts};
