//! Frames generated by graphs.
//!
//! A frame {fᵢ} is generated by a graph G on n vertices when its Gramian is
//! the Laplacian L(G). With p connected components L has rank k = n − p, so
//! such a frame lives in k-space. Writing L = M·diag(μ)·Mᵀ with μ sorted
//! descending, the columns of B = diag(√μ₁,…,√μ_k)·M₁ᵀ (M₁ the first k columns
//! of M) are one such frame, and its frame operator is diag(μ₁,…,μ_k). Frames
//! built that way are called L_G frames here.
//!
//! The submodules cover the dual family ([`dual`]), unitary equivalence
//! between two frames generated by the same graph ([`equivalence`]) and the
//! tightness/regularity characterization ([`tightness`]).

pub mod dual;
pub mod equivalence;
pub mod tightness;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::graph::{ComponentPartition, Graph};
use crate::linalg::{cluster_distinct, dot, eigh, Matrix, TolerancePolicy};

pub use dual::{canonical_dual_lg, dual_from_shifts, dual_is_in_family, DualSpec, FamilyCheck};
pub use equivalence::{unitary_equivalence_map, EquivalenceMap};
pub use tightness::{
    laplacian_bound_check, tightness_report, BoundCheck, ComponentRegularity, ConnectivityBound,
    TightnessReport,
};

/// An L_G frame together with the data it was built from.
#[derive(Debug, Clone)]
pub struct LgFrameResult {
    pub frame: Frame,
    /// All n Laplacian eigenvalues, descending.
    pub laplacian_spectrum: Vec<f64>,
    /// k = n − p.
    pub rank: usize,
    /// The orthogonal M with L = M·diag(spectrum)·Mᵀ.
    pub eigenbasis: Matrix,
    pub components: ComponentPartition,
}

/// Residuals of the two defining identities of an L_G frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstructionResiduals {
    /// ‖Bᵀ·B − L‖_max
    pub gramian: f64,
    /// ‖B·Bᵀ − diag(μ₁,…,μ_k)‖_max
    pub frame_operator: f64,
}

/// Result of comparing a frame's Gramian against a Laplacian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphFrameCheck {
    pub holds: bool,
    pub residual: f64,
}

/// Builds the L_G frame of `g` from a symmetric eigendecomposition of L(G).
///
/// The rank is taken from the exact component count; the eigensolver must
/// then agree that the trailing p eigenvalues vanish and the leading k do
/// not, otherwise an [`Error::InternalConsistency`] is returned.
pub fn lg_frame(g: &Graph, tol: &TolerancePolicy) -> Result<LgFrameResult> {
    let components = g.connected_components();
    let rank = g.n() - components.count;
    if rank == 0 {
        return Err(Error::NoEdges);
    }
    let eig = eigh(&g.laplacian_matrix(), tol)?;
    let spectrum = eig.values;
    if let Some(bad) = spectrum[rank..].iter().find(|mu| mu.abs() > tol.tau_zero) {
        return Err(Error::InternalConsistency(format!(
            "{} components but trailing Laplacian eigenvalue {bad:e} is not zero",
            components.count
        )));
    }
    if spectrum[rank - 1] <= tol.tau_zero {
        return Err(Error::InternalConsistency(format!(
            "rank {rank} expected but eigenvalue {} is {:e}",
            rank,
            spectrum[rank - 1]
        )));
    }
    let frame = frame_from_eigenbasis(&spectrum, &eig.vectors, rank)?;
    Ok(LgFrameResult {
        frame,
        laplacian_spectrum: spectrum,
        rank,
        eigenbasis: eig.vectors,
        components,
    })
}

/// Columns of diag(√μ₁,…,√μ_k)·M₁ᵀ.
pub fn frame_from_eigenbasis(spectrum: &[f64], basis: &Matrix, rank: usize) -> Result<Frame> {
    let n = basis.rows();
    let b = Matrix::from_fn(rank, n, |i, j| spectrum[i].sqrt() * basis[(j, i)]);
    Frame::from_synthesis(&b)
}

impl LgFrameResult {
    /// Leading k eigenvalues μ₁ ≥ … ≥ μ_k.
    pub fn nonzero_spectrum(&self) -> &[f64] {
        &self.laplacian_spectrum[..self.rank]
    }

    pub fn residuals(&self, g: &Graph) -> ConstructionResiduals {
        let gramian = self
            .frame
            .gramian()
            .matrix()
            .max_abs_diff(g.laplacian_matrix().matrix())
            .unwrap_or(f64::INFINITY);
        let frame_operator = self
            .frame
            .frame_operator()
            .matrix()
            .max_abs_diff(&Matrix::diag(self.nonzero_spectrum()))
            .expect("k x k");
        ConstructionResiduals {
            gramian,
            frame_operator,
        }
    }

    /// Another L_G frame of the same graph, built from a different
    /// orthonormal eigenbasis: every eigenvector gets a random sign and every
    /// cluster of equal eigenvalues is mixed by a random orthogonal matrix.
    pub fn with_rotated_eigenbasis(&self, seed: u64, tol: &TolerancePolicy) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.eigenbasis.rows();
        let mut basis = self.eigenbasis.clone();

        let mut start = 0;
        for (_, mult) in cluster_distinct(&self.laplacian_spectrum, tol.tau_cluster) {
            if mult > 1 {
                let q = random_orthogonal(mult, &mut rng);
                for i in 0..n {
                    let row: Vec<f64> =
                        (0..mult).map(|c| self.eigenbasis[(i, start + c)]).collect();
                    for c in 0..mult {
                        basis[(i, start + c)] =
                            (0..mult).fold(0.0, |acc, r| acc + row[r] * q[(r, c)]);
                    }
                }
            }
            start += mult;
        }
        for j in 0..n {
            if rng.next_u64() & 1 == 1 {
                for i in 0..n {
                    basis[(i, j)] = -basis[(i, j)];
                }
            }
        }

        let frame = frame_from_eigenbasis(&self.laplacian_spectrum, &basis, self.rank)?;
        Ok(LgFrameResult {
            frame,
            laplacian_spectrum: self.laplacian_spectrum.clone(),
            rank: self.rank,
            eigenbasis: basis,
            components: self.components.clone(),
        })
    }
}

fn uniform_signed(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) as f64) / (1u64 << 53) as f64 * 2.0 - 1.0
}

/// Modified Gram–Schmidt on a matrix of uniform [−1, 1) entries.
fn random_orthogonal(m: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..m).map(|_| uniform_signed(rng)).collect())
            .collect();
        let mut ok = true;
        for j in 0..m {
            for i in 0..j {
                let proj = dot(&cols[i], &cols[j]);
                let (head, tail) = cols.split_at_mut(j);
                for (x, y) in tail[0].iter_mut().zip(&head[i]) {
                    *x -= proj * y;
                }
            }
            let len = dot(&cols[j], &cols[j]).sqrt();
            if len < 1e-3 {
                ok = false;
                break;
            }
            cols[j].iter_mut().for_each(|x| *x /= len);
        }
        if ok {
            return Matrix::from_columns(&cols).expect("square");
        }
    }
}

fn laplacian_scale(g: &Graph) -> f64 {
    g.laplacian_matrix().matrix().max_abs().max(1.0)
}

/// Is `f` generated by `g`: Gramian equal to L(G) and a frame for (n − p)-space?
pub fn is_g_frame(f: &Frame, g: &Graph, tol: &TolerancePolicy) -> Result<GraphFrameCheck> {
    if f.len() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "frame has {} vectors, graph has {} vertices",
            f.len(),
            g.n()
        )));
    }
    let residual = f
        .gramian()
        .matrix()
        .max_abs_diff(g.laplacian_matrix().matrix())?;
    let rank = g.n() - g.connected_components().count;
    let holds =
        residual <= tol.tau_recon * laplacian_scale(g) && f.dim() == rank && f.is_frame(tol);
    Ok(GraphFrameCheck { holds, residual })
}

/// A G-frame whose frame operator is diagonal, i.e. whose analysis matrix
/// has mutually orthogonal columns. False whenever `f` is not a G-frame.
pub fn is_lg_frame(f: &Frame, g: &Graph, tol: &TolerancePolicy) -> Result<bool> {
    if !is_g_frame(f, g, tol)?.holds {
        return Ok(false);
    }
    let s = f.frame_operator();
    Ok(s.matrix().max_abs_off_diagonal() <= tol.tau_recon * s.matrix().max_abs().max(1.0))
}
