//! Finite frames in real k-space: analysis/synthesis, frame operator,
//! Gramian, optimal bounds, canonical duals and reconstruction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, eigh, norm, spd_power, Matrix, SymmetricMatrix, TolerancePolicy};

/// An ordered list of n vectors in k-space.
///
/// Construction only checks that the vectors are non-empty and share one
/// dimension. Whether they span k-space is a numerical question answered by
/// [`Frame::is_frame`]; zero vectors are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

/// Optimal frame bounds: the extreme eigenvalues of the frame operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Outcome of a duality test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualCheck {
    pub holds: bool,
    pub residual: f64,
}

impl Frame {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let dim = match vectors.first() {
            Some(v) if !v.is_empty() => v.len(),
            Some(_) => return Err(Error::DimensionMismatch("vectors have dimension 0".into())),
            None => return Err(Error::DimensionMismatch("no vectors".into())),
        };
        if let Some(i) = vectors.iter().position(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector {i} has dimension {}, expected {dim}",
                vectors[i].len()
            )));
        }
        Ok(Frame { dim, vectors })
    }

    /// Frame vectors are the columns of `b`.
    pub fn from_synthesis(b: &Matrix) -> Result<Self> {
        Frame::new((0..b.cols()).map(|j| b.column(j)).collect())
    }

    /// Ambient dimension k.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors n.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    pub fn into_vectors(self) -> Vec<Vec<f64>> {
        self.vectors
    }

    pub fn norms(&self) -> Vec<f64> {
        self.vectors.iter().map(|v| norm(v)).collect()
    }

    /// The k×n matrix [f₁ f₂ ⋯ fₙ].
    pub fn synthesis_matrix(&self) -> Matrix {
        Matrix::from_fn(self.dim, self.len(), |i, j| self.vectors[j][i])
    }

    /// (⟨f, fᵢ⟩)ᵢ
    pub fn analysis(&self, f: &[f64]) -> Result<Vec<f64>> {
        if f.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "input has dimension {}, frame lives in dimension {}",
                f.len(),
                self.dim
            )));
        }
        Ok(self.vectors.iter().map(|v| dot(f, v)).collect())
    }

    /// Σ cᵢ fᵢ
    pub fn synthesize(&self, coefficients: &[f64]) -> Result<Vec<f64>> {
        if coefficients.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} vectors",
                coefficients.len(),
                self.len()
            )));
        }
        let mut out = vec![0.0; self.dim];
        for (c, v) in coefficients.iter().zip(&self.vectors) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    /// S = B·Bᵀ (k×k).
    pub fn frame_operator(&self) -> SymmetricMatrix {
        let b = self.synthesis_matrix();
        let s = b.matmul(&b.transpose()).expect("conformable");
        SymmetricMatrix::new(s).expect("B·Bᵀ is bitwise symmetric")
    }

    /// 𝒢 = Bᵀ·B (n×n), 𝒢_ij = ⟨fⱼ, fᵢ⟩.
    pub fn gramian(&self) -> SymmetricMatrix {
        let b = self.synthesis_matrix();
        let g = b.transpose().matmul(&b).expect("conformable");
        SymmetricMatrix::new(g).expect("Bᵀ·B is bitwise symmetric")
    }

    /// Frame-operator eigenvalues, descending.
    pub fn operator_spectrum(&self, tol: &TolerancePolicy) -> Result<Vec<f64>> {
        Ok(eigh(&self.frame_operator(), tol)?.values)
    }

    /// Optimal bounds. Fails with [`Error::NotAFrame`] when the lower bound
    /// is not above `tau_zero`.
    pub fn frame_bounds(&self, tol: &TolerancePolicy) -> Result<FrameBounds> {
        let spec = self.operator_spectrum(tol)?;
        let bounds = FrameBounds {
            lower: *spec.last().expect("k >= 1"),
            upper: spec[0],
        };
        if bounds.lower <= tol.tau_zero {
            return Err(Error::NotAFrame(bounds.lower));
        }
        Ok(bounds)
    }

    pub fn is_frame(&self, tol: &TolerancePolicy) -> bool {
        self.frame_bounds(tol).is_ok()
    }

    /// `Some(α)` when the frame is α-tight; α is the mean frame-operator
    /// eigenvalue.
    pub fn tight_bound(&self, tol: &TolerancePolicy) -> Option<f64> {
        let spec = self.operator_spectrum(tol).ok()?;
        let (lower, upper) = (*spec.last()?, spec[0]);
        if lower <= tol.tau_zero || upper - lower > tol.tau_tight * upper {
            return None;
        }
        Some(spec.iter().sum::<f64>() / spec.len() as f64)
    }

    pub fn is_tight(&self, tol: &TolerancePolicy) -> bool {
        self.tight_bound(tol).is_some()
    }

    pub fn is_parseval(&self, tol: &TolerancePolicy) -> bool {
        self.tight_bound(tol)
            .is_some_and(|alpha| (alpha - 1.0).abs() <= tol.tau_tight)
    }

    /// `Some(c)` when every vector has norm c (within tolerance); c is the
    /// largest norm.
    pub fn uniform_norm(&self, tol: &TolerancePolicy) -> Option<f64> {
        let norms = self.norms();
        let max = norms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = norms.iter().copied().fold(f64::INFINITY, f64::min);
        (max - min <= tol.tau_tight * max.max(1.0)).then_some(max)
    }

    pub fn is_uniform(&self, tol: &TolerancePolicy) -> bool {
        self.uniform_norm(tol).is_some()
    }

    pub fn is_unit_norm(&self, tol: &TolerancePolicy) -> bool {
        self.uniform_norm(tol)
            .is_some_and(|c| (c - 1.0).abs() <= tol.tau_tight)
    }

    /// S⁻¹ as a dense matrix; fails for non-frames.
    pub fn inverse_frame_operator(&self, tol: &TolerancePolicy) -> Result<Matrix> {
        spd_power(&self.frame_operator(), -1.0, tol)
    }

    /// {S⁻¹fᵢ}
    pub fn canonical_dual(&self, tol: &TolerancePolicy) -> Result<Frame> {
        let s_inv = self.inverse_frame_operator(tol)?;
        let dual = s_inv.matmul(&self.synthesis_matrix())?;
        Frame::from_synthesis(&dual)
    }

    /// Checks f = Σ⟨f, fᵢ⟩gᵢ and f = Σ⟨f, gᵢ⟩fᵢ on the standard basis, which
    /// by linearity is the same as C·Bᵀ = I and B·Cᵀ = I.
    pub fn verify_dual(&self, dual: &Frame, tol: &TolerancePolicy) -> Result<DualCheck> {
        if self.len() != dual.len() || self.dim != dual.dim {
            return Err(Error::DimensionMismatch(format!(
                "frame is {}x{}, candidate dual is {}x{}",
                self.len(),
                self.dim,
                dual.len(),
                dual.dim
            )));
        }
        let b = self.synthesis_matrix();
        let c = dual.synthesis_matrix();
        let id = Matrix::identity(self.dim);
        let r1 = c.matmul(&b.transpose())?.max_abs_diff(&id)?;
        let r2 = b.matmul(&c.transpose())?.max_abs_diff(&id)?;
        let residual = r1.max(r2);
        Ok(DualCheck {
            holds: residual <= tol.tau_tight,
            residual,
        })
    }

    /// Σ cᵢ gᵢ over the vectors of `dual`.
    pub fn reconstruct(dual: &Frame, coefficients: &[f64]) -> Result<Vec<f64>> {
        dual.synthesize(coefficients)
    }
}
