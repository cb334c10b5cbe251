//! Dense real matrices and the symmetric eigensolver.
//!
//! Everything here is sized for graphs with at most a few hundred vertices:
//! row-major storage, plain left-to-right accumulation in products, and the
//! cyclic Jacobi method for symmetric eigenproblems. The Jacobi method is
//! slow compared to tridiagonal QR but it is unconditionally convergent and
//! produces eigenvectors that are orthonormal to working precision, which is
//! what the frame constructions downstream rely on.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Convergence target for Jacobi: off-diagonal Frobenius norm relative to ‖A‖_F.
pub const JACOBI_REL_TOL: f64 = 1e-12;
/// Hard cap on the number of cyclic sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Every numerical comparison in the crate goes through one of these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    /// Orthonormality of eigenbases and unitary maps.
    pub tau_orth: f64,
    /// Reconstruction of matrices from factors (Gramian = L, S diagonal, ...).
    pub tau_recon: f64,
    /// Threshold below which an eigenvalue counts as zero.
    pub tau_zero: f64,
    /// Tightness, uniformity and duality residuals.
    pub tau_tight: f64,
    /// Relative gap for merging nearby eigenvalues into one cluster.
    pub tau_cluster: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            tau_orth: 1e-10,
            tau_recon: 1e-10,
            tau_zero: 1e-9,
            tau_tight: 1e-9,
            tau_cluster: 1e-6,
        }
    }
}

impl TolerancePolicy {
    pub fn is_valid(&self) -> bool {
        [
            self.tau_orth,
            self.tau_recon,
            self.tau_zero,
            self.tau_tight,
            self.tau_cluster,
        ]
        .iter()
        .all(|t| t.is_finite() && *t > 0.0)
    }
}

/// Dense real matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Matrix::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[f64]>>(columns: &[C]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.as_ref().len());
        if let Some(j) = columns.iter().position(|c| c.as_ref().len() != rows) {
            return Err(Error::ShapeMismatch(format!(
                "column {j} has {} entries, expected {rows}",
                columns[j].as_ref().len()
            )));
        }
        Ok(Matrix::from_fn(rows, columns.len(), |i, j| {
            columns[j].as_ref()[i]
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Product with left-to-right accumulation over the inner index.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0.0;
                for k in 0..self.cols {
                    acc += self[(i, k)] * other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if self.cols != x.len() {
            return Err(Error::ShapeMismatch(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// max |a_ij − b_ij|.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m: f64, (a, b)| m.max((a - b).abs())))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
    }

    /// Largest absolute entry off the main diagonal.
    pub fn max_abs_off_diagonal(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    m = m.max(self[(i, j)].abs());
                }
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc + x * y)
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Square matrix whose symmetry was checked exactly on construction.
#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix(Matrix);

impl SymmetricMatrix {
    /// Accepts the matrix only if `a_ij == a_ji` bit-for-bit.
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "symmetric matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        for i in 0..m.rows() {
            for j in (i + 1)..m.cols() {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymmetricMatrix(m))
    }

    /// Averages `m` with its transpose. For products like B·Bᵀ that are
    /// symmetric in exact arithmetic but may differ in the last bit.
    pub fn symmetrize(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "symmetric matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(SymmetricMatrix(Matrix::from_fn(
            m.rows(),
            m.cols(),
            |i, j| {
                if i == j {
                    m[(i, i)]
                } else {
                    0.5 * (m[(i, j)] + m[(j, i)])
                }
            },
        )))
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

impl Index<(usize, usize)> for SymmetricMatrix {
    type Output = f64;

    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

impl fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A = M·diag(values)·Mᵀ with values sorted descending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// Columns are orthonormal eigenvectors, in the order of `values`.
    pub vectors: Matrix,
    pub sweeps: usize,
}

impl EigenDecomposition {
    /// ‖MᵀM − I‖_max.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.values.len();
        let mtm = self
            .vectors
            .transpose()
            .matmul(&self.vectors)
            .expect("square");
        mtm.max_abs_diff(&Matrix::identity(n)).expect("square")
    }

    /// ‖M·diag(values)·Mᵀ − A‖_max.
    pub fn reconstruction_residual(&self, a: &SymmetricMatrix) -> f64 {
        self.reconstruct()
            .max_abs_diff(a.matrix())
            .unwrap_or(f64::INFINITY)
    }

    pub fn reconstruct(&self) -> Matrix {
        let n = self.values.len();
        let scaled = Matrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * self.values[j]);
        scaled.matmul(&self.vectors.transpose()).expect("square")
    }
}

/// Symmetric eigendecomposition by the cyclic Jacobi method.
///
/// Rotations are applied in row-cyclic order (p < q, p ascending then q
/// ascending) until the off-diagonal Frobenius norm drops to
/// `JACOBI_REL_TOL · ‖A‖_F`. Eigenvalues come back sorted descending with a
/// stable sort, and each eigenvector is signed so that its first entry with
/// magnitude above `tau_zero` is positive.
pub fn eigh(a: &SymmetricMatrix, tol: &TolerancePolicy) -> Result<EigenDecomposition> {
    let n = a.order();
    if n == 0 {
        return Err(Error::ShapeMismatch("eigh needs n >= 1".into()));
    }
    let mut m = a.matrix().clone();
    let mut v = Matrix::identity(n);
    let target = JACOBI_REL_TOL * m.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= target {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));

    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    for j in 0..n {
        let lead = (0..n)
            .map(|i| vectors[(i, j)])
            .find(|x| x.abs() > tol.tau_zero);
        if matches!(lead, Some(x) if x < 0.0) {
            for i in 0..n {
                vectors[(i, j)] = -vectors[(i, j)];
            }
        }
    }

    Ok(EigenDecomposition {
        values,
        vectors,
        sweeps,
    })
}

/// A^power for a symmetric positive definite A, via its eigendecomposition.
///
/// Fails with [`Error::NotAFrame`] when the smallest eigenvalue is not above
/// `tau_zero`, since every caller uses this on a frame operator.
pub fn spd_power(a: &SymmetricMatrix, power: f64, tol: &TolerancePolicy) -> Result<Matrix> {
    let e = eigh(a, tol)?;
    let smallest = *e.values.last().expect("n >= 1");
    if smallest <= tol.tau_zero {
        return Err(Error::NotAFrame(smallest));
    }
    let n = a.order();
    let scaled = Matrix::from_fn(n, n, |i, j| e.vectors[(i, j)] * e.values[j].powf(power));
    scaled.matmul(&e.vectors.transpose())
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating m[p][q]; m ← JᵀmJ, v ← vJ.
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = m.rows();
    let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = c * akp - s * akq;
        m[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = c * apk - s * aqk;
        m[(q, k)] = s * apk + c * aqk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Groups descending-sorted values into clusters of numerically equal values.
///
/// Consecutive values merge when their gap is at most
/// `tau_cluster · max(1, spread)`, spread being first − last. Each cluster is
/// reported as (mean, multiplicity).
pub fn cluster_distinct(values: &[f64], tau_cluster: f64) -> Vec<(f64, usize)> {
    let Some((&first, &last)) = values.first().zip(values.last()) else {
        return Vec::new();
    };
    let gap = tau_cluster * (first - last).abs().max(1.0);

    let mut clusters: Vec<Vec<f64>> = vec![vec![first]];
    for w in values.windows(2) {
        if (w[0] - w[1]).abs() <= gap {
            clusters.last_mut().unwrap().push(w[1]);
        } else {
            clusters.push(vec![w[1]]);
        }
    }
    clusters
        .into_iter()
        .map(|c| (c.iter().sum::<f64>() / c.len() as f64, c.len()))
        .collect()
}
