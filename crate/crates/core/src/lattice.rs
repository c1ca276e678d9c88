//! Lattice bases: Gram matrix, symmetric square root, operator norm.
//!
//! An M×N real matrix `A` of full column rank spans a rank-N lattice
//! `A·Z^N` in R^M. All counting happens through the unique positive
//! definite symmetric square root `S` of the Gram matrix `AᵀA`, which
//! satisfies `|Ax| = |Sx|` for every x and therefore carries the lattice
//! geometry down to an N×N problem. The construction diagonalizes the Gram
//! matrix with cyclic Jacobi rotations (dependency-free and accurate at the
//! desk scales this crate targets, N ≤ 8) and forms `S = Φᵀ D^{1/2} Φ`.
//!
//! The operator norm `|A|` is the square root of the largest Gram
//! eigenvalue; its reciprocal is the largest admissible type parameter δ in
//! the discrepancy bound, and `|S⁻¹ n| ≥ |A|⁻¹` holds for every nonzero
//! integer vector n.

use crate::math;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Dense row-major M×N real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixReal {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl MatrixReal {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain("matrix dimensions must be at least 1x1"));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite"));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Self { rows: n, cols: n, entries }
    }

    /// Diagonal square matrix from its diagonal entries.
    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut entries = vec![0.0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        Self { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    /// A·v for v of length N.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok(self
            .entries
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// A full-rank basis with every derived quantity the counting and bound
/// machinery needs. Immutable once built; shareable across threads.
#[derive(Debug, Clone)]
pub struct LatticeBasis {
    a: MatrixReal,
    gram: Vec<f64>,
    eigvecs: Vec<f64>,
    eigvals: Vec<f64>,
    s: Vec<f64>,
    s_inv: Vec<f64>,
    sqrt_det: f64,
    op_norm: f64,
}

impl LatticeBasis {
    /// Default relative eigenvalue cutoff separating genuine rank deficiency
    /// from roundoff at desk-scale condition numbers.
    pub const DEFAULT_RANK_TOL: f64 = 1e-10;

    /// Builds the basis from `a`, diagonalizing AᵀA with cyclic Jacobi
    /// sweeps until every off-diagonal magnitude is at most 1e-13 times the
    /// largest diagonal entry. Fails if the smallest eigenvalue is at most
    /// `rank_tol` times the largest (rank A < N, violating the hypothesis
    /// every bound rests on).
    pub fn from_matrix(a: MatrixReal, rank_tol: f64) -> Result<Self> {
        if a.cols > a.rows {
            return Err(Error::Domain("matrix must have at least as many rows as columns"));
        }
        if !(rank_tol > 0.0) {
            return Err(Error::Domain("rank tolerance must be positive"));
        }
        let n = a.cols;
        let m = a.rows;

        let mut gram = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for k in 0..m {
                    acc += a.entries[k * n + i] * a.entries[k * n + j];
                }
                gram[i * n + j] = acc;
                gram[j * n + i] = acc;
            }
        }

        let (eigvals, eigvecs) = jacobi_eigen(n, &gram);

        let max_eig = eigvals[n - 1];
        let min_eig = eigvals[0];
        if !(max_eig > 0.0) || min_eig <= rank_tol * max_eig {
            return Err(Error::RankDeficient { min_eig, max_eig });
        }

        let sqrt_vals: Vec<f64> = eigvals.iter().map(|&d| math::sqrt(d)).collect();
        let s = similar_diagonal(n, &eigvecs, &sqrt_vals);
        let inv_sqrt_vals: Vec<f64> = sqrt_vals.iter().map(|&d| 1.0 / d).collect();
        let s_inv = similar_diagonal(n, &eigvecs, &inv_sqrt_vals);

        let sqrt_det = sqrt_vals.iter().product();
        let op_norm = sqrt_vals[n - 1];

        Ok(Self { a, gram, eigvecs, eigvals, s, s_inv, sqrt_det, op_norm })
    }

    /// Lattice rank N (columns of A).
    pub fn dim(&self) -> usize {
        self.a.cols
    }

    /// Ambient dimension M (rows of A).
    pub fn ambient_dim(&self) -> usize {
        self.a.rows
    }

    pub fn matrix(&self) -> &MatrixReal {
        &self.a
    }

    /// AᵀA, row-major N×N.
    pub fn gram(&self) -> &[f64] {
        &self.gram
    }

    /// Gram eigenvalues, ascending.
    pub fn eigvals(&self) -> &[f64] {
        &self.eigvals
    }

    /// Orthogonal matrix whose columns are the Gram eigenvectors.
    pub fn eigvecs(&self) -> &[f64] {
        &self.eigvecs
    }

    /// The symmetric positive definite square root of the Gram matrix.
    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn s_inv(&self) -> &[f64] {
        &self.s_inv
    }

    /// (det AᵀA)^{1/2} = det S, the lattice covolume.
    pub fn sqrt_det(&self) -> f64 {
        self.sqrt_det
    }

    /// |A|, the largest singular value.
    pub fn op_norm(&self) -> f64 {
        self.op_norm
    }

    /// The largest δ admissible in the bound's hypothesis |A| ≤ δ⁻¹,
    /// namely |A|⁻¹.
    pub fn max_admissible_delta(&self) -> f64 {
        1.0 / self.op_norm
    }

    /// vᵀ (AᵀA) v = |Sv|² = |Av|².
    pub fn gram_norm_sq(&self, v: &[f64]) -> f64 {
        let n = self.dim();
        debug_assert_eq!(v.len(), n);
        let mut acc = 0.0;
        for i in 0..n {
            let row = &self.gram[i * n..(i + 1) * n];
            let mut dot = 0.0;
            for j in 0..n {
                dot += row[j] * v[j];
            }
            acc += v[i] * dot;
        }
        acc
    }

    /// S·v.
    pub fn apply_s(&self, v: &[f64]) -> Vec<f64> {
        mat_vec(self.dim(), &self.s, v)
    }

    /// S⁻¹·v.
    pub fn apply_s_inv(&self, v: &[f64]) -> Vec<f64> {
        mat_vec(self.dim(), &self.s_inv, v)
    }
}

fn mat_vec(n: usize, m: &[f64], v: &[f64]) -> Vec<f64> {
    debug_assert_eq!(v.len(), n);
    let mut out = vec![0.0; n];
    for i in 0..n {
        let row = &m[i * n..(i + 1) * n];
        out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    out
}

/// V · diag(d) · Vᵀ for orthogonal V (columns are eigenvectors).
fn similar_diagonal(n: usize, v: &[f64], d: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += v[i * n + k] * d[k] * v[j * n + k];
            }
            out[i * n + j] = acc;
            out[j * n + i] = acc;
        }
    }
    out
}

/// Cyclic Jacobi diagonalization of a symmetric matrix. Returns eigenvalues
/// ascending and the orthogonal eigenvector matrix (columns aligned with the
/// eigenvalues). Converges when every off-diagonal magnitude is at most
/// 1e-13 times the largest diagonal entry.
fn jacobi_eigen(n: usize, sym: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut a = sym.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    if n > 1 {
        for _sweep in 0..100 {
            let mut max_diag = 0.0_f64;
            for i in 0..n {
                let d = math::abs(a[i * n + i]);
                if d > max_diag {
                    max_diag = d;
                }
            }
            let threshold = 1e-13 * max_diag;
            let mut max_off = 0.0_f64;
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = a[p * n + q];
                    if math::abs(apq) > max_off {
                        max_off = math::abs(apq);
                    }
                    if math::abs(apq) <= threshold {
                        continue;
                    }
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + math::sqrt(theta * theta + 1.0))
                    } else {
                        -1.0 / (-theta + math::sqrt(theta * theta + 1.0))
                    };
                    let c = 1.0 / math::sqrt(t * t + 1.0);
                    let s = t * c;

                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
            if max_off <= threshold {
                break;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let eigvals: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut eigvecs = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            eigvecs[row * n + new_col] = v[row * n + old_col];
        }
    }
    (eigvals, eigvecs)
}
