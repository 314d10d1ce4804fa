//! Dense symmetric matrices: Cholesky solves and the Jacobi eigensolver.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;

/// Symmetry check tolerance at construction.
const SYM_TOL: f64 = 1e-12;
/// Cholesky pivot threshold below which the matrix counts as not SPD.
const SPD_PIVOT_TOL: f64 = 1e-13;
/// Jacobi sweep cap.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense n×n real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds from row-major data, rejecting asymmetry beyond 1e-12.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if float::abs(data[i * n + j] - data[j * n + i]) > SYM_TOL {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(Self { n, data })
    }

    /// Builds from an entry function; the (j,i) entry mirrors (i,j), so the
    /// result is symmetric by construction.
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = entry(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both (i,j) and (j,i).
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// xᵀ A x.
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        let y = self.matvec(x);
        x.iter().zip(&y).map(|(a, b)| a * b).sum()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        float::sqrt(self.data.iter().map(|v| v * v).sum())
    }

    /// Principal submatrix on the given (strictly increasing) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> SymmetricMatrix {
        let k = idx.len();
        let mut data = vec![0.0; k * k];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                data[a * k + b] = self.get(i, j);
            }
        }
        SymmetricMatrix { n: k, data }
    }

    /// Cholesky factor L with A = L Lᵀ, or an error if a pivot degenerates.
    pub fn cholesky(&self) -> Result<Cholesky> {
        let n = self.n;
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = self.get(j, j);
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if d <= SPD_PIVOT_TOL {
                return Err(Error::NotPositiveDefinite { index: j, pivot: d });
            }
            let dj = float::sqrt(d);
            l[j * n + j] = dj;
            for i in (j + 1)..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / dj;
            }
        }
        Ok(Cholesky { n, l })
    }
}

/// Lower-triangular Cholesky factor; solves share one factorization.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        debug_assert_eq!(rhs.len(), self.n);
        let n = self.n;
        // forward: L y = rhs
        let mut y = rhs.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.l[i * n + k] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        // backward: Lᵀ x = y
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                y[i] -= self.l[k * n + i] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        y
    }

    /// Solve followed by one step of iterative refinement against the
    /// original matrix; squeezes the residual for badly scaled systems.
    pub fn solve_refined(&self, a: &SymmetricMatrix, rhs: &[f64]) -> Vec<f64> {
        let mut x = self.solve(rhs);
        let ax = a.matvec(&x);
        let residual: Vec<f64> = rhs.iter().zip(&ax).map(|(b, v)| b - v).collect();
        if residual.iter().any(|&r| r != 0.0) {
            let dx = self.solve(&residual);
            for (xi, di) in x.iter_mut().zip(&dx) {
                *xi += di;
            }
        }
        x
    }
}

/// Solves A x = rhs for symmetric positive definite A.
pub fn solve_spd(a: &SymmetricMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != a.dim() {
        return Err(Error::LengthMismatch {
            expected: a.dim(),
            got: rhs.len(),
        });
    }
    let chol = a.cholesky()?;
    Ok(chol.solve_refined(a, rhs))
}

/// Sorted eigenvalues of a realized operator, with eigenvectors aligned
/// column-wise (`vector(k)` belongs to `eigenvalue(k)`).
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    // column k of the (row-major) n×n block is the k-th eigenvector
    vectors: Vec<f64>,
    n: usize,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Nondecreasing list of eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        self.eigenvalues
            .get(k)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index: k,
                dim: self.n,
            })
    }

    /// Eigenvector for the k-th smallest eigenvalue.
    pub fn vector(&self, k: usize) -> Result<Vec<f64>> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange {
                index: k,
                dim: self.n,
            });
        }
        Ok((0..self.n).map(|i| self.vectors[i * self.n + k]).collect())
    }

    /// Clamps eigenvalues in [-tol, 0) up to zero; leaves the rest alone.
    pub(crate) fn clamp_small_negatives(&mut self, tol: f64) {
        for v in &mut self.eigenvalues {
            if *v < 0.0 && *v >= -tol {
                *v = 0.0;
            }
        }
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Sweeps rotate away every off-diagonal pair until the off-diagonal
/// Frobenius norm falls below `1e-14 * ||A||_F`; eigenpairs come back
/// sorted ascending.
pub fn symmetric_eigen(a: &SymmetricMatrix) -> Result<Spectrum> {
    let n = a.dim();
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues: Vec::new(),
            vectors: Vec::new(),
            n: 0,
        });
    }
    let mut m = a.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm = a.frobenius_norm();
    let threshold = 1e-14 * float::max(norm, f64::MIN_POSITIVE);

    let off = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * m[i * n + j] * m[i * n + j];
            }
        }
        float::sqrt(s)
    };

    let mut converged = norm == 0.0 || off(&m) <= threshold;
    if !converged {
        for _sweep in 0..JACOBI_MAX_SWEEPS {
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[p * n + q];
                    if float::abs(apq) <= threshold / (n as f64) {
                        continue;
                    }
                    let app = m[p * n + p];
                    let aqq = m[q * n + q];
                    let tau = (aqq - app) / (2.0 * apq);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + float::sqrt(1.0 + tau * tau))
                    } else {
                        -1.0 / (-tau + float::sqrt(1.0 + tau * tau))
                    };
                    let c = 1.0 / float::sqrt(1.0 + t * t);
                    let s = t * c;

                    for i in 0..n {
                        if i != p && i != q {
                            let mip = m[i * n + p];
                            let miq = m[i * n + q];
                            m[i * n + p] = c * mip - s * miq;
                            m[p * n + i] = m[i * n + p];
                            m[i * n + q] = s * mip + c * miq;
                            m[q * n + i] = m[i * n + q];
                        }
                    }
                    m[p * n + p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                    m[q * n + q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;

                    for i in 0..n {
                        let vip = v[i * n + p];
                        let viq = v[i * n + q];
                        v[i * n + p] = c * vip - s * viq;
                        v[i * n + q] = s * vip + c * viq;
                    }
                }
            }
            if off(&m) <= threshold {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| m[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + col] = v[i * n + k];
        }
    }
    Ok(Spectrum {
        eigenvalues,
        vectors,
        n,
    })
}
