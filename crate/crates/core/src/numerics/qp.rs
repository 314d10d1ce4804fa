//! Maximize a linear functional over the intersection of an ellipsoid
//! `fᵀQf ≤ 1` with the nonnegative orthant.
//!
//! This is the kernel behind the restricted metric: `r_Ω(x,y)` is the
//! square of `sup { c·f : fᵀQf ≤ 1, f ≥ 0 }` with `Q` the Laplacian
//! block on `Ω` and `c` the coordinate difference of the pair.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float;
use crate::numerics::linalg::SymmetricMatrix;

const ORACLE_DIM_LIMIT: usize = 12;
const PG_MAX_ITERS: usize = 200;
const ACTIVE_SET_SUPPORT_TOL: f64 = 1e-12;

/// Optimum of `max { c·f : fᵀQf ≤ 1, f ≥ 0 }`.
#[derive(Debug, Clone)]
pub struct EllipsoidMax {
    pub value: f64,
    pub argmax: Vec<f64>,
}

/// Projected gradient ascent with active-set polishing.
///
/// The gradient steps move along `c`, clip to the orthant, and renormalize
/// to the ellipsoid boundary with a backtracking step size. The resulting
/// support seeds an exact active-set solve (add/drop iterations on the
/// equality-constrained subproblem) that finishes to KKT optimality, so
/// the returned value is exact up to factorization roundoff.
pub fn max_linear_over_nonneg_ellipsoid(q: &SymmetricMatrix, c: &[f64]) -> Result<EllipsoidMax> {
    let n = q.dim();
    if c.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: c.len(),
        });
    }
    // Fails early (and reports NotPositiveDefinite) when Q is not SPD.
    q.cholesky()?;

    if !c.iter().any(|&ci| ci > 0.0) {
        return Ok(EllipsoidMax {
            value: 0.0,
            argmax: vec![0.0; n],
        });
    }

    let f = projected_gradient(q, c);
    let x = active_set_polish(q, c, &f)?;

    let gain: f64 = c.iter().zip(&x).map(|(a, b)| a * b).sum();
    if gain <= 0.0 {
        return Ok(EllipsoidMax {
            value: 0.0,
            argmax: vec![0.0; n],
        });
    }
    let value = float::sqrt(gain);
    let argmax = x.iter().map(|v| v / value).collect();
    Ok(EllipsoidMax { value, argmax })
}

/// Ascent on g(f) = c·f over the boundary slice of the feasible set.
fn projected_gradient(q: &SymmetricMatrix, c: &[f64]) -> Vec<f64> {
    let n = q.dim();
    let clip_normalize = |f: &[f64]| -> Option<Vec<f64>> {
        let clipped: Vec<f64> = f.iter().map(|&v| float::max(v, 0.0)).collect();
        let e = q.quad_form(&clipped);
        if e <= 0.0 {
            return None;
        }
        let s = 1.0 / float::sqrt(e);
        Some(clipped.iter().map(|v| v * s).collect())
    };

    let mut f = match clip_normalize(c) {
        Some(f) => f,
        None => return vec![0.0; n],
    };
    let mut best: f64 = c.iter().zip(&f).map(|(a, b)| a * b).sum();
    let mut alpha = 1.0 / float::max(q.frobenius_norm(), 1e-30);

    for _ in 0..PG_MAX_ITERS {
        let mut improved = false;
        for _ in 0..40 {
            let trial: Vec<f64> = f.iter().zip(c).map(|(fi, ci)| fi + alpha * ci).collect();
            if let Some(t) = clip_normalize(&trial) {
                let val: f64 = c.iter().zip(&t).map(|(a, b)| a * b).sum();
                if val > best + 1e-15 * (1.0 + float::abs(best)) {
                    f = t;
                    best = val;
                    alpha *= 1.5;
                    improved = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if !improved {
            break;
        }
    }
    f
}

/// Add/drop active-set iterations for `max c·f - 1/2 fᵀQf, f ≥ 0`,
/// whose optimum rescales to the ellipsoid optimum.
fn active_set_polish(q: &SymmetricMatrix, c: &[f64], warm: &[f64]) -> Result<Vec<f64>> {
    let n = q.dim();
    let mut in_set = vec![false; n];
    let mut x = vec![0.0; n];

    // Seed from the warm support, rescaled to the concave-QP scale.
    let qw = q.quad_form(warm);
    let cw: f64 = c.iter().zip(warm).map(|(a, b)| a * b).sum();
    if qw > 0.0 && cw > 0.0 {
        let t = cw / qw;
        for i in 0..n {
            if warm[i] > ACTIVE_SET_SUPPORT_TOL {
                in_set[i] = true;
                x[i] = t * warm[i];
            }
        }
    }
    if !in_set.iter().any(|&b| b) {
        let mut j = 0;
        for i in 1..n {
            if c[i] > c[j] {
                j = i;
            }
        }
        in_set[j] = true;
        x[j] = 0.0;
    }

    let scale = c.iter().fold(0.0, |acc, &v| float::max(acc, float::abs(v)));
    let dual_tol = 1e-13 * float::max(scale, 1.0);

    for _outer in 0..(3 * n + 10) {
        inner_restore(q, c, &mut in_set, &mut x)?;

        // Dual feasibility off the support: w = c - Qx must be ≤ 0 there.
        let qx = q.matvec(&x);
        let mut add = None;
        let mut worst = dual_tol;
        for i in 0..n {
            if !in_set[i] {
                let w = c[i] - qx[i];
                if w > worst {
                    worst = w;
                    add = Some(i);
                }
            }
        }
        match add {
            Some(i) => in_set[i] = true,
            None => break,
        }
    }
    Ok(x)
}

/// Solves the equality subproblem on the current support and walks back
/// toward the previous iterate whenever the solution leaves the orthant,
/// dropping the coordinates that hit zero.
fn inner_restore(q: &SymmetricMatrix, c: &[f64], in_set: &mut [bool], x: &mut [f64]) -> Result<()> {
    let n = q.dim();
    loop {
        let support: Vec<usize> = (0..n).filter(|&i| in_set[i]).collect();
        if support.is_empty() {
            for v in x.iter_mut() {
                *v = 0.0;
            }
            return Ok(());
        }
        let sub = q.principal_submatrix(&support);
        let rhs: Vec<f64> = support.iter().map(|&i| c[i]).collect();
        let z = sub.cholesky()?.solve(&rhs);

        if z.iter().all(|&v| v > 0.0) {
            for v in x.iter_mut() {
                *v = 0.0;
            }
            for (k, &i) in support.iter().enumerate() {
                x[i] = z[k];
            }
            return Ok(());
        }

        // Step from x toward z, stopping at the first coordinate to vanish.
        let mut alpha = 1.0;
        for (k, &i) in support.iter().enumerate() {
            if z[k] <= 0.0 {
                let denom = x[i] - z[k];
                if denom > 0.0 {
                    alpha = float::min(alpha, x[i] / denom);
                }
            }
        }
        for (k, &i) in support.iter().enumerate() {
            x[i] += alpha * (z[k] - x[i]);
        }
        for &i in &support {
            if x[i] <= ACTIVE_SET_SUPPORT_TOL {
                x[i] = 0.0;
                in_set[i] = false;
            }
        }
        if support.iter().all(|&i| in_set[i]) {
            // Nothing was dropped; zero the smallest to guarantee progress.
            let mut j = support[0];
            for &i in &support {
                if x[i] < x[j] {
                    j = i;
                }
            }
            x[j] = 0.0;
            in_set[j] = false;
        }
    }
}

/// Exhaustive oracle: tries every support, keeps the boundary-scaled
/// equality solution when it stays (numerically) in the orthant.
pub fn active_set_oracle(q: &SymmetricMatrix, c: &[f64]) -> Result<f64> {
    let n = q.dim();
    if n > ORACLE_DIM_LIMIT {
        return Err(Error::DimensionTooLarge {
            got: n,
            limit: ORACLE_DIM_LIMIT,
        });
    }
    if c.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: c.len(),
        });
    }
    let mut best = 0.0f64;
    for mask in 1u32..(1u32 << n) {
        let support: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub = q.principal_submatrix(&support);
        let rhs: Vec<f64> = support.iter().map(|&i| c[i]).collect();
        let h = sub.cholesky()?.solve(&rhs);
        let gain: f64 = rhs.iter().zip(&h).map(|(a, b)| a * b).sum();
        if gain <= 0.0 {
            continue;
        }
        let value = float::sqrt(gain);
        if h.iter().any(|&v| v / value < -1e-12) {
            continue;
        }
        best = float::max(best, value);
    }
    Ok(best)
}
