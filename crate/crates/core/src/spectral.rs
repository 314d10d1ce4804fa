//! Finite realizations of the operators selected by a vertex measure.
//!
//! The energy form on `ℓ²(X, m)` has the generalized matrix pencil
//! `(L, D_m)`; symmetrizing as `A = D_m^{-1/2} L D_m^{-1/2}` keeps the
//! eigenproblem symmetric with the same eigenvalues. The Neumann
//! realization acts on all of `X`; the `Ω`-restricted realization is the
//! analogous pencil on the Laplacian block `L[Ω,Ω]` and has strictly
//! positive bottom eigenvalue for proper `Ω`.
//!
//! On a finite graph every function has finite support, so the Dirichlet
//! realization coincides with the Neumann one and is not built separately.

use alloc::vec::Vec;

use crate::error::Result;
use crate::float;
use crate::graph::{Measure, VertexSubset, WeightedGraph};
use crate::numerics::{symmetric_eigen, Spectrum, SymmetricMatrix};

/// Which realization a matrix represents.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    Neumann,
    OmegaRestricted(VertexSubset),
}

/// A realized operator: the symmetrized pencil matrix, its measure, and
/// its spectrum (eigenvalues clamped to zero when they sit within 1e-9
/// of it from below; the forms are positive semidefinite).
#[derive(Debug, Clone)]
pub struct RealizedOperator {
    kind: OperatorKind,
    matrix: SymmetricMatrix,
    measure: Measure,
    spectrum: Spectrum,
}

impl RealizedOperator {
    fn realize(kind: OperatorKind, matrix: SymmetricMatrix, measure: Measure) -> Result<Self> {
        let mut spectrum = symmetric_eigen(&matrix)?;
        let scale = float::max(1.0, matrix.frobenius_norm());
        spectrum.clamp_small_negatives(1e-9 * scale);
        Ok(Self {
            kind,
            matrix,
            measure,
            spectrum,
        })
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn dimension(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &SymmetricMatrix {
        &self.matrix
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// k-th smallest eigenvalue, multiplicity counted.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        self.spectrum.eigenvalue(k)
    }

    /// All eigenvalues, nondecreasing.
    pub fn eigenvalues(&self) -> &[f64] {
        self.spectrum.eigenvalues()
    }
}

/// Neumann realization `D_m^{-1/2} L D_m^{-1/2}` on `ℓ²(X, m)`.
///
/// The Rayleigh quotient at `D_m^{1/2} f` equals `E(f) / ||f||²_{2,m}`,
/// so the bottom eigenvalue is 0 with eigenvector `D_m^{1/2} 1`.
pub fn neumann_operator(g: &WeightedGraph, m: &Measure) -> Result<RealizedOperator> {
    let n = g.n();
    if m.len() != n {
        return Err(crate::error::Error::LengthMismatch {
            expected: n,
            got: m.len(),
        });
    }
    let l = g.laplacian();
    let scale: Vec<f64> = m.masses().iter().map(|&v| 1.0 / float::sqrt(v)).collect();
    let a = SymmetricMatrix::from_fn(n, |i, j| l.get(i, j) * scale[i] * scale[j]);
    RealizedOperator::realize(OperatorKind::Neumann, a, m.clone())
}

/// `Ω`-restricted realization `D_m^{-1/2} L[Ω,Ω] D_m^{-1/2}` on
/// `ℓ²(Ω, m)`; the measure is indexed over `Ω` (increasing vertex order).
pub fn omega_operator(
    g: &WeightedGraph,
    omega: &VertexSubset,
    m: &Measure,
) -> Result<RealizedOperator> {
    omega.require_nonempty_proper(g.n())?;
    let members = omega.indices();
    if m.len() != members.len() {
        return Err(crate::error::Error::LengthMismatch {
            expected: members.len(),
            got: m.len(),
        });
    }
    let block = g.laplacian().principal_submatrix(&members);
    let scale: Vec<f64> = m.masses().iter().map(|&v| 1.0 / float::sqrt(v)).collect();
    let a = SymmetricMatrix::from_fn(members.len(), |i, j| block.get(i, j) * scale[i] * scale[j]);
    RealizedOperator::realize(OperatorKind::OmegaRestricted(omega.clone()), a, m.clone())
}
