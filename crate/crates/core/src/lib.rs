//! Metric and spectral invariants of weighted graphs.
//!
//! A weighted graph `(X, b)` carries the energy form
//! `E(f) = 1/2 Σ b(x,y) (f(x) - f(y))²`. This crate computes the
//! pseudometrics attached to that form — the path metric `d`, the
//! resistance metric `r`, the restricted metric `r_Ω` over nonnegative
//! functions supported in a proper subset, and the envelope `r' = sup_Ω r_Ω`
//! — together with the geometric quantities they induce (diameters,
//! inradii) and the spectra of the Laplacians `H_m` selected by a measure
//! `m` on the vertex set.
//!
//! The headline identities tie these together: the best constant in
//! `(sup f - inf f)² ≤ c · E(f)` equals the `r`-diameter, the best
//! constant over functions supported in `Ω` equals both the `r_Ω`-diameter
//! and the `r_Ω`-inradius of `Ω`, and each constant has a variational
//! description as an infimum of Laplacian eigenvalues over probability
//! measures. The [`poincare`] module evaluates all of these numerically
//! and reports pass/fail records with residuals.
//!
//! The crate is `no_std` (with `alloc`); everything is dense linear
//! algebra aimed at graphs of a few hundred vertices.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
mod float;
pub mod graph;
pub mod metrics;
pub mod numerics;
pub mod poincare;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Family, Measure, VertexSubset, WeightedGraph};
pub use metrics::{MetricKind, PseudometricMatrix};
pub use numerics::{Spectrum, SymmetricMatrix};
pub use poincare::{PoincareConstants, TheoremId, VerificationReport};
pub use spectral::RealizedOperator;
