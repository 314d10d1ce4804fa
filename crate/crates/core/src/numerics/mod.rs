//! Self-contained numeric kernels: dense symmetric linear algebra,
//! nonnegativity-constrained quadratic maximization, and direct search
//! over the probability simplex.

mod linalg;
mod qp;
mod simplex_search;

pub use linalg::{solve_spd, symmetric_eigen, Spectrum, SymmetricMatrix};
pub use qp::{active_set_oracle, max_linear_over_nonneg_ellipsoid, EllipsoidMax};
pub use simplex_search::{minimize_over_simplex, SimplexMinimum};
