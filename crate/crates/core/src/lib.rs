//! Shifted Gegenbauer pseudospectral tools and a solver for the 1D hyperbolic
//! telegraph equation `u_tt + β₁ u_t + β₂ u = u_xx + f` on `[0, l] × [0, τ]`.
//!
//! The building blocks are usable on their own: Gegenbauer evaluation and Gauss
//! rules ([`gegenbauer`]), discrete transforms ([`interp`]), integration
//! matrices including the per-node optimal variant ([`quadrature`]). The
//! solver lives in [`telegraph`] and error metrics in [`analysis`].

pub mod analysis;
pub mod error;
pub mod gegenbauer;
pub mod interp;
pub mod linalg;
pub mod minimize;
pub mod quadrature;
pub mod special;
pub mod telegraph;

pub use error::{Error, Result};
pub use gegenbauer::{gauss_nodes, leading_coefficient, GegenbauerBasis, GegenbauerParam, NodeSet, NormTable};
pub use linalg::Matrix;
pub use quadrature::{OptimalConfig, OptimalSMatrix, SMatrix, SearchConfig};
pub use analysis::{error_norms, ErrorReport};
pub use telegraph::{DiscretizationConfig, SolutionField, TelegraphProblem};
