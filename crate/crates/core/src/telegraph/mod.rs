//! Pseudospectral solver for the 1D hyperbolic telegraph equation
//!
//! ```text
//! u_tt + β₁ u_t + β₂ u = u_xx + f(x, t),   0 < x < l, 0 < t <= τ
//! u(x, 0) = g₁(x),  u_t(x, 0) = g₂(x),  u(0, t) = h₁(t),  u(l, t) = h₂(t)
//! ```
//!
//! The unknown is `φ = u_xx`. Integrating twice in time and twice in space turns
//! the problem into an integral equation for `φ`, collocated at a tensor grid of
//! shifted Gegenbauer-Gauss nodes. Time integrals of known data use the optimal
//! integration matrices; everything acting on `φ` uses the square ones.

mod assembly;
mod benchmarks;
mod discretization;
mod jop;
mod problem;
mod solution;

pub use assembly::{
    assemble, assemble_counted, expected_matrix_additions, expected_matrix_multiplications,
    expected_rhs_multiplications, index, CollocationSystem, OpCounts,
};
pub use benchmarks::{benchmark, Benchmark};
pub use discretization::{Discretization, DiscretizationConfig};
pub use jop::{j_operator_basis, j_operator_numeric};
pub use problem::{Fn1, Fn2, TelegraphProblem};
pub use solution::{solve, solve_problem, SolutionField, Timings};
