//! Command-line driver for the telegraph solver: problem registry, expression
//! language for custom problems, and the solve/sweep/quadrature runners.

pub mod config;
pub mod error;
pub mod expr;
pub mod problem;
pub mod report;
pub mod run;

pub use config::{Format, RunConfig, SecondOrder};
pub use error::{CliError, CliResult};
pub use expr::{parse_expression, Expr, ExprError};
pub use problem::{parse_problem_file, registry_entry, CustomProblem, ProblemSpec};
pub use run::{run_nodes, run_quadrature, run_solve, run_sweep, QuadKind, QuadratureRequest, SweepPlan};
