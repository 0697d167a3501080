//! Shared inputs for the benchmarks in `benches/`.

use telegraph_core::telegraph::{benchmark, Discretization};
use telegraph_core::{DiscretizationConfig, TelegraphProblem};

/// Problem `id` from the built-in set.
pub fn problem(id: usize) -> TelegraphProblem {
    benchmark(id).expect("ids 1..=4 exist").problem
}

/// Square discretization on the unit domain with `M_t = min(n, mt_cap)`.
pub fn discretization(n: usize, mt_cap: usize) -> Discretization {
    Discretization::new(1.0, 1.0, DiscretizationConfig::new(n, n, n.min(mt_cap))).expect("valid sizes")
}
