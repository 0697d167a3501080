//! Four standard test problems on the unit square with known solutions.

use super::problem::{Fn2, TelegraphProblem};
use std::sync::Arc;

/// A problem with its exact solution and `sup |u_xx|` over the domain.
#[derive(Clone)]
pub struct Benchmark {
    pub id: usize,
    pub problem: TelegraphProblem,
    pub exact: Fn2,
    pub uxx_bound: f64,
}

impl std::fmt::Debug for Benchmark {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Benchmark")
            .field("id", &self.id)
            .field("problem", &self.problem)
            .field("uxx_bound", &self.uxx_bound)
            .finish_non_exhaustive()
    }
}

fn q(x: f64) -> f64 {
    (x * (x - 1.0)).powi(4)
}

/// Benchmark `1..=4`, `None` otherwise.
///
/// 1. `u = x² + t` with `β₁ = β₂ = 1`.
/// 2. `u = x⁴(x−1)⁴ e^{2t}` with `β₁ = 10, β₂ = 24`.
/// 3. `u = sin x cos t` with `β₁ = 12, β₂ = 4`.
/// 4. `u = e^{−2t} sinh x` with `β₁ = 20, β₂ = 25`.
pub fn benchmark(id: usize) -> Option<Benchmark> {
    let unit = |b1, b2| TelegraphProblem::new(b1, b2, 1.0, 1.0).expect("unit domain is valid");
    let (problem, exact, uxx_bound): (TelegraphProblem, Fn2, f64) = match id {
        1 => (
            unit(1.0, 1.0)
                .with_source(|x, t| x * x + t - 1.0)
                .with_initial(|x| x * x, |_| 1.0)
                .with_boundary(|t| t, |t| 1.0 + t),
            Arc::new(|x, t| x * x + t),
            2.0,
        ),
        2 => (
            unit(10.0, 24.0)
                .with_source(|x, t| {
                    4.0 * (2.0 * t).exp()
                        * x
                        * x
                        * (x - 1.0).powi(2)
                        * (12.0 * x.powi(4) - 24.0 * x.powi(3) - 2.0 * x * x + 14.0 * x - 3.0)
                })
                .with_initial(q, |x| 2.0 * q(x)),
            Arc::new(|x, t| q(x) * (2.0 * t).exp()),
            // q'' peaks at x = 1/2 with value 1/8
            0.125 * 2f64.exp(),
        ),
        3 => (
            unit(12.0, 4.0)
                .with_source(|x, t| 4.0 * (t.cos() - 3.0 * t.sin()) * x.sin())
                .with_initial(f64::sin, |_| 0.0)
                .with_boundary(|_| 0.0, |t| 1f64.sin() * t.cos()),
            Arc::new(|x, t| x.sin() * t.cos()),
            1f64.sin(),
        ),
        4 => (
            unit(20.0, 25.0)
                .with_source(|x, t| -12.0 * (-2.0 * t).exp() * x.sinh())
                .with_initial(f64::sinh, |x| -2.0 * x.sinh())
                .with_boundary(|_| 0.0, |t| (-2.0 * t).exp() * 1f64.sinh()),
            Arc::new(|x, t| (-2.0 * t).exp() * x.sinh()),
            1f64.sinh(),
        ),
        _ => return None,
    };
    Some(Benchmark {
        id,
        problem,
        exact,
        uxx_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `u_tt + β₁u_t + β₂u − u_xx − f` by central differences.
    fn pde_residual(b: &Benchmark, x: f64, t: f64) -> f64 {
        let h = 1e-4;
        let u = |x, t| (b.exact)(x, t);
        let utt = (u(x, t + h) - 2.0 * u(x, t) + u(x, t - h)) / (h * h);
        let uxx = (u(x + h, t) - 2.0 * u(x, t) + u(x - h, t)) / (h * h);
        let ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
        let p = &b.problem;
        utt + p.beta1 * ut + p.beta2 * u(x, t) - uxx - (p.f)(x, t)
    }

    #[test]
    fn exact_solutions_satisfy_the_equation_and_data() {
        for id in 1..=4 {
            let b = benchmark(id).unwrap();
            let p = &b.problem;
            for &(x, t) in &[(0.3, 0.4), (0.7, 0.9), (0.5, 0.5)] {
                assert!(pde_residual(&b, x, t).abs() < 1e-5, "example {id}");
            }
            for &s in &[0.0, 0.25, 0.8] {
                assert!(((b.exact)(s, 0.0) - (p.g1)(s)).abs() < 1e-14);
                assert!(((b.exact)(0.0, s) - (p.h1)(s)).abs() < 1e-14);
                assert!(((b.exact)(1.0, s) - (p.h2)(s)).abs() < 1e-14);
                let h = 1e-6;
                let ut = ((b.exact)(s, h) - (b.exact)(s, -h)) / (2.0 * h);
                assert!((ut - (p.g2)(s)).abs() < 1e-6);
            }
        }
        assert!(benchmark(0).is_none() && benchmark(5).is_none());
    }
}
