use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Shared handle to a function of one variable.
pub type Fn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// Shared handle to a function of `(x, t)`.
pub type Fn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Coefficients, domain and data of a telegraph problem.
///
/// Function handles must be pure: the solver samples them at nodes of its
/// own choosing, possibly more than once.
#[derive(Clone)]
pub struct TelegraphProblem {
    pub beta1: f64,
    pub beta2: f64,
    pub l: f64,
    pub tau: f64,
    pub f: Fn2,
    pub g1: Fn1,
    pub g2: Fn1,
    pub h1: Fn1,
    pub h2: Fn1,
}

impl fmt::Debug for TelegraphProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TelegraphProblem")
            .field("beta1", &self.beta1)
            .field("beta2", &self.beta2)
            .field("l", &self.l)
            .field("tau", &self.tau)
            .finish_non_exhaustive()
    }
}

impl TelegraphProblem {
    /// A problem with all data set to zero.
    pub fn new(beta1: f64, beta2: f64, l: f64, tau: f64) -> Result<Self> {
        for (v, name) in [(l, "l"), (tau, "tau")] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        if !(beta1.is_finite() && beta2.is_finite()) {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        let zero1: Fn1 = Arc::new(|_| 0.0);
        Ok(Self {
            beta1,
            beta2,
            l,
            tau,
            f: Arc::new(|_, _| 0.0),
            g1: zero1.clone(),
            g2: zero1.clone(),
            h1: zero1.clone(),
            h2: zero1,
        })
    }

    pub fn with_source(mut self, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.f = Arc::new(f);
        self
    }

    pub fn with_initial(
        mut self,
        g1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        g2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.g1 = Arc::new(g1);
        self.g2 = Arc::new(g2);
        self
    }

    pub fn with_boundary(
        mut self,
        h1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        h2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.h1 = Arc::new(h1);
        self.h2 = Arc::new(h2);
        self
    }

    /// `κ = (β₁ t + 1) g₁(x) + t g₂(x)`.
    pub fn kappa(&self, x: f64, t: f64) -> f64 {
        (self.beta1 * t + 1.0) * (self.g1)(x) + t * (self.g2)(x)
    }

    /// Linear lift of the boundary data: `ψ(0, t) = h₁(t)`, `ψ(l, t) = h₂(t)`.
    pub fn psi(&self, x: f64, t: f64) -> f64 {
        let theta = x / self.l;
        (1.0 - theta) * (self.h1)(t) + theta * (self.h2)(t)
    }

    /// `ψ̂ = κ − ψ`.
    pub fn psi_hat(&self, x: f64, t: f64) -> f64 {
        self.kappa(x, t) - self.psi(x, t)
    }

    /// Mismatches between initial and boundary data at the two corners.
    pub fn compatibility_warnings(&self, tol: f64) -> Vec<String> {
        let mut out = Vec::new();
        let checks = [
            ("g1(0) vs h1(0)", (self.g1)(0.0), (self.h1)(0.0)),
            ("g1(l) vs h2(0)", (self.g1)(self.l), (self.h2)(0.0)),
        ];
        for (what, a, b) in checks {
            if (a - b).abs() > tol * (1.0 + a.abs().max(b.abs())) {
                out.push(format!("{what}: {a} != {b}"));
            }
        }
        out
    }
}
