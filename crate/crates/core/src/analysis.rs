//! Error metrics for solved fields, coefficient bounds and convergence sweeps.
//!
//! Grid norms are taken over the full `(N_x+1) × (N_t+1)` collocation grid.
//! The lattice maximum `Linf` samples a uniform `n × n` lattice of the domain.

use crate::error::Result;
use crate::linalg::Matrix;
use crate::special::{binomial, gamma, ln_gamma};
use crate::telegraph::{DiscretizationConfig, SolutionField, TelegraphProblem};
use rayon::prelude::*;
use std::time::Duration;

/// Default lattice resolution for [`ErrorReport::big_linf`].
pub const DEFAULT_LATTICE: usize = 100;

const POWER_MAX_ITER: usize = 500;
const POWER_TOL: f64 = 1e-10;

/// Error norms of one solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    /// Max column abs-sum of the grid error matrix.
    pub l1: f64,
    /// Spectral norm of the grid error matrix.
    pub l2: f64,
    /// Max row abs-sum of the grid error matrix.
    pub linf: f64,
    /// Max pointwise error over the uniform lattice.
    pub big_linf: f64,
    /// Root-mean-square error over the collocation grid.
    pub rms: f64,
    pub elapsed: Duration,
}

/// Exact solution `u(x, t)`.
pub type Exact<'a> = &'a (dyn Fn(f64, f64) -> f64 + Sync);

/// Where to sample [`rms_error`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RmsGrid {
    #[default]
    Collocation,
    /// Uniform `n × n` lattice including the domain corners.
    Lattice(usize),
}

/// `|u − u_exact|` at the collocation grid, rows indexed by `x`.
pub fn error_matrix(exact: Exact, field: &SolutionField) -> Matrix {
    let u = field.evaluate_at_grid();
    let (xs, ts) = field.grid();
    Matrix::from_fn(xs.len(), ts.len(), |i, j| (u[(i, j)] - exact(xs[i], ts[j])).abs())
}

/// Largest singular value by power iteration on `EᵀE` from the all-ones vector.
pub fn spectral_norm(e: &Matrix) -> f64 {
    let (r, c) = e.shape();
    if r == 0 || c == 0 || e.max_abs() == 0.0 {
        return 0.0;
    }
    let et = e.transpose();
    let mut v = vec![1.0 / (c as f64).sqrt(); c];
    let mut lambda = 0.0;
    for _ in 0..POWER_MAX_ITER {
        let w = et.mul_vec(&e.mul_vec(&v));
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let next = norm;
        v = w.into_iter().map(|x| x / norm).collect();
        let done = (next - lambda).abs() <= POWER_TOL * next;
        lambda = next;
        if done {
            break;
        }
    }
    lambda.sqrt()
}

/// Largest pointwise error over a uniform `n × n` lattice.
pub fn lattice_max_error(exact: Exact, field: &SolutionField, n: usize) -> f64 {
    lattice(field, n)
        .map(|(x, t)| (field.evaluate(x, t) - exact(x, t)).abs())
        .fold(0.0, f64::max)
}

fn lattice(field: &SolutionField, n: usize) -> impl Iterator<Item = (f64, f64)> + '_ {
    let (l, tau) = (field.problem().l, field.problem().tau);
    let step = move |k: usize, len: f64| {
        if n <= 1 {
            0.0
        } else {
            len * k as f64 / (n - 1) as f64
        }
    };
    (0..n).flat_map(move |a| (0..n).map(move |b| (step(a, l), step(b, tau))))
}

/// Root-mean-square pointwise error.
pub fn rms_error(exact: Exact, field: &SolutionField, grid: RmsGrid) -> f64 {
    let (sum, count) = match grid {
        RmsGrid::Collocation => {
            let e = error_matrix(exact, field);
            (e.as_slice().iter().map(|v| v * v).sum::<f64>(), e.as_slice().len())
        }
        RmsGrid::Lattice(n) => (
            lattice(field, n)
                .map(|(x, t)| (field.evaluate(x, t) - exact(x, t)).powi(2))
                .sum::<f64>(),
            n * n,
        ),
    };
    if count == 0 {
        0.0
    } else {
        (sum / count as f64).sqrt()
    }
}

/// All five metrics with the default lattice.
pub fn error_norms(exact: Exact, field: &SolutionField) -> ErrorReport {
    error_norms_with(exact, field, DEFAULT_LATTICE)
}

pub fn error_norms_with(exact: Exact, field: &SolutionField, lattice_n: usize) -> ErrorReport {
    let e = error_matrix(exact, field);
    let rms = (e.as_slice().iter().map(|v| v * v).sum::<f64>() / e.as_slice().len() as f64).sqrt();
    ErrorReport {
        l1: e.norm_1(),
        l2: spectral_norm(&e),
        linf: e.norm_inf(),
        big_linf: lattice_max_error(exact, field, lattice_n),
        rms,
        elapsed: Duration::from_secs_f64(field.timings.total_s),
    }
}

/// `(n+α) Γ(n+2α) / Γ(n+1)`, continued to `1/2 · Γ(2α+1)` at `n = 0`.
fn positive_factor(alpha: f64, n: usize) -> f64 {
    let n = n as f64;
    if n == 0.0 {
        return 0.5 * gamma(2.0 * alpha + 1.0);
    }
    (n + alpha) * (ln_gamma(n + 2.0 * alpha) - ln_gamma(n + 1.0)).exp()
}

/// `2 |n+α| Γ((n+1)/2+α) / (Γ(α+1) Γ((n+1)/2) √(n(n+2α)))` for odd `n`.
fn odd_factor(alpha: f64, n: usize) -> f64 {
    let nf = n as f64;
    let h = (nf + 1.0) / 2.0;
    2.0 * (nf + alpha).abs() * (ln_gamma(h + alpha) - ln_gamma(h)).exp()
        / (gamma(alpha + 1.0) * (nf * (nf + 2.0 * alpha)).sqrt())
}

/// `|n+α| / |α| · |binom(n/2+α−1, n/2)|` for even `n`.
fn even_factor(alpha: f64, n: usize) -> f64 {
    let nf = n as f64;
    (nf + alpha).abs() / alpha.abs() * binomial(nf / 2.0 + alpha - 1.0, n / 2).abs()
}

/// Upper bound on `|φ̃_{n,m}|` for collocation parameter `alpha` given `‖u_xx‖_∞`.
///
/// For `α ≥ 0` this is `4 (n+α)(m+α) Γ(n+2α) Γ(m+2α) / (Γ²(2α+1) n! m!)`; for
/// negative `α` the branch depends on the parity of `n` and `m`.
pub fn coefficient_bound(alpha: f64, n: usize, m: usize, uxx_bound: f64) -> f64 {
    if alpha >= 0.0 {
        let g = gamma(2.0 * alpha + 1.0);
        return 4.0 * positive_factor(alpha, n) * positive_factor(alpha, m) / (g * g) * uxx_bound;
    }
    let factor = match (n.is_multiple_of(2), m.is_multiple_of(2)) {
        (true, true) => even_factor(alpha, n) * even_factor(alpha, m),
        (false, false) => odd_factor(alpha, n) * odd_factor(alpha, m),
        (true, false) => mixed_factor(alpha, n, m),
        (false, true) => mixed_factor(alpha, m, n),
    };
    factor * uxx_bound
}

/// Even `n`, odd `m`.
fn mixed_factor(alpha: f64, n: usize, m: usize) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let h = (mf + 1.0) / 2.0;
    2.0 * (ln_gamma(h + alpha) - ln_gamma(h)).exp() * ((nf + alpha) * (mf + alpha)).abs()
        / (alpha * alpha * (mf * (mf + 2.0 * alpha)).sqrt() * gamma(alpha).abs())
        * binomial(nf / 2.0 + alpha - 1.0, n / 2).abs()
}

/// One coefficient compared with its bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientCheck {
    pub n: usize,
    pub m: usize,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Relative allowance on the bound comparison. The bound is attained when
/// `u_xx` is constant, so computed coefficients can exceed it by rounding.
pub const BOUND_SLACK: f64 = 1e-12;

/// Compare every solved coefficient with [`coefficient_bound`].
pub fn coefficient_bound_check(field: &SolutionField, alpha: f64, uxx_bound: f64) -> Vec<CoefficientCheck> {
    let c = field.coeffs();
    let mut out = Vec::with_capacity(c.rows() * c.cols());
    for n in 0..c.rows() {
        for m in 0..c.cols() {
            let value = c[(n, m)].abs();
            let bound = coefficient_bound(alpha, n, m, uxx_bound);
            out.push(CoefficientCheck {
                n,
                m,
                value,
                bound,
                pass: value <= bound * (1.0 + BOUND_SLACK) + f64::MIN_POSITIVE,
            });
        }
    }
    out
}

/// How `M_t` follows `N` in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MtRule {
    #[default]
    SameAsN,
    Fixed(usize),
    /// `min(N, cap)`.
    Capped(usize),
}

impl MtRule {
    pub fn mt(self, n: usize) -> usize {
        match self {
            MtRule::SameAsN => n,
            MtRule::Fixed(m) => m,
            MtRule::Capped(c) => n.min(c),
        }
    }
}

/// One sweep row; failures are kept as messages so the sweep continues.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub n: usize,
    pub mt: usize,
    /// `L + 1`.
    pub unknowns: usize,
    pub result: std::result::Result<ErrorReport, String>,
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// Least-squares slope of `log₁₀ Linf` against `N` over successful rows.
    pub slope: Option<f64>,
}

/// Sweep settings beyond the `N` list.
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub mt_rule: MtRule,
    /// Template for everything but the sizes.
    pub base: DiscretizationConfig,
    pub lattice: usize,
    /// Solve rows concurrently; timings then include contention.
    pub parallel: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            mt_rule: MtRule::SameAsN,
            base: DiscretizationConfig::square(1),
            lattice: DEFAULT_LATTICE,
            parallel: false,
        }
    }
}

fn sweep_row(problem: &TelegraphProblem, exact: Exact, n: usize, cfg: &SweepConfig) -> SweepRow {
    let mt = cfg.mt_rule.mt(n);
    let mut dc = cfg.base;
    dc.nx = n;
    dc.nt = n;
    dc.mt = mt;
    let result: Result<ErrorReport> =
        SolutionField::compute(problem, dc).map(|f| error_norms_with(exact, &f, cfg.lattice));
    SweepRow {
        n,
        mt,
        unknowns: dc.unknowns(),
        result: result.map_err(|e| e.to_string()),
    }
}

/// Solve at `N_x = N_t = N` for each entry of `ns`.
pub fn convergence_sweep(problem: &TelegraphProblem, exact: Exact, ns: &[usize], cfg: &SweepConfig) -> Sweep {
    let rows: Vec<SweepRow> = if cfg.parallel {
        ns.par_iter().map(|&n| sweep_row(problem, exact, n, cfg)).collect()
    } else {
        ns.iter().map(|&n| sweep_row(problem, exact, n, cfg)).collect()
    };
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter_map(|r| r.result.as_ref().ok().map(|e| (r.n as f64, e.big_linf.max(f64::MIN_POSITIVE).log10())))
        .unzip();
    Sweep {
        slope: fit_slope(&xs, &ys),
        rows,
    }
}

/// Least-squares slope of `ys` against `xs`; `None` with fewer than two distinct points.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return None;
    }
    let mx = xs[..n].iter().sum::<f64>() / n as f64;
    let my = ys[..n].iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs[..n].iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs[..n].iter().zip(&ys[..n]).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}
