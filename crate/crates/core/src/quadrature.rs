//! Integration matrices built on Gegenbauer interpolation.
//!
//! [`SMatrix`] maps nodal values at Gauss nodes to the values of `∫_a^{x_i} f`
//! (or its `q`-fold repeated integral). [`OptimalSMatrix`] picks, for each
//! integration node separately, the Gegenbauer parameter that minimizes the
//! leading quadrature error term and interpolates at that parameter's nodes.

use crate::error::{Error, Result};
use crate::gegenbauer::{gauss_nodes, leading_coefficient, GegenbauerBasis, NodeSet};
use crate::linalg::Matrix;
use crate::minimize::brent;
use crate::special::{binomial, factorial, pochhammer};
use rayon::prelude::*;

/// Gauss-Legendre rule on `[-1, 1]`, exact for degree `2 * len - 1`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(points: usize) -> Self {
        let ns = gauss_nodes(0.5, points.max(1) - 1).expect("Legendre rule is always valid");
        Self {
            nodes: ns.nodes().to_vec(),
            weights: ns.weights().to_vec(),
        }
    }

    /// Smallest rule exact for polynomials of degree `degree`.
    pub fn for_degree(degree: usize) -> Self {
        Self::new(degree / 2 + 1)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (h, c) = (0.5 * (b - a), 0.5 * (b + a));
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (c + h * x, h * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// `∫_a^{upper} C_j`, where `a` is the left end of the basis domain.
pub fn integrate_basis(basis: &GegenbauerBasis, j: usize, upper: f64) -> f64 {
    let rule = GaussLegendre::for_degree(j);
    let a = basis.domain().0;
    rule.integrate(a, upper, |x| basis.eval(j, x))
}

/// `∫_a^{upper} (upper - s)^{q-1}/(q-1)! C_j(s) ds` for `j = 0..=n`.
fn repeated_integrals(
    basis: &GegenbauerBasis,
    n: usize,
    upper: f64,
    q: usize,
    rule: &GaussLegendre,
    vals: &mut [f64],
) -> Vec<f64> {
    let a = basis.domain().0;
    let scale = factorial(q - 1);
    let mut out = vec![0.0; n + 1];
    for (s, w) in rule.mapped(a, upper) {
        basis.eval_all_into(s, vals);
        let kernel = w * (upper - s).powi(q as i32 - 1) / scale;
        for (o, v) in out.iter_mut().zip(vals.iter()) {
            *o += kernel * v;
        }
    }
    out
}

/// How orders `q >= 2` are formed from the first-order matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HigherOrder {
    /// `(x_i - x_k)^{q-1}/(q-1)!` times the first-order entry.
    #[default]
    Hadamard,
    /// Interpolate, then integrate the Cauchy kernel `(x_i - s)^{q-1}/(q-1)!` exactly.
    Cauchy,
}

/// Integration matrix on a fixed Gauss grid.
#[derive(Debug, Clone)]
pub struct SMatrix {
    order: usize,
    nodeset: NodeSet,
    uppers: Vec<f64>,
    entries: Matrix,
}

impl SMatrix {
    /// Square matrix of order `q` on the `n + 1` shifted Gauss nodes of `[0, L]`.
    pub fn build(alpha: f64, n: usize, length: f64, q: usize) -> Result<Self> {
        let ns = NodeSet::shifted_gauss(alpha, n, length)?;
        let uppers = ns.nodes().to_vec();
        Self::from_nodeset(&ns, &uppers, q, HigherOrder::Hadamard)
    }

    /// Rows for arbitrary upper limits, interpolating at `ns`.
    pub fn from_nodeset(ns: &NodeSet, uppers: &[f64], q: usize, kind: HigherOrder) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("integration order must be at least 1".into()));
        }
        let entries = entries_for(ns, uppers, q, kind);
        Ok(Self {
            order: q,
            nodeset: ns.clone(),
            uppers: uppers.to_vec(),
            entries,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodeset(&self) -> &NodeSet {
        &self.nodeset
    }

    /// Upper integration limits, one per row.
    pub fn uppers(&self) -> &[f64] {
        &self.uppers
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.entries[(i, k)]
    }

    /// Apply to nodal samples.
    pub fn apply(&self, samples: &[f64]) -> Result<Vec<f64>> {
        if samples.len() != self.entries.cols() {
            return Err(Error::LengthMismatch {
                what: "samples",
                expected: self.entries.cols(),
                actual: samples.len(),
            });
        }
        Ok(self.entries.mul_vec(samples))
    }

    /// Apply to a function sampled at the interpolation nodes.
    pub fn apply_fn<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        let s: Vec<f64> = self.nodeset.nodes().iter().map(|&x| f(x)).collect();
        self.entries.mul_vec(&s)
    }
}

/// Rows by integrating the barycentric Lagrange basis through the stored nodes.
///
/// Agrees with the Christoffel-sum rows at exact Gauss nodes; used where those
/// sums lose accuracy (parameters close to `-1/2`).
pub fn lagrange_rows(ns: &NodeSet, uppers: &[f64], q: usize, kind: HigherOrder) -> Matrix {
    let n = ns.n();
    let xi = ns.standard_nodes();
    let mut bw: Vec<f64> = (0..=n)
        .map(|k| {
            1.0 / (0..=n)
                .filter(|&j| j != k)
                .map(|j| xi[k] - xi[j])
                .product::<f64>()
        })
        .collect();
    let scale = bw.iter().fold(0.0f64, |m, w| m.max(w.abs()));
    bw.iter_mut().for_each(|w| *w /= scale);

    let exact_q = if kind == HigherOrder::Cauchy { q } else { 1 };
    let rule = GaussLegendre::for_degree(n + exact_q - 1);
    let fact = factorial(exact_q - 1);
    let mut ell = vec![0.0; n + 1];
    let mut out = Matrix::zeros(uppers.len(), n + 1);
    for (i, &u) in uppers.iter().enumerate() {
        let xu = ns.to_standard(u);
        let row = out.row_mut(i);
        for (s, w) in rule.mapped(-1.0, xu) {
            match xi.iter().position(|&x| x == s) {
                Some(hit) => {
                    ell.iter_mut().for_each(|v| *v = 0.0);
                    ell[hit] = 1.0;
                }
                None => {
                    let mut denom = 0.0;
                    for k in 0..=n {
                        ell[k] = bw[k] / (s - xi[k]);
                        denom += ell[k];
                    }
                    ell.iter_mut().for_each(|v| *v /= denom);
                }
            }
            let kernel = w * (xu - s).powi(exact_q as i32 - 1) / fact;
            for (r, l) in row.iter_mut().zip(&ell) {
                *r += kernel * l;
            }
        }
    }
    scale_rows(&mut out, ns, uppers, q, kind);
    out
}

/// Map standard-interval rows to `[0, L]` and apply the Hadamard factor.
fn scale_rows(out: &mut Matrix, ns: &NodeSet, uppers: &[f64], q: usize, kind: HigherOrder) {
    let half = ns.basis().length() / 2.0;
    let exact_q = if kind == HigherOrder::Cauchy { q } else { 1 };
    let s = if ns.basis().is_shifted() { half.powi(exact_q as i32) } else { 1.0 };
    let fact = factorial(q - 1);
    for (i, &u) in uppers.iter().enumerate() {
        for (k, r) in out.row_mut(i).iter_mut().enumerate() {
            *r *= s;
            if kind == HigherOrder::Hadamard && q > 1 {
                *r *= (u - ns.nodes()[k]).powi(q as i32 - 1) / fact;
            }
        }
    }
}

/// Rows by the Christoffel-number sum `ϖ_k Σ_j λ_j^{-1} C_j(x_k) ∫ C_j`.
pub fn christoffel_rows(ns: &NodeSet, uppers: &[f64], q: usize, kind: HigherOrder) -> Matrix {
    let n = ns.n();
    let std = GegenbauerBasis::standard(ns.alpha()).expect("node set parameter is valid");
    let lambdas = std.norm_table(n).lambdas;
    let xi = ns.standard_nodes();
    // T[j][k] = ϖ_k C_j(ξ_k) / λ_j on the standard interval
    let mut t = Matrix::zeros(n + 1, n + 1);
    let mut vals = vec![0.0; n + 1];
    for k in 0..=n {
        std.eval_all_into(xi[k], &mut vals);
        let w = ns.standard_weights()[k];
        for j in 0..=n {
            t[(j, k)] = w * vals[j] / lambdas[j];
        }
    }
    let exact_q = if kind == HigherOrder::Cauchy { q } else { 1 };
    let rule = GaussLegendre::for_degree(n + exact_q - 1);
    let mut out = Matrix::zeros(uppers.len(), n + 1);
    for (i, &u) in uppers.iter().enumerate() {
        let ints = repeated_integrals(&std, n, ns.to_standard(u), exact_q, &rule, &mut vals);
        for k in 0..=n {
            out[(i, k)] = (0..=n).map(|j| ints[j] * t[(j, k)]).sum();
        }
    }
    scale_rows(&mut out, ns, uppers, q, kind);
    out
}

/// Below this distance from `-1/2` the Christoffel sums cancel catastrophically.
const CHRISTOFFEL_MARGIN: f64 = 1e-2;

fn entries_for(ns: &NodeSet, uppers: &[f64], q: usize, kind: HigherOrder) -> Matrix {
    if ns.alpha() + 0.5 < CHRISTOFFEL_MARGIN {
        lagrange_rows(ns, uppers, q, kind)
    } else {
        christoffel_rows(ns, uppers, q, kind)
    }
}

/// Line-search settings for the optimal parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Uniform scan points in `t` before local refinement.
    pub scan_points: usize,
    /// Bracket tolerance on `t`.
    pub tol: f64,
    pub max_iter: usize,
    /// Upper end of the search range in `α`.
    pub alpha_max: f64,
    /// Offset in `α = t² - 1/2 + ε`.
    pub epsilon: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            scan_points: 2000,
            tol: 1e-12,
            max_iter: 200,
            alpha_max: 20.0,
            epsilon: 3.0 * f64::EPSILON,
        }
    }
}

impl SearchConfig {
    pub fn alpha_of(&self, t: f64) -> f64 {
        t * t - 0.5 + self.epsilon
    }

    pub fn t_max(&self) -> f64 {
        (self.alpha_max + 0.5 - self.epsilon).sqrt()
    }
}

/// Outcome of a per-node parameter search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaSearch {
    pub alpha: f64,
    pub t: f64,
    pub eta_sq: f64,
    pub converged: bool,
    /// Set when `η ≡ 0` (integration node at the left end).
    pub degenerate: bool,
}

/// Error coefficient `η(α) = 2^m / K_{m+1} ∫_0^{x_i} C_{L,m+1}`.
pub fn eta(alpha: f64, length: f64, m: usize, x_i: f64) -> Result<f64> {
    let basis = GegenbauerBasis::shifted(alpha, length)?;
    Ok(eta_with_rule(&basis, m, x_i, &GaussLegendre::for_degree(m + 1)))
}

fn eta_with_rule(basis: &GegenbauerBasis, m: usize, x_i: f64, rule: &GaussLegendre) -> f64 {
    let integral = rule.integrate(0.0, x_i, |x| basis.eval(m + 1, x));
    let k = leading_coefficient(basis.alpha(), m + 1).unwrap_or(f64::INFINITY);
    2f64.powi(m as i32) / k * integral
}

/// Minimize `η²` over `α ∈ (-1/2, α_max]`.
///
/// A uniform scan in `t` locates every local minimum, each is refined with
/// Brent's method, and the lowest is kept; near-ties go to the smallest `t`.
pub fn optimize_alpha(length: f64, m: usize, x_i: f64, cfg: &SearchConfig) -> Result<AlphaSearch> {
    if !(0.0..=length).contains(&x_i) {
        return Err(Error::InvalidArgument(format!(
            "integration node {x_i} outside [0, {length}]"
        )));
    }
    GegenbauerBasis::shifted(0.0, length)?;
    if x_i == 0.0 {
        return Ok(AlphaSearch {
            alpha: 0.0,
            t: (0.5 - cfg.epsilon).sqrt(),
            eta_sq: 0.0,
            converged: true,
            degenerate: true,
        });
    }
    let rule = GaussLegendre::for_degree(m + 1);
    let objective = |t: f64| {
        let basis = GegenbauerBasis::shifted(cfg.alpha_of(t), length).expect("alpha in range");
        let e = eta_with_rule(&basis, m, x_i, &rule);
        e * e
    };

    let t_max = cfg.t_max();
    let n = cfg.scan_points.max(4);
    let grid: Vec<f64> = (0..=n).map(|k| t_max * k as f64 / n as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&t| objective(t)).collect();
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(*v));

    let mut candidates: Vec<(f64, f64, bool)> = Vec::new();
    for k in 0..=n {
        let left = if k == 0 { f64::INFINITY } else { vals[k - 1] };
        let right = if k == n { f64::INFINITY } else { vals[k + 1] };
        if vals[k] <= left && vals[k] <= right {
            let a = grid[k.saturating_sub(1)];
            let b = grid[(k + 1).min(n)];
            let min = brent(objective, a, b, cfg.tol, cfg.max_iter);
            if min.fx <= vals[k] {
                candidates.push((min.x, min.fx, min.converged));
            } else {
                candidates.push((grid[k], vals[k], min.converged));
            }
        }
    }
    let best = candidates
        .iter()
        .fold(f64::INFINITY, |m, c| m.min(c.1));
    let tie = best + 64.0 * f64::EPSILON * f64::EPSILON * scale;
    let &(t, eta_sq, converged) = candidates
        .iter()
        .filter(|c| c.1 <= tie)
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("scan always yields a local minimum");
    Ok(AlphaSearch {
        alpha: cfg.alpha_of(t),
        t,
        eta_sq,
        converged,
        degenerate: false,
    })
}

/// Settings for [`OptimalSMatrix::build`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalConfig {
    pub search: SearchConfig,
    /// Above this interpolation degree the rows fall back to `α = 0`.
    pub m_max: usize,
    pub kind: HigherOrder,
    pub parallel: bool,
}

impl Default for OptimalConfig {
    fn default() -> Self {
        Self {
            search: SearchConfig::default(),
            m_max: 20,
            kind: HigherOrder::Hadamard,
            parallel: true,
        }
    }
}

/// Rectangular integration matrix with a separately optimized parameter per row.
#[derive(Debug, Clone)]
pub struct OptimalSMatrix {
    order: usize,
    m: usize,
    length: f64,
    integration_nodes: Vec<f64>,
    searches: Vec<AlphaSearch>,
    adjoint: Vec<NodeSet>,
    entries: Matrix,
}

impl OptimalSMatrix {
    pub fn build(
        m: usize,
        length: f64,
        integration_nodes: &[f64],
        q: usize,
        cfg: &OptimalConfig,
    ) -> Result<Self> {
        if !(1..=2).contains(&q) {
            return Err(Error::InvalidArgument(format!(
                "optimal integration matrices support orders 1 and 2, got {q}"
            )));
        }
        let searches = Self::search_rows(m, length, integration_nodes, cfg)?;
        Self::from_searches(m, length, integration_nodes, q, cfg.kind, searches)
    }

    /// Build a pair of first- and second-order matrices sharing one parameter search.
    pub fn build_pair(
        m: usize,
        length: f64,
        integration_nodes: &[f64],
        cfg: &OptimalConfig,
    ) -> Result<(Self, Self)> {
        let searches = Self::search_rows(m, length, integration_nodes, cfg)?;
        let p1 = Self::from_searches(m, length, integration_nodes, 1, cfg.kind, searches.clone())?;
        let p2 = Self::from_searches(m, length, integration_nodes, 2, cfg.kind, searches)?;
        Ok((p1, p2))
    }

    fn search_rows(
        m: usize,
        length: f64,
        nodes: &[f64],
        cfg: &OptimalConfig,
    ) -> Result<Vec<AlphaSearch>> {
        let one = |&x: &f64| -> Result<AlphaSearch> {
            if m > cfg.m_max {
                Ok(AlphaSearch {
                    alpha: 0.0,
                    t: (0.5 - cfg.search.epsilon).sqrt(),
                    eta_sq: eta(0.0, length, m, x)?.powi(2),
                    converged: true,
                    degenerate: false,
                })
            } else {
                optimize_alpha(length, m, x, &cfg.search)
            }
        };
        if cfg.parallel {
            nodes.par_iter().map(one).collect()
        } else {
            nodes.iter().map(one).collect()
        }
    }

    fn from_searches(
        m: usize,
        length: f64,
        nodes: &[f64],
        q: usize,
        kind: HigherOrder,
        searches: Vec<AlphaSearch>,
    ) -> Result<Self> {
        let mut entries = Matrix::zeros(nodes.len(), m + 1);
        let mut adjoint = Vec::with_capacity(nodes.len());
        for (i, (&x, s)) in nodes.iter().zip(&searches).enumerate() {
            let ns = NodeSet::shifted_gauss(s.alpha, m, length)?;
            let row = entries_for(&ns, &[x], q, kind);
            entries.row_mut(i).copy_from_slice(row.row(0));
            adjoint.push(ns);
        }
        Ok(Self {
            order: q,
            m,
            length,
            integration_nodes: nodes.to_vec(),
            searches,
            adjoint,
            entries,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn integration_nodes(&self) -> &[f64] {
        &self.integration_nodes
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn searches(&self) -> &[AlphaSearch] {
        &self.searches
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.searches.iter().map(|s| s.alpha).collect()
    }

    /// Adjoint nodes of row `i`.
    pub fn adjoint_nodes(&self, i: usize) -> &[f64] {
        self.adjoint[i].nodes()
    }

    pub fn adjoint_nodeset(&self, i: usize) -> &NodeSet {
        &self.adjoint[i]
    }

    /// `Σ_k p_{ik} f(z_{ik})`.
    pub fn apply_row<F: Fn(f64) -> f64>(&self, i: usize, f: F) -> f64 {
        self.entries
            .row(i)
            .iter()
            .zip(self.adjoint[i].nodes())
            .map(|(p, &z)| p * f(z))
            .sum()
    }

    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        (0..self.entries.rows()).map(|i| self.apply_row(i, &f)).collect()
    }
}

/// Truncation error information for one integration node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureErrorReport {
    pub x_i: f64,
    pub alpha: f64,
    pub m: usize,
    pub eta: f64,
    /// `(L/2)^{m+1} A |η| / (2^m (m+1)!)`: the leading-term estimate. It treats
    /// the mean-value point as constant in `x`, so it is not a strict bound.
    pub eta_estimate: f64,
    /// Strict bound `(L/2)^{m+1} A / ((m+1)! K_{m+1}) ∫_0^{x_i} |C_{L,m+1}|`.
    pub bound: f64,
    /// Looser strict bound using the polynomial maximum in place of the integral.
    pub uniform_bound: f64,
    pub observed: Option<f64>,
}

impl QuadratureErrorReport {
    pub fn with_observed(mut self, observed: f64) -> Self {
        self.observed = Some(observed);
        self
    }
}

/// Error estimate and bounds for the degree-`m` quadrature with parameter `alpha`
/// on `[0, x_i]`, given `|f^{(m+1)}| <= a` on `[0, L]`.
pub fn error_formula(alpha: f64, length: f64, m: usize, x_i: f64, a: f64) -> Result<QuadratureErrorReport> {
    let basis = GegenbauerBasis::shifted(alpha, length)?;
    let e = eta(alpha, length, m, x_i)?;
    let half_pow = (length / 2.0).powi(m as i32 + 1);
    let fact = factorial(m + 1);
    let k = leading_coefficient(alpha, m + 1)?;
    let eta_estimate = half_pow * a * e.abs() / (2f64.powi(m as i32) * fact);

    // ∫|C| split at the roots of C_{L,m+1}
    let roots = NodeSet::shifted_gauss(alpha, m, length)?;
    let rule = GaussLegendre::for_degree(m + 1);
    let mut cuts = vec![0.0];
    cuts.extend(roots.nodes().iter().copied().filter(|&r| r > 0.0 && r < x_i));
    cuts.push(x_i);
    let abs_int: f64 = cuts
        .windows(2)
        .map(|w| rule.integrate(w[0], w[1], |x| basis.eval(m + 1, x)).abs())
        .sum();
    let bound = half_pow * a * abs_int / (fact * k);
    let uniform_bound = half_pow * a * x_i * max_poly_bound(alpha, m + 1) / (fact * k);
    Ok(QuadratureErrorReport {
        x_i,
        alpha,
        m,
        eta: e,
        eta_estimate,
        bound,
        uniform_bound,
        observed: None,
    })
}

/// Maximum of `|C_{L,n}|` on `[0, L]` (an upper bound for odd `n` with `α < 0`).
pub fn max_poly_bound(alpha: f64, n: usize) -> f64 {
    if alpha >= 0.0 || n == 0 {
        return 1.0;
    }
    // n! Γ(2α) / Γ(n + 2α) = n! / (2α)_n
    let ratio = factorial(n) / pochhammer(2.0 * alpha, n);
    if n.is_multiple_of(2) {
        let h = (n / 2) as f64;
        (ratio * binomial(h + alpha - 1.0, n / 2)).abs()
    } else {
        let h = ((n - 1) / 2) as f64;
        let nf = n as f64;
        (2.0 * ratio * alpha.abs() / (nf * (2.0 * alpha + nf)).sqrt() * binomial(h + alpha, (n - 1) / 2))
            .abs()
    }
}
