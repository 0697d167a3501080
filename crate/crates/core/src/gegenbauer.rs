//! Gegenbauer polynomials, norms, leading coefficients and Gauss rules.
//!
//! The standardization is `C_n(1) = 1`, so `α = 0` gives Chebyshev `T_n` and
//! `α = 1/2` gives Legendre `P_n`. Shifted polynomials live on `[0, L]` and are
//! the affine images `C_{L,n}(x) = C_n(2x/L - 1)`.
//!
//! The squared norms reported here are the true weighted norms of the
//! polynomials this module evaluates (not the classical ultraspherical norms).

use crate::error::{Error, Result};
use crate::special::ln_gamma;
use std::f64::consts::PI;

/// Newton step tolerance for root refinement.
pub const ROOT_TOLERANCE: f64 = 1e-14;
/// Iteration cap for root refinement before the bracketing fallback runs.
pub const ROOT_MAX_ITER: usize = 100;

/// A validated Gegenbauer parameter `α > -1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerParam(f64);

impl GegenbauerParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > -0.5 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidAlpha(alpha))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A value together with a flag saying whether its argument lay in the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tagged {
    pub value: f64,
    pub in_domain: bool,
}

/// Gegenbauer family on `[-1, 1]` or on a shifted interval `[0, L]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerBasis {
    param: GegenbauerParam,
    length: f64,
    shifted: bool,
}

impl GegenbauerBasis {
    pub fn standard(alpha: f64) -> Result<Self> {
        Ok(Self {
            param: GegenbauerParam::new(alpha)?,
            length: 2.0,
            shifted: false,
        })
    }

    pub fn shifted(alpha: f64, length: f64) -> Result<Self> {
        check_length(length)?;
        Ok(Self {
            param: GegenbauerParam::new(alpha)?,
            length,
            shifted: true,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.param.value()
    }

    pub fn param(&self) -> GegenbauerParam {
        self.param
    }

    /// Domain length (2 for the standard interval).
    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn is_shifted(&self) -> bool {
        self.shifted
    }

    /// Domain endpoints.
    pub fn domain(&self) -> (f64, f64) {
        if self.shifted {
            (0.0, self.length)
        } else {
            (-1.0, 1.0)
        }
    }

    /// Map a point of this basis' domain to `[-1, 1]`.
    #[inline]
    pub fn to_standard(&self, x: f64) -> f64 {
        if self.shifted {
            2.0 * x / self.length - 1.0
        } else {
            x
        }
    }

    /// Map a point of `[-1, 1]` into this basis' domain.
    #[inline]
    pub fn from_standard(&self, xi: f64) -> f64 {
        if self.shifted {
            self.length / 2.0 * (xi + 1.0)
        } else {
            xi
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let (a, b) = self.domain();
        x >= a && x <= b
    }

    /// `C_n(x)` by forward recurrence.
    pub fn eval(&self, n: usize, x: f64) -> f64 {
        eval_standard(self.alpha(), n, self.to_standard(x))
    }

    /// `C_n(x)`, tagged with whether `x` was inside the domain.
    pub fn eval_tagged(&self, n: usize, x: f64) -> Tagged {
        Tagged {
            value: self.eval(n, x),
            in_domain: self.contains(x),
        }
    }

    /// Values `C_0(x), ..., C_n(x)` written into `out` (length `n + 1`).
    pub fn eval_all_into(&self, x: f64, out: &mut [f64]) {
        eval_all_standard(self.alpha(), self.to_standard(x), out);
    }

    /// Values `C_0(x), ..., C_n(x)`.
    pub fn eval_all(&self, n: usize, x: f64) -> Vec<f64> {
        let mut out = vec![0.0; n + 1];
        self.eval_all_into(x, &mut out);
        out
    }

    /// `(C_n(x), dC_n/dx)`, the derivative taken in this basis' variable.
    pub fn eval_with_derivative(&self, n: usize, x: f64) -> (f64, f64) {
        let (v, d) = eval_with_derivative_standard(self.alpha(), n, self.to_standard(x));
        let scale = if self.shifted { 2.0 / self.length } else { 1.0 };
        (v, d * scale)
    }

    /// Squared weighted norm `λ_n` on this basis' domain.
    pub fn norm_sq(&self, n: usize) -> f64 {
        self.norm_table(n).lambdas[n]
    }

    /// Squared norms and leading coefficients for degrees `0..=n`.
    pub fn norm_table(&self, n: usize) -> NormTable {
        let alpha = self.alpha();
        let scale = self.weight_scale();
        let lambdas = standard_norms(alpha, n)
            .into_iter()
            .map(|v| v * scale)
            .collect();
        let leading = leading_coefficients(alpha, n);
        NormTable { lambdas, leading }
    }

    /// `(L/2)^{2α}` for shifted bases, 1 otherwise.
    pub fn weight_scale(&self) -> f64 {
        if self.shifted {
            (self.length / 2.0).powf(2.0 * self.alpha())
        } else {
            1.0
        }
    }

    /// Modal sum `Σ_j c_j C_j(x)` by Clenshaw's backward recurrence.
    pub fn clenshaw(&self, coeffs: &[f64], x: f64) -> f64 {
        clenshaw_standard(self.alpha(), coeffs, self.to_standard(x))
    }

    /// Modal sum by plain forward summation; kept as an oracle for `clenshaw`.
    pub fn sum_naive(&self, coeffs: &[f64], x: f64) -> f64 {
        if coeffs.is_empty() {
            return 0.0;
        }
        let vals = self.eval_all(coeffs.len() - 1, x);
        coeffs.iter().zip(&vals).map(|(c, v)| c * v).sum()
    }
}

/// Squared norms `λ_j` and leading coefficients `K_j` for `j = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormTable {
    pub lambdas: Vec<f64>,
    pub leading: Vec<f64>,
}

fn check_length(length: f64) -> Result<()> {
    if length.is_finite() && length > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidLength(length))
    }
}

/// Recurrence coefficients: `C_{k+1} = a_k ξ C_k - b_k C_{k-1}`, valid for `k >= 1`.
#[inline]
fn rec_a(alpha: f64, k: usize) -> f64 {
    let k = k as f64;
    2.0 * (k + alpha) / (k + 2.0 * alpha)
}

#[inline]
fn rec_b(alpha: f64, k: usize) -> f64 {
    let k = k as f64;
    k / (k + 2.0 * alpha)
}

fn eval_standard(alpha: f64, n: usize, xi: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, xi);
    for k in 1..n {
        let next = rec_a(alpha, k) * xi * cur - rec_b(alpha, k) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn eval_all_standard(alpha: f64, xi: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = xi;
    }
    for k in 1..out.len().saturating_sub(1) {
        out[k + 1] = rec_a(alpha, k) * xi * out[k] - rec_b(alpha, k) * out[k - 1];
    }
}

/// Value and derivative by differentiating the three-term recurrence.
fn eval_with_derivative_standard(alpha: f64, n: usize, xi: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, xi);
    let (mut d0, mut d1) = (0.0, 1.0);
    for k in 1..n {
        let (a, b) = (rec_a(alpha, k), rec_b(alpha, k));
        let p2 = a * xi * p1 - b * p0;
        let d2 = a * (p1 + xi * d1) - b * d0;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    (p1, d1)
}

fn clenshaw_standard(alpha: f64, c: &[f64], xi: f64) -> f64 {
    match c.len() {
        0 => return 0.0,
        1 => return c[0],
        _ => {}
    }
    let n = c.len() - 1;
    // y_k = c_k + a_k ξ y_{k+1} - b_{k+1} y_{k+2}, for k = n..1
    let (mut y1, mut y2) = (0.0, 0.0);
    for k in (1..=n).rev() {
        let y = c[k] + rec_a(alpha, k) * xi * y1 - rec_b(alpha, k + 1) * y2;
        y2 = y1;
        y1 = y;
    }
    c[0] + xi * y1 - rec_b(alpha, 1) * y2
}

/// `λ_0 = √π Γ(α+1/2) / Γ(α+1)` on `[-1, 1]`.
fn lambda_zero(alpha: f64) -> f64 {
    PI.sqrt() * (ln_gamma(alpha + 0.5) - ln_gamma(alpha + 1.0)).exp()
}

/// Squared norms on `[-1, 1]` for degrees `0..=n`, built by their exact ratio
/// recurrence. The ratios have no removable singularity at `α = 0`.
fn standard_norms(alpha: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(lambda_zero(alpha));
    for k in 1..=n {
        let kf = k as f64;
        let ratio = if k == 1 {
            1.0 / (2.0 * (1.0 + alpha))
        } else {
            kf * (kf - 1.0 + alpha) / ((kf + alpha) * (kf - 1.0 + 2.0 * alpha))
        };
        out.push(out[k - 1] * ratio);
    }
    out
}

fn leading_coefficients(alpha: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    for k in 1..=n {
        let v = if k == 1 {
            1.0
        } else {
            let kf = k as f64;
            out[k - 1] * 2.0 * (kf - 1.0 + alpha) / (kf - 1.0 + 2.0 * alpha)
        };
        out.push(v);
    }
    out
}

/// Leading coefficient `K_n` of `C_n` on `[-1, 1]`.
pub fn leading_coefficient(alpha: f64, n: usize) -> Result<f64> {
    GegenbauerParam::new(alpha)?;
    let k = *leading_coefficients(alpha, n).last().unwrap();
    if k.is_finite() {
        Ok(k)
    } else {
        Err(Error::Range(format!(
            "leading coefficient K_{n} overflows for alpha = {alpha}"
        )))
    }
}

/// `ln K_n` from the gamma form, usable past the overflow point of `K_n`.
pub fn ln_leading_coefficient(alpha: f64, n: usize) -> f64 {
    if n <= 1 {
        return 0.0;
    }
    let nf = n as f64;
    if alpha.abs() < 1e-8 {
        // Chebyshev limit K_n = 2^{n-1}
        return (nf - 1.0) * std::f64::consts::LN_2;
    }
    // Γ(2α+1)/Γ(n+2α) is evaluated as 1/(2α+1)_{n-1} to keep α < 0 valid.
    (nf - 1.0) * std::f64::consts::LN_2 + ln_gamma(nf + alpha) - ln_gamma(alpha + 1.0)
        - (ln_gamma(nf + 2.0 * alpha) - ln_gamma(2.0 * alpha + 1.0))
}

/// `C_{l,n}(x) C_{τ,m}(t)`.
pub fn bivariate_eval(
    basis_x: &GegenbauerBasis,
    basis_t: &GegenbauerBasis,
    n: usize,
    m: usize,
    x: f64,
    t: f64,
) -> f64 {
    basis_x.eval(n, x) * basis_t.eval(m, t)
}

/// Gauss nodes (roots of `C_{n+1}`) and Christoffel numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    n: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// The same nodes on `[-1, 1]`, kept unrounded by the affine map.
    standard: Vec<f64>,
    standard_weights: Vec<f64>,
    basis: GegenbauerBasis,
}

impl NodeSet {
    /// `n + 1` Gauss nodes on `[0, L]`.
    pub fn shifted_gauss(alpha: f64, n: usize, length: f64) -> Result<Self> {
        gauss_nodes(alpha, n)?.shifted(length)
    }

    /// Polynomial degree parameter; the set holds `n + 1` nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn basis(&self) -> &GegenbauerBasis {
        &self.basis
    }

    /// Nodes on `[-1, 1]`.
    pub fn standard_nodes(&self) -> &[f64] {
        &self.standard
    }

    /// Christoffel numbers of the unshifted rule.
    pub fn standard_weights(&self) -> &[f64] {
        &self.standard_weights
    }

    /// Standard coordinate of `x`, exact when `x` is one of the nodes or an endpoint.
    pub fn to_standard(&self, x: f64) -> f64 {
        if let Some(k) = self.nodes.iter().position(|&v| v == x) {
            return self.standard[k];
        }
        let (a, b) = self.basis.domain();
        if x == a {
            -1.0
        } else if x == b {
            1.0
        } else {
            self.basis.to_standard(x)
        }
    }

    pub fn alpha(&self) -> f64 {
        self.basis.alpha()
    }

    /// Affine image of a standard node set on `[0, L]`.
    pub fn shifted(&self, length: f64) -> Result<Self> {
        if self.basis.is_shifted() {
            return Err(Error::InvalidArgument(
                "node set is already shifted".into(),
            ));
        }
        let basis = GegenbauerBasis::shifted(self.alpha(), length)?;
        let half = length / 2.0;
        let scale = basis.weight_scale();
        Ok(Self {
            n: self.n,
            nodes: self.nodes.iter().map(|&x| half * (x + 1.0)).collect(),
            weights: self.weights.iter().map(|&w| scale * w).collect(),
            standard: self.standard.clone(),
            standard_weights: self.standard_weights.clone(),
            basis,
        })
    }

    /// Gauss-rule sum `Σ_k ϖ_k f(x_k)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// The `n + 1` roots of `C_{n+1}` on `(-1, 1)` with their Christoffel numbers.
pub fn gauss_nodes(alpha: f64, n: usize) -> Result<NodeSet> {
    let basis = GegenbauerBasis::standard(alpha)?;
    let degree = n + 1;
    let nodes = match newton_roots(alpha, degree) {
        Some(r) => r,
        None => bracket_roots(alpha, degree)
            .ok_or(Error::RootNotConverged { degree, alpha })?,
    };
    let lambdas = standard_norms(alpha, n);
    let mut vals = vec![0.0; n + 1];
    let mut weights = vec![0.0; degree];
    // weights on the non-negative half, mirrored for exact symmetry
    for k in degree / 2..degree {
        eval_all_standard(alpha, nodes[k], &mut vals);
        let s: f64 = vals.iter().zip(&lambdas).map(|(v, l)| v * v / l).sum();
        weights[k] = 1.0 / s;
        weights[degree - 1 - k] = weights[k];
    }
    Ok(NodeSet {
        n,
        standard: nodes.clone(),
        standard_weights: weights.clone(),
        nodes,
        weights,
        basis,
    })
}

fn symmetrize(mut roots: Vec<f64>) -> Vec<f64> {
    let d = roots.len();
    for k in 0..d / 2 {
        let r = 0.5 * (roots[d - 1 - k] - roots[k]);
        roots[k] = -r;
        roots[d - 1 - k] = r;
    }
    if d % 2 == 1 {
        roots[d / 2] = 0.0;
    }
    roots
}

fn roots_valid(roots: &[f64]) -> bool {
    roots.iter().all(|r| r.is_finite() && r.abs() <= 1.0)
        && roots.windows(2).all(|w| w[0] < w[1])
}

/// Newton with deflation on the non-negative roots, from Chebyshev angles.
fn newton_roots(alpha: f64, degree: usize) -> Option<Vec<f64>> {
    let half = degree / 2;
    let mut positive: Vec<f64> = Vec::with_capacity(half);
    for k in 1..=half {
        let mut x = ((2 * k - 1) as f64 * PI / (2 * degree) as f64).cos();
        // start right of every remaining root of the deflated polynomial
        if let Some(&prev) = positive.last() {
            x = x.min(prev - 1e-3 * (1.0 - prev).max(1e-6));
        }
        let mut converged = false;
        for _ in 0..ROOT_MAX_ITER {
            let (p, dp) = eval_with_derivative_standard(alpha, degree, x);
            // deflate the found positive roots and their mirrors
            let s: f64 = positive
                .iter()
                .map(|&r| 1.0 / (x - r) + 1.0 / (x + r))
                .sum::<f64>()
                + if degree % 2 == 1 { 1.0 / x } else { 0.0 };
            let denom = dp - p * s;
            if denom == 0.0 || !denom.is_finite() {
                break;
            }
            let dx = p / denom;
            // no root lies beyond 1; clamping matters only when the outermost
            // root is closer to 1 than one ulp (α within ~1e-15 of -1/2)
            x = (x - dx).min(1.0);
            if dx.abs() < ROOT_TOLERANCE {
                converged = true;
                break;
            }
        }
        if !converged || !(x > 0.0 && x <= 1.0) {
            return None;
        }
        positive.push(x);
    }
    let mut roots: Vec<f64> = positive.iter().map(|&r| -r).collect();
    if degree % 2 == 1 {
        roots.push(0.0);
    }
    roots.extend(positive.iter().rev());
    let roots = symmetrize(roots);
    roots_valid(&roots).then_some(roots)
}

/// Fallback: scan in the angle variable for sign changes, then bisect.
fn bracket_roots(alpha: f64, degree: usize) -> Option<Vec<f64>> {
    let samples = 64 * (degree + alpha.ceil().max(0.0) as usize + 1);
    let f = |x: f64| eval_standard(alpha, degree, x);
    let mut roots = Vec::with_capacity(degree);
    let mut x_prev = -1.0f64;
    let mut f_prev = f(x_prev);
    for s in 1..=samples {
        let x = -(PI * s as f64 / samples as f64).cos();
        let fx = f(x);
        if fx == 0.0 {
            roots.push(x);
        } else if f_prev != 0.0 && fx.signum() != f_prev.signum() {
            let (mut a, mut b, mut fa) = (x_prev, x, f_prev);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                let fm = f(mid);
                if fm.signum() == fa.signum() {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        x_prev = x;
        f_prev = fx;
    }
    if roots.len() != degree {
        return None;
    }
    let roots = symmetrize(roots);
    roots_valid(&roots).then_some(roots)
}

/// Classical ultraspherical norm formula; equals `λ_n` only at `α = 1/2`.
pub fn classical_norm_sq(alpha: f64, n: usize) -> f64 {
    let nf = n as f64;
    (2.0f64).powf(1.0 - 2.0 * alpha) * PI
        * (ln_gamma(nf + 2.0 * alpha) - ln_gamma(nf + 1.0) - 2.0 * ln_gamma(alpha)).exp()
        / (nf + alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn eval_examples() {
        let b = GegenbauerBasis::standard(0.3).unwrap();
        assert_eq!(b.eval(0, 0.7), 1.0);
        assert_eq!(b.eval(1, 0.7), 0.7);
        let c = GegenbauerBasis::standard(0.0).unwrap();
        assert!(close(c.eval(2, 0.5), -0.5, 1e-15));
        let l = GegenbauerBasis::standard(0.5).unwrap();
        assert!(close(l.eval(3, 0.6), -0.36, 1e-15));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(GegenbauerBasis::standard(-0.5).is_err());
        assert!(GegenbauerBasis::standard(f64::NAN).is_err());
        assert!(GegenbauerBasis::shifted(0.0, 0.0).is_err());
    }

    #[test]
    fn leading_coefficient_examples() {
        assert_eq!(leading_coefficient(0.7, 1).unwrap(), 1.0);
        assert!(close(leading_coefficient(0.5, 3).unwrap(), 2.5, 1e-15));
        assert_eq!(leading_coefficient(0.0, 4).unwrap(), 8.0);
        assert!(matches!(leading_coefficient(1.0, 5000), Err(Error::Range(_))));
        for &a in &[-0.3, 0.0, 0.4, 2.0] {
            let k = leading_coefficient(a, 9).unwrap();
            assert!(close(k.ln(), ln_leading_coefficient(a, 9), 1e-12));
        }
    }

    #[test]
    fn norm_examples() {
        let l = GegenbauerBasis::standard(0.5).unwrap();
        assert!(close(l.norm_sq(2), 0.4, 1e-15));
        let c = GegenbauerBasis::standard(0.0).unwrap();
        assert!(close(c.norm_sq(0), PI, 1e-15));
        assert!(close(c.norm_sq(3), PI / 2.0, 1e-15));
        for n in 0..10 {
            assert!(close(l.norm_sq(n), classical_norm_sq(0.5, n), 1e-13));
        }
    }

    #[test]
    fn shifted_norm_scaling() {
        let s = GegenbauerBasis::shifted(1.3, 0.7).unwrap();
        let b = GegenbauerBasis::standard(1.3).unwrap();
        for n in 0..8 {
            assert!(close(s.norm_sq(n), 0.35f64.powf(2.6) * b.norm_sq(n), 1e-14));
        }
    }

    #[test]
    fn gauss_examples() {
        let ns = gauss_nodes(0.0, 1).unwrap();
        let r = 0.5f64.sqrt();
        assert!(close(ns.nodes()[0], -r, 1e-15) && close(ns.nodes()[1], r, 1e-15));
        assert!(ns.weights().iter().all(|&w| close(w, PI / 2.0, 1e-14)));

        let ns = gauss_nodes(0.5, 2).unwrap();
        let r = 0.6f64.sqrt();
        assert!(close(ns.nodes()[0], -r, 1e-15) && ns.nodes()[1] == 0.0);
        let w = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
        for (a, b) in ns.weights().iter().zip(&w) {
            assert!(close(*a, *b, 1e-14));
        }
    }

    #[test]
    fn shift_examples() {
        let ns = NodeSet::shifted_gauss(0.0, 1, 1.0).unwrap();
        assert!(close(ns.nodes()[0], 0.1464466094067262, 1e-15));
        assert!(close(ns.nodes()[1], 0.8535533905932737, 1e-15));
        assert!(close(ns.weights()[0], PI / 2.0, 1e-15));
        let ns = NodeSet::shifted_gauss(0.5, 0, 2.0).unwrap();
        assert_eq!(ns.nodes(), &[1.0]);
        assert!(close(ns.weights()[0], 2.0, 1e-15));
    }

    #[test]
    fn bivariate_examples() {
        let bx = GegenbauerBasis::shifted(0.0, 1.0).unwrap();
        assert_eq!(bivariate_eval(&bx, &bx, 0, 0, 0.3, 0.9), 1.0);
        assert_eq!(bivariate_eval(&bx, &bx, 1, 1, 1.0, 0.0), -1.0);
        let bl = GegenbauerBasis::shifted(0.5, 1.0).unwrap();
        assert!(close(bivariate_eval(&bl, &bl, 2, 0, 0.5, 0.3), -0.5, 1e-15));
    }

    #[test]
    fn clenshaw_matches_naive() {
        let c = [0.3, -1.2, 0.7, 0.05, 2.0, -0.4];
        for &a in &[-0.4, 0.0, 0.5, 3.0] {
            let b = GegenbauerBasis::shifted(a, 1.7).unwrap();
            for i in 0..20 {
                let x = 1.7 * i as f64 / 19.0;
                assert!(close(b.clenshaw(&c, x), b.sum_naive(&c, x), 1e-13));
            }
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let b = GegenbauerBasis::shifted(0.8, 2.5).unwrap();
        let (x, h) = (0.9, 1e-6);
        let (_, d) = b.eval_with_derivative(7, x);
        let fd = (b.eval(7, x + h) - b.eval(7, x - h)) / (2.0 * h);
        assert!((d - fd).abs() < 1e-6 * (1.0 + d.abs()));
    }

    #[test]
    fn tagged_flags_outside_points() {
        let b = GegenbauerBasis::shifted(0.0, 1.0).unwrap();
        assert!(b.eval_tagged(3, 0.5).in_domain);
        assert!(!b.eval_tagged(3, 1.5).in_domain);
    }

    #[test]
    fn fallback_agrees_with_newton() {
        for &a in &[-0.45, 0.0, 1.5, 20.0] {
            for d in 1..30 {
                let n = newton_roots(a, d).unwrap();
                let b = bracket_roots(a, d).unwrap();
                for (x, y) in n.iter().zip(&b) {
                    assert!((x - y).abs() < 1e-12, "alpha {a} degree {d}");
                }
            }
        }
    }

    #[test]
    fn large_degree_and_parameter() {
        for &(a, n) in &[(20.0, 200), (-0.49, 200), (0.0, 200), (7.5, 120)] {
            let ns = gauss_nodes(a, n).unwrap();
            assert_eq!(ns.len(), n + 1);
            assert!(ns.weights().iter().all(|&w| w > 0.0));
        }
    }
}
