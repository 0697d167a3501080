//! Discrete shifted Gegenbauer transforms and Lagrange interpolation at Gauss nodes.

use crate::error::{Error, Result};
use crate::gegenbauer::NodeSet;
use crate::linalg::Matrix;

/// Modal coefficients of the interpolant through samples at a node set.
#[derive(Debug, Clone)]
pub struct DiscreteTransform1D {
    nodeset: NodeSet,
    coeffs: Vec<f64>,
}

impl DiscreteTransform1D {
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn nodeset(&self) -> &NodeSet {
        &self.nodeset
    }

    /// Interpolant value by Clenshaw summation.
    pub fn eval(&self, x: f64) -> f64 {
        self.nodeset.basis().clenshaw(&self.coeffs, x)
    }

    /// Interpolant value by plain summation (debug oracle).
    pub fn eval_naive(&self, x: f64) -> f64 {
        self.nodeset.basis().sum_naive(&self.coeffs, x)
    }
}

/// Matrix `T[j][k] = ϖ_k C_j(x_k) / λ_j` mapping nodal values to coefficients.
pub fn transform_matrix(ns: &NodeSet) -> Matrix {
    let n = ns.n();
    let lambdas = ns.basis().norm_table(n).lambdas;
    let mut t = Matrix::zeros(n + 1, n + 1);
    let mut vals = vec![0.0; n + 1];
    for (k, (&x, &w)) in ns.nodes().iter().zip(ns.weights()).enumerate() {
        ns.basis().eval_all_into(x, &mut vals);
        for j in 0..=n {
            t[(j, k)] = w * vals[j] / lambdas[j];
        }
    }
    t
}

/// `f̃_j = λ_j^{-1} Σ_k ϖ_k f_k C_j(x_k)`.
pub fn forward_transform_1d(samples: &[f64], nodeset: &NodeSet) -> Result<DiscreteTransform1D> {
    if samples.len() != nodeset.len() {
        return Err(Error::LengthMismatch {
            what: "samples",
            expected: nodeset.len(),
            actual: samples.len(),
        });
    }
    let coeffs = transform_matrix(nodeset).mul_vec(samples);
    Ok(DiscreteTransform1D {
        nodeset: nodeset.clone(),
        coeffs,
    })
}

/// Lagrange cardinal polynomial `ℒ_k(x) = ϖ_k Σ_j λ_j^{-1} C_j(x_k) C_j(x)`.
pub fn lagrange_basis(ns: &NodeSet, k: usize, x: f64) -> f64 {
    let n = ns.n();
    let basis = ns.basis();
    let lambdas = basis.norm_table(n).lambdas;
    let ck = basis.eval_all(n, ns.nodes()[k]);
    let cx = basis.eval_all(n, x);
    ns.weights()[k]
        * (0..=n)
            .map(|j| ck[j] * cx[j] / lambdas[j])
            .sum::<f64>()
}

/// Tensor-product interpolant on an `(N_x+1) × (N_t+1)` Gauss grid.
#[derive(Debug, Clone)]
pub struct BivariateInterpolant {
    coeffs: Matrix,
    values: Matrix,
    ns_x: NodeSet,
    ns_t: NodeSet,
}

impl BivariateInterpolant {
    /// Coefficients `φ̃_{n,m}`, rows indexed by the x-degree.
    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    /// Nodal values `φ_{s,k}`.
    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn nodeset_x(&self) -> &NodeSet {
        &self.ns_x
    }

    pub fn nodeset_t(&self) -> &NodeSet {
        &self.ns_t
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        eval_interpolant_2d(self, x, t)
    }
}

fn check_shape(values: &Matrix, ns_x: &NodeSet, ns_t: &NodeSet) -> Result<()> {
    let expected = (ns_x.len(), ns_t.len());
    if values.shape() != expected {
        return Err(Error::ShapeMismatch {
            what: "bivariate samples",
            expected,
            actual: values.shape(),
        });
    }
    Ok(())
}

/// Two-pass tensor transform: an x-pass then a t-pass.
pub fn forward_transform_2d(
    values: &Matrix,
    ns_x: &NodeSet,
    ns_t: &NodeSet,
) -> Result<BivariateInterpolant> {
    check_shape(values, ns_x, ns_t)?;
    let tx = transform_matrix(ns_x);
    let tt = transform_matrix(ns_t);
    // φ̃ = T_x Φ T_tᵀ
    let coeffs = tx.mul(values).mul(&tt.transpose());
    Ok(BivariateInterpolant {
        coeffs,
        values: values.clone(),
        ns_x: ns_x.clone(),
        ns_t: ns_t.clone(),
    })
}

/// Direct quadruple-loop transform, kept as an oracle for the two-pass form.
pub fn forward_transform_2d_naive(values: &Matrix, ns_x: &NodeSet, ns_t: &NodeSet) -> Result<Matrix> {
    check_shape(values, ns_x, ns_t)?;
    let (nx, nt) = (ns_x.n(), ns_t.n());
    let lx = ns_x.basis().norm_table(nx).lambdas;
    let lt = ns_t.basis().norm_table(nt).lambdas;
    let cx: Vec<Vec<f64>> = ns_x.nodes().iter().map(|&x| ns_x.basis().eval_all(nx, x)).collect();
    let ct: Vec<Vec<f64>> = ns_t.nodes().iter().map(|&t| ns_t.basis().eval_all(nt, t)).collect();
    Ok(Matrix::from_fn(nx + 1, nt + 1, |n, m| {
        let mut s = 0.0;
        for (si, wx) in ns_x.weights().iter().enumerate() {
            for (ki, wt) in ns_t.weights().iter().enumerate() {
                s += wx * wt * values[(si, ki)] * cx[si][n] * ct[ki][m];
            }
        }
        s / (lx[n] * lt[m])
    }))
}

/// `Σ_n Σ_m φ̃_{n,m} C_{l,n}(x) C_{τ,m}(t)`, nested Clenshaw sums.
pub fn eval_interpolant_2d(interp: &BivariateInterpolant, x: f64, t: f64) -> f64 {
    let bt = interp.ns_t.basis();
    let inner: Vec<f64> = (0..interp.coeffs.rows())
        .map(|n| bt.clenshaw(interp.coeffs.row(n), t))
        .collect();
    interp.ns_x.basis().clenshaw(&inner, x)
}
