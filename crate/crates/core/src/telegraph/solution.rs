use super::assembly::{assemble, CollocationSystem};
use super::discretization::{Discretization, DiscretizationConfig};
use super::jop::j_operator_basis;
use super::problem::TelegraphProblem;
use crate::error::Result;
use crate::interp::{forward_transform_2d, BivariateInterpolant};
use crate::linalg::{relative_residual, Lu, Matrix};
use std::time::Instant;

/// Wall-clock seconds spent in each phase.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Timings {
    pub discretize_s: f64,
    pub assemble_s: f64,
    pub solve_s: f64,
    pub total_s: f64,
}

/// Solved `φ = u_xx` on the grid plus everything needed to evaluate `u`.
#[derive(Debug, Clone)]
pub struct SolutionField {
    problem: TelegraphProblem,
    disc: Discretization,
    interp: BivariateInterpolant,
    pub timings: Timings,
    /// `‖Aφ − b‖_∞ / (‖A‖_∞‖φ‖_∞ + ‖b‖_∞)`.
    pub residual: f64,
    /// Growth `max|U| / max|A|` of the LU factors.
    pub pivot_growth: f64,
}

/// Solve the collocation system by LU with partial pivoting.
pub fn solve(system: &CollocationSystem) -> Result<Vec<f64>> {
    Lu::new(&system.matrix)?.solve(&system.rhs)
}

/// Assemble, solve and transform on an existing discretization.
pub fn solve_problem(problem: &TelegraphProblem, disc: &Discretization) -> Result<SolutionField> {
    let start = Instant::now();
    let system = assemble(problem, disc);
    let assembled = Instant::now();
    let lu = Lu::new(&system.matrix)?;
    let phi_vec = lu.solve(&system.rhs)?;
    let solved = Instant::now();

    let (nx, nt) = (disc.nx(), disc.nt());
    let phi = Matrix::from_fn(nx + 1, nt + 1, |i, j| phi_vec[system.index(i, j)]);
    let interp = forward_transform_2d(&phi, &disc.nodes_x, &disc.nodes_t)?;
    let timings = Timings {
        discretize_s: 0.0,
        assemble_s: (assembled - start).as_secs_f64(),
        solve_s: (solved - assembled).as_secs_f64(),
        total_s: start.elapsed().as_secs_f64(),
    };
    Ok(SolutionField {
        problem: problem.clone(),
        disc: disc.clone(),
        interp,
        timings,
        residual: relative_residual(&system.matrix, &phi_vec, &system.rhs),
        pivot_growth: lu.pivot_growth,
    })
}

impl SolutionField {
    /// Build the discretization for `problem` and solve.
    pub fn compute(problem: &TelegraphProblem, config: DiscretizationConfig) -> Result<Self> {
        let start = Instant::now();
        let disc = Discretization::new(problem.l, problem.tau, config)?;
        let discretize_s = start.elapsed().as_secs_f64();
        let mut field = solve_problem(problem, &disc)?;
        field.timings.discretize_s = discretize_s;
        field.timings.total_s = start.elapsed().as_secs_f64();
        Ok(field)
    }

    pub fn problem(&self) -> &TelegraphProblem {
        &self.problem
    }

    pub fn discretization(&self) -> &Discretization {
        &self.disc
    }

    /// Nodal values `φ_{i,j}`.
    pub fn phi(&self) -> &Matrix {
        self.interp.values()
    }

    /// Discrete coefficients `φ̃_{n,m}`.
    pub fn coeffs(&self) -> &Matrix {
        self.interp.coeffs()
    }

    pub fn interpolant(&self) -> &BivariateInterpolant {
        &self.interp
    }

    /// `u(x, t) ≈ Σ_n Σ_m φ̃_{n,m} (J C_{l,n})(x) C_{τ,m}(t) + ψ(x, t)`.
    pub fn evaluate(&self, x: f64, t: f64) -> f64 {
        let coeffs = self.interp.coeffs();
        let bt = self.disc.nodes_t.basis();
        let (l, alpha) = (self.disc.l, self.disc.config.alpha);
        let mut sum = 0.0;
        for n in 0..coeffs.rows() {
            let b = bt.clenshaw(coeffs.row(n), t);
            sum += b * j_operator_basis(l, alpha, n, x);
        }
        sum + self.problem.psi(x, t)
    }

    /// `u` at every grid node through the discrete `J` matrix.
    pub fn evaluate_at_grid(&self) -> Matrix {
        let phi = self.interp.values();
        let xs = self.disc.nodes_x.nodes();
        let ts = self.disc.nodes_t.nodes();
        let mut u = self.disc.jx.mul(phi);
        for i in 0..u.rows() {
            for j in 0..u.cols() {
                u[(i, j)] += self.problem.psi(xs[i], ts[j]);
            }
        }
        u
    }

    /// Collocation grid `(x_i, t_j)`.
    pub fn grid(&self) -> (&[f64], &[f64]) {
        (self.disc.nodes_x.nodes(), self.disc.nodes_t.nodes())
    }
}
