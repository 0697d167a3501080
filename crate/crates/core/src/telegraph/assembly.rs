//! Global collocation matrix and right-hand side, built loop for loop as in
//! the reference construction algorithm so the operation counts can be checked.

use super::discretization::Discretization;
use super::problem::TelegraphProblem;
use crate::linalg::Matrix;

/// Dense collocation system `A φ = b` over the grid unknowns `φ_{i,j}`.
#[derive(Debug, Clone)]
pub struct CollocationSystem {
    pub matrix: Matrix,
    pub rhs: Vec<f64>,
    pub nx: usize,
    pub nt: usize,
}

impl CollocationSystem {
    pub fn index(&self, i: usize, j: usize) -> usize {
        index(self.nx, i, j)
    }

    /// `L + 1`.
    pub fn size(&self) -> usize {
        self.rhs.len()
    }
}

/// Unknown ordering `(i, j) ↦ i + j (N_x + 1)`.
#[inline]
pub fn index(nx: usize, i: usize, j: usize) -> usize {
    i + j * (nx + 1)
}

/// Floating-point operations performed by the assembly.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub matrix_mul: u64,
    pub matrix_add: u64,
    pub rhs_mul: u64,
    pub rhs_add: u64,
}

trait Counter {
    fn mul(&mut self, n: u64);
    fn add(&mut self, n: u64);
}

struct NoCount;

impl Counter for NoCount {
    #[inline(always)]
    fn mul(&mut self, _: u64) {}
    #[inline(always)]
    fn add(&mut self, _: u64) {}
}

struct Tally {
    mul: u64,
    add: u64,
}

impl Counter for Tally {
    fn mul(&mut self, n: u64) {
        self.mul += n;
    }
    fn add(&mut self, n: u64) {
        self.add += n;
    }
}

pub fn assemble(problem: &TelegraphProblem, disc: &Discretization) -> CollocationSystem {
    let matrix = build_matrix(problem, disc, &mut NoCount);
    let rhs = build_rhs(problem, disc, &mut NoCount);
    CollocationSystem {
        matrix,
        rhs,
        nx: disc.nx(),
        nt: disc.nt(),
    }
}

/// Same as [`assemble`], also returning operation counts.
pub fn assemble_counted(problem: &TelegraphProblem, disc: &Discretization) -> (CollocationSystem, OpCounts) {
    let mut m = Tally { mul: 0, add: 0 };
    let mut r = Tally { mul: 0, add: 0 };
    let matrix = build_matrix(problem, disc, &mut m);
    let rhs = build_rhs(problem, disc, &mut r);
    let counts = OpCounts {
        matrix_mul: m.mul,
        matrix_add: m.add,
        rhs_mul: r.mul,
        rhs_add: r.add,
    };
    (
        CollocationSystem {
            matrix,
            rhs,
            nx: disc.nx(),
            nt: disc.nt(),
        },
        counts,
    )
}

/// Closed-form multiplication/division count of the matrix construction.
pub fn expected_matrix_multiplications(nx: usize, nt: usize) -> u64 {
    let (nx, nt) = (nx as u64, nt as u64);
    1 + (1 + nx) * (1 + 5 * (1 + nt) * (1 + nt) * (1 + nx))
}

/// Closed-form addition/subtraction count of the matrix construction.
pub fn expected_matrix_additions(nx: usize, nt: usize) -> u64 {
    let (nx, nt) = (nx as u64, nt as u64);
    2 + (1 + nt) * (1 + nx) * (6 + 5 * nx + nt * (5 + 4 * nx))
}

/// Closed-form multiplication count of the right-hand side.
pub fn expected_rhs_multiplications(nx: usize, nt: usize, mt: usize) -> u64 {
    ((5 + 3 * mt) * (1 + nt) * (1 + nx)) as u64
}

fn build_matrix<C: Counter>(problem: &TelegraphProblem, disc: &Discretization, c: &mut C) -> Matrix {
    let (nx, nt) = (disc.nx(), disc.nt());
    let (b1, b2) = (problem.beta1, problem.beta2);
    let (px, p1, p2) = (disc.p2x.entries(), disc.p1t.entries(), disc.p2t.entries());
    let xs = disc.nodes_x.nodes();
    let idx = |i: usize, j: usize, c: &mut C| {
        c.mul(1);
        c.add(2);
        index(nx, i, j)
    };

    let size = nx + nt + nx * nt;
    c.mul(1);
    c.add(2);
    let mut a = Matrix::zeros(size + 1, size + 1);

    for i in 0..=nx {
        let theta = xs[i] / problem.l;
        c.mul(1);
        for j in 0..=nt {
            let n = idx(i, j, c);
            let ji = px[(i, i)] - theta * px[(nx + 1, i)];
            a[(n, n)] = ji * (b1 * p1[(j, j)] + b2 * p2[(j, j)] + 1.0) - p2[(j, j)];
            c.mul(4);
            c.add(4);
            for k in 0..=nx {
                if k != i {
                    let col = idx(k, j, c);
                    a[(n, col)] =
                        (px[(i, k)] - theta * px[(nx + 1, k)]) * (b1 * p1[(j, j)] + b2 * p2[(j, j)] + 1.0);
                    c.mul(4);
                    c.add(3);
                }
            }
            for k in 0..=nt {
                if k != j {
                    let col = idx(i, k, c);
                    a[(n, col)] = (px[(i, i)] - theta * px[(nx + 1, i)]) * (b1 * p1[(j, k)] + b2 * p2[(j, k)])
                        - p2[(j, k)];
                    c.mul(4);
                    c.add(3);
                    for s in 0..=nx {
                        if s != i {
                            let col = idx(s, k, c);
                            a[(n, col)] =
                                (px[(i, s)] - theta * px[(nx + 1, s)]) * (b1 * p1[(j, k)] + b2 * p2[(j, k)]);
                            c.mul(4);
                            c.add(2);
                        }
                    }
                }
            }
        }
    }
    a
}

fn build_rhs<C: Counter>(problem: &TelegraphProblem, disc: &Discretization, c: &mut C) -> Vec<f64> {
    let (nx, nt, mt) = (disc.nx(), disc.nt(), disc.mt());
    let (b1, b2) = (problem.beta1, problem.beta2);
    let (o1, o2) = (disc.opt1.entries(), disc.opt2.entries());
    let xs = disc.nodes_x.nodes();
    let ts = disc.nodes_t.nodes();
    let mut rhs = vec![0.0; (nx + 1) * (nt + 1)];
    for i in 0..=nx {
        let x = xs[i];
        for j in 0..=nt {
            let z = disc.opt1.adjoint_nodes(j);
            let (mut s1, mut s2, mut sf) = (0.0, 0.0, 0.0);
            for k in 0..=mt {
                let psi = problem.psi(x, z[k]);
                s1 += o1[(j, k)] * psi;
                s2 += o2[(j, k)] * psi;
                sf += o2[(j, k)] * (problem.f)(x, z[k]);
            }
            c.mul(3 * (mt as u64 + 1) + 2);
            c.add(3 * mt as u64 + 3);
            rhs[index(nx, i, j)] = problem.psi_hat(x, ts[j]) - (b1 * s1 + b2 * s2) + sf;
        }
    }
    rhs
}
