use proptest::prelude::*;
use std::sync::Arc;
use telegraph_core::analysis::{error_norms, lattice_max_error};
use telegraph_core::linalg::{solve, Lu};
use telegraph_core::quadrature::HigherOrder;
use telegraph_core::telegraph::*;
use telegraph_core::Matrix;

fn bench(id: usize) -> Benchmark {
    benchmark(id).unwrap()
}

/// Entry-by-entry evaluation of the collocation matrix from its closed form.
fn direct_matrix(problem: &TelegraphProblem, disc: &Discretization) -> Matrix {
    let (nx, nt) = (disc.nx(), disc.nt());
    let (b1, b2) = (problem.beta1, problem.beta2);
    let (px, p1, p2) = (disc.p2x.entries(), disc.p1t.entries(), disc.p2t.entries());
    let xs = disc.nodes_x.nodes();
    let size = (nx + 1) * (nt + 1);
    let mut a = Matrix::zeros(size, size);
    for i in 0..=nx {
        let theta = xs[i] / problem.l;
        for j in 0..=nt {
            for k in 0..=nx {
                let jik = px[(i, k)] - theta * px[(nx + 1, k)];
                for m in 0..=nt {
                    let time = b1 * p1[(j, m)] + b2 * p2[(j, m)];
                    let mut v = if m == j { jik * (time + 1.0) } else { jik * time };
                    if k == i {
                        v -= p2[(j, m)];
                    }
                    a[(index(nx, i, j), index(nx, k, m))] = v;
                }
            }
        }
    }
    a
}

#[test]
fn assembly_matches_closed_form_entries() {
    let b = bench(3);
    for nx in 1..=6 {
        for nt in 1..=6 {
            let disc = Discretization::new(1.0, 1.0, DiscretizationConfig::new(nx, nt, 4)).unwrap();
            let sys = assemble(&b.problem, &disc);
            let direct = direct_matrix(&b.problem, &disc);
            assert_eq!(sys.matrix.shape(), direct.shape());
            assert!(
                sys.matrix.as_slice().iter().zip(direct.as_slice()).all(|(x, y)| x == y),
                "({nx}, {nt})"
            );
            // dense: no structural zeros off the diagonal
            assert!(sys.matrix.as_slice().iter().filter(|v| **v == 0.0).count() < sys.matrix.as_slice().len() / 10);
        }
    }
}

#[test]
fn index_map_is_a_bijection() {
    let sys = assemble(&bench(1).problem, &Discretization::new(1.0, 1.0, DiscretizationConfig::square(1)).unwrap());
    assert_eq!(sys.matrix.shape(), (4, 4));
    assert_eq!(sys.index(1, 1), 3);
    for (nx, nt) in [(2, 5), (4, 3), (6, 6)] {
        let mut seen = vec![false; (nx + 1) * (nt + 1)];
        for i in 0..=nx {
            for j in 0..=nt {
                let k = index(nx, i, j);
                assert!(!seen[k]);
                seen[k] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }
}

#[test]
fn operation_counts_match_closed_forms() {
    let b = bench(2);
    assert_eq!(expected_matrix_multiplications(2, 2), 409);
    for nx in 1..=5 {
        for nt in 1..=5 {
            for mt in [1, 3, 6] {
                let disc = Discretization::new(1.0, 1.0, DiscretizationConfig::new(nx, nt, mt)).unwrap();
                let (_, c) = assemble_counted(&b.problem, &disc);
                assert_eq!(c.matrix_mul, expected_matrix_multiplications(nx, nt));
                assert_eq!(c.matrix_add, expected_matrix_additions(nx, nt));
                assert_eq!(c.rhs_mul, expected_rhs_multiplications(nx, nt, mt));
                assert_eq!(c.rhs_add, ((3 * mt + 3) * (nt + 1) * (nx + 1)) as u64);
            }
        }
    }
}

#[test]
fn small_linear_systems() {
    let x = solve(&Matrix::identity(3), &[1.0, -2.0, 3.5]).unwrap();
    assert_eq!(x, vec![1.0, -2.0, 3.5]);
    let a = Matrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]).unwrap();
    assert_eq!(solve(&a, &[2.0, 8.0]).unwrap(), vec![1.0, 2.0]);
    let singular = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
    assert!(Lu::new(&singular).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_dense_system_residual(vals in prop::collection::vec(-1.0f64..1.0, 2550)) {
        let n = 50;
        let a = Matrix::from_fn(n, n, |i, j| vals[i * n + j] + if i == j { 5.0 } else { 0.0 });
        let b = &vals[2500..];
        let x = solve(&a, b).unwrap();
        let r = a.mul_vec(&x);
        let res = r.iter().zip(b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        prop_assert!(res <= 1e-12 * (a.norm_inf() * x.iter().fold(0.0f64, |m, v| m.max(v.abs())) + 1.0));
    }
}

#[test]
fn example1_is_reproduced_to_rounding() {
    let b = bench(1);
    let field = SolutionField::compute(&b.problem, DiscretizationConfig::square(4)).unwrap();
    let u = field.evaluate_at_grid();
    let (xs, ts) = field.grid();
    for i in 0..xs.len() {
        for j in 0..ts.len() {
            assert!((u[(i, j)] - (b.exact)(xs[i], ts[j])).abs() < 1e-12);
        }
    }
    let (x, t) = (0.37, 0.81);
    assert!((field.evaluate(x, t) - (x * x + t)).abs() < 1e-11);
}

#[test]
fn zero_data_gives_zero_solution() {
    let p = TelegraphProblem::new(3.0, 2.0, 1.5, 0.8).unwrap();
    let field = SolutionField::compute(&p, DiscretizationConfig::new(4, 3, 5)).unwrap();
    assert!(field.phi().as_slice().iter().all(|&v| v == 0.0));
    assert!(field.evaluate_at_grid().as_slice().iter().all(|&v| v == 0.0));
    assert_eq!(field.evaluate(0.3, 0.4), 0.0);
}

#[test]
fn example3_matches_published_accuracy() {
    let b = bench(3);
    let field = SolutionField::compute(&b.problem, DiscretizationConfig::square(6)).unwrap();
    let e = lattice_max_error(&*b.exact, &field, 100);
    assert!(e > 1.160e-8 && e < 1.160e-6, "{e}");
}

#[test]
fn problem_data_examples() {
    let b = bench(1);
    assert!((b.problem.kappa(0.5, 0.2) - 0.5).abs() < 1e-15);
    assert_eq!(b.problem.kappa(0.3, 0.0), 0.09);
    for &(x, t) in &[(0.0, 0.3), (0.4, 0.7), (1.0, 0.2)] {
        assert!((b.problem.psi(x, t) - (x + t)).abs() < 1e-15);
    }
    assert_eq!(bench(2).problem.psi(0.3, 0.6), 0.0);
    assert_eq!(TelegraphProblem::new(1.0, 1.0, 1.0, 1.0).unwrap().kappa(0.4, 0.5), 0.0);
}

/// `u = Σ c_ab x^a t^b` with `a, b <= 3`, and the data that makes it a solution.
fn polynomial_problem(c: Vec<f64>, b1: f64, b2: f64) -> (TelegraphProblem, Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>) {
    let c = Arc::new(c);
    let term = |c: &[f64], x: f64, t: f64, dx: usize, dt: usize| -> f64 {
        let mut s = 0.0;
        for a in dx..4 {
            for b in dt..4 {
                let fa: f64 = (a - dx + 1..=a).map(|v| v as f64).product();
                let fb: f64 = (b - dt + 1..=b).map(|v| v as f64).product();
                s += c[a * 4 + b] * fa * fb * x.powi((a - dx) as i32) * t.powi((b - dt) as i32);
            }
        }
        s
    };
    let (c1, c2, c3, c4, c5, c6) = (c.clone(), c.clone(), c.clone(), c.clone(), c.clone(), c.clone());
    let u = Arc::new(move |x: f64, t: f64| term(&c1, x, t, 0, 0));
    let p = TelegraphProblem::new(b1, b2, 1.0, 1.0)
        .unwrap()
        .with_source(move |x, t| {
            term(&c2, x, t, 0, 2) + b1 * term(&c2, x, t, 0, 1) + b2 * term(&c2, x, t, 0, 0) - term(&c2, x, t, 2, 0)
        })
        .with_initial(move |x| term(&c3, x, 0.0, 0, 0), move |x| term(&c4, x, 0.0, 0, 1))
        .with_boundary(move |t| term(&c5, 0.0, t, 0, 0), move |t| term(&c6, 1.0, t, 0, 0));
    (p, u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polynomial_solutions_are_reproduced(c in prop::collection::vec(-1.0f64..1.0, 16),
                                           b1 in 0.0f64..20.0, b2 in 0.0f64..25.0, n in 4usize..=7) {
        let (p, u) = polynomial_problem(c, b1, b2);
        let field = SolutionField::compute(&p, DiscretizationConfig::square(n)).unwrap();
        let g = field.evaluate_at_grid();
        let (xs, ts) = field.grid();
        for i in 0..xs.len() {
            for j in 0..ts.len() {
                prop_assert!((g[(i, j)] - u(xs[i], ts[j])).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn boundary_values_are_exact(id in 1usize..=4, ts in prop::collection::vec(0.0f64..1.0, 100)) {
        let b = bench(id);
        let field = SolutionField::compute(&b.problem, DiscretizationConfig::square(5)).unwrap();
        for t in ts {
            prop_assert_eq!(field.evaluate(0.0, t), (b.problem.h1)(t));
            prop_assert_eq!(field.evaluate(1.0, t), (b.problem.h2)(t));
        }
    }
}

#[test]
fn initial_condition_is_consistent_with_solver_accuracy() {
    for id in 2..=4 {
        let b = bench(id);
        let field = SolutionField::compute(&b.problem, DiscretizationConfig::square(6)).unwrap();
        let scale = error_norms(&*b.exact, &field).big_linf;
        for k in 0..50 {
            let x = (k as f64 + 0.5) / 50.0;
            assert!((field.evaluate(x, 0.0) - (b.problem.g1)(x)).abs() <= 10.0 * scale, "example {id}");
        }
    }
}

#[test]
fn discrete_residual_is_small() {
    for id in 1..=4 {
        let b = bench(id);
        let disc = Discretization::new(1.0, 1.0, DiscretizationConfig::square(8)).unwrap();
        let sys = assemble(&b.problem, &disc);
        let x = solve(&sys.matrix, &sys.rhs).unwrap();
        let r = sys.matrix.mul_vec(&x);
        let res = r.iter().zip(&sys.rhs).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        let bnorm = sys.rhs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(res <= 1e-9 * bnorm, "example {id}: {res}");
    }
}

#[test]
fn grid_and_pointwise_reconstruction_agree() {
    for id in 1..=4 {
        let b = bench(id);
        let cfg = DiscretizationConfig::square(6).with_kind(HigherOrder::Cauchy);
        let field = SolutionField::compute(&b.problem, cfg).unwrap();
        let g = field.evaluate_at_grid();
        let (xs, ts) = field.grid();
        for i in 0..xs.len() {
            for j in 0..ts.len() {
                let p = field.evaluate(xs[i], ts[j]);
                assert!((g[(i, j)] - p).abs() <= 1e-9 * p.abs().max(1.0), "example {id}");
            }
        }
        // the default second-order matrices agree up to their own truncation error
        let field = SolutionField::compute(&b.problem, DiscretizationConfig::square(6)).unwrap();
        let g = field.evaluate_at_grid();
        let err = error_norms(&*b.exact, &field).big_linf;
        for i in 0..xs.len() {
            for j in 0..ts.len() {
                assert!((g[(i, j)] - field.evaluate(xs[i], ts[j])).abs() <= 10.0 * err.max(1e-13), "example {id}: {} vs {err}", (g[(i, j)] - field.evaluate(xs[i], ts[j])).abs());
            }
        }
    }
}

#[test]
fn error_decays_faster_than_algebraically() {
    for id in 2..=4 {
        let b = bench(id);
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for n in [4usize, 6, 8, 10, 12] {
            let field = SolutionField::compute(&b.problem, DiscretizationConfig::square(n)).unwrap();
            let e = lattice_max_error(&*b.exact, &field, 50);
            xs.push(n as f64 * (n as f64).ln());
            ys.push(e.max(1e-16).log10());
        }
        let slope = telegraph_core::analysis::fit_slope(&xs, &ys).unwrap();
        assert!(slope < 0.0, "example {id}: {slope}");
    }
}

#[test]
fn other_collocation_parameters_converge() {
    let b = bench(3);
    for &a in &[-0.2, 0.3] {
        let e4 = lattice_max_error(
            &*b.exact,
            &SolutionField::compute(&b.problem, DiscretizationConfig::square(4).with_alpha(a)).unwrap(),
            50,
        );
        let e8 = lattice_max_error(
            &*b.exact,
            &SolutionField::compute(&b.problem, DiscretizationConfig::square(8).with_alpha(a)).unwrap(),
            50,
        );
        assert!(e8 < 1e-3 * e4 && e8 < 1e-8, "α={a}: {e4} -> {e8}");
    }
}

#[test]
fn rejects_bad_configurations() {
    let p = bench(1).problem;
    assert!(SolutionField::compute(&p, DiscretizationConfig::new(0, 3, 3)).is_err());
    assert!(SolutionField::compute(&p, DiscretizationConfig::new(3, 3, 0)).is_err());
    assert!(SolutionField::compute(&p, DiscretizationConfig::square(3).with_alpha(-0.5)).is_err());
    assert!(TelegraphProblem::new(1.0, 1.0, 0.0, 1.0).is_err());
    assert!(TelegraphProblem::new(1.0, 1.0, 1.0, -1.0).is_err());
}
