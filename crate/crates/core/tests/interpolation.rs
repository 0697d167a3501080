use proptest::prelude::*;
use telegraph_core::interp::{
    eval_interpolant_2d, forward_transform_1d, forward_transform_2d, forward_transform_2d_naive, lagrange_basis,
};
use telegraph_core::{Matrix, NodeSet};

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

#[test]
fn cardinality() {
    for &a in &[-0.3, 0.0, 0.5, 1.5] {
        for n in 0..=20 {
            let ns = NodeSet::shifted_gauss(a, n, 1.0).unwrap();
            for k in 0..=n {
                for (i, &x) in ns.nodes().iter().enumerate() {
                    let expect = if i == k { 1.0 } else { 0.0 };
                    let v = lagrange_basis(&ns, k, x);
                    assert!((v - expect).abs() < 1e-10, "α={a} n={n} k={k} i={i}: {v}");
                }
            }
        }
    }
}

#[test]
fn single_node_basis_is_constant() {
    let ns = NodeSet::shifted_gauss(0.3, 0, 2.0).unwrap();
    for &x in &[0.0, 0.4, 1.7, 2.0] {
        assert!((lagrange_basis(&ns, 0, x) - 1.0).abs() < 1e-15);
    }
}

proptest! {
    #[test]
    fn partition_of_unity(alpha in -0.4f64..2.0, n in 0usize..20, l in 0.2f64..5.0,
                          us in prop::collection::vec(0.0f64..1.0, 50)) {
        let ns = NodeSet::shifted_gauss(alpha, n, l).unwrap();
        for u in us {
            let s: f64 = (0..=n).map(|k| lagrange_basis(&ns, k, u * l)).sum();
            prop_assert!((s - 1.0).abs() < 1e-10, "{}", s);
        }
    }

    #[test]
    fn round_trip_on_polynomials(alpha in -0.4f64..2.0, n in 0usize..16, l in 0.5f64..2.0,
                                 seed in prop::collection::vec(-1.0f64..1.0, 17),
                                 us in prop::collection::vec(0.0f64..1.0, 50)) {
        let ns = NodeSet::shifted_gauss(alpha, n, l).unwrap();
        let c = &seed[..=n];
        let p = |x: f64| horner(c, x / l);
        let samples: Vec<f64> = ns.nodes().iter().map(|&x| p(x)).collect();
        let tr = forward_transform_1d(&samples, &ns).unwrap();
        prop_assert_eq!(tr.coeffs().len(), n + 1);
        let scale = c.iter().map(|a| a.abs()).sum::<f64>().max(1e-3);
        for u in us {
            let x = u * l;
            prop_assert!((tr.eval(x) - p(x)).abs() < 1e-10 * scale, "x={}", x);
            prop_assert!((tr.eval(x) - tr.eval_naive(x)).abs() < 1e-11 * scale);
        }
        for (k, &x) in ns.nodes().iter().enumerate() {
            prop_assert!((tr.eval(x) - samples[k]).abs() < 1e-11 * scale);
        }
    }

    #[test]
    fn tensor_consistency(alpha in -0.4f64..2.0, nx in 0usize..10, nt in 0usize..10,
                          a in prop::collection::vec(-1.0f64..1.0, 11),
                          b in prop::collection::vec(-1.0f64..1.0, 11)) {
        let (l, tau) = (1.3, 0.7);
        let sx = NodeSet::shifted_gauss(alpha, nx, l).unwrap();
        let st = NodeSet::shifted_gauss(alpha, nt, tau).unwrap();
        let u: Vec<f64> = a[..=nx].to_vec();
        let v: Vec<f64> = b[..=nt].to_vec();
        let values = Matrix::from_fn(nx + 1, nt + 1, |i, j| u[i] * v[j]);
        let bi = forward_transform_2d(&values, &sx, &st).unwrap();
        let tu = forward_transform_1d(&u, &sx).unwrap();
        let tv = forward_transform_1d(&v, &st).unwrap();
        let naive = forward_transform_2d_naive(&values, &sx, &st).unwrap();
        for n in 0..=nx {
            for m in 0..=nt {
                let outer = tu.coeffs()[n] * tv.coeffs()[m];
                prop_assert!((bi.coeffs()[(n, m)] - outer).abs() < 1e-11);
                prop_assert!((bi.coeffs()[(n, m)] - naive[(n, m)]).abs() < 1e-12);
            }
        }
        for i in 0..=nx {
            for j in 0..=nt {
                let e = eval_interpolant_2d(&bi, sx.nodes()[i], st.nodes()[j]);
                prop_assert!((e - values[(i, j)]).abs() < 1e-10 * values[(i, j)].abs().max(1.0));
            }
        }
    }
}

#[test]
fn bilinear_reproduced_off_grid() {
    let ns = NodeSet::shifted_gauss(0.0, 2, 1.0).unwrap();
    let values = Matrix::from_fn(3, 3, |i, j| ns.nodes()[i] + ns.nodes()[j]);
    let bi = forward_transform_2d(&values, &ns, &ns).unwrap();
    assert!((eval_interpolant_2d(&bi, 0.33, 0.77) - 1.10).abs() < 1e-11);
    let zero = forward_transform_2d(&Matrix::zeros(3, 3), &ns, &ns).unwrap();
    assert!(zero.coeffs().as_slice().iter().all(|&c| c == 0.0));
    assert_eq!(eval_interpolant_2d(&zero, 0.2, 0.9), 0.0);
}
