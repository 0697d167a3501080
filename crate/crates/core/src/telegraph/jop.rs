//! Closed forms for `J C_{l,j}`, where `J g(x) = ∫_0^x∫_0^σ g − (x/l) ∫_0^l∫_0^σ g`.

use crate::gegenbauer::GegenbauerBasis;
use crate::quadrature::GaussLegendre;
use crate::special::pochhammer;

/// `J_{l,x} C_{l,j}^{(α)}(x)`; exactly zero at `x = 0` and `x = l`.
pub fn j_operator_basis(l: f64, alpha: f64, j: usize, x: f64) -> f64 {
    if x == 0.0 || x == l {
        return 0.0;
    }
    match j {
        0 => 0.5 * x * (x - l),
        1 => (l - 2.0 * x) * (l - x) * x / (6.0 * l),
        2 if alpha == 0.0 => (l - x) * x * (l * l + 4.0 * l * x - 4.0 * x * x) / (6.0 * l * l),
        // (2α)(2α+1) in the general form's denominator vanishes at α = 0 and α → -1/2
        2 if (2.0 * alpha * (2.0 * alpha + 1.0)).abs() < 1e-3 => j2_monomial(l, alpha, x),
        _ => j_general(l, alpha, j, x),
    }
}

fn j_general(l: f64, a: f64, j: usize, x: f64) -> f64 {
    let basis = GegenbauerBasis::shifted(a, l).expect("validated by caller");
    let c = basis.eval_all(j + 2, x);
    let jf = j as f64;
    let nu1 = l * l / (16.0 * pochhammer(a + jf - 1.0, 2) * pochhammer(2.0 * a + jf - 2.0, 2));
    let nu2 = pochhammer(jf - 1.0, 2);
    let nu3 = 1.0 / (pochhammer(jf + 1.0, 2) * (a + jf + 1.0));
    let nu4 = pochhammer(2.0 * a + jf - 2.0, 2);
    let nu5 = 2.0 * pochhammer(jf + 1.0, 2) * (a + jf);
    let nu6 = -(a + jf - 1.0) * pochhammer(2.0 * a + jf, 2);
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let wp = 4.0 / l * (4.0 * (a - 2.0) * a + 3.0) * pochhammer(a + jf - 1.0, 3) * (sign * (l - x) + x);
    nu1 * (nu2 * c[j - 2] - nu3 * (nu4 * (nu5 * c[j] + nu6 * c[j + 2]) + wp))
}

/// `C_{l,2}` expanded in monomials, each mapped by `J x^p = (x^{p+2} − x l^{p+1}) / ((p+1)(p+2))`.
fn j2_monomial(l: f64, a: f64, x: f64) -> f64 {
    let s = 8.0 * (1.0 + a) / (1.0 + 2.0 * a);
    let coeffs = [1.0, -s / l, s / (l * l)];
    coeffs
        .iter()
        .enumerate()
        .map(|(p, c)| {
            let p = p as i32;
            c * (x.powi(p + 2) - x * l.powi(p + 1)) / (((p + 1) * (p + 2)) as f64)
        })
        .sum()
}

/// `J C_{l,j}` by exact Gauss-Legendre integration of the Cauchy kernel.
pub fn j_operator_numeric(l: f64, alpha: f64, j: usize, x: f64) -> f64 {
    let basis = GegenbauerBasis::shifted(alpha, l).expect("valid parameter");
    let rule = GaussLegendre::for_degree(j + 1);
    let inner = rule.integrate(0.0, x, |s| (x - s) * basis.eval(j, s));
    let whole = rule.integrate(0.0, l, |s| (l - s) * basis.eval(j, s));
    inner - x / l * whole
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::hyp2f1_terminating;

    /// Hypergeometric closed form, valid for `α < 5/2`, `α ∉ {1/2, 3/2}`.
    fn j_hypergeometric(l: f64, a: f64, j: usize, x: f64) -> f64 {
        let jf = j as f64;
        let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
        let pre = (4.0 * (a - 2.0) * a + 3.0) * l
            / (4.0 * pochhammer(jf + 1.0, 2) * pochhammer(2.0 * a + jf - 2.0, 2));
        let f = hyp2f1_terminating(j + 2, jf + 2.0 * a - 2.0, a - 1.5, 1.0 - x / l);
        pre * (l * f + sign * (x - l) - x)
    }

    #[test]
    fn printed_examples() {
        assert_eq!(j_operator_basis(1.0, 0.3, 0, 0.5), -0.125);
        assert!((j_operator_basis(1.0, 0.0, 2, 0.25) - 0.0546875).abs() < 1e-16);
        for j in 0..8 {
            assert_eq!(j_operator_basis(1.3, 0.4, j, 0.0), 0.0);
            assert_eq!(j_operator_basis(1.3, 0.4, j, 1.3), 0.0);
        }
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for &a in &[-0.45, -0.2, -1e-5, 0.0, 1e-5, 0.3, 1.0, 2.7, 6.0] {
            for &l in &[0.6, 1.0, 2.5] {
                for j in 0..14 {
                    for k in 1..10 {
                        let x = l * k as f64 / 10.0;
                        let c = j_operator_basis(l, a, j, x);
                        let n = j_operator_numeric(l, a, j, x);
                        assert!(
                            (c - n).abs() < 1e-12 * l * l,
                            "alpha {a} l {l} j {j} x {x}: {c} vs {n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hypergeometric_cross_check() {
        for &a in &[-0.3, 0.2, 1.1, 2.2] {
            for j in 2..10 {
                for k in 1..8 {
                    let x = 1.4 * k as f64 / 8.0;
                    let c = j_operator_basis(1.4, a, j, x);
                    let h = j_hypergeometric(1.4, a, j, x);
                    assert!((c - h).abs() < 1e-11, "alpha {a} j {j} x {x}: {c} vs {h}");
                }
            }
        }
    }
}
