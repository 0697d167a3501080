//! Scalar special functions used by the norm, bound and closed-form code.
//!
//! Gamma values come from `libm` (a port of the musl implementations, accurate
//! to a few ulp over the ranges used here). Everything else is built on top.

/// `ln |Γ(x)|`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// `Γ(x)` for any real `x` that is not a non-positive integer.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// Ratio `Γ(a) / Γ(b)` evaluated in log space, for positive arguments.
pub fn gamma_ratio(a: f64, b: f64) -> f64 {
    debug_assert!(a > 0.0 && b > 0.0);
    (ln_gamma(a) - ln_gamma(b)).exp()
}

/// Rising factorial `(x)_n = x (x + 1) ... (x + n - 1)`.
pub fn pochhammer(x: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (x + k as f64))
}

/// Generalized binomial coefficient `binom(a, k)` for real `a` and integer `k >= 0`.
pub fn binomial(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a - i as f64) / (i + 1) as f64)
}

/// `n!` as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Terminating Gauss hypergeometric series `2F1(-n, b; c; z)`.
///
/// `c` must not be a non-positive integer reached before the series terminates.
pub fn hyp2f1_terminating(n: usize, b: f64, c: f64, z: f64) -> f64 {
    let a = -(n as f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    sum
}
