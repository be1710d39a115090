//! Taylor coefficient tables for the entire-function calculus.

use num_complex::Complex64;

/// Coefficients of exp: 1/p! for p = 0..=n.
pub fn exp_series(n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    out.push(Complex64::new(1.0, 0.0));
    for p in 1..=n {
        c /= p as f64;
        out.push(Complex64::new(c, 0.0));
    }
    out
}

/// Coefficients of (1 + x)^(1/2): the binomial series, for p = 0..=n.
pub fn sqrt1p_series(n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    out.push(Complex64::new(1.0, 0.0));
    for p in 0..n {
        c *= (0.5 - p as f64) / (p as f64 + 1.0);
        out.push(Complex64::new(c, 0.0));
    }
    out
}

/// Coefficients of 1/(1 - x): all ones, for p = 0..=n.
pub fn geometric_series(n: usize) -> Vec<Complex64> {
    vec![Complex64::new(1.0, 0.0); n + 1]
}
