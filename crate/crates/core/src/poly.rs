//! Polynomial coefficient helpers (ascending powers, complex coefficients).

use num_complex::Complex64;

pub(crate) fn poly_eval(coeffs: &[Complex64], x: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Coefficients of `p(alpha + beta * x)` given those of `p(y)`.
pub(crate) fn poly_affine(coeffs: &[Complex64], alpha: f64, beta: f64) -> Vec<Complex64> {
    let n = coeffs.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    // (alpha + beta x)^m expanded with binomial coefficients.
    for (m, &c) in coeffs.iter().enumerate() {
        let mut binom = 1.0f64;
        for j in 0..=m {
            // binom = C(m, j); term alpha^{m-j} beta^j x^j
            let term = binom * alpha.powi((m - j) as i32) * beta.powi(j as i32);
            out[j] += c * term;
            binom = binom * (m - j) as f64 / (j + 1) as f64;
        }
    }
    out
}

pub(crate) fn poly_conj(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().map(|c| c.conj()).collect()
}

pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact integral of a polynomial over `[a, b]`.
pub(crate) fn poly_integral(coeffs: &[Complex64], a: f64, b: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, &c) in coeffs.iter().enumerate() {
        let p = (m + 1) as i32;
        acc += c * (b.powi(p) - a.powi(p)) / p as f64;
    }
    acc
}
