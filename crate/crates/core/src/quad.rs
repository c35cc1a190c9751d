//! Integration kernels.
//!
//! The production code never uses numerical quadrature for inner products:
//! every integrand is a piecewise polynomial times a complex exponential, and
//! [`poly_exp_integral`] evaluates those integrals from exact antiderivatives.
//! Composite Gauss-Legendre and adaptive Simpson rules are provided as
//! independent oracles for tests and for the principal-value Hilbert kernel,
//! whose subtracted integrand is smooth but not of polynomial-exponential
//! form.

use num_complex::Complex64;

use crate::poly::poly_affine;

/// `phi_m(z) = int_0^1 v^m e^{z v} dv` for `m = 0..=m_max`, `Re(z) <= 0`.
///
/// Small `|z|` uses the everywhere-convergent series
/// `sum_k z^k / (k! (m+k+1))`; large `|z|` uses the upward recurrence
/// `phi_m = (e^z - m phi_{m-1}) / z`, which is stable once `|z|` dominates
/// the degree.
fn phi_all(z: Complex64, m_max: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); m_max + 1];
    if z.norm() < 4.0 {
        for (m, slot) in out.iter_mut().enumerate() {
            let mut term = Complex64::new(1.0, 0.0);
            let mut acc = term / (m as f64 + 1.0);
            for k in 1..80 {
                term *= z / k as f64;
                let add = term / (m + k + 1) as f64;
                acc += add;
                if add.norm() < 1e-18 * acc.norm().max(1e-30) {
                    break;
                }
            }
            *slot = acc;
        }
    } else {
        let ez = z.exp();
        out[0] = (ez - 1.0) / z;
        for m in 1..=m_max {
            out[m] = (ez - m as f64 * out[m - 1]) / z;
        }
    }
    out
}

/// Exact `int_a^b p(x) e^{sigma + mu x} dx` for a polynomial `p` given by
/// ascending coefficients.
///
/// The exponent is expanded about whichever endpoint carries the larger real
/// part, so intermediate quantities stay bounded whenever the integrand
/// itself is bounded.  This is what makes the scaled-gauge eigenfunction
/// inner products computable at mode indices where `e^{sqrt(3) k_n}`
/// overflows.
pub fn poly_exp_integral(
    coeffs: &[Complex64],
    a: f64,
    b: f64,
    sigma: Complex64,
    mu: Complex64,
) -> Complex64 {
    let h = b - a;
    if coeffs.is_empty() || h == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    debug_assert!(h > 0.0);

    // Expand about the endpoint with the larger Re(sigma + mu x).
    let (x0, dir) = if mu.re >= 0.0 { (b, -1.0) } else { (a, 1.0) };
    let prefactor = (sigma + mu * x0).exp();
    let q = poly_affine(coeffs, x0, dir);
    let z = mu * dir * h; // Re(z) <= 0 by choice of endpoint
    let phis = phi_all(z, q.len() - 1);

    let mut acc = Complex64::new(0.0, 0.0);
    let mut hp = h; // h^{m+1}
    for (m, &qm) in q.iter().enumerate() {
        acc += qm * hp * phis[m];
        hp *= h;
    }
    // Substituting x = x0 + dir*u runs u over [0, h] in both cases; for the
    // b-anchored case the orientation flip cancels against dx = -du.
    prefactor * acc
}

/// Composite Gauss-Legendre rule (16 nodes per panel).  Test oracle.
pub fn gauss_legendre<F>(f: F, a: f64, b: f64, panels: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    const X: [f64; 8] = [
        0.095012509837637440185,
        0.281603550779258913230,
        0.458016777657227386342,
        0.617876244402643748447,
        0.755404408355003033895,
        0.865631202387831743880,
        0.944575023073232576078,
        0.989400934991649932596,
    ];
    const W: [f64; 8] = [
        0.189450610455068496285,
        0.182603415044923588867,
        0.169156519395002538189,
        0.149595988816576732081,
        0.124628971255533872052,
        0.095158511682492784810,
        0.062253523938647892863,
        0.027152459411754094852,
    ];
    let mut acc = Complex64::new(0.0, 0.0);
    let hp = (b - a) / panels as f64;
    for p in 0..panels {
        let lo = a + hp * p as f64;
        let mid = lo + 0.5 * hp;
        let half = 0.5 * hp;
        for i in 0..8 {
            acc += W[i] * (f(mid + half * X[i]) + f(mid - half * X[i])) * half;
        }
    }
    acc
}

/// Adaptive Simpson quadrature for a bounded integrand on `[a, b]`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
        (fa + 4.0 * fm + fb) * (h / 6.0)
    }
    #[allow(clippy::too_many_arguments)]
    fn go<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        go(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + go(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, b - a);
    go(&f, a, b, fa, fm, fb, whole, tol, 48)
}
