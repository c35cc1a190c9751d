//! Jump and cusp diagnostics shared by both revival pipelines.

use num_complex::Complex64;
use serde::Serialize;

/// A singular abscissa of a closed-form revival profile.
///
/// `complex_jump` is the summed `d_k * (jump of G)` over every translate
/// mapping to this abscissa; `predicted_jump` is the exact jump the
/// (projected) profile takes across it, and `cusp_coeff` the coefficient of
/// `log(1/eps)` in its symmetric singular part.
#[derive(Debug, Clone, Serialize)]
pub struct JumpSite {
    pub x: f64,
    pub h_dk_abs: f64,
    #[serde(skip)]
    pub complex_jump: Complex64,
    pub predicted_jump: f64,
    pub cusp_coeff: f64,
}

/// Symmetric finite-difference jump estimate `f(x0 + eps) - f(x0 - eps)`.
pub fn estimate_jump<F>(f: F, x0: f64, eps: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    f(x0 + eps) - f(x0 - eps)
}

/// Fitted `log(1/eps)` growth rates between consecutive ladder points:
/// `rate_j = [g(eps_{j+1}) - g(eps_j)] / [ln(1/eps_{j+1}) - ln(1/eps_j)]`
/// where `g` averages the two sides of the cusp.
pub fn cusp_growth_rates<F>(f: F, x0: f64, ladder: &[f64]) -> Vec<f64>
where
    F: Fn(f64) -> f64,
{
    let vals: Vec<f64> = ladder.iter().map(|&e| 0.5 * (f(x0 + e) + f(x0 - e))).collect();
    ladder
        .windows(2)
        .zip(vals.windows(2))
        .map(|(e, v)| (v[1] - v[0]) / ((1.0 / e[1]).ln() - (1.0 / e[0]).ln()))
        .collect()
}

/// Sup and root-mean-square discrepancy over paired samples, skipping
/// excluded indices.  Returns `(sup, l2, excluded_count)`.
pub fn sup_and_l2(a: &[f64], b: &[f64], included: &[bool]) -> (f64, f64, usize) {
    debug_assert_eq!(a.len(), b.len());
    debug_assert_eq!(a.len(), included.len());
    let mut sup: f64 = 0.0;
    let mut sq = 0.0;
    let mut n = 0usize;
    for i in 0..a.len() {
        if !included[i] {
            continue;
        }
        let d = (a[i] - b[i]).abs();
        sup = sup.max(d);
        sq += d * d;
        n += 1;
    }
    let l2 = if n > 0 { (sq / n as f64).sqrt() } else { 0.0 };
    (sup, l2, a.len() - n)
}

/// Complex-valued counterpart of [`sup_and_l2`].
pub fn sup_and_l2_complex(a: &[Complex64], b: &[Complex64], included: &[bool]) -> (f64, f64, usize) {
    let mut sup: f64 = 0.0;
    let mut sq = 0.0;
    let mut n = 0usize;
    for i in 0..a.len() {
        if !included[i] {
            continue;
        }
        let d = (a[i] - b[i]).norm();
        sup = sup.max(d);
        sq += d * d;
        n += 1;
    }
    let l2 = if n > 0 { (sq / n as f64).sqrt() } else { 0.0 };
    (sup, l2, a.len() - n)
}

/// Scan a profile for jump-like behaviour: abscissae where the symmetric
/// difference at radius `eps` exceeds `threshold`.  Consecutive hits are
/// merged to the locally strongest one.
pub fn scan_jumps<F>(f: F, grid: &[f64], eps: f64, threshold: f64) -> Vec<(f64, f64)>
where
    F: Fn(f64) -> Complex64,
{
    let mut hits: Vec<(f64, f64)> = Vec::new();
    for &x in grid {
        let d = estimate_jump(&f, x, eps).norm();
        if d > threshold {
            if let Some(last) = hits.last_mut() {
                if x - last.0 < 4.0 * eps {
                    if d > last.1 {
                        *last = (x, d);
                    }
                    continue;
                }
            }
            hits.push((x, d));
        }
    }
    hits
}
