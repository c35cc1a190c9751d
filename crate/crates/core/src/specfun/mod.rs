//! Characteristic-equation root finding and eigenpair construction for the
//! two spatial operators.

pub mod airy;
pub mod disloc;

use crate::error::{Error, Result};

/// Bisect `f` on a sign-changing bracket down to the requested width.
pub(crate) fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, width: f64) -> Result<(f64, f64)> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok((lo, lo));
    }
    if fhi == 0.0 {
        return Ok((hi, hi));
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Numeric(format!(
            "no sign change on bracket [{lo}, {hi}]"
        )));
    }
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval no longer resolvable in f64
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok((mid, mid));
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Newton iteration with a clamp interval, to relative tolerance `rel_tol`.
pub(crate) fn newton<F, D>(f: F, df: D, mut x: f64, lo: f64, hi: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    for _ in 0..100 {
        let fx = f(x);
        let dfx = df(x);
        if dfx == 0.0 || !fx.is_finite() {
            return Err(Error::Numeric(format!("newton stalled at x = {x}")));
        }
        let step = fx / dfx;
        let next = (x - step).clamp(lo, hi);
        let done = (next - x).abs() <= rel_tol * x.abs();
        x = next;
        if done {
            return Ok(x);
        }
    }
    Err(Error::Numeric(format!(
        "newton did not converge within 100 iterations (x = {x})"
    )))
}
