//! Deterministic pairwise (tree) reduction.
//!
//! Every series in this crate is summed in ascending mode order with a fixed
//! binary reduction tree, so results are bit-identical across runs and across
//! thread counts.  Pairwise summation also keeps the rounding error of an
//! `n`-term sum at `O(log n)` ulps instead of `O(n)`.

use num_complex::Complex64;

const LEAF: usize = 64;

/// Sum of `f(i)` for `i` in `0..n` by a fixed-shape reduction tree.
///
/// Terms are generated on the fly, so no intermediate buffer is required.
pub fn pairwise_sum<F>(n: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64,
{
    fn go<F: Fn(usize) -> Complex64>(lo: usize, hi: usize, f: &F) -> Complex64 {
        if hi - lo <= LEAF {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in lo..hi {
                acc += f(i);
            }
            acc
        } else {
            let mid = lo + (hi - lo) / 2;
            go(lo, mid, f) + go(mid, hi, f)
        }
    }
    if n == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        go(0, n, &f)
    }
}

/// Real-valued counterpart of [`pairwise_sum`].
pub fn pairwise_sum_f64<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64,
{
    fn go<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: &F) -> f64 {
        if hi - lo <= LEAF {
            let mut acc = 0.0;
            for i in lo..hi {
                acc += f(i);
            }
            acc
        } else {
            let mid = lo + (hi - lo) / 2;
            go(lo, mid, f) + go(mid, hi, f)
        }
    }
    if n == 0 {
        0.0
    } else {
        go(0, n, &f)
    }
}
