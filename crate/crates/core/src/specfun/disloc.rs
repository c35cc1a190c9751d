//! Spectrum of the dislocated Dirichlet Laplacian
//! `D = d/dx ( sgn(x - b) d/dx )` on `(0, 1)`.
//!
//! Positive eigenvalues are `+[k_n^b]^2` with eigenfunctions oscillating on
//! `(0, b)` and decaying exponentially across the dislocation; negative
//! eigenvalues are `-[k_n^{1-b}]^2` with the roles of the sub-intervals
//! mirrored.  In both cases `k` solves
//!
//! ```text
//! cosh(k (1-c)) sin(k c) = cos(k c) sinh(k (1-c)),
//! ```
//!
//! i.e. `tan(kc) = tanh(k(1-c))`, with `c = b` for positive and `c = 1-b`
//! for negative indices.  For `b = 1/2` the operator additionally has the
//! simple eigenvalue 0 with the hat eigenfunction `min(x, 1-x)`.
//!
//! All hyperbolic factors are rewritten as decaying exponentials: the ratio
//! `B = sin(kc)/sinh(k(1-c))` underflows long before the mode counts used in
//! the figures, so it is carried as a sign and a log-magnitude.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expfun::{ExpPolyFun, ExpSegment, ExpTerm};
use crate::piecewise::PiecewiseFn;

use super::newton;

/// Asymptotic root location `nu_n^c = (pi/c)(n + 1/4)`.
pub fn disloc_nu(c: f64, n: u32) -> f64 {
    std::f64::consts::PI / c * (n as f64 + 0.25)
}

/// Residual of the characteristic equation, `tan(kc) - tanh(k(1-c))`, with
/// `tanh` in exponential-difference form.
pub fn disloc_residual(c: f64, k: f64) -> f64 {
    let e2 = (-2.0 * k * (1.0 - c)).exp();
    (k * c).tan() - (1.0 - e2) / (1.0 + e2)
}

/// The unique root of `tan(kc) = tanh(k(1-c))` in
/// `(n pi / c, (n pi + pi/4) / c)`, Newton-polished to relative 1e-14.
///
/// The gap to `nu_n^c` shrinks like `e^{-2 nu (1-c)}`, which drops below
/// f64 resolution within a few modes; the bracket endpoints then no longer
/// straddle a representable sign change, so the iteration starts from
/// `nu_n^c` instead of bisecting.
pub fn disloc_root(c: f64, n: u32) -> Result<f64> {
    if !(0.0 < c && c < 1.0) {
        return Err(Error::Domain(format!("side length c = {c} outside (0, 1)")));
    }
    if n == 0 {
        return Err(Error::Domain("disloc_root requires n >= 1".into()));
    }
    let pi = std::f64::consts::PI;
    let lo = n as f64 * pi / c;
    let hi = (n as f64 * pi + 0.25 * pi) / c;
    let df = |k: f64| {
        let t = (k * c).tan();
        let e2 = (-2.0 * k * (1.0 - c)).exp();
        let sech2 = 4.0 * e2 / ((1.0 + e2) * (1.0 + e2));
        c * (1.0 + t * t) - (1.0 - c) * sech2
    };
    newton(|k| disloc_residual(c, k), df, disloc_nu(c, n), lo, hi, 1e-14)
}

/// One eigenpair of the dislocated operator.
///
/// `n > 0` carries `lambda = +k^2` built on side length `c = b`; `n < 0`
/// carries `lambda = -k^2` on `c = 1-b`; `n = 0` exists only for `b = 1/2`
/// and is the hat function.
#[derive(Debug, Clone)]
pub struct DislocEigenPair {
    pub n: i32,
    /// Side length the root belongs to: `b` for `n > 0`, `1-b` for `n < 0`.
    pub c: f64,
    pub k: f64,
    pub nu: f64,
    pub gamma: f64,
    pub lambda: f64,
    /// sign of `B = sin(kc)/sinh(k(1-c))`.
    pub b_sign: f64,
    /// `ln |B|`.
    pub b_log: f64,
    pub norm_sq: f64,
    fun: ExpPolyFun,
}

fn sin_terms(scale: Complex64, freq: f64, phase: f64) -> Vec<ExpTerm> {
    // scale * sin(freq * x + phase) as two complex exponentials
    let half_i = Complex64::new(0.0, -0.5); // 1/(2i)
    vec![
        ExpTerm::exponential(scale * half_i * Complex64::cis(phase), Complex64::new(0.0, 0.0), Complex64::new(0.0, freq)),
        ExpTerm::exponential(-scale * half_i * Complex64::cis(-phase), Complex64::new(0.0, 0.0), Complex64::new(0.0, -freq)),
    ]
}

impl DislocEigenPair {
    pub fn new(b: f64, n: i32) -> Result<Self> {
        if n == 0 {
            return Self::hat(b);
        }
        let c = if n > 0 { b } else { 1.0 - b };
        let k = disloc_root(c, n.unsigned_abs())?;
        let nu = disloc_nu(c, n.unsigned_abs());
        let sin_kc = (k * c).sin();
        let y = k * (1.0 - c);
        // B = sin(kc)/sinh(k(1-c)) = 2 sin(kc) e^{-y} / (1 - e^{-2y})
        let b_sign = sin_kc.signum();
        let b_log = (2.0 * sin_kc.abs()).ln() - y - (-(-2.0 * y).exp()).ln_1p();
        let lambda = if n > 0 { k * k } else { -k * k };

        let one = Complex64::new(1.0, 0.0);
        let segments = if n > 0 {
            // sin(kx) on [0, b]; B sinh(k(1-x)) on [b, 1]
            vec![
                ExpSegment { a: 0.0, b, terms: sin_terms(one, k, 0.0) },
                ExpSegment {
                    a: b,
                    b: 1.0,
                    terms: vec![
                        ExpTerm::exponential(
                            Complex64::new(0.5 * b_sign, 0.0),
                            Complex64::new(b_log + k, 0.0),
                            Complex64::new(-k, 0.0),
                        ),
                        ExpTerm::exponential(
                            Complex64::new(-0.5 * b_sign, 0.0),
                            Complex64::new(b_log - k, 0.0),
                            Complex64::new(k, 0.0),
                        ),
                    ],
                },
            ]
        } else {
            // B sinh(kx) on [0, b]; sin(k(1-x)) on [b, 1]
            vec![
                ExpSegment {
                    a: 0.0,
                    b,
                    terms: vec![
                        ExpTerm::exponential(
                            Complex64::new(0.5 * b_sign, 0.0),
                            Complex64::new(b_log, 0.0),
                            Complex64::new(k, 0.0),
                        ),
                        ExpTerm::exponential(
                            Complex64::new(-0.5 * b_sign, 0.0),
                            Complex64::new(b_log, 0.0),
                            Complex64::new(-k, 0.0),
                        ),
                    ],
                },
                ExpSegment { a: b, b: 1.0, terms: sin_terms(-one, k, -k) },
            ]
        };
        let fun = ExpPolyFun { segments };
        let norm_sq = fun.norm_sq();
        Ok(DislocEigenPair { n, c, k, nu, gamma: k - nu, lambda, b_sign, b_log, norm_sq, fun })
    }

    /// The zero mode, present exactly when `b = 1/2`: the hat function
    /// `min(x, 1-x)` with `||phi_0||^2 = 1/12`.
    pub fn hat(b: f64) -> Result<Self> {
        if b != 0.5 {
            return Err(Error::Domain(
                "zero is not an eigenvalue unless the dislocation sits at 1/2".into(),
            ));
        }
        let zero = Complex64::new(0.0, 0.0);
        let fun = ExpPolyFun {
            segments: vec![
                ExpSegment {
                    a: 0.0,
                    b: 0.5,
                    terms: vec![ExpTerm { poly: vec![zero, Complex64::new(1.0, 0.0)], sigma: zero, mu: zero }],
                },
                ExpSegment {
                    a: 0.5,
                    b: 1.0,
                    terms: vec![ExpTerm {
                        poly: vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
                        sigma: zero,
                        mu: zero,
                    }],
                },
            ],
        };
        let norm_sq = fun.norm_sq();
        Ok(DislocEigenPair {
            n: 0,
            c: 0.5,
            k: 0.0,
            nu: 0.0,
            gamma: 0.0,
            lambda: 0.0,
            b_sign: 0.0,
            b_log: f64::NEG_INFINITY,
            norm_sq,
            fun,
        })
    }

    /// Eigenfunction value (real) at `x` in `[0, 1]`.
    pub fn eigfun(&self, x: f64) -> f64 {
        self.fun.eval(x).re
    }

    /// `<u0, phi_n>` in closed form.
    pub fn coeff(&self, u0: &PiecewiseFn) -> Complex64 {
        // phi is real, so <u0, phi> = int u0 phi
        self.fun.inner_against_piecewise(u0)
    }

    pub fn inner(&self, other: &DislocEigenPair) -> f64 {
        self.fun.inner(&other.fun).re
    }
}

/// Eigenfunction value; free-function form matching the stable piecewise
/// formulas `sin(kx)` / `sin(kb) e^{-k(x-b)} (1-e^{-2k(1-x)})/(1-e^{-2k(1-b)})`.
pub fn disloc_eigfun(b: f64, pair: &DislocEigenPair, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [0, 1]")));
    }
    let _ = b;
    Ok(pair.eigfun(x))
}

/// `||phi_n||^2`; free-function form.
pub fn disloc_norm(b: f64, pair: &DislocEigenPair) -> f64 {
    let _ = b;
    pair.norm_sq
}

/// Eigenpairs `n = -n_max..=-1, (0 when b = 1/2), 1..=n_max`.
#[derive(Debug, Clone)]
pub struct DislocSpectrum {
    pub b: f64,
    pairs: Vec<DislocEigenPair>,
}

impl DislocSpectrum {
    pub fn build(b: f64, n_max: u32) -> Result<Self> {
        if !(0.0 < b && b < 1.0) {
            return Err(Error::Domain(format!("dislocation b = {b} outside (0, 1)")));
        }
        let mut indices: Vec<i32> = (-(n_max as i32)..=n_max as i32).collect();
        if b != 0.5 {
            indices.retain(|&n| n != 0);
        }
        let pairs = indices
            .into_par_iter()
            .map(|n| DislocEigenPair::new(b, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(DislocSpectrum { b, pairs })
    }

    /// Pairs in ascending index order.
    pub fn pairs(&self) -> &[DislocEigenPair] {
        &self.pairs
    }
}
