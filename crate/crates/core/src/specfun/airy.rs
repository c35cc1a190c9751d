//! Spectrum of the Dirichlet-type Airy operator `A phi = i phi'''` with
//! `phi(0) = phi(1) = 0`, `phi_x(1) = phi_x(0)`.
//!
//! Eigenvalues are `k_n^3` for the positive roots `k_n` of the characteristic
//! determinant
//!
//! ```text
//! Delta(k) = e^{ik} + e^{-ik} + a(e^{iak} + e^{-iak}) + a^2(e^{ia^2k} + e^{-ia^2k}),
//! a = e^{2 pi i/3},
//! ```
//!
//! together with the mirror family `lambda_{-n} = -k_n^3`.  On the real line
//! `Delta` collapses to
//! `2[cos k - cos(k/2) cosh(sqrt3 k/2) - sqrt3 sin(k/2) sinh(sqrt3 k/2)]`,
//! which grows like `e^{sqrt3 k/2}`; all computations here work with
//! `e^{-sqrt3 k/2} Delta(k)` and with the gauge-scaled eigenfunctions
//! `e^{-sqrt3 k_n/2} phi_n`, whose stored magnitudes stay O(1) at every mode
//! index (the unscaled norm overflows near n = 260).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cube_root_of_unity;
use crate::error::{Error, Result};
use crate::expfun::{ExpPolyFun, ExpSegment, ExpTerm};
use crate::piecewise::PiecewiseFn;

use super::{bisect, newton};

const SQRT3: f64 = 1.732050807568877293527446341505872367_f64;

/// `e^{-sqrt3 k/2} Delta(k)` for real `k >= 0`; same positive zeros as
/// `Delta`, every term bounded by 2.
pub fn airy_det_scaled(k: f64) -> f64 {
    let s = 0.5 * SQRT3 * k;
    let e2 = (-2.0 * s).exp();
    2.0 * ((-s).exp() * k.cos()
        - (0.5 * k).cos() * 0.5 * (1.0 + e2)
        - SQRT3 * (0.5 * k).sin() * 0.5 * (1.0 - e2))
}

/// Derivative of [`airy_det_scaled`] in `k`.
pub fn airy_det_scaled_deriv(k: f64) -> f64 {
    let s = 0.5 * SQRT3 * k;
    let e2 = (-2.0 * s).exp();
    let (sh, ch) = ((0.5 * k).sin(), (0.5 * k).cos());
    2.0 * ((-s).exp() * (-0.5 * SQRT3 * k.cos() - k.sin())
        + 0.5 * sh * 0.5 * (1.0 + e2)
        - ch * (-0.5 * SQRT3 * e2)
        - SQRT3 * (0.5 * ch * 0.5 * (1.0 - e2) + sh * 0.5 * SQRT3 * e2))
}

/// Unscaled determinant for complex argument; only safe for moderate `|k|`.
pub fn airy_det(k: Complex64) -> Complex64 {
    let a = cube_root_of_unity();
    let i = Complex64::new(0.0, 1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..3u32 {
        let ar = a.powu(r);
        acc += ar * ((i * ar * k).exp() + (-i * ar * k).exp());
    }
    acc
}

/// Asymptotic root location `kappa_n = (2n - 1/3) pi`.
pub fn airy_kappa(n: u32) -> f64 {
    (2.0 * n as f64 - 1.0 / 3.0) * std::f64::consts::PI
}

/// The unique root of the characteristic determinant in
/// `((2n-1) pi, 2n pi)`: bisection to width 1e-3, then Newton on the scaled
/// determinant to relative tolerance 1e-14.
pub fn airy_root(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("airy_root requires n >= 1".into()));
    }
    let pi = std::f64::consts::PI;
    let lo = (2.0 * n as f64 - 1.0) * pi;
    let hi = 2.0 * n as f64 * pi;
    let (blo, bhi) = bisect(&airy_det_scaled, lo, hi, 1e-3)?;
    let kappa = airy_kappa(n);
    let start = if (blo..=bhi).contains(&kappa) {
        kappa
    } else {
        0.5 * (blo + bhi)
    };
    newton(airy_det_scaled, airy_det_scaled_deriv, start, lo, hi, 1e-14)
}

/// Eigenpair of the Airy operator in the scaled gauge.
///
/// The scaled eigenfunction is stored as three terms
/// `coeff_r * exp(sigma_r + tau_r x) * cis(omega_r x)` with
/// `sigma_r + tau_r x <= 0` throughout `[0, 1]`, so evaluation never
/// overflows and `|e^{-sqrt3 k_n/2} phi_n(x)| <= 4` for all `n`.
#[derive(Debug, Clone)]
pub struct AiryEigenPair {
    pub n: u32,
    pub k: f64,
    pub kappa: f64,
    /// `lambda_n = k_n^3`.
    pub lambda: f64,
    /// `e^{-sqrt3 k_n} ||phi_n||^2`, by exact integration of all nine cross
    /// terms of the scaled representation.
    pub scaled_norm_sq: f64,
    fun: ExpPolyFun,
}

impl AiryEigenPair {
    pub fn new(n: u32) -> Result<Self> {
        let k = airy_root(n)?;
        let s = 0.5 * SQRT3 * k;
        let zero = Complex64::new(0.0, 0.0);
        // e^{-sqrt3 k/2} phi_n(x) =
        //     e^{-ik/2} (1 - e^{-sqrt3 k}) e^{ikx}
        //   + (e^{-sqrt3 k/2 + ik} - e^{-ik/2}) e^{(-sqrt3 k/2 - ik/2) x}
        //   + e^{-sqrt3 k/2} (e^{-sqrt3 k/2 - ik/2} - e^{ik}) e^{(sqrt3 k/2 - ik/2) x}
        let terms = vec![
            ExpTerm::exponential(
                Complex64::cis(-0.5 * k) * (1.0 - (-2.0 * s).exp()),
                zero,
                Complex64::new(0.0, k),
            ),
            ExpTerm::exponential(
                (-s).exp() * Complex64::cis(k) - Complex64::cis(-0.5 * k),
                zero,
                Complex64::new(-s, -0.5 * k),
            ),
            ExpTerm::exponential(
                (-s).exp() * Complex64::cis(-0.5 * k) - Complex64::cis(k),
                Complex64::new(-s, 0.0),
                Complex64::new(s, -0.5 * k),
            ),
        ];
        let fun = ExpPolyFun {
            segments: vec![ExpSegment { a: 0.0, b: 1.0, terms }],
        };
        let scaled_norm_sq = fun.norm_sq();
        Ok(AiryEigenPair {
            n,
            k,
            kappa: airy_kappa(n),
            lambda: k * k * k,
            scaled_norm_sq,
            fun,
        })
    }

    /// Value of `e^{-sqrt3 k_n/2} phi_n(x)` for `x` in `[0, 1]`.
    pub fn eigfun_scaled(&self, x: f64) -> Complex64 {
        self.fun.eval(x)
    }

    /// Scaled inner product `e^{-sqrt3 k_n/2} <u0, phi_n>` in closed form.
    pub fn coeff_scaled(&self, u0: &PiecewiseFn) -> Complex64 {
        self.fun.inner_against_piecewise(u0)
    }

    /// Scaled cross inner product
    /// `e^{-sqrt3 (k_m + k_n)/2} <phi_m, phi_n>` in closed form.
    pub fn inner_scaled(&self, other: &AiryEigenPair) -> Complex64 {
        self.fun.inner(&other.fun)
    }

    /// Scaled inner product against the mirror family: with
    /// `phi_{-n} = -conj(phi_n)`, `<phi_m, phi_{-n}>` reduces to the
    /// unconjugated integral `int phi_m phi_n`, scaled.
    pub fn inner_scaled_mirror(&self, other: &AiryEigenPair) -> Complex64 {
        -self.fun.inner(&other.fun.conj())
    }

    #[cfg(test)]
    pub(crate) fn fun(&self) -> &ExpPolyFun {
        &self.fun
    }
}

/// Value of the scaled eigenfunction; free-function form.
pub fn airy_eigfun_scaled(pair: &AiryEigenPair, x: f64) -> Complex64 {
    pair.eigfun_scaled(x)
}

/// `e^{-sqrt3 k_n} ||phi_n||^2`; free-function form.
pub fn airy_norm_scaled(pair: &AiryEigenPair) -> f64 {
    pair.scaled_norm_sq
}

/// The first `n_max` eigenpairs, built in parallel.
#[derive(Debug, Clone)]
pub struct AirySpectrum {
    pairs: Vec<AiryEigenPair>,
}

impl AirySpectrum {
    pub fn build(n_max: u32) -> Result<Self> {
        let pairs = (1..=n_max)
            .into_par_iter()
            .map(AiryEigenPair::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(AirySpectrum { pairs })
    }

    pub fn pairs(&self) -> &[AiryEigenPair] {
        &self.pairs
    }

    pub fn pair(&self, n: u32) -> &AiryEigenPair {
        &self.pairs[(n - 1) as usize]
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}
