//! Problem (D): the dislocated-Laplacian Schrödinger equation on `(0, 1)`.
//!
//! The full solution is the expansion over the indefinite spectrum,
//! `u(x,t) = sum_n <u0, phi_n>/||phi_n||^2 e^{-i lambda_n t} phi_n(x)`.
//! On the left sub-interval `(0, b)` the reduced series
//!
//! ```text
//! U_R(x,t) = sum_{n>=1} u0_tilde(n) e^{-i (pi (n+1/4)/b)^2 t} sin((pi/b)(n+1/4) x)
//! ```
//!
//! differs from `u` by a continuous function, and at the rational times
//! `t = (2 b^2/pi)(p/q)` it collapses to `2q` translates of the profile
//!
//! ```text
//! G(x) = e^{-i pi x/4} { u0(b+) + i u0(bx)      on [0, 1],
//!                        i u0(b+) + u0(b(2-x))  on [1, 2] }
//! ```
//!
//! and of its 2-periodic Hilbert transform, weighted by the Gauss sums
//! `d_k = (1/2q) sum_m e^{-i (m+1/4)^2 2 pi p/q} e^{i pi m k/q}`.  The
//! right sub-interval has the mirrored statement at negative rational times
//! scaled by `(1-b)^2`: it is reached by reflecting the datum and the
//! dislocation rather than by re-deriving the formulas.
//!
//! Two transcription slips in the printed rational-time form are corrected
//! here, both pinned down by the series oracle: the constant term carries
//! `(1/2) int_0^2 G` (the mean of the 2-periodic profile), and the weight
//! sum is `sum_k d_k = e^{-i pi p/(8q)}`, the `m = 0` term of the Gauss sum.

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use crate::airy_revival::root_of_unity;
use crate::diagnostics::JumpSite;
use crate::error::{Error, Result};
use crate::hilbert::FourierSeries;
use crate::piecewise::{wrap, PiecewiseFn};
use crate::quad::poly_exp_integral;
use crate::specfun::disloc::DislocSpectrum;
use crate::sum::pairwise_sum;

/// Which sub-interval a rational time refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Rational time `t = +2 b^2 p/(pi q)` (left) or `t = -2 (1-b)^2 p/(pi q)`
/// (right); right-side revivals occur at negative times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DislocRationalTime {
    pub p: u64,
    pub q: u64,
    pub side: Side,
}

impl DislocRationalTime {
    pub fn reduced(p: u64, q: u64, side: Side) -> Result<(Self, bool)> {
        if p == 0 || q == 0 {
            return Err(Error::Domain("rational time needs p >= 1, q >= 1".into()));
        }
        let g = p.gcd(&q);
        Ok((DislocRationalTime { p: p / g, q: q / g, side }, g != 1))
    }

    pub fn new(p: u64, q: u64, side: Side) -> Result<Self> {
        Ok(Self::reduced(p, q, side)?.0)
    }

    pub fn t(&self, b: f64) -> f64 {
        let pq = self.p as f64 / self.q as f64;
        match self.side {
            Side::Left => 2.0 * b * b * pq / std::f64::consts::PI,
            Side::Right => -2.0 * (1.0 - b) * (1.0 - b) * pq / std::f64::consts::PI,
        }
    }
}

fn check_dislocation(b: f64) -> Result<()> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::Domain(format!("dislocation b = {b} outside (0, 1)")));
    }
    Ok(())
}

fn check_unit_interval(u0: &PiecewiseFn) -> Result<()> {
    if (u0.length() - 1.0).abs() > 1e-15 {
        return Err(Error::Domain("the dislocation problem is posed on [0, 1]".into()));
    }
    Ok(())
}

/// Reduced coefficient
/// `u0_tilde(n) = 2 int_0^1 [u0(by) sin(pi(n+1/4)y) + u0(b+) cos(pi(n+1/4)y)] dy`
/// by exact integration.
pub fn u0_tilde_dis(u0: &PiecewiseFn, b: f64, n: u32) -> Result<Complex64> {
    check_dislocation(b)?;
    check_unit_interval(u0)?;
    let omega = std::f64::consts::PI * (n as f64 + 0.25);
    let i = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    // v(y) = u0(b y) on [0, 1]
    let mut acc = zero;
    for (lo, hi, q) in u0.pullback_affine(b, 0.0, b, 0.0, 1.0) {
        // 2 sin(w y) = -i e^{i w y} + i e^{-i w y}
        acc += -i * poly_exp_integral(&q, lo, hi, zero, i * omega)
            + i * poly_exp_integral(&q, lo, hi, zero, -i * omega);
    }
    let u0bp = u0.right_limit(b);
    acc += 2.0 * u0bp * omega.sin() / omega;
    Ok(acc)
}

/// Gauss-sum weight
/// `d_k = (1/(2q)) sum_{m=0}^{2q-1} e^{-i (m+1/4)^2 2 pi p/q} e^{i pi m k/q}`.
pub fn dk_dis(rt: DislocRationalTime, k: u64) -> Complex64 {
    let q = rt.q as i128;
    let p = rt.p as i128;
    let k = k as i128;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..2 * q {
        // phases over the common denominator 16q
        acc += root_of_unity(8 * m * k - p * (16 * m * m + 8 * m + 1), 16 * q);
    }
    acc / (2 * rt.q) as f64
}

/// The boundary-augmented profile on the doubled interval `[0, 2]`.
///
/// The polynomial part is stored as a [`PiecewiseFn`]; the `e^{-i pi x/4}`
/// modulation is applied at evaluation time and folded into the Fourier
/// coefficients through the modulation argument of the coefficient
/// integrals.
#[derive(Debug, Clone)]
pub struct GbFunction {
    pub b: f64,
    base: PiecewiseFn,
}

pub const GB_MODULATION: Complex64 = Complex64::new(0.0, -std::f64::consts::FRAC_PI_4);

/// Assemble `G` from the restriction of `u0` to `[0, b]`.
pub fn g_u0_b(u0: &PiecewiseFn, b: f64) -> Result<GbFunction> {
    check_dislocation(b)?;
    check_unit_interval(u0)?;
    let i = Complex64::new(0.0, 1.0);
    let u0bp = u0.right_limit(b);

    let mut breaks = vec![0.0];
    let mut pieces: Vec<Vec<Complex64>> = Vec::new();
    // [0, 1]: u0(b+) + i u0(bx)
    for (lo, hi, q) in u0.pullback_affine(b, 0.0, b, 0.0, 1.0) {
        let mut piece: Vec<Complex64> = q.iter().map(|&c| i * c).collect();
        piece[0] += u0bp;
        debug_assert!((lo - breaks.last().unwrap()).abs() < 1e-12);
        breaks.push(hi);
        pieces.push(piece);
    }
    // [1, 2]: i u0(b+) + u0(b(2-x))
    for (lo, hi, q) in u0.pullback_affine(b, 2.0 * b, -b, 1.0, 2.0) {
        let mut piece = q.clone();
        piece[0] += i * u0bp;
        debug_assert!((lo - breaks.last().unwrap()).abs() < 1e-12);
        breaks.push(hi);
        pieces.push(piece);
    }
    *breaks.last_mut().unwrap() = 2.0;
    let base = PiecewiseFn::new(2.0, breaks, pieces)?;
    Ok(GbFunction { b, base })
}

impl GbFunction {
    /// `G(x)` for `x` in `[0, 2]`.
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        Ok(self.base.eval(x)? * (GB_MODULATION * x).exp())
    }

    /// 2-periodic evaluation.
    pub fn eval_periodic(&self, arg: f64) -> Complex64 {
        let w = wrap(arg, 2.0);
        self.base.periodic_eval(0.0, w) * (GB_MODULATION * w).exp()
    }

    /// `G(2^-)`, approaching the seam from below.
    pub fn left_limit_at_two(&self) -> Complex64 {
        self.base.left_limit(2.0) * (GB_MODULATION * 2.0).exp()
    }

    pub fn base(&self) -> &PiecewiseFn {
        &self.base
    }

    /// Exact Fourier coefficient of the modulated profile on `(0, 2)`.
    pub fn coeff(&self, n: i64) -> Complex64 {
        crate::hilbert::fourier_exact(&self.base, GB_MODULATION, n)
    }

    /// Jumps of the 2-periodised `G`, seam included.
    pub fn jumps_periodic(&self) -> Vec<(f64, Complex64)> {
        let mut out: Vec<(f64, Complex64)> = self
            .base
            .jumps()
            .into_iter()
            .map(|(g, h)| (g, h * (GB_MODULATION * g).exp()))
            .collect();
        let seam = self.base.right_limit(0.0) - self.left_limit_at_two();
        if seam.norm() > 1e-13 {
            out.push((0.0, seam));
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }
}

/// Truncated eigenfunction expansion of the full solution (both signs of
/// the spectrum, the hat mode included exactly when `b = 1/2`).
#[derive(Debug, Clone)]
pub struct DislocSolution {
    pub b: f64,
    spectrum: DislocSpectrum,
    coeffs: Vec<Complex64>,
}

impl DislocSolution {
    pub fn new(u0: &PiecewiseFn, b: f64, n_max: u32) -> Result<Self> {
        check_dislocation(b)?;
        check_unit_interval(u0)?;
        let spectrum = DislocSpectrum::build(b, n_max)?;
        let coeffs = spectrum
            .pairs()
            .par_iter()
            .map(|p| p.coeff(u0) / p.norm_sq)
            .collect();
        Ok(DislocSolution { b, spectrum, coeffs })
    }

    pub fn eval(&self, x: f64, t: f64) -> Complex64 {
        pairwise_sum(self.coeffs.len(), |i| {
            let pair = &self.spectrum.pairs()[i];
            self.coeffs[i] * Complex64::cis(-pair.lambda * t) * pair.eigfun(x)
        })
    }

    /// Truncated L2 norm of `u(., t)` from Parseval over the computed modes.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .zip(self.spectrum.pairs())
            .map(|(c, p)| c.norm_sqr() * p.norm_sq)
            .sum::<f64>()
            .sqrt()
    }

    pub fn spectrum(&self) -> &DislocSpectrum {
        &self.spectrum
    }
}

/// Truncated reduced series on `(0, b)`.
#[derive(Debug, Clone)]
pub struct DislocUrSeries {
    pub b: f64,
    coeffs: Vec<Complex64>,
}

impl DislocUrSeries {
    pub fn new(u0: &PiecewiseFn, b: f64, n_modes: u32) -> Result<Self> {
        check_dislocation(b)?;
        check_unit_interval(u0)?;
        let coeffs = (1..=n_modes)
            .into_par_iter()
            .map(|n| u0_tilde_dis(u0, b, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(DislocUrSeries { b, coeffs })
    }

    pub fn eval(&self, x: f64, t: f64) -> Complex64 {
        let pi = std::f64::consts::PI;
        pairwise_sum(self.coeffs.len(), |i| {
            let nu = pi * (i as f64 + 1.0 + 0.25) / self.b;
            self.coeffs[i] * Complex64::cis(-nu * nu * t) * (nu * x).sin()
        })
    }
}

/// Operation-level wrappers.
pub fn solve_series_dis(u0: &PiecewiseFn, b: f64, x: f64, t: f64, n_max: u32) -> Result<Complex64> {
    Ok(DislocSolution::new(u0, b, n_max)?.eval(x, t))
}

pub fn ur_series_dis(u0: &PiecewiseFn, b: f64, x: f64, t: f64, n_modes: u32) -> Result<Complex64> {
    Ok(DislocUrSeries::new(u0, b, n_modes)?.eval(x, t))
}

/// Reflect the problem: `(R u0, 1-b)` with `R u0(x) = u0(1-x)`.  The
/// solutions are related by `u(x, t) = v(1-x, -t)`.
pub fn reflect_problem(u0: &PiecewiseFn, b: f64) -> (PiecewiseFn, f64) {
    (u0.reflect(), 1.0 - b)
}

/// Finite rational-time closed form of `U_R` on `(0, b)`.
#[derive(Debug, Clone)]
pub struct DislocClosedForm {
    pub b: f64,
    g: GbFunction,
    series: FourierSeries,
    dk: Vec<Complex64>,
    dk_sum: Complex64,
    rt: DislocRationalTime,
    delta: f64,
    sites: Vec<JumpSite>,
}

impl DislocClosedForm {
    /// `rt` must be a left-side time: the right sub-interval is handled by
    /// reflecting the problem first.
    pub fn new(
        u0: &PiecewiseFn,
        b: f64,
        rt: DislocRationalTime,
        n_h: usize,
        delta: f64,
    ) -> Result<Self> {
        if rt.side != Side::Left {
            return Err(Error::Semantic(
                "closed form on (0, b) needs a left-side rational time; reflect the problem for (b, 1)".into(),
            ));
        }
        let g = g_u0_b(u0, b)?;
        let series = FourierSeries::from_piecewise(g.base(), GB_MODULATION, n_h);
        let dk: Vec<Complex64> = (0..2 * rt.q).map(|k| dk_dis(rt, k)).collect();
        let dk_sum = dk.iter().sum();
        let mut cf = DislocClosedForm {
            b,
            g,
            series,
            dk,
            dk_sum,
            rt,
            delta,
            sites: Vec::new(),
        };
        cf.sites = cf.compute_sites();
        Ok(cf)
    }

    pub fn g(&self) -> &GbFunction {
        &self.g
    }

    /// `L1(x)`: translates of `G` from both mirror branches.
    pub fn l1(&self, x: f64) -> Complex64 {
        let i = Complex64::new(0.0, 1.0);
        let pi4b = std::f64::consts::PI * x / (4.0 * self.b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &d) in self.dk.iter().enumerate() {
            let shift = k as f64 / self.rt.q as f64;
            let gm = self.g.eval_periodic(-x / self.b - shift);
            let gp = self.g.eval_periodic(x / self.b - shift);
            acc += 0.5 * d * (i * Complex64::cis(-pi4b) * gm - i * Complex64::cis(pi4b) * gp);
        }
        acc
    }

    /// `L2(x)`: the same translates applied to the 2-periodic Hilbert
    /// transform of `G`.
    pub fn l2(&self, x: f64) -> Complex64 {
        let pi4b = std::f64::consts::PI * x / (4.0 * self.b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &d) in self.dk.iter().enumerate() {
            let shift = k as f64 / self.rt.q as f64;
            let hm = self.series.hilbert_synthesis(wrap(-x / self.b - shift, 2.0));
            let hp = self.series.hilbert_synthesis(wrap(x / self.b - shift, 2.0));
            acc += 0.5 * d * (Complex64::cis(pi4b) * hp - Complex64::cis(-pi4b) * hm);
        }
        acc
    }

    /// `L3(x) = -<G> (sum_k d_k) sin(pi x/(4b))`, where `<G>` is the mean of
    /// the 2-periodic profile and `sum_k d_k = e^{-i pi p/(8q)}`.
    ///
    /// Continuous by inspection: no wrapped arguments appear.
    pub fn l3(&self, x: f64) -> Complex64 {
        -self.series.mean() * self.dk_sum * (std::f64::consts::PI * x / (4.0 * self.b)).sin()
    }

    pub fn eval_unguarded(&self, x: f64) -> Complex64 {
        self.l1(x) + self.l2(x) + self.l3(x)
    }

    pub fn eval(&self, x: f64) -> Result<Complex64> {
        if !(0.0 < x && x < self.b) {
            return Err(Error::Domain(format!("x = {x} outside (0, b)")));
        }
        if let Some(d) = self.distance_to_singular(x) {
            if d < self.delta {
                return Err(Error::Singularity { x, dist: d });
            }
        }
        Ok(self.eval_unguarded(x))
    }

    pub fn distance_to_singular(&self, x: f64) -> Option<f64> {
        self.sites
            .iter()
            .map(|s| (x - s.x).abs())
            .min_by(f64::total_cmp)
    }

    pub fn sites(&self) -> &[JumpSite] {
        &self.sites
    }

    /// Predicted singular abscissae in the closed `[0, b]`: wrapped solutions
    /// of `+-x/b - k/q = g (mod 2)` over the jumps `g` of the 2-periodised
    /// `G`.  Solutions landing on the interval ends still shape the
    /// exclusion mask: grid points near 0 or `b` sit arbitrarily close to
    /// the cusp even though the abscissa itself is not interior.
    fn compute_sites(&self) -> Vec<JumpSite> {
        let i = Complex64::new(0.0, 1.0);
        let pi = std::f64::consts::PI;
        // wrapped coordinate -> in-range abscissa, boundary included
        let snap = |w: f64| -> Option<f64> {
            if w >= 2.0 - 1e-12 {
                Some(0.0)
            } else if w <= 1.0 + 1e-12 {
                Some(w.clamp(0.0, 1.0))
            } else {
                None
            }
        };
        let mut raw: Vec<(f64, Complex64, Complex64, f64)> = Vec::new();
        for (k, &d) in self.dk.iter().enumerate() {
            if d.norm() < 1e-14 {
                continue;
            }
            let shift = k as f64 / self.rt.q as f64;
            for (g, h) in self.g.jumps_periodic() {
                // + branch: x/b = g + k/q (mod 2)
                if let Some(w) = snap(wrap(g + shift, 2.0)) {
                    let x0 = self.b * w;
                    let phase = Complex64::cis(pi * x0 / (4.0 * self.b));
                    let jump = -0.5 * i * d * phase * h;
                    let cusp = 0.5 * d * phase * (-h / pi);
                    raw.push((x0, jump, cusp, d.norm() * h.norm()));
                }
                // - branch: -x/b = g + k/q (mod 2), argument decreasing in x
                if let Some(w) = snap(wrap(-g - shift, 2.0)) {
                    let x0 = self.b * w;
                    let phase = Complex64::cis(-pi * x0 / (4.0 * self.b));
                    let jump = 0.5 * i * d * phase * (-h);
                    let cusp = -0.5 * d * phase * (-h / pi);
                    raw.push((x0, jump, cusp, d.norm() * h.norm()));
                }
            }
        }
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut sites: Vec<JumpSite> = Vec::new();
        for (x0, jump, cusp, hdk) in raw {
            if let Some(last) = sites.last_mut() {
                if (x0 - last.x).abs() < 1e-9 * self.b {
                    last.complex_jump += jump;
                    last.h_dk_abs += hdk;
                    last.cusp_coeff += cusp.norm();
                    continue;
                }
            }
            sites.push(JumpSite {
                x: x0,
                h_dk_abs: hdk,
                complex_jump: jump,
                predicted_jump: 0.0,
                cusp_coeff: cusp.norm(),
            });
        }
        for s in &mut sites {
            s.predicted_jump = s.complex_jump.norm();
        }
        sites
    }
}

/// `U_R` on `(0, b)` at the rational time via the closed form.
pub fn ur_closed_dis(
    u0: &PiecewiseFn,
    b: f64,
    x: f64,
    rt: DislocRationalTime,
    n_h: usize,
    delta: f64,
) -> Result<Complex64> {
    DislocClosedForm::new(u0, b, rt, n_h, delta)?.eval(x)
}
