//! Problem (A): the Dirichlet-type Airy equation on `(0, 1)`.
//!
//! Three evaluation routes for the same solution:
//!
//! * [`AirySolution`] - truncated expansion in the exact eigenfunctions,
//!   `sum_n 2 Re[ <u0, phi_n>/||phi_n||^2 e^{i k_n^3 t} phi_n(x) ]`,
//!   carried out entirely in the scaled gauge;
//! * [`AiryUrSeries`] - the reduced series
//!   `U_R(x,t) = sum_n 2 Re[ u0_tilde(n) e^{i (2n-1/3)^3 pi^3 t} e^{i (2n-1/3) pi x} ]`,
//!   which differs from the full solution by a function continuous in `x`;
//! * [`AiryClosedForm`] - the finite rational-time form
//!   `U_R(x, p/(q pi^2)) = Re{ e^{-i (pi/27)(9x + p/q)} [L1 + i L2 - L3] }`
//!   built from `q` translates of the boundary-augmented profile
//!   `G(x) = [u0(x) + u0(1) + u0(0)] e^{i pi x/3}` and of its 1-periodic
//!   Hilbert transform, weighted by the Gauss sums `d_k`.
//!
//! The continuous remainder `U_C = u - U_R` is only ever computed as that
//! difference, with both series truncated at the same mode count and summed
//! in the same order.

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use crate::diagnostics::JumpSite;
use crate::error::{Error, Result};
use crate::hilbert::{fourier_exact, FourierSeries};
use crate::piecewise::{wrap, PiecewiseFn};
use crate::specfun::airy::AirySpectrum;
use crate::sum::pairwise_sum_f64;

/// A rational time `t = p / (q pi^2)` with `p, q` coprime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AiryRationalTime {
    pub p: u64,
    pub q: u64,
}

impl AiryRationalTime {
    /// Construct, reducing to lowest terms; the boolean reports whether a
    /// reduction was necessary.
    pub fn reduced(p: u64, q: u64) -> Result<(Self, bool)> {
        if p == 0 || q == 0 {
            return Err(Error::Domain("rational time needs p >= 1, q >= 1".into()));
        }
        let g = p.gcd(&q);
        Ok((AiryRationalTime { p: p / g, q: q / g }, g != 1))
    }

    pub fn new(p: u64, q: u64) -> Result<Self> {
        Ok(Self::reduced(p, q)?.0)
    }

    pub fn t(&self) -> f64 {
        self.p as f64 / (self.q as f64 * std::f64::consts::PI * std::f64::consts::PI)
    }
}

/// `e^{2 pi i num/den}` with the phase reduced in integer arithmetic.
pub(crate) fn root_of_unity(num: i128, den: i128) -> Complex64 {
    let r = num.rem_euclid(den);
    Complex64::cis(2.0 * std::f64::consts::PI * r as f64 / den as f64)
}

/// Gauss-sum weight
/// `d_k = (1/q) sum_m e^{2 pi i (m k + (4 m^3 - 2 m^2) p)/q}`.
pub fn dk_airy(rt: AiryRationalTime, k: u64) -> Complex64 {
    let q = rt.q as i128;
    let p = rt.p as i128;
    let k = k as i128;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..q {
        acc += root_of_unity(m * k + (4 * m * m * m - 2 * m * m) * p, q);
    }
    acc / rt.q as f64
}

fn require_real_unit_interval(u0: &PiecewiseFn) -> Result<()> {
    if (u0.length() - 1.0).abs() > 1e-15 {
        return Err(Error::Domain("the Airy problem is posed on [0, 1]".into()));
    }
    if !u0.is_real() {
        return Err(Error::Domain(
            "the Airy problem takes real initial data; complex input rejected".into(),
        ));
    }
    Ok(())
}

/// Boundary-augmented datum `u0 + u0(1) + u0(0)` (the polynomial part of
/// `G`; the `e^{i pi x/3}` modulation is carried separately).
fn augmented_base(u0: &PiecewiseFn) -> Result<PiecewiseFn> {
    require_real_unit_interval(u0)?;
    let boundary = u0.right_limit(0.0) + u0.left_limit(1.0);
    Ok(u0.add_constant(boundary))
}

/// Reduced coefficient
/// `u0_tilde(n) = int_0^1 [u0(y) + u0(1) + u0(0)] e^{-i (2n - 1/3) pi y} dy`.
pub fn u0_tilde(u0: &PiecewiseFn, n: u32) -> Result<Complex64> {
    let base = augmented_base(u0)?;
    // e^{-i(2n-1/3) pi y} = e^{i pi y/3} e^{-2 pi i n y}; period 1 makes the
    // normalised coefficient equal to the plain integral
    Ok(fourier_exact(&base, Complex64::new(0.0, std::f64::consts::PI / 3.0), n as i64))
}

/// The modulated profile `G(x) = [u0(x) + u0(1) + u0(0)] e^{i pi x/3}`
/// for `x` in `[0, 1]`.
pub fn g_u0(u0: &PiecewiseFn, x: f64) -> Result<Complex64> {
    let base = augmented_base(u0)?;
    Ok(base.eval(x)? * Complex64::cis(std::f64::consts::PI * x / 3.0))
}

/// Truncated eigenfunction expansion of the solution.
#[derive(Debug, Clone)]
pub struct AirySolution {
    spectrum: AirySpectrum,
    /// `<u0, phi_n> / ||phi_n||^2` in the scaled gauge.
    coeffs: Vec<Complex64>,
}

impl AirySolution {
    pub fn new(u0: &PiecewiseFn, n_modes: u32) -> Result<Self> {
        require_real_unit_interval(u0)?;
        let spectrum = AirySpectrum::build(n_modes)?;
        let coeffs = spectrum
            .pairs()
            .par_iter()
            .map(|p| p.coeff_scaled(u0) / p.scaled_norm_sq)
            .collect();
        Ok(AirySolution { spectrum, coeffs })
    }

    pub fn modes(&self) -> usize {
        self.coeffs.len()
    }

    pub fn spectrum(&self) -> &AirySpectrum {
        &self.spectrum
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `u(x, t)` truncated at the stored mode count.
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        pairwise_sum_f64(self.coeffs.len(), |i| {
            let pair = &self.spectrum.pairs()[i];
            let rot = Complex64::cis(pair.lambda * t);
            2.0 * (self.coeffs[i] * rot * pair.eigfun_scaled(x)).re
        })
    }

    /// Magnitude of a single eigenmode term; `t`-independent by unitarity.
    pub fn mode_magnitude(&self, n: u32, x: f64, t: f64) -> f64 {
        let pair = self.spectrum.pair(n);
        let rot = Complex64::cis(pair.lambda * t);
        (self.coeffs[(n - 1) as usize] * rot * pair.eigfun_scaled(x)).norm()
    }
}

/// Truncated reduced series `U_R`.
#[derive(Debug, Clone)]
pub struct AiryUrSeries {
    coeffs: Vec<Complex64>,
}

impl AiryUrSeries {
    pub fn new(u0: &PiecewiseFn, n_modes: u32) -> Result<Self> {
        let base = augmented_base(u0)?;
        let mu = Complex64::new(0.0, std::f64::consts::PI / 3.0);
        let coeffs = (1..=n_modes as i64)
            .into_par_iter()
            .map(|n| fourier_exact(&base, mu, n))
            .collect();
        Ok(AiryUrSeries { coeffs })
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        let pi = std::f64::consts::PI;
        pairwise_sum_f64(self.coeffs.len(), |i| {
            let kappa = (2.0 * (i + 1) as f64 - 1.0 / 3.0) * pi;
            let rot = Complex64::cis(kappa * kappa * kappa * t + kappa * x);
            2.0 * (self.coeffs[i] * rot).re
        })
    }
}

/// Convenience wrappers matching the operation-level contracts.
pub fn solve_series(u0: &PiecewiseFn, x: f64, t: f64, n_modes: u32) -> Result<f64> {
    Ok(AirySolution::new(u0, n_modes)?.eval(x, t))
}

pub fn ur_series(u0: &PiecewiseFn, x: f64, t: f64, n_modes: u32) -> Result<f64> {
    Ok(AiryUrSeries::new(u0, n_modes)?.eval(x, t))
}

/// `U_C = u - U_R` with identical truncation and summation order.
pub fn uc(u0: &PiecewiseFn, x: f64, t: f64, n_modes: u32) -> Result<f64> {
    Ok(solve_series(u0, x, t, n_modes)? - ur_series(u0, x, t, n_modes)?)
}

/// Finite rational-time closed form of `U_R`.
#[derive(Debug, Clone)]
pub struct AiryClosedForm {
    base: PiecewiseFn,
    mu: Complex64,
    series: FourierSeries,
    dk: Vec<Complex64>,
    rt: AiryRationalTime,
    delta: f64,
    sites: Vec<JumpSite>,
}

impl AiryClosedForm {
    pub fn new(u0: &PiecewiseFn, rt: AiryRationalTime, n_h: usize, delta: f64) -> Result<Self> {
        let base = augmented_base(u0)?;
        let mu = Complex64::new(0.0, std::f64::consts::PI / 3.0);
        let series = FourierSeries::from_piecewise(&base, mu, n_h);
        let dk: Vec<Complex64> = (0..rt.q).map(|k| dk_airy(rt, k)).collect();
        let mut cf = AiryClosedForm {
            base,
            mu,
            series,
            dk,
            rt,
            delta,
            sites: Vec::new(),
        };
        cf.sites = cf.compute_sites();
        Ok(cf)
    }

    /// Jumps of the 1-periodised `G`, as `(abscissa in [0,1), height)`.
    fn g_jumps(&self) -> Vec<(f64, Complex64)> {
        let mut out: Vec<(f64, Complex64)> = self
            .base
            .jumps()
            .into_iter()
            .map(|(g, h)| (g, h * (self.mu * g).exp()))
            .collect();
        let seam = self.base.right_limit(0.0) - self.base.left_limit(1.0) * self.mu.exp();
        if seam.norm() > 1e-13 {
            out.push((0.0, seam));
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }

    /// Periodised evaluation of `G`.
    pub fn g_periodic(&self, arg: f64) -> Complex64 {
        let w = wrap(arg, 1.0);
        self.base.periodic_eval(0.0, w) * (self.mu * w).exp()
    }

    fn prefactor(&self, x: f64) -> Complex64 {
        let pi = std::f64::consts::PI;
        Complex64::cis(-pi / 27.0 * (9.0 * x + self.rt.p as f64 / self.rt.q as f64))
    }

    /// `L1(x) = sum_k d_k G(x + p/(3q) - k/q)`, arguments wrapped into the
    /// period.
    pub fn l1(&self, x: f64) -> Complex64 {
        let shift = self.rt.p as f64 / (3.0 * self.rt.q as f64);
        self.dk
            .iter()
            .enumerate()
            .map(|(k, &d)| d * self.g_periodic(x + shift - k as f64 / self.rt.q as f64))
            .sum()
    }

    /// `L2(x)`: same translates applied to the periodic Hilbert transform.
    pub fn l2(&self, x: f64) -> Complex64 {
        let shift = self.rt.p as f64 / (3.0 * self.rt.q as f64);
        self.dk
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                let arg = wrap(x + shift - k as f64 / self.rt.q as f64, 1.0);
                d * self.series.hilbert_synthesis(arg)
            })
            .sum()
    }

    /// `L3 = int_0^1 G`.
    pub fn l3(&self) -> Complex64 {
        self.series.mean()
    }

    /// Closed-form value with no proximity guard; jump-detection callers
    /// probe inside the exclusion radius deliberately.
    pub fn eval_unguarded(&self, x: f64) -> f64 {
        let i = Complex64::new(0.0, 1.0);
        (self.prefactor(x) * (self.l1(x) + i * self.l2(x) - self.l3())).re
    }

    /// Closed-form value, refusing evaluation within `delta` of a singular
    /// abscissa.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if let Some(d) = self.distance_to_singular(x) {
            if d < self.delta {
                return Err(Error::Singularity { x, dist: d });
            }
        }
        Ok(self.eval_unguarded(x))
    }

    /// Distance from `x` to the nearest singular abscissa in the periodic
    /// metric.
    pub fn distance_to_singular(&self, x: f64) -> Option<f64> {
        self.sites
            .iter()
            .map(|s| (wrap(x - s.x + 0.5, 1.0) - 0.5).abs())
            .min_by(f64::total_cmp)
    }

    /// Singular abscissae of the closed form: wrapped solutions of
    /// `x + p/(3q) - k/q = g (mod 1)` over the jumps `g` of `G`.
    pub fn sites(&self) -> &[JumpSite] {
        &self.sites
    }

    fn compute_sites(&self) -> Vec<JumpSite> {
        let pi = std::f64::consts::PI;
        let shift = self.rt.p as f64 / (3.0 * self.rt.q as f64);
        let mut raw: Vec<(f64, Complex64, f64)> = Vec::new();
        for (k, &d) in self.dk.iter().enumerate() {
            if d.norm() < 1e-14 {
                continue;
            }
            for (g, h) in self.g_jumps() {
                let x0 = wrap(g - shift + k as f64 / self.rt.q as f64, 1.0);
                raw.push((x0, d * h, d.norm() * h.norm()));
            }
        }
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut sites: Vec<JumpSite> = Vec::new();
        for (x0, dh, hdk) in raw {
            if let Some(last) = sites.last_mut() {
                if (x0 - last.x).abs() < 1e-9 {
                    last.complex_jump += dh;
                    last.h_dk_abs += hdk;
                    continue;
                }
            }
            sites.push(JumpSite {
                x: x0,
                h_dk_abs: hdk,
                complex_jump: dh,
                predicted_jump: 0.0,
                cusp_coeff: 0.0,
            });
        }
        // the L1 part jumps by Re[pref * sum d_k hG]; the L2 part carries
        // the log cusp with coefficient Re[pref * i * sum d_k hG * (-1/pi)]
        let i = Complex64::new(0.0, 1.0);
        for s in &mut sites {
            let pref = self.prefactor(s.x);
            s.predicted_jump = (pref * s.complex_jump).re;
            s.cusp_coeff = (pref * i * s.complex_jump * (-1.0 / pi)).re;
        }
        sites
    }
}

/// `U_R` at the rational time via the closed form; operation-level wrapper.
pub fn ur_closed(
    u0: &PiecewiseFn,
    x: f64,
    rt: AiryRationalTime,
    n_h: usize,
    delta: f64,
) -> Result<f64> {
    AiryClosedForm::new(u0, rt, n_h, delta)?.eval(x)
}
