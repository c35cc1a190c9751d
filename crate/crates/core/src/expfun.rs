//! Functions of the form `sum_j p_j(x) e^{sigma_j + mu_j x}` on a union of
//! intervals.
//!
//! Both families of eigenfunctions reduce to this shape once written in
//! overflow-safe form: trigonometric and hyperbolic factors split into pure
//! exponentials whose real log-magnitude `Re(sigma + mu x)` stays at or below
//! zero across the interval.  Inner products between two such functions, or
//! against a piecewise polynomial, then follow from exact antiderivatives of
//! `x^m e^{mu x}` via [`crate::quad::poly_exp_integral`].

use num_complex::Complex64;

use crate::piecewise::PiecewiseFn;
use crate::poly::{poly_conj, poly_eval, poly_mul};
use crate::quad::poly_exp_integral;

/// One additive term `p(x) e^{sigma + mu x}`.
#[derive(Debug, Clone)]
pub struct ExpTerm {
    pub poly: Vec<Complex64>,
    pub sigma: Complex64,
    pub mu: Complex64,
}

impl ExpTerm {
    pub fn exponential(coeff: Complex64, sigma: Complex64, mu: Complex64) -> Self {
        ExpTerm { poly: vec![coeff], sigma, mu }
    }

    fn eval(&self, x: f64) -> Complex64 {
        poly_eval(&self.poly, x) * (self.sigma + self.mu * x).exp()
    }

    fn conj(&self) -> ExpTerm {
        ExpTerm {
            poly: poly_conj(&self.poly),
            sigma: self.sigma.conj(),
            mu: self.mu.conj(),
        }
    }
}

/// A segment `[a, b]` carrying a sum of exponential terms.
#[derive(Debug, Clone)]
pub struct ExpSegment {
    pub a: f64,
    pub b: f64,
    pub terms: Vec<ExpTerm>,
}

/// Piecewise exponential-polynomial function.
#[derive(Debug, Clone)]
pub struct ExpPolyFun {
    pub segments: Vec<ExpSegment>,
}

impl ExpPolyFun {
    /// Complex conjugate of the function.
    pub fn conj(&self) -> ExpPolyFun {
        ExpPolyFun {
            segments: self
                .segments
                .iter()
                .map(|s| ExpSegment {
                    a: s.a,
                    b: s.b,
                    terms: s.terms.iter().map(|t| t.conj()).collect(),
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        for (i, seg) in self.segments.iter().enumerate() {
            let last = i + 1 == self.segments.len();
            if (x >= seg.a && x < seg.b) || (last && x == seg.b) {
                return seg.terms.iter().map(|t| t.eval(x)).sum();
            }
        }
        Complex64::new(0.0, 0.0)
    }

    /// `int f(x) conj(g(x)) dx` over the common refinement of the segment
    /// partitions, in closed form.
    pub fn inner(&self, other: &ExpPolyFun) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for s in &self.segments {
            for t in &other.segments {
                let lo = s.a.max(t.a);
                let hi = s.b.min(t.b);
                if hi <= lo {
                    continue;
                }
                for u in &s.terms {
                    for v in &t.terms {
                        let vc = v.conj();
                        let p = poly_mul(&u.poly, &vc.poly);
                        acc += poly_exp_integral(&p, lo, hi, u.sigma + vc.sigma, u.mu + vc.mu);
                    }
                }
            }
        }
        acc
    }

    /// `int u0(x) conj(f(x)) dx` against a piecewise polynomial datum.
    pub fn inner_against_piecewise(&self, u0: &PiecewiseFn) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (pa, pb, poly) in u0.segments() {
            for s in &self.segments {
                let lo = s.a.max(pa);
                let hi = s.b.min(pb);
                if hi <= lo {
                    continue;
                }
                for t in &s.terms {
                    let tc = t.conj();
                    let p = poly_mul(poly, &tc.poly);
                    acc += poly_exp_integral(&p, lo, hi, tc.sigma, tc.mu);
                }
            }
        }
        acc
    }

    /// Squared L2 norm.
    pub fn norm_sq(&self) -> f64 {
        self.inner(self).re
    }
}
