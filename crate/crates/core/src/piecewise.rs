//! Piecewise-polynomial initial data with exact jump bookkeeping.
//!
//! Initial profiles are piecewise Lipschitz; restricting the pieces to
//! polynomials (degree at most [`MAX_DEGREE`]) keeps every inner product
//! against an exponential computable in closed form, so no quadrature error
//! enters the production pipelines.  A function is represented by strictly
//! increasing breakpoints `0 = x_0 < x_1 < ... < x_{k+1} = l` and one
//! coefficient list per interval.  Values at interior breakpoints follow the
//! right-limit convention; at `x = l` the left limit is taken.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{poly_affine, poly_eval, poly_integral};

/// Highest polynomial degree a piece may carry.
pub const MAX_DEGREE: usize = 8;

/// A point on the line together with its representative modulo a period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicPoint {
    pub raw: f64,
    pub period: f64,
    pub wrapped: f64,
}

impl PeriodicPoint {
    /// Wrap `raw` into `[0, period)`.  Values within `1e-15 * period` of the
    /// upper edge are snapped to 0 so grids that graze the period boundary
    /// do not fall into the wrong piece.
    pub fn new(raw: f64, period: f64) -> Self {
        debug_assert!(period > 0.0);
        let mut wrapped = raw - period * (raw / period).floor();
        if wrapped < 0.0 {
            wrapped += period;
        }
        if period - wrapped < 1e-15 * period || wrapped >= period {
            wrapped = 0.0;
        }
        PeriodicPoint { raw, period, wrapped }
    }
}

/// Wrap a coordinate into `[0, period)`.
pub fn wrap(raw: f64, period: f64) -> f64 {
    PeriodicPoint::new(raw, period).wrapped
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFn {
    length: f64,
    breaks: Vec<f64>,
    pieces: Vec<Vec<Complex64>>,
}

impl PiecewiseFn {
    pub fn new(length: f64, breaks: Vec<f64>, pieces: Vec<Vec<Complex64>>) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Domain(format!("domain length must be positive, got {length}")));
        }
        if breaks.len() < 2 || breaks[0] != 0.0 || *breaks.last().unwrap() != length {
            return Err(Error::Domain(
                "breakpoints must start at 0 and end at the domain length".into(),
            ));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("breakpoints must be strictly increasing".into()));
        }
        if pieces.len() != breaks.len() - 1 {
            return Err(Error::Domain(format!(
                "piece count {} does not match interval count {}",
                pieces.len(),
                breaks.len() - 1
            )));
        }
        for p in &pieces {
            if p.is_empty() {
                return Err(Error::Domain("empty coefficient list".into()));
            }
            if p.len() > MAX_DEGREE + 1 {
                return Err(Error::Domain(format!(
                    "piece degree {} exceeds the supported maximum {MAX_DEGREE}",
                    p.len() - 1
                )));
            }
            if p.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(Error::Domain("non-finite coefficient".into()));
            }
        }
        Ok(PiecewiseFn { length, breaks, pieces })
    }

    /// Constant function on `[0, l]`.
    pub fn constant(length: f64, value: Complex64) -> Self {
        PiecewiseFn::new(length, vec![0.0, length], vec![vec![value]]).unwrap()
    }

    /// Step function: `values[j]` on `[cuts[j], cuts[j+1])` with implicit
    /// outer cuts at 0 and `l`.
    pub fn step(length: f64, interior_cuts: &[f64], values: &[Complex64]) -> Result<Self> {
        if values.len() != interior_cuts.len() + 1 {
            return Err(Error::Domain("step needs one more value than interior cuts".into()));
        }
        let mut breaks = Vec::with_capacity(interior_cuts.len() + 2);
        breaks.push(0.0);
        breaks.extend_from_slice(interior_cuts);
        breaks.push(length);
        let pieces = values.iter().map(|&v| vec![v]).collect();
        PiecewiseFn::new(length, breaks, pieces)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Vec<Complex64>] {
        &self.pieces
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.pieces.iter().all(|p| p.iter().all(|c| c.im == 0.0))
    }

    /// Index of the piece whose half-open interval contains `x`.
    fn piece_index(&self, x: f64) -> usize {
        // partition_point returns the count of breakpoints <= x; the piece
        // index is one less, clamped so x = l lands in the last piece.
        let idx = self.breaks.partition_point(|&b| b <= x);
        idx.saturating_sub(1).min(self.pieces.len() - 1)
    }

    /// Value at `x` in `[0, l]` with the right-limit convention at interior
    /// breakpoints and the left limit at `x = l`.
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        if !(0.0..=self.length).contains(&x) {
            return Err(Error::Domain(format!(
                "x = {x} outside the domain [0, {}]",
                self.length
            )));
        }
        Ok(poly_eval(&self.pieces[self.piece_index(x)], x))
    }

    /// One-sided limits at an arbitrary abscissa in `(0, l]` / `[0, l)`.
    pub fn left_limit(&self, x: f64) -> Complex64 {
        let idx = self.breaks.partition_point(|&b| b < x);
        let idx = idx.saturating_sub(1).min(self.pieces.len() - 1);
        poly_eval(&self.pieces[idx], x)
    }

    pub fn right_limit(&self, x: f64) -> Complex64 {
        poly_eval(&self.pieces[self.piece_index(x)], x)
    }

    /// `v(x - s)` where `v` is the `l`-periodic extension of this function
    /// from `[0, l)`.
    pub fn periodic_eval(&self, s: f64, x: f64) -> Complex64 {
        let w = wrap(x - s, self.length);
        poly_eval(&self.pieces[self.piece_index(w)], w)
    }

    /// Interior jumps `(x_j, right - left)`, zero-height entries omitted.
    pub fn jumps(&self) -> Vec<(f64, Complex64)> {
        let mut out = Vec::new();
        for j in 1..self.breaks.len() - 1 {
            let x = self.breaks[j];
            let h = poly_eval(&self.pieces[j], x) - poly_eval(&self.pieces[j - 1], x);
            if h.norm() > 0.0 {
                out.push((x, h));
            }
        }
        out
    }

    /// Jump of the `l`-periodic extension across the seam at 0,
    /// `f(0+) - f(l-)`.
    pub fn seam_jump(&self) -> Complex64 {
        self.right_limit(0.0) - self.left_limit(self.length)
    }

    /// Split into a continuous part and a pure step function: subtracting the
    /// cumulative step of all interior jumps leaves zero jump at every
    /// interior breakpoint.
    pub fn decompose(&self) -> (PiecewiseFn, Vec<(f64, Complex64)>) {
        let jumps = self.jumps();
        let mut ac_pieces = Vec::with_capacity(self.pieces.len());
        let mut cumulative = Complex64::new(0.0, 0.0);
        for j in 0..self.pieces.len() {
            if j > 0 {
                let x = self.breaks[j];
                cumulative += poly_eval(&self.pieces[j], x) - poly_eval(&self.pieces[j - 1], x);
            }
            let mut p = self.pieces[j].clone();
            p[0] -= cumulative;
            ac_pieces.push(p);
        }
        let ac = PiecewiseFn::new(self.length, self.breaks.clone(), ac_pieces).unwrap();
        (ac, jumps)
    }

    /// Pointwise sum with a constant.
    pub fn add_constant(&self, c: Complex64) -> PiecewiseFn {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p[0] += c;
                p
            })
            .collect();
        PiecewiseFn::new(self.length, self.breaks.clone(), pieces).unwrap()
    }

    pub fn scale(&self, c: Complex64) -> PiecewiseFn {
        let pieces = self
            .pieces
            .iter()
            .map(|p| p.iter().map(|&a| a * c).collect())
            .collect();
        PiecewiseFn::new(self.length, self.breaks.clone(), pieces).unwrap()
    }

    /// Mirror image `x -> f(l - x)` on the same domain.
    pub fn reflect(&self) -> PiecewiseFn {
        let l = self.length;
        let breaks: Vec<f64> = self.breaks.iter().rev().map(|&b| l - b).collect();
        let pieces: Vec<Vec<Complex64>> = self
            .pieces
            .iter()
            .rev()
            .map(|p| poly_affine(p, l, -1.0))
            .collect();
        PiecewiseFn::new(l, breaks, pieces).unwrap()
    }

    /// Exact `int_0^l f`.
    pub fn integral(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.pieces.len() {
            acc += poly_integral(&self.pieces[j], self.breaks[j], self.breaks[j + 1]);
        }
        acc
    }

    /// Iterate `(a, b, coeffs)` over the pieces.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, &[Complex64])> {
        self.breaks
            .windows(2)
            .zip(self.pieces.iter())
            .map(|(w, p)| (w[0], w[1], p.as_slice()))
    }

    /// Restriction of `f` to `[0, cut]`, re-parameterised by an affine map
    /// `y = alpha + beta x` onto the target interval `[lo, hi]` (so the new
    /// function at `x` equals `f(alpha + beta x)`).  Used to assemble the
    /// boundary-augmented revival profiles.
    pub(crate) fn pullback_affine(
        &self,
        cut: f64,
        alpha: f64,
        beta: f64,
        lo: f64,
        hi: f64,
    ) -> Vec<(f64, f64, Vec<Complex64>)> {
        let mut segs = Vec::new();
        for (a, b, p) in self.segments() {
            let a = a.max(0.0);
            let b = b.min(cut);
            if b <= a {
                continue;
            }
            // x-range mapping to [a, b] under y = alpha + beta x
            let (xa, xb) = ((a - alpha) / beta, (b - alpha) / beta);
            let (xl, xh) = if xa <= xb { (xa, xb) } else { (xb, xa) };
            let q = poly_affine(p, alpha, beta);
            segs.push((xl.max(lo), xh.min(hi), q));
        }
        segs.sort_by(|s, t| s.0.total_cmp(&t.0));
        segs
    }
}

// JSON schema: { "length": l, "breaks": [...], "pieces": [[...], ...],
// "complex": bool }.  Real pieces serialise coefficients as numbers, complex
// pieces as [re, im] pairs; either form is accepted on input.

#[derive(Serialize, Deserialize)]
struct PiecewiseJson {
    length: f64,
    breaks: Vec<f64>,
    pieces: Vec<Vec<CoeffJson>>,
    complex: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Real(f64),
    Pair([f64; 2]),
}

impl Serialize for PiecewiseFn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let complex = !self.is_real();
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| {
                        if complex {
                            CoeffJson::Pair([c.re, c.im])
                        } else {
                            CoeffJson::Real(c.re)
                        }
                    })
                    .collect()
            })
            .collect();
        PiecewiseJson {
            length: self.length,
            breaks: self.breaks.clone(),
            pieces,
            complex,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PiecewiseFn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PiecewiseJson::deserialize(deserializer)?;
        let pieces = raw
            .pieces
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|c| match c {
                        CoeffJson::Real(re) => Complex64::new(re, 0.0),
                        CoeffJson::Pair([re, im]) => Complex64::new(re, im),
                    })
                    .collect()
            })
            .collect();
        PiecewiseFn::new(raw.length, raw.breaks, pieces).map_err(D::Error::custom)
    }
}
