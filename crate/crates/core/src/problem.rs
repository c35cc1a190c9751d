//! Problem strategies behind a common trait, registered by name and
//! selected at runtime from the run configuration.
//!
//! Each boundary value problem implements [`RevivalProblem`]; the CLI looks
//! strategies up in the [`ProblemRegistry`] and never hard-codes a problem.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::airy_revival::{AiryClosedForm, AiryRationalTime, AirySolution, AiryUrSeries};
use crate::config::{RunConfig, SideSpec, TimeSpec};
use crate::diagnostics::{cusp_growth_rates, estimate_jump};
use crate::dislocation_revival::{
    reflect_problem, DislocClosedForm, DislocRationalTime, DislocSolution, DislocUrSeries, Side,
};
use crate::error::{Error, Result};
use crate::piecewise::PiecewiseFn;
use crate::report::{CompareOutput, CompareSummary, JumpTableEntry, ProfileTable, SpectrumRow};
use crate::specfun::airy::{airy_det_scaled, AirySpectrum};
use crate::specfun::disloc::{disloc_residual, DislocSpectrum};

const JUMP_PROBE_EPS: f64 = 1e-4;
const CUSP_LADDER: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// A dispersive boundary value problem the toolkit can drive end to end.
pub trait RevivalProblem: Send + Sync {
    fn name(&self) -> &'static str;

    /// Spectrum export rows plus human-readable warnings (e.g. a requested
    /// index that is not an eigenvalue).
    fn spectrum_rows(&self, cfg: &RunConfig) -> Result<(Vec<SpectrumRow>, Vec<String>)>;

    /// Eigenfunction-expansion solution profile.
    fn solve_profile(&self, cfg: &RunConfig) -> Result<ProfileTable>;

    /// Closed-form revival profile (rational time required).
    fn revive_profile(&self, cfg: &RunConfig) -> Result<ProfileTable>;

    /// Series-vs-closed-form discrepancy pipeline (rational time required).
    fn compare(&self, cfg: &RunConfig) -> Result<CompareOutput>;
}

/// Name-keyed strategy table.
pub struct ProblemRegistry {
    entries: Vec<Box<dyn RevivalProblem>>,
}

impl ProblemRegistry {
    pub fn builtin() -> Self {
        ProblemRegistry {
            entries: vec![Box::new(AiryProblem), Box::new(DislocationProblem)],
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn RevivalProblem> {
        self.entries
            .iter()
            .find(|p| p.name() == name)
            .map(|p| p.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|p| p.name()).collect()
    }
}

impl Default for ProblemRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

fn airy_rational(cfg: &RunConfig) -> Result<(AiryRationalTime, bool)> {
    match cfg.time {
        TimeSpec::Rational { p, q, .. } => AiryRationalTime::reduced(p, q),
        TimeSpec::Real(_) => Err(Error::Semantic(
            "compare requires rational time".into(),
        )),
    }
}

fn disloc_rational(cfg: &RunConfig) -> Result<(DislocRationalTime, bool)> {
    match cfg.time {
        TimeSpec::Rational { p, q, side } => {
            let side = match side.unwrap_or(SideSpec::Left) {
                SideSpec::Left => Side::Left,
                SideSpec::Right => Side::Right,
            };
            DislocRationalTime::reduced(p, q, side)
        }
        TimeSpec::Real(_) => Err(Error::Semantic("compare requires rational time".into())),
    }
}

/// The Dirichlet-type Airy equation.
pub struct AiryProblem;

impl RevivalProblem for AiryProblem {
    fn name(&self) -> &'static str {
        "airy"
    }

    fn spectrum_rows(&self, cfg: &RunConfig) -> Result<(Vec<SpectrumRow>, Vec<String>)> {
        let spec = AirySpectrum::build(cfg.modes)?;
        let rows = spec
            .pairs()
            .iter()
            .map(|p| SpectrumRow {
                n: p.n as i64,
                k: p.k,
                kappa_or_nu: p.kappa,
                lambda: p.lambda,
                norm_sq: p.scaled_norm_sq,
                residual: airy_det_scaled(p.k).abs(),
            })
            .collect();
        Ok((rows, Vec::new()))
    }

    fn solve_profile(&self, cfg: &RunConfig) -> Result<ProfileTable> {
        let t = match cfg.time {
            TimeSpec::Rational { p, q, .. } => AiryRationalTime::reduced(p, q)?.0.t(),
            TimeSpec::Real(t) => t,
        };
        let sol = AirySolution::new(&cfg.u0, cfg.modes)?;
        let xs = cfg.grid_points(1.0);
        let vals: Vec<f64> = xs.par_iter().map(|&x| sol.eval(x, t)).collect();
        let mut table = ProfileTable::new(&["x", "u"]);
        for (x, u) in xs.iter().zip(vals) {
            table.push(vec![*x, u]);
        }
        Ok(table)
    }

    fn revive_profile(&self, cfg: &RunConfig) -> Result<ProfileTable> {
        let (rt, _) = airy_rational(cfg)?;
        let cf = AiryClosedForm::new(&cfg.u0, rt, cfg.hilbert_modes, cfg.delta)?;
        let xs = cfg.grid_points(1.0);
        let rows: Vec<Vec<f64>> = xs
            .par_iter()
            .map(|&x| {
                let mut row = vec![x];
                match cf.eval(x) {
                    Ok(v) => {
                        row.push(v);
                        let (l1, l2) = (cf.l1(x), cf.l2(x));
                        row.extend([l1.re, l1.im, l2.re, l2.im]);
                    }
                    Err(_) => row.extend([f64::NAN; 5]),
                }
                row
            })
            .collect();
        let mut table = ProfileTable::new(&["x", "ur_closed", "l1_re", "l1_im", "l2_re", "l2_im"]);
        for row in rows {
            table.push(row);
        }
        Ok(table)
    }

    fn compare(&self, cfg: &RunConfig) -> Result<CompareOutput> {
        let (rt, reduced) = airy_rational(cfg)?;
        let t = rt.t();
        let sol = AirySolution::new(&cfg.u0, cfg.modes)?;
        let ur = AiryUrSeries::new(&cfg.u0, cfg.modes)?;
        let cf = AiryClosedForm::new(&cfg.u0, rt, cfg.hilbert_modes, cfg.delta)?;

        let xs = cfg.grid_points(1.0);
        struct Point {
            u: f64,
            series: f64,
            closed: f64,
            included: bool,
        }
        let pts: Vec<Point> = xs
            .par_iter()
            .map(|&x| {
                let u = sol.eval(x, t);
                let series = ur.eval(x, t);
                let included = cf
                    .distance_to_singular(x)
                    .map(|d| d >= cfg.delta)
                    .unwrap_or(true);
                let closed = if included { cf.eval_unguarded(x) } else { f64::NAN };
                Point { u, series, closed, included }
            })
            .collect();

        let mut table = ProfileTable::new(&[
            "x", "u", "ur_series", "ur_closed", "uc", "l1_re", "l1_im", "l2_re", "l2_im",
        ]);
        let mut sup: f64 = 0.0;
        let mut sq = 0.0;
        let mut n_inc = 0usize;
        for (x, p) in xs.iter().zip(&pts) {
            let (l1, l2) = if p.included {
                (cf.l1(*x), cf.l2(*x))
            } else {
                (Complex64::new(f64::NAN, f64::NAN), Complex64::new(f64::NAN, f64::NAN))
            };
            table.push(vec![
                *x,
                p.u,
                p.series,
                p.closed,
                p.u - p.series,
                l1.re,
                l1.im,
                l2.re,
                l2.im,
            ]);
            if p.included {
                let d = (p.series - p.closed).abs();
                sup = sup.max(d);
                sq += d * d;
                n_inc += 1;
            }
        }
        let l2_err = if n_inc > 0 { (sq / n_inc as f64).sqrt() } else { 0.0 };

        let jump_table: Vec<JumpTableEntry> = cf
            .sites()
            .iter()
            .map(|s| {
                let est = estimate_jump(
                    |x| Complex64::new(cf.eval_unguarded(x), 0.0),
                    s.x,
                    JUMP_PROBE_EPS,
                )
                .re;
                JumpTableEntry::from_site(s, est)
            })
            .collect();
        let cusp_rates: Vec<Vec<f64>> = cf
            .sites()
            .iter()
            .map(|s| cusp_growth_rates(|x| cf.eval_unguarded(x), s.x, &CUSP_LADDER))
            .collect();

        let summary = CompareSummary {
            problem: "airy".into(),
            p: rt.p,
            q: rt.q,
            reduced_from_input: reduced,
            side: None,
            b: None,
            t,
            modes: cfg.modes,
            hilbert_modes: cfg.hilbert_modes,
            grid: cfg.grid,
            delta: cfg.delta,
            sup_err: sup,
            l2_err,
            excluded_points: xs.len() - n_inc,
            threshold: cfg.threshold,
            passed: sup < cfg.threshold,
            jump_table,
            cusp_growth_rates: cusp_rates,
            non_revival_side: None,
        };
        Ok(CompareOutput { table, summary })
    }
}

/// The dislocated-Laplacian Schrödinger equation.
pub struct DislocationProblem;

impl DislocationProblem {
    fn b(cfg: &RunConfig) -> Result<f64> {
        cfg.b
            .ok_or_else(|| Error::Config("dislocation problem needs b".into()))
    }
}

impl RevivalProblem for DislocationProblem {
    fn name(&self) -> &'static str {
        "dislocation"
    }

    fn spectrum_rows(&self, cfg: &RunConfig) -> Result<(Vec<SpectrumRow>, Vec<String>)> {
        let b = Self::b(cfg)?;
        let mut warnings = Vec::new();
        if b != 0.5 {
            warnings.push(
                "n = 0 omitted: zero is not an eigenvalue unless b = 1/2".to_string(),
            );
        }
        let spec = DislocSpectrum::build(b, cfg.modes)?;
        let rows = spec
            .pairs()
            .iter()
            .map(|p| SpectrumRow {
                n: p.n as i64,
                k: p.k,
                kappa_or_nu: p.nu,
                lambda: p.lambda,
                norm_sq: p.norm_sq,
                residual: if p.n == 0 {
                    0.0
                } else {
                    disloc_residual(p.c, p.k).abs()
                },
            })
            .collect();
        Ok((rows, warnings))
    }

    fn solve_profile(&self, cfg: &RunConfig) -> Result<ProfileTable> {
        let b = Self::b(cfg)?;
        let t = match cfg.time {
            TimeSpec::Rational { .. } => disloc_rational(cfg)?.0.t(b),
            TimeSpec::Real(t) => t,
        };
        let sol = DislocSolution::new(&cfg.u0, b, cfg.modes)?;
        let xs = cfg.grid_points(1.0);
        let vals: Vec<Complex64> = xs.par_iter().map(|&x| sol.eval(x, t)).collect();
        let mut table = ProfileTable::new(&["x", "re_u", "im_u"]);
        for (x, u) in xs.iter().zip(vals) {
            table.push(vec![*x, u.re, u.im]);
        }
        Ok(table)
    }

    fn revive_profile(&self, cfg: &RunConfig) -> Result<ProfileTable> {
        let b = Self::b(cfg)?;
        let (rt, _) = disloc_rational(cfg)?;
        let view = RevivalView::build(&cfg.u0, b, rt, cfg)?;
        let xs = view.side_grid(cfg);
        let rows: Vec<Vec<f64>> = xs
            .par_iter()
            .map(|&x| {
                let mut row = vec![x];
                match view.eval_guarded(x) {
                    Some(v) => {
                        row.extend([v.re, v.im]);
                        let (l1, l2, l3) = view.components(x);
                        row.extend([l1.re, l1.im, l2.re, l2.im, l3.re, l3.im]);
                    }
                    None => row.extend([f64::NAN; 8]),
                }
                row
            })
            .collect();
        let mut table = ProfileTable::new(&[
            "x", "re_ur", "im_ur", "l1_re", "l1_im", "l2_re", "l2_im", "l3_re", "l3_im",
        ]);
        for row in rows {
            table.push(row);
        }
        Ok(table)
    }

    fn compare(&self, cfg: &RunConfig) -> Result<CompareOutput> {
        let b = Self::b(cfg)?;
        let (rt, reduced) = disloc_rational(cfg)?;
        let t = rt.t(b);
        let sol = DislocSolution::new(&cfg.u0, b, cfg.modes)?;
        let view = RevivalView::build(&cfg.u0, b, rt, cfg)?;

        // full-interval grid with side markers; the revival side carries the
        // series/closed-form comparison, the complementary side fractalises
        let xs = cfg.grid_points(1.0);
        struct Point {
            u: Complex64,
            series: Complex64,
            closed: Complex64,
            on_side: bool,
            included: bool,
        }
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let pts: Vec<Point> = xs
            .par_iter()
            .map(|&x| {
                let u = sol.eval(x, t);
                if !view.contains(x) {
                    return Point { u, series: nan, closed: nan, on_side: false, included: false };
                }
                let series = view.series_eval(x, t);
                let included = view.included(x, cfg.delta);
                let closed = if included { view.eval_unguarded(x) } else { nan };
                Point { u, series, closed, on_side: true, included }
            })
            .collect();

        let mut table = ProfileTable::new(&[
            "x", "re_u", "im_u", "re_ur_series", "im_ur_series", "re_ur_closed", "im_ur_closed",
            "re_uc", "im_uc", "side",
        ]);
        let mut sup: f64 = 0.0;
        let mut sq = 0.0;
        let mut n_inc = 0usize;
        for (x, p) in xs.iter().zip(&pts) {
            let uc = p.u - p.series;
            table.push(vec![
                *x,
                p.u.re,
                p.u.im,
                p.series.re,
                p.series.im,
                p.closed.re,
                p.closed.im,
                uc.re,
                uc.im,
                if *x < b { 0.0 } else { 1.0 },
            ]);
            if p.on_side && p.included {
                let d = (p.series - p.closed).norm();
                sup = sup.max(d);
                sq += d * d;
                n_inc += 1;
            }
        }
        let side_points = pts.iter().filter(|p| p.on_side).count();
        let l2_err = if n_inc > 0 { (sq / n_inc as f64).sqrt() } else { 0.0 };

        let jump_table: Vec<JumpTableEntry> = view
            .sites()
            .iter()
            .map(|s| {
                let x_phys = view.to_physical(s.x);
                let est = estimate_jump(|x| view.eval_unguarded(x), x_phys, JUMP_PROBE_EPS).norm();
                let mut e = JumpTableEntry::from_site(s, est);
                e.x = x_phys;
                e
            })
            .collect();
        let cusp_rates: Vec<Vec<f64>> = view
            .sites()
            .iter()
            .map(|s| {
                cusp_growth_rates(
                    |x| view.eval_unguarded(x).norm(),
                    view.to_physical(s.x),
                    &CUSP_LADDER,
                )
            })
            .collect();

        let summary = CompareSummary {
            problem: "dislocation".into(),
            p: rt.p,
            q: rt.q,
            reduced_from_input: reduced,
            side: Some(match rt.side {
                Side::Left => "left".into(),
                Side::Right => "right".into(),
            }),
            b: Some(b),
            t,
            modes: cfg.modes,
            hilbert_modes: cfg.hilbert_modes,
            grid: cfg.grid,
            delta: cfg.delta,
            sup_err: sup,
            l2_err,
            excluded_points: side_points - n_inc,
            threshold: cfg.threshold,
            passed: sup < cfg.threshold,
            jump_table,
            cusp_growth_rates: cusp_rates,
            non_revival_side: Some(xs.len() != side_points),
        };
        Ok(CompareOutput { table, summary })
    }
}

/// Side-resolved view of the dislocation closed form: for a right-side time
/// the problem is reflected and every evaluation maps `x -> 1 - x`.
struct RevivalView {
    cf: DislocClosedForm,
    ur: DislocUrSeries,
    side: Side,
    b: f64,
}

impl RevivalView {
    fn build(u0: &PiecewiseFn, b: f64, rt: DislocRationalTime, cfg: &RunConfig) -> Result<Self> {
        match rt.side {
            Side::Left => {
                let left = DislocRationalTime { p: rt.p, q: rt.q, side: Side::Left };
                let cf =
                    DislocClosedForm::new(u0, b, left, cfg.hilbert_modes, cfg.delta * b)?;
                let ur = DislocUrSeries::new(u0, b, cfg.modes)?;
                Ok(RevivalView { cf, ur, side: Side::Left, b })
            }
            Side::Right => {
                let (ru0, rb) = reflect_problem(u0, b);
                let left = DislocRationalTime { p: rt.p, q: rt.q, side: Side::Left };
                let cf =
                    DislocClosedForm::new(&ru0, rb, left, cfg.hilbert_modes, cfg.delta * rb)?;
                let ur = DislocUrSeries::new(&ru0, rb, cfg.modes)?;
                Ok(RevivalView { cf, ur, side: Side::Right, b })
            }
        }
    }

    /// Map a physical abscissa to the coordinate of the (possibly reflected)
    /// closed form.
    fn to_internal(&self, x: f64) -> f64 {
        match self.side {
            Side::Left => x,
            Side::Right => 1.0 - x,
        }
    }

    fn to_physical(&self, xi: f64) -> f64 {
        self.to_internal(xi) // the map is an involution
    }

    fn contains(&self, x: f64) -> bool {
        match self.side {
            Side::Left => x > 0.0 && x < self.b,
            Side::Right => x > self.b && x < 1.0,
        }
    }

    fn side_grid(&self, cfg: &RunConfig) -> Vec<f64> {
        let (lo, hi) = match self.side {
            Side::Left => (0.0, self.b),
            Side::Right => (self.b, 1.0),
        };
        (0..cfg.grid)
            .map(|i| lo + (i as f64 + 0.5) / cfg.grid as f64 * (hi - lo))
            .collect()
    }

    /// Reduced series at physical coordinates.  For the right side,
    /// `V_R(x, t) = U_R^{refl}(1 - x, -t)`.
    fn series_eval(&self, x: f64, t: f64) -> Complex64 {
        match self.side {
            Side::Left => self.ur.eval(x, t),
            Side::Right => self.ur.eval(1.0 - x, -t),
        }
    }

    fn eval_unguarded(&self, x: f64) -> Complex64 {
        self.cf.eval_unguarded(self.to_internal(x))
    }

    fn eval_guarded(&self, x: f64) -> Option<Complex64> {
        self.cf.eval(self.to_internal(x)).ok()
    }

    fn included(&self, x: f64, delta: f64) -> bool {
        self.cf
            .distance_to_singular(self.to_internal(x))
            .map(|d| d >= delta * self.cf.b)
            .unwrap_or(true)
    }

    fn components(&self, x: f64) -> (Complex64, Complex64, Complex64) {
        let xi = self.to_internal(x);
        (self.cf.l1(xi), self.cf.l2(xi), self.cf.l3(xi))
    }

    fn sites(&self) -> &[crate::diagnostics::JumpSite] {
        self.cf.sites()
    }
}

/// Hilbert-transform export: `x, Re(Hu), Im(Hu)` for the configured datum on
/// its own period.
pub fn hilbert_profile(cfg: &RunConfig) -> Result<ProfileTable> {
    let series = crate::hilbert::FourierSeries::from_piecewise(
        &cfg.u0,
        Complex64::new(0.0, 0.0),
        cfg.hilbert_modes,
    );
    let xs = cfg.grid_points(cfg.u0.length());
    let vals: Vec<Complex64> = xs.par_iter().map(|&x| series.hilbert_synthesis(x)).collect();
    let mut table = ProfileTable::new(&["x", "re_hu", "im_hu"]);
    for (x, v) in xs.iter().zip(vals) {
        table.push(vec![*x, v.re, v.im]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step_cfg(problem: &str) -> RunConfig {
        let json = format!(
            r#"{{
            "problem": "{problem}",
            "b": 0.35,
            "u0": {{ "length": 1.0, "breaks": [0.0, 0.15, 1.0], "pieces": [[1.0], [0.0]], "complex": false }},
            "time": {{ "rational": {{ "p": 1, "q": 2 }} }},
            "modes": 60,
            "hilbert_modes": 512,
            "grid": 64
        }}"#
        );
        RunConfig::from_json(&json).unwrap()
    }

    #[test]
    fn registry_lists_both_strategies() {
        let reg = ProblemRegistry::builtin();
        assert_eq!(reg.names(), vec!["airy", "dislocation"]);
        assert!(reg.get("airy").is_some());
        assert!(reg.get("dislocation").is_some());
        assert!(reg.get("heat").is_none());
    }

    #[test]
    fn airy_compare_runs_and_reports() {
        let cfg = step_cfg("airy");
        let out = ProblemRegistry::builtin()
            .get("airy")
            .unwrap()
            .compare(&cfg)
            .unwrap();
        assert_eq!(out.table.rows.len(), 64);
        assert!(out.summary.sup_err.is_finite());
        assert!(!out.summary.jump_table.is_empty());
    }

    #[test]
    fn dislocation_compare_marks_sides() {
        let cfg = step_cfg("dislocation");
        let out = ProblemRegistry::builtin()
            .get("dislocation")
            .unwrap()
            .compare(&cfg)
            .unwrap();
        let side_col = out.table.columns.iter().position(|c| c == "side").unwrap();
        let lefts = out.table.rows.iter().filter(|r| r[side_col] == 0.0).count();
        assert!(lefts > 0 && lefts < out.table.rows.len());
        assert_eq!(out.summary.non_revival_side, Some(true));
    }

    #[test]
    fn compare_requires_rational_time() {
        let mut cfg = step_cfg("airy");
        cfg.time = TimeSpec::Real(0.1);
        let err = ProblemRegistry::builtin()
            .get("airy")
            .unwrap()
            .compare(&cfg)
            .unwrap_err();
        assert!(matches!(err, Error::Semantic(_)));
    }

    #[test]
    fn solve_profile_deterministic_across_calls() {
        let cfg = step_cfg("airy");
        let reg = ProblemRegistry::builtin();
        let a = reg.get("airy").unwrap().solve_profile(&cfg).unwrap().to_csv();
        let b = reg.get("airy").unwrap().solve_profile(&cfg).unwrap().to_csv();
        assert_eq!(a, b);
    }
}
