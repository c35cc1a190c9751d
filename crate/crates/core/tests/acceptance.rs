//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the measured quantities (run with `--nocapture` to see them on
//! success).  Tolerances and runtime budgets are pinned here and are not
//! tuned at run time.

use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria run one at a time so the per-criterion runtime budgets measure
/// exclusive wall time; the compute pipelines parallelise internally.
static EXCLUSIVE: Mutex<()> = Mutex::new(());

fn exclusive() -> std::sync::MutexGuard<'static, ()> {
    EXCLUSIVE.lock().unwrap_or_else(|e| e.into_inner())
}

use revlab::airy_revival::{
    dk_airy, AiryClosedForm, AiryRationalTime, AirySolution, AiryUrSeries,
};
use revlab::config::RunConfig;
use revlab::dislocation_revival::{
    dk_dis, DislocClosedForm, DislocRationalTime, DislocSolution, DislocUrSeries, Side,
};
use revlab::hilbert::{hilbert_pv, FourierSeries};
use revlab::piecewise::{wrap, PiecewiseFn};
use revlab::problem::ProblemRegistry;
use revlab::specfun::airy::{airy_kappa, airy_root, AirySpectrum};
use revlab::specfun::disloc::{disloc_nu, disloc_root, DislocSpectrum};
use revlab::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn fig2_step() -> PiecewiseFn {
    PiecewiseFn::step(1.0, &[0.5], &[c(1.0), c(0.0)]).unwrap()
}

fn left_step() -> PiecewiseFn {
    PiecewiseFn::step(1.0, &[0.15], &[c(1.0), c(0.0)]).unwrap()
}

fn budget(id: u32, start: Instant, limit_s: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < limit_s,
        "criterion {id}: runtime {elapsed:.1} s exceeds the {limit_s} s budget"
    );
}

#[test]
fn criterion_01_airy_root_asymptotics() {
    let _guard = exclusive();
    let start = Instant::now();
    let gaps: Vec<(u32, f64)> = (3..=50)
        .map(|n| (n, (airy_root(n).unwrap() - airy_kappa(n)).abs()))
        .collect();
    let over: Vec<&(u32, f64)> = gaps.iter().filter(|(_, g)| *g >= 1e-8).collect();
    let non_decreasing: Vec<String> = gaps
        .windows(2)
        .filter(|w| w[1].1 >= w[0].1)
        .map(|w| format!("n={}..{}: {:.2e} -> {:.2e}", w[0].0, w[1].0, w[0].1, w[1].1))
        .collect();
    budget(1, start, 1.0);
    let pass = over.is_empty() && non_decreasing.is_empty();
    println!(
        "criterion 1 ({}): airy |k_n - kappa_n| < 1e-8 and strictly decreasing for n = 3..50; \
         max gap {:.3e} at n = {}",
        if pass { "PASS" } else { "FAIL" },
        gaps.iter().map(|g| g.1).fold(0.0, f64::max),
        gaps.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0,
    );
    assert!(
        pass,
        "criterion 1 FAIL: {} gap(s) >= 1e-8 (worst: n={}, {:.4e}; the true gap is \
         ~2.4766 e^(-sqrt3 n pi), which exceeds 1e-8 at n = 3), {} monotonicity violation(s) \
         (the true gap falls below f64 resolution near n = 9, leaving rounding noise): {:?}",
        over.len(),
        over.first().map(|g| g.0).unwrap_or(0),
        over.first().map(|g| g.1).unwrap_or(0.0),
        non_decreasing.len(),
        &non_decreasing[..non_decreasing.len().min(4)],
    );
}

#[test]
fn criterion_02_dislocation_root_asymptotics() {
    let _guard = exclusive();
    let start = Instant::now();
    let mut over = Vec::new();
    let mut increases = Vec::new();
    for &cc in &[0.3, 0.5, 0.7] {
        let gaps: Vec<(u32, f64)> = (3..=50)
            .map(|n| (n, (disloc_root(cc, n).unwrap() - disloc_nu(cc, n)).abs()))
            .collect();
        over.extend(
            gaps.iter()
                .filter(|(_, g)| *g >= 1e-6)
                .map(|&(n, g)| (cc, n, g)),
        );
        increases.extend(
            gaps.windows(2)
                .filter(|w| w[1].1 > w[0].1)
                .map(|w| (cc, w[1].0, w[0].1, w[1].1)),
        );
    }
    budget(2, start, 1.0);
    let pass = over.is_empty() && increases.is_empty();
    println!(
        "criterion 2 ({}): dislocation |k_n - nu_n| < 1e-6 and decreasing for c in {{0.3, 0.5, 0.7}}, n = 3..50",
        if pass { "PASS" } else { "FAIL" },
    );
    assert!(
        pass,
        "criterion 2 FAIL: threshold violations {:?} (the gap scale is e^(-2 nu (1-c)), which at \
         c = 0.7 is above 1e-6 until n = 6); increases at noise level: {:?}",
        over,
        &increases[..increases.len().min(4)],
    );
}

#[test]
fn criterion_03_orthogonality() {
    let _guard = exclusive();
    let start = Instant::now();
    let mut worst: f64 = 0.0;

    // Airy, indices of both signs via phi_{-n} = -conj(phi_n)
    let spec = AirySpectrum::build(15).unwrap();
    for m in 0..spec.len() {
        for n in 0..spec.len() {
            let pm = &spec.pairs()[m];
            let pn = &spec.pairs()[n];
            let denom = (pm.scaled_norm_sq * pn.scaled_norm_sq).sqrt();
            if m != n {
                worst = worst.max(pm.inner_scaled(pn).norm() / denom);
            }
            // mirror pairs have distinct eigenvalues for every m, n >= 1
            worst = worst.max(pm.inner_scaled_mirror(pn).norm() / denom);
        }
    }

    // dislocation, both signs, hat mode included at b = 1/2
    for &b in &[0.35, 0.5] {
        let spec = DislocSpectrum::build(b, 15).unwrap();
        let pairs = spec.pairs();
        for i in 0..pairs.len() {
            for j in 0..i {
                let denom = (pairs[i].norm_sq * pairs[j].norm_sq).sqrt();
                worst = worst.max(pairs[i].inner(&pairs[j]).abs() / denom);
            }
        }
    }

    budget(3, start, 5.0);
    println!(
        "criterion 3 ({}): normalized off-diagonal inner products, worst = {:.3e} (< 1e-8)",
        if worst < 1e-8 { "PASS" } else { "FAIL" },
        worst
    );
    assert!(worst < 1e-8, "criterion 3 FAIL: worst = {worst:.3e}");
}

#[test]
fn criterion_04_gauss_sum_identities() {
    let _guard = exclusive();
    let start = Instant::now();
    let cases = [(1u64, 2u64), (1, 3), (2, 3), (3, 4)];
    let mut worst_airy_mech: f64 = 0.0;
    let mut worst_airy_sum: f64 = 0.0;
    let mut worst_dis_mech: f64 = 0.0;
    let mut worst_dis_sum: f64 = 0.0;
    let mut dis_sum_report = Vec::new();

    for &(p, q) in &cases {
        let art = AiryRationalTime::new(p, q).unwrap();
        let adk: Vec<Complex64> = (0..q).map(|k| dk_airy(art, k)).collect();
        let sum: Complex64 = adk.iter().sum();
        worst_airy_sum = worst_airy_sum.max((sum - c(1.0)).norm());
        for n in 1..=(4 * q) as i64 {
            let lhs: Complex64 = adk
                .iter()
                .enumerate()
                .map(|(k, &d)| {
                    d * Complex64::cis(-2.0 * std::f64::consts::PI * (n * k as i64) as f64 / q as f64)
                })
                .sum();
            let expo = (4 * n * n * n - 2 * n * n) * p as i64;
            let rhs = Complex64::cis(2.0 * std::f64::consts::PI * (expo.rem_euclid(q as i64)) as f64 / q as f64);
            worst_airy_mech = worst_airy_mech.max((lhs - rhs).norm());
        }

        let drt = DislocRationalTime::new(p, q, Side::Left).unwrap();
        let ddk: Vec<Complex64> = (0..2 * q).map(|k| dk_dis(drt, k)).collect();
        let dsum: Complex64 = ddk.iter().sum();
        let claimed = Complex64::cis(-std::f64::consts::PI * p as f64 / (2.0 * q as f64));
        let m0_phase = Complex64::cis(-std::f64::consts::PI * p as f64 / (8.0 * q as f64));
        worst_dis_sum = worst_dis_sum.max((dsum - claimed).norm());
        dis_sum_report.push(format!(
            "p/q={p}/{q}: |sum - e^(-i pi p/(2q))| = {:.3e}, |sum - e^(-i pi p/(8q))| = {:.3e}",
            (dsum - claimed).norm(),
            (dsum - m0_phase).norm()
        ));
        for n in 1..=(4 * q) as i64 {
            let lhs: Complex64 = ddk
                .iter()
                .enumerate()
                .map(|(k, &d)| {
                    d * Complex64::cis(-std::f64::consts::PI * (n * k as i64) as f64 / q as f64)
                })
                .sum();
            let ang = (n as f64 + 0.25) * (n as f64 + 0.25) * 2.0 * std::f64::consts::PI * p as f64
                / q as f64;
            let rhs = Complex64::cis(-ang);
            worst_dis_mech = worst_dis_mech.max((lhs - rhs).norm());
        }
    }

    budget(4, start, 1.0);
    let pass = worst_airy_mech < 1e-12
        && worst_airy_sum < 1e-12
        && worst_dis_mech < 1e-12
        && worst_dis_sum < 1e-12;
    println!(
        "criterion 4 ({}): airy mechanism {:.2e}, airy sum {:.2e}, dislocation mechanism {:.2e}, \
         dislocation sum-vs-e^(-i pi p/(2q)) {:.2e}",
        if pass { "PASS" } else { "FAIL" },
        worst_airy_mech,
        worst_airy_sum,
        worst_dis_mech,
        worst_dis_sum
    );
    assert!(
        pass,
        "criterion 4 FAIL: the dislocation weight sum identity as stated does not hold; the \
         computed sum matches the m = 0 Gauss-sum phase e^(-i pi p/(8q)) to machine precision \
         instead: {dis_sum_report:?} (airy mechanism {worst_airy_mech:.2e}, airy sum \
         {worst_airy_sum:.2e}, dislocation mechanism {worst_dis_mech:.2e} all pass)"
    );
}

#[test]
fn criterion_05_hilbert_three_way_agreement() {
    let _guard = exclusive();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_CAFE);
    let mut worst: f64 = 0.0;

    for &l in &[1.0f64, 2.0] {
        for _rep in 0..5 {
            // random step: 2..4 interior cuts, values in [-1, 1]
            let ncuts = rng.gen_range(2..=4);
            let mut cuts: Vec<f64> = (0..ncuts).map(|_| rng.gen_range(0.08..0.92) * l).collect();
            cuts.sort_by(f64::total_cmp);
            cuts.dedup_by(|a, b| (*a - *b).abs() < 0.05 * l);
            let values: Vec<Complex64> =
                (0..=cuts.len()).map(|_| c(rng.gen_range(-1.0..1.0))).collect();
            let f = PiecewiseFn::step(l, &cuts, &values).unwrap();

            let series = FourierSeries::from_piecewise(&f, c(0.0), 1 << 16);

            // closed form: each jump h at g contributes (h/pi) ln |sin(pi (x-g)/l)|
            let mut jumps = f.jumps();
            let seam = f.seam_jump();
            if seam.norm() > 1e-13 {
                jumps.push((0.0, seam));
            }
            let closed = |x: f64| -> f64 {
                jumps
                    .iter()
                    .map(|(g, h)| {
                        h.re / std::f64::consts::PI
                            * (std::f64::consts::PI * (x - g) / l).sin().abs().ln()
                    })
                    .sum()
            };

            let grid: Vec<f64> = (0..96).map(|i| (i as f64 + 0.5) / 96.0 * l).collect();
            for &x in &grid {
                let far = jumps
                    .iter()
                    .map(|(g, _)| (wrap(x - g + 0.5 * l, l) - 0.5 * l).abs())
                    .fold(f64::INFINITY, f64::min)
                    >= 1e-2 * l;
                if !far {
                    continue;
                }
                let a = series.hilbert_synthesis(x).re;
                let b = closed(x);
                let pv = hilbert_pv(&f, x).unwrap().re;
                worst = worst
                    .max((a - b).abs())
                    .max((a - pv).abs())
                    .max((b - pv).abs());
            }
        }
    }

    budget(5, start, 30.0);
    println!(
        "criterion 5 ({}): three-way Hilbert agreement, worst pairwise gap {:.3e} (< 1e-3)",
        if worst < 1e-3 { "PASS" } else { "FAIL" },
        worst
    );
    assert!(worst < 1e-3, "criterion 5 FAIL: worst = {worst:.3e}");
}

struct OracleStats {
    sup: f64,
    l2: f64,
    excluded: usize,
}

/// Sup and discrete L2 norm `sqrt(sum d^2 dx)` over the included points.
fn stats_from(diffs: &[Option<f64>], dx: f64) -> OracleStats {
    let included: Vec<f64> = diffs.iter().flatten().copied().collect();
    let sup = included.iter().fold(0.0f64, |a, &b| a.max(b));
    let l2 = (included.iter().map(|d| d * d).sum::<f64>() * dx).sqrt();
    OracleStats { sup, l2, excluded: diffs.len() - included.len() }
}

fn airy_oracle_stats(u0: &PiecewiseFn, p: u64, q: u64, n_modes: u32) -> OracleStats {
    use rayon::prelude::*;
    let rt = AiryRationalTime::new(p, q).unwrap();
    let ur = AiryUrSeries::new(u0, n_modes).unwrap();
    let cf = AiryClosedForm::new(u0, rt, 1 << 16, 1e-2).unwrap();
    let t = rt.t();
    let grid: Vec<f64> = (0..2048).map(|i| (i as f64 + 0.5) / 2048.0).collect();
    let diffs: Vec<Option<f64>> = grid
        .par_iter()
        .map(|&x| {
            if cf.distance_to_singular(x).unwrap_or(f64::INFINITY) < 1e-2 {
                None
            } else {
                Some((ur.eval(x, t) - cf.eval_unguarded(x)).abs())
            }
        })
        .collect();
    stats_from(&diffs, 1.0 / 2048.0)
}

#[test]
fn criterion_06_theorem1_oracle_equivalence() {
    let _guard = exclusive();
    let start = Instant::now();
    let u0 = fig2_step();
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for (p, q) in [(1u64, 1u64), (1, 2), (1, 3)] {
        let stats = airy_oracle_stats(&u0, p, q, 2000);
        let ok = stats.sup < 5e-3 && stats.l2 < 5e-4;
        let line = format!(
            "p/q = {p}/{q}: sup = {:.3e} (< 5e-3), l2 = {:.3e} (< 5e-4), excluded {}",
            stats.sup, stats.l2, stats.excluded
        );
        println!("criterion 6 [{}] {line}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures.push(line);
        } else {
            lines.push(line);
        }
    }
    budget(6, start, 60.0);
    println!(
        "criterion 6 ({}): theorem-1 series/closed-form equivalence",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(
        failures.is_empty(),
        "criterion 6 FAIL: {failures:?} (the sup discrepancy is the truncation tail of the \
         2000-mode series near the exclusion boundary, ~|h d_k|/(2 pi N sin(pi delta)); its \
         L2 aggregate sits a few percent above the pinned 5e-4 for this datum)"
    );
}

enum DislocSide {
    Left,
    Right,
}

fn disloc_oracle_stats(
    u0: &PiecewiseFn,
    b: f64,
    p: u64,
    q: u64,
    side: DislocSide,
    n_modes: u32,
    grid_n: usize,
) -> OracleStats {
    use rayon::prelude::*;
    use revlab::dislocation_revival::reflect_problem;
    let rt = DislocRationalTime::new(p, q, Side::Left).unwrap();
    // the right sub-interval is the left side of the reflected problem
    let (w0, wb) = match side {
        DislocSide::Left => (u0.clone(), b),
        DislocSide::Right => reflect_problem(u0, b),
    };
    let ur = DislocUrSeries::new(&w0, wb, n_modes).unwrap();
    let cf = DislocClosedForm::new(&w0, wb, rt, 1 << 16, 1e-2 * wb).unwrap();
    let t = rt.t(wb);
    let grid: Vec<f64> = (0..grid_n)
        .map(|i| (i as f64 + 0.5) / grid_n as f64 * wb)
        .collect();
    let diffs: Vec<Option<f64>> = grid
        .par_iter()
        .map(|&x| {
            if cf.distance_to_singular(x).unwrap_or(f64::INFINITY) < 1e-2 * wb {
                None
            } else {
                Some((ur.eval(x, t) - cf.eval_unguarded(x)).norm())
            }
        })
        .collect();
    stats_from(&diffs, wb / grid_n as f64)
}

#[test]
fn criterion_07_theorem2_oracle_equivalence() {
    let _guard = exclusive();
    let start = Instant::now();
    let u0 = left_step();
    let mut failures = Vec::new();
    for &b in &[0.35f64, 0.5] {
        for (p, q) in [(1u64, 1u64), (1, 2)] {
            let stats = disloc_oracle_stats(&u0, b, p, q, DislocSide::Left, 4000, 2048);
            let ok = stats.sup < 5e-3 && stats.l2 < 5e-4;
            println!(
                "criterion 7 [{}] b = {b}, p/q = {p}/{q}, left: sup = {:.3e}, l2 = {:.3e}, excluded {}",
                if ok { "PASS" } else { "FAIL" },
                stats.sup,
                stats.l2,
                stats.excluded
            );
            if !ok {
                failures.push(format!("left b = {b}, p/q = {p}/{q}: sup = {:.3e}, l2 = {:.3e}", stats.sup, stats.l2));
            }

            // reflected check on (b, 1) at the negative rational time: the
            // mirrored datum has its single jump inside (b, 1), so the
            // right-side revival carries real content
            let mirrored = u0.reflect();
            let stats = disloc_oracle_stats(&mirrored, b, p, q, DislocSide::Right, 4000, 1024);
            let ok = stats.sup < 5e-3 && stats.l2 < 5e-4;
            println!(
                "criterion 7 [{}] b = {b}, p/q = {p}/{q}, right: sup = {:.3e}, l2 = {:.3e}",
                if ok { "PASS" } else { "FAIL" },
                stats.sup,
                stats.l2
            );
            if !ok {
                failures.push(format!("right b = {b}, p/q = {p}/{q}: sup = {:.3e}, l2 = {:.3e}", stats.sup, stats.l2));
            }
        }
    }
    budget(7, start, 90.0);
    println!(
        "criterion 7 ({}): theorem-2 series/closed-form equivalence, both sides",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "criterion 7 FAIL: {failures:?}");
}

#[test]
fn criterion_08_dislocation_localization() {
    let _guard = exclusive();
    let start = Instant::now();
    let b = 0.35;
    let rt = DislocRationalTime::new(1, 2, Side::Left).unwrap();

    // datum continuous on [0, b], only jump at 0.6 in (b, 1)
    let ramp = PiecewiseFn::new(
        1.0,
        vec![0.0, 0.6, 1.0],
        vec![vec![c(0.0), c(1.0)], vec![c(1.0), c(1.0)]],
    )
    .unwrap();
    let cf = DislocClosedForm::new(&ramp, b, rt, 1 << 13, 1e-3).unwrap();
    assert!(
        cf.sites().is_empty(),
        "criterion 8 FAIL: predicted jump table should be empty, got {:?}",
        cf.sites().iter().map(|s| s.x).collect::<Vec<_>>()
    );

    // formal images the jump at 0.6 would produce if it revived on (0, b)
    let g_images: Vec<f64> = {
        let g = 0.6 / b;
        let mut out = Vec::new();
        for k in 0..(2 * rt.q) {
            for sign in [1.0, -1.0] {
                let w = wrap(sign * g - k as f64 / rt.q as f64, 2.0);
                if w > 0.0 && w < 1.0 {
                    out.push(b * w);
                }
            }
        }
        out
    };

    // numeric scan of the closed form for jump-like behaviour
    let grid: Vec<f64> = (1..400).map(|i| i as f64 / 400.0 * b).collect();
    let eps = b / 1600.0;
    let detections = revlab::diagnostics::scan_jumps(
        |x| cf.eval_unguarded(x),
        &grid,
        eps,
        0.05,
    );
    for (x, size) in &detections {
        let near_image = g_images.iter().any(|g| (x - g).abs() < 4.0 * eps);
        assert!(
            !near_image,
            "criterion 8 FAIL: detected jump of size {size:.3e} at x = {x:.4}, an image of the \
             (b, 1) jump"
        );
    }

    // second datum: boundary-incompatible values produce boundary-induced
    // sites, still nothing mapped from the interior of (b, 1)
    let step = PiecewiseFn::step(1.0, &[0.6], &[c(0.3), c(1.3)]).unwrap();
    let cf = DislocClosedForm::new(&step, b, rt, 1 << 13, 1e-3).unwrap();
    assert!(!cf.sites().is_empty());
    for s in cf.sites() {
        let near_image = g_images.iter().any(|g| (s.x - g).abs() < 1e-6);
        assert!(!near_image, "criterion 8 FAIL: site at image of the right-interval jump");
    }

    budget(8, start, 30.0);
    println!(
        "criterion 8 (PASS): no revival of the (b, 1) jump on (0, b); {} boundary-induced sites \
         for the incompatible datum",
        cf.sites().len()
    );
}

#[test]
fn criterion_09_continuity_diagnostics() {
    let _guard = exclusive();
    let start = Instant::now();
    let eps = 1e-3;
    let mut failures: Vec<String> = Vec::new();

    // --- Airy: the figure datum at p/q = 1/3, ladder 150/300/600
    let u0 = fig2_step();
    let rt = AiryRationalTime::new(1, 3).unwrap();
    let cf = AiryClosedForm::new(&u0, rt, 1 << 14, 1e-2).unwrap();
    let t = rt.t();
    let ladder = [150u32, 300, 600];
    let sols: Vec<AirySolution> = ladder
        .iter()
        .map(|&n| AirySolution::new(&u0, n).unwrap())
        .collect();
    let urs: Vec<AiryUrSeries> = ladder
        .iter()
        .map(|&n| AiryUrSeries::new(&u0, n).unwrap())
        .collect();
    for site in cf.sites() {
        let x0 = site.x;
        let jump_uc: Vec<f64> = sols
            .iter()
            .zip(&urs)
            .map(|(s, r)| {
                let uc = |x: f64| s.eval(x, t) - r.eval(x, t);
                (uc(x0 + eps) - uc(x0 - eps)).abs()
            })
            .collect();
        let jump_ur = (urs[2].eval(x0 + eps, t) - urs[2].eval(x0 - eps, t)).abs();
        let predicted = site.predicted_jump.abs();
        println!(
            "criterion 9 (airy) x0 = {x0:.4}: U_C ladder {jump_uc:?}, U_R estimate {jump_ur:.3e} \
             vs predicted {predicted:.3e}"
        );
        if !(jump_uc[0] > jump_uc[1] && jump_uc[1] > jump_uc[2]) {
            failures.push(format!("airy U_C not decreasing at {x0:.4}: {jump_uc:?}"));
        }
        if jump_ur < 0.5 * predicted {
            failures.push(format!(
                "airy U_R estimate {jump_ur:.3e} below half of predicted {predicted:.3e} at {x0:.4}"
            ));
        }
    }

    // --- dislocation: the figure datum, b = 0.35, p/q = 1/2, ladder 60/120/250
    let u0 = left_step();
    let b = 0.35;
    let drt = DislocRationalTime::new(1, 2, Side::Left).unwrap();
    let cf = DislocClosedForm::new(&u0, b, drt, 1 << 14, 1e-3).unwrap();
    let t = drt.t(b);
    let ladder = [60u32, 120, 250];
    let sols: Vec<DislocSolution> = ladder
        .iter()
        .map(|&n| DislocSolution::new(&u0, b, n).unwrap())
        .collect();
    let urs: Vec<DislocUrSeries> = ladder
        .iter()
        .map(|&n| DislocUrSeries::new(&u0, b, n).unwrap())
        .collect();
    for site in cf.sites() {
        let x0 = site.x;
        if x0 <= eps || x0 >= b - eps {
            continue; // boundary abscissae cannot be probed two-sided
        }
        let jump_uc: Vec<f64> = sols
            .iter()
            .zip(&urs)
            .map(|(s, r)| {
                let uc = |x: f64| s.eval(x, t) - r.eval(x, t);
                (uc(x0 + eps) - uc(x0 - eps)).norm()
            })
            .collect();
        let jump_ur = (urs[2].eval(x0 + eps, t) - urs[2].eval(x0 - eps, t)).norm();
        let predicted = site.predicted_jump;
        println!(
            "criterion 9 (dislocation) x0 = {x0:.4}: U_C ladder {jump_uc:?}, U_R estimate \
             {jump_ur:.3e} vs predicted {predicted:.3e}"
        );
        if !(jump_uc[0] > jump_uc[1] && jump_uc[1] > jump_uc[2]) {
            failures.push(format!("dislocation U_C not decreasing at {x0:.4}: {jump_uc:?}"));
        }
        if jump_ur < 0.5 * predicted {
            failures.push(format!(
                "dislocation U_R estimate {jump_ur:.3e} below half of predicted {predicted:.3e} at {x0:.4}"
            ));
        }
    }

    budget(9, start, 60.0);
    println!(
        "criterion 9 ({}): continuity diagnostics",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "criterion 9 FAIL: {failures:?}");
}

#[test]
fn criterion_10_figure_regeneration() {
    let _guard = exclusive();
    let start = Instant::now();
    let registry = ProblemRegistry::builtin();
    let config_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs");

    for (file, problem) in [("fig2.json", "airy"), ("fig3.json", "dislocation")] {
        let text = std::fs::read_to_string(format!("{config_dir}/{file}")).unwrap();
        let cfg = RunConfig::from_json(&text).unwrap();
        assert_eq!(cfg.problem, problem);
        let out = registry.get(&cfg.problem).unwrap().compare(&cfg).unwrap();

        let csv = out.table.to_csv();
        assert_eq!(csv.lines().count(), cfg.grid + 1, "{file}: csv row count");

        assert!(
            !out.summary.jump_table.is_empty(),
            "{file}: jump table must be non-empty"
        );
        for e in &out.summary.jump_table {
            assert!(
                e.estimated_jump.abs() >= 0.3 * e.predicted_jump.abs(),
                "{file}: estimated jump {:.3e} vs predicted {:.3e} at x = {:.4}",
                e.estimated_jump,
                e.predicted_jump,
                e.x
            );
        }
        let has_cusp = out
            .summary
            .cusp_growth_rates
            .iter()
            .flatten()
            .any(|r| r.abs() > 1e-2);
        assert!(has_cusp, "{file}: cusp table shows no logarithmic growth");
        println!(
            "criterion 10 [{file}]: {} rows, {} jump sites, cusp rates present",
            out.table.rows.len(),
            out.summary.jump_table.len()
        );
    }
    budget(10, start, 120.0);
    println!("criterion 10 (PASS): figure configurations regenerate with structural jump/cusp tables");
}
