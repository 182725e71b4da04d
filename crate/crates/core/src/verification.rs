//! Invariant suites run by `verify` and by the acceptance tests.
//!
//! Every suite is a list of named checks. A check records how many samples
//! were tested, how many failed and the worst observed value next to the
//! threshold it was held to. Thresholds are fixed here; they do not follow
//! runtime tolerance overrides.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::SingularityLabel;
use crate::classifier::{
    classify_focal_point_ads4_curve, scan_rho_ads4, scan_sigma_ads4, ScanPoint,
};
use crate::curve_frames::{
    frame_ads3, frame_ads4, frenet_residual, gram_residual_ads3, gram_residual_ads4, CurveSpace,
};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::height::{height, hessian_surface, morse_family_rank_normalized, versality_rank_ads4};
use crate::models::{
    brute_force_critical_set, eval_model_singular_set, hausdorff, ModelGerm, ModelSet,
};
use crate::parametric::{linspace, GeomObject, ParamCurve, ParamSurface};
use crate::presets::{preset_default, PRESETS};
use crate::semi_euclidean::{ads_residual, det_rows, singular_values, wedge, AmbientVector};
use crate::sheets::{
    compare_point_sets, fiber_shape_eigenvalue, null_normal, sheet_regularity, Fiber,
};
use crate::surface_geometry::{
    frame_gram_residual, normal_frame, normal_frame_with_reference, principal_curvatures,
    weingarten_residual, SurfaceFrame,
};
use crate::tolerance::ToleranceConfig;

/// One named check within a suite.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// Largest observed value (or smallest, for lower-bound checks).
    pub worst: f64,
    pub threshold: f64,
    /// True when the check requires values above the threshold.
    pub lower_bound: bool,
}

impl Check {
    fn upper(name: &str, threshold: f64) -> Self {
        Self {
            name: name.into(),
            samples: 0,
            failures: 0,
            worst: 0.0,
            threshold,
            lower_bound: false,
        }
    }

    fn lower(name: &str, threshold: f64) -> Self {
        Self {
            name: name.into(),
            samples: 0,
            failures: 0,
            worst: f64::INFINITY,
            threshold,
            lower_bound: true,
        }
    }

    /// Records `value` measured against `threshold · scale`.
    fn record(&mut self, value: f64, scale: f64) {
        self.samples += 1;
        let v = value / scale;
        if self.lower_bound {
            self.worst = self.worst.min(v);
            if !(v > self.threshold) {
                self.failures += 1;
            }
        } else {
            self.worst = self.worst.max(if v.is_nan() { f64::INFINITY } else { v });
            if !(v < self.threshold) {
                self.failures += 1;
            }
        }
    }

    fn fail(&mut self) {
        self.samples += 1;
        self.failures += 1;
        self.worst = if self.lower_bound {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }

    fn merge(&mut self, other: &Check) {
        self.samples += other.samples;
        self.failures += other.failures;
        self.worst = if self.lower_bound {
            self.worst.min(other.worst)
        } else {
            self.worst.max(other.worst)
        };
    }

    pub fn passed(&self) -> bool {
        self.samples > 0 && self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    pub fn samples(&self) -> usize {
        self.checks.iter().map(|c| c.samples).sum()
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    /// One-line summary `[PASS] n title: checks…`.
    pub fn summary_line(&self) -> String {
        let parts: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                format!(
                    "{} {} {:.2e} {} {:.0e} ({}/{})",
                    c.name,
                    if c.lower_bound { "min" } else { "max" },
                    c.worst,
                    if c.lower_bound { ">" } else { "<" },
                    c.threshold,
                    c.samples - c.failures,
                    c.samples
                )
            })
            .collect();
        format!(
            "[{}] {:>2} {}: {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            parts.join("; ")
        )
    }
}

pub const SUITE_TITLES: [&str; 10] = [
    "algebra",
    "frames",
    "null sheets",
    "focal sets",
    "fiber shape eigenvalue",
    "lightcone sphere collapse",
    "classification cross-validation",
    "model singular sets",
    "Morse family and versality ranks",
    "frame-choice independence",
];

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol: ToleranceConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 20240601,
            tol: ToleranceConfig::default(),
        }
    }
}

/// Runs suite `id` (1..=10).
pub fn run_suite(id: usize, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let title = *SUITE_TITLES
        .get(id.wrapping_sub(1))
        .ok_or_else(|| Error::InvalidInput(format!("suite id must be 1..=10, got {id}")))?;
    let mut notes = Vec::new();
    let checks = match id {
        1 => suite_algebra(cfg),
        2 => suite_frames(cfg),
        3 => suite_null_sheets(cfg),
        4 => suite_focal(cfg, &mut notes),
        5 => suite_fiber(cfg),
        6 => suite_lightcone(cfg, &mut notes),
        7 => suite_classification(cfg, &mut notes),
        8 => suite_models(&mut notes),
        9 => suite_ranks(cfg),
        _ => suite_frame_choice(cfg, &mut notes),
    }?;
    Ok(SuiteReport {
        id,
        title,
        checks,
        notes,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Runs every suite in parallel; reports come back in id order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<Result<SuiteReport>> {
    (1..=10)
        .into_par_iter()
        .map(|id| run_suite(id, cfg))
        .collect()
}

/// Merges per-sample checks by name, keeping first-seen order.
fn merge_all(parts: Vec<Vec<Check>>) -> Vec<Check> {
    let mut acc: Vec<Check> = Vec::new();
    for c in parts.into_iter().flatten() {
        match acc.iter_mut().find(|a| a.name == c.name) {
            Some(a) => a.merge(&c),
            None => acc.push(c),
        }
    }
    acc
}

fn curve_presets(space: Option<CurveSpace>) -> Vec<(&'static str, ParamCurve)> {
    PRESETS
        .iter()
        .filter_map(|p| match preset_default(p.name) {
            Ok(GeomObject::Curve(c))
                if space.is_none_or(|sp| CurveSpace::of(&c).ok() == Some(sp)) =>
            {
                Some((p.name, c))
            }
            _ => None,
        })
        .collect()
}

fn surface_presets() -> Vec<(&'static str, ParamSurface)> {
    PRESETS
        .iter()
        .filter_map(|p| match preset_default(p.name) {
            Ok(GeomObject::Surface(s)) => Some((p.name, s)),
            _ => None,
        })
        .collect()
}

/// n×n interior grid of a surface domain (avoids duplicated seam samples).
fn surface_grid(s: &ParamSurface, n: usize) -> Vec<[f64; 2]> {
    let axis = |(a, b): (f64, f64)| -> Vec<f64> {
        (0..n)
            .map(|i| a + (b - a) * (i as f64 + 0.5) / n as f64)
            .collect()
    };
    let (us, vs) = (axis(s.domain[0]), axis(s.domain[1]));
    us.iter()
        .flat_map(|&u| vs.iter().map(move |&v| [u, v]))
        .collect()
}

fn suite_algebra(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut orth = Check::upper("wedge orthogonality", 1e-9);
    let mut det = Check::upper("determinant identity", 1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for dim in [4usize, 5] {
        for _ in 0..1000 {
            let mut rand_vec = || {
                let c: Vec<f64> = (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect();
                AmbientVector::new(&c).expect("valid dimension")
            };
            let vs: Vec<AmbientVector> = (0..dim - 1).map(|_| rand_vec()).collect();
            let x = rand_vec();
            let w = wedge(&vs)?;
            let scale: f64 = vs.iter().map(|v| v.euclid_norm()).product::<f64>().max(1.0);
            for v in &vs {
                orth.record(v.dot(&w).abs(), scale * v.euclid_norm().max(1.0));
            }
            let mut rows = vec![x];
            rows.extend(vs.iter().copied());
            det.record(
                (x.dot(&w) - det_rows(&rows)?).abs(),
                scale * x.euclid_norm().max(1.0),
            );
        }
    }
    Ok(vec![orth, det])
}

fn suite_frames(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tol;
    let mut parts = Vec::new();
    for (_, c) in curve_presets(None) {
        let space = CurveSpace::of(&c)?;
        let part: Vec<Vec<Check>> = c
            .samples(1000)
            .par_iter()
            .map(|&s| {
                let mut gram = Check::upper("Gram residual", 1e-8);
                let mut frenet = Check::upper("Frenet/Weingarten residual", 1e-6);
                let g = match space {
                    CurveSpace::AdS3 => frame_ads3(&c, s, tol).map(|f| gram_residual_ads3(&f)),
                    CurveSpace::AdS4 => frame_ads4(&c, s, tol).map(|f| gram_residual_ads4(&f)),
                };
                match g {
                    Ok(v) => gram.record(v, 1.0),
                    Err(_) => gram.fail(),
                }
                match frenet_residual(&c, s, space, tol) {
                    Ok(v) => frenet.record(v, 1.0),
                    Err(_) => frenet.fail(),
                }
                vec![gram, frenet]
            })
            .collect();
        parts.push(merge_all(part));
    }
    for (_, s) in surface_presets() {
        let part: Vec<Vec<Check>> = surface_grid(&s, 32)
            .par_iter()
            .map(|&u| {
                let mut gram = Check::upper("Gram residual", 1e-8);
                let mut wein = Check::upper("Frenet/Weingarten residual", 1e-6);
                match normal_frame(&s, u, tol) {
                    Ok(f) => gram.record(frame_gram_residual(&f), 1.0),
                    Err(_) => gram.fail(),
                }
                for sign in [1, -1] {
                    match weingarten_residual(&s, u, sign, tol) {
                        Ok(v) => wein.record(v, 1.0),
                        Err(_) => wein.fail(),
                    }
                }
                vec![gram, wein]
            })
            .collect();
        parts.push(merge_all(part));
    }
    Ok(merge_all(parts))
}

/// Checks at one (base, fibre) sample over all μ values.
fn sheet_checks(
    obj: &GeomObject,
    base: &[f64],
    fiber: Fiber,
    mus: &[f64],
    tol: &ToleranceConfig,
) -> Vec<Check> {
    let mut null = Check::upper("<NG,NG>", 1e-8);
    let mut ads = Check::upper("ads residual", 1e-8);
    let mut h0 = Check::upper("H", 1e-8);
    let mut h1 = Check::upper("dH", 1e-8);
    let mut pull = Check::upper("pullback det/scale", 1e-8);
    let nn = match null_normal(obj, base, fiber, true, tol) {
        Ok(n) => n,
        Err(_) => {
            for c in [&mut null, &mut ads, &mut h0, &mut h1, &mut pull] {
                c.fail();
            }
            return vec![null, ads, h0, h1, pull];
        }
    };
    null.record(nn.ng.dot(&nn.ng).abs(), nn.ng.euclid_sq().max(1.0));
    for &mu in mus {
        let lam = nn.point.axpy(mu, &nn.ng);
        let scale = lam.euclid_sq().max(1.0);
        ads.record(ads_residual(&lam).abs(), scale);
        match height(obj, base, &lam, tol) {
            Ok(h) => h0.record(h.abs(), scale),
            Err(_) => h0.fail(),
        }
        for t in &nn.tangents {
            h1.record(t.dot(&lam).abs(), scale * t.euclid_norm().max(1.0));
        }
        let mut cols: Vec<AmbientVector> = nn
            .tangents
            .iter()
            .zip(&nn.ng_derivs)
            .map(|(x, d)| x.axpy(mu, d))
            .collect();
        if let Some(d) = nn.ng_fiber {
            cols.push(d.scale(mu));
        }
        cols.push(nn.ng);
        let reg = sheet_regularity(&cols);
        if reg.full_rank {
            pull.record(reg.pullback_det.abs(), reg.pullback_scale);
        }
    }
    vec![null, ads, h0, h1, pull]
}

fn suite_null_sheets(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tol;
    let mus = linspace(-2.0, 2.0, 21);
    let mut parts = Vec::new();
    for (_, c) in curve_presets(None) {
        let space = CurveSpace::of(&c)?;
        let obj = GeomObject::Curve(c.clone());
        let fibers: Vec<Fiber> = match space {
            CurveSpace::AdS4 => (0..64)
                .map(|i| Fiber::Theta(TAU * i as f64 / 64.0))
                .collect(),
            CurveSpace::AdS3 => vec![Fiber::Sign(1), Fiber::Sign(-1)],
        };
        let cells: Vec<(f64, Fiber)> = c
            .samples(200)
            .into_iter()
            .flat_map(|s| fibers.iter().map(move |f| (s, *f)))
            .collect();
        let part: Vec<Vec<Check>> = cells
            .par_iter()
            .map(|(s, f)| sheet_checks(&obj, &[*s], *f, &mus, tol))
            .collect();
        parts.push(merge_all(part));
    }
    for (_, s) in surface_presets() {
        let obj = GeomObject::Surface(s.clone());
        let cells: Vec<([f64; 2], Fiber)> = surface_grid(&s, 20)
            .into_iter()
            .flat_map(|u| [Fiber::Sign(1), Fiber::Sign(-1)].map(|f| (u, f)))
            .collect();
        let part: Vec<Vec<Check>> = cells
            .par_iter()
            .map(|(u, f)| sheet_checks(&obj, u, *f, &mus, tol))
            .collect();
        parts.push(merge_all(part));
    }
    Ok(merge_all(parts))
}

fn suite_focal(cfg: &VerifyConfig, notes: &mut Vec<String>) -> Result<Vec<Check>> {
    let tol = &cfg.tol;
    let mut parts = Vec::new();
    let mut skipped = 0usize;
    for (_, c) in curve_presets(None) {
        let space = CurveSpace::of(&c)?;
        let obj = GeomObject::Curve(c.clone());
        let fibers: Vec<Fiber> = match space {
            CurveSpace::AdS4 => (0..16)
                .map(|i| Fiber::Theta(TAU * (i as f64 + 0.25) / 16.0))
                .collect(),
            CurveSpace::AdS3 => vec![Fiber::Sign(1), Fiber::Sign(-1)],
        };
        for s in c.samples(100) {
            for &f in &fibers {
                let mut at = Check::upper("|h''| at focal", 1e-8);
                let mut off = Check::lower("|h''| at 0.9/1.1 mu*", 1e-3);
                let Ok(nn) = null_normal(&obj, &[s], f, false, tol) else {
                    at.fail();
                    parts.push(vec![at, off]);
                    continue;
                };
                let gpp = c.eval_derivative(s, 2)?;
                for r in &nn.focal {
                    for k in [1.0, 0.9, 1.1] {
                        let lam = nn.point.axpy(k * r.mu_star, &nn.ng);
                        let check = if k == 1.0 { &mut at } else { &mut off };
                        check.record(gpp.dot(&lam).abs(), 1.0);
                    }
                }
                if nn.focal.is_empty() {
                    skipped += 1;
                }
                parts.push(vec![at, off]);
            }
        }
    }
    for (_, s) in surface_presets() {
        let obj = GeomObject::Surface(s.clone());
        for u in surface_grid(&s, 20) {
            for sign in [1i8, -1] {
                let mut at = Check::upper("|det Hess| at focal", 1e-8);
                let mut off = Check::lower("|det Hess| at 0.9/1.1 mu*", 1e-3);
                let (Ok(nn), Ok(pd)) = (
                    null_normal(&obj, &u, Fiber::Sign(sign), false, tol),
                    principal_curvatures(&s, u, sign, tol),
                ) else {
                    at.fail();
                    parts.push(vec![at, off]);
                    continue;
                };
                let det_g = pd.g[0][0] * pd.g[1][1] - pd.g[0][1] * pd.g[1][0];
                for r in &nn.focal {
                    let other = pd.kappas[1 - r.branch_index] * r.mu_star;
                    for k in [1.0, 0.9, 1.1] {
                        let lam = nn.point.axpy(k * r.mu_star, &nn.ng);
                        let hr = hessian_surface(&s, u, &lam, tol)?;
                        let d = hr.hessian[0][0] * hr.hessian[1][1]
                            - hr.hessian[0][1] * hr.hessian[1][0];
                        if k == 1.0 {
                            at.record(d.abs(), det_g);
                        } else if (k * other - 1.0).abs() > 0.05 {
                            // Non-degenerate: the other principal factor stays away from zero.
                            off.record(d.abs(), det_g);
                        }
                    }
                }
                parts.push(vec![at, off]);
            }
        }
    }
    if skipped > 0 {
        notes.push(format!(
            "{skipped} curve samples have no focal point (cos θ = 0 or zero curvature)"
        ));
    }
    Ok(merge_all(parts))
}

fn suite_fiber(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let obj = preset_default("ads4-helix")?;
    let c = obj.as_curve()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 5);
    let samples: Vec<(f64, f64)> = (0..1000)
        .map(|_| {
            (
                rng.random_range(c.domain.0..c.domain.1),
                rng.random_range(0.0..TAU),
            )
        })
        .collect();
    let mut fib = Check::upper("|fiber eigenvalue + 1|", 1e-9);
    let mut tang = Check::upper("|tangential - principal curvature|", 1e-9);
    for (s, th) in samples {
        match fiber_shape_eigenvalue(&obj, s, th, &cfg.tol) {
            Ok(fs) => {
                fib.record((fs.fiber + 1.0).abs(), 1.0);
                let nn = null_normal(&obj, &[s], Fiber::Theta(th), false, &cfg.tol)?;
                let kappa_n = c.eval_derivative(s, 2)?.dot(&nn.ng);
                tang.record((fs.tangential - kappa_n).abs(), 1.0 + kappa_n.abs());
            }
            Err(_) => {
                fib.fail();
                tang.fail();
            }
        }
    }
    Ok(vec![fib, tang])
}

fn suite_lightcone(cfg: &VerifyConfig, notes: &mut Vec<String>) -> Result<Vec<Check>> {
    let obj = preset_default("ads4-lightcone-sphere")?;
    let s = obj.as_surface()?;
    let lambda0 = AmbientVector::new(&[1.0, 0.0, 0.0, 0.0, 0.0])?;
    let other = AmbientVector::new(&[0.0, 1.0, 0.0, 0.0, 0.0])?;
    let mut collapse = Check::upper("|focal - lambda0|", 1e-7);
    let mut umb = Check::upper("non-umbilic points", 0.5);
    let mut second = Check::upper("|focal - (0,1,0,0,0)| (nT+nS branch)", 1e-7);
    for u in surface_grid(s, 20) {
        let mut ok = true;
        for sign in [1i8, -1] {
            let pd = principal_curvatures(s, u, sign, &cfg.tol)?;
            ok &= pd.umbilic;
            let nn = null_normal(&obj, &u, Fiber::Sign(sign), false, &cfg.tol)?;
            let (target, check) = if sign < 0 {
                (&lambda0, &mut collapse)
            } else {
                (&other, &mut second)
            };
            for r in &nn.focal {
                let p = nn.point.axpy(r.mu_star, &nn.ng);
                check.record((p - *target).euclid_norm(), 1.0);
            }
        }
        umb.record(if ok { 0.0 } else { 1.0 }, 1.0);
    }
    notes.push(format!(
        "umbilic at {}/{} grid points",
        umb.samples - umb.failures,
        umb.samples
    ));
    Ok(vec![collapse, umb, second])
}

/// Scan-located points for one preset: ρ = 0 points, ρ = σ = 0 points and
/// seeded random points off the ρ locus.
pub fn classification_points(
    curve: &ParamCurve,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<Vec<ScanPoint>> {
    let ss = curve.samples(400);
    let mut pts = scan_rho_ads4(curve, &ss, tol)?.points;
    pts.extend(scan_sigma_ads4(curve, &ss, tol)?.points);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut extra = 0;
    while extra < 100 {
        let s = rng.random_range(curve.domain.0..curve.domain.1);
        let th = rng.random_range(0.0..TAU);
        match classify_focal_point_ads4_curve(curve, s, th, tol) {
            Ok(report) => {
                pts.push(ScanPoint {
                    s,
                    fiber: Fiber::Theta(th),
                    invariant: "random",
                    report,
                });
                extra += 1;
            }
            Err(Error::NoFocalPoint(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(pts)
}

fn suite_classification(cfg: &VerifyConfig, notes: &mut Vec<String>) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (case, name) in [
        ("Case 1", "ads4-case1-curve"),
        ("Case 2", "ads4-generic-curve"),
        ("Case 3", "ads4-case3-curve"),
    ] {
        let obj = preset_default(name)?;
        let c = obj.as_curve()?;
        let f = frame_ads4(c, 0.5 * (c.domain.0 + c.domain.1), &cfg.tol)?;
        let pts = classification_points(c, cfg.seed, &cfg.tol)?;
        let mut agree = Check::upper(&format!("{case} label/A_k mismatches"), 0.5);
        let mut count = std::collections::BTreeMap::new();
        for p in &pts {
            agree.record(if p.report.consistent() { 0.0 } else { 1.0 }, 1.0);
            *count.entry(p.report.label.name()).or_insert(0usize) += 1;
        }
        let mut enough = Check::lower(&format!("{case} ρ-located points"), 99.5);
        enough.record(
            pts.iter().filter(|p| p.invariant != "random").count() as f64,
            1.0,
        );
        notes.push(format!(
            "{case} ({name}, {:?} frame): {count:?}",
            f.case_tag
        ));
        checks.push(agree);
        checks.push(enough);
    }
    Ok(checks)
}

fn model_fn_sigma_pu(p: &[f64]) -> Vec<f64> {
    // D4⁺ normal form on the cone u₃² = 36u₁u₂ in the chart (u₃, t).
    let (u3, t) = (p[0], p[1]);
    let u = [u3 * t / 6.0, u3 / (6.0 * t), u3];
    (ModelGerm::normal_form(SingularityLabel::D4Plus)
        .expect("D4+ form")
        .map)(&u)
}

fn suite_models(notes: &mut Vec<String>) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let a3 = ModelGerm::normal_form(SingularityLabel::A3Swallowtail)?;
    // A3: critical set u₂ = −6u₁² on slices u₃ = const; its image is C(2,3,4)×ℝ.
    let mut par = Check::upper("A3 critical set vs u2=-6u1^2 (Hausdorff)", 1e-3);
    let mut img = Check::upper("A3 critical values vs C(2,3,4) (Hausdorff)", 1e-3);
    for u3 in [0.0, 0.37] {
        let g = GridSpec::parse(&format!("u1=-0.3:0.3:601,u2=-0.5:0.1:601,u3={u3}:{u3}:2"))?;
        let pts = brute_force_critical_set(&a3, &g)?;
        let umax = (0.5f64 / 6.0).sqrt();
        let exact: Vec<Vec<f64>> = linspace(-umax, umax, 20001)
            .into_iter()
            .map(|u| vec![u, -6.0 * u * u])
            .collect();
        let found: Vec<Vec<f64>> = pts.iter().map(|p| vec![p[0], p[1]]).collect();
        par.record(hausdorff(&found, &exact), 1.0);
        // (x, y, z) ↦ (−z/6, −x/8, −y/3) sends the critical values onto (u², u³, u⁴).
        let values: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| {
                let v = a3.eval(p).expect("arity 3");
                vec![-v[2] / 6.0, -v[0] / 8.0, -v[1] / 3.0]
            })
            .collect();
        let c234: Vec<Vec<f64>> = linspace(-umax, umax, 20001)
            .into_iter()
            .map(|u| eval_model_singular_set(ModelSet::C234, &[u]).expect("arity 1"))
            .collect();
        img.record(hausdorff(&values, &c234), 1.0);
    }
    checks.push(par);
    checks.push(img);

    // D4⁺: rank drops exactly on the cone u₃² = 36u₁u₂.
    let d4 = ModelGerm::normal_form(SingularityLabel::D4Plus)?;
    let mut cone = Check::upper("D4+ rank-drop residual |u3^2-36u1u2|", 1e-6);
    let mut hyper = Check::upper("D4+ critical slices vs u1u2=u3^2/36 (Hausdorff)", 1e-3);
    for p in brute_force_critical_set(
        &d4,
        &GridSpec::parse("u1=-0.5:0.5:41,u2=-0.5:0.5:41,u3=-0.5:0.5:41")?,
    )? {
        cone.record(
            (p[2] * p[2] - 36.0 * p[0] * p[1]).abs(),
            1.0 + p.iter().map(|x| x * x).sum::<f64>(),
        );
    }
    for u3 in [0.3, -0.2] {
        let g = GridSpec::parse(&format!("u1=-0.5:0.5:1001,u2=-0.5:0.5:1001,u3={u3}:{u3}:2"))?;
        let found: Vec<Vec<f64>> = brute_force_critical_set(&d4, &g)?
            .iter()
            .map(|p| vec![p[0], p[1]])
            .collect();
        // Both hyperbola branches u₂ = u₃²/(36u₁) inside the window.
        let c = u3 * u3 / 36.0;
        let exact: Vec<Vec<f64>> = linspace(c / 0.5, 0.5, 200001)
            .into_iter()
            .flat_map(|x| [vec![x, c / x], vec![-x, -c / x]])
            .collect();
        hyper.record(hausdorff(&found, &exact), 1.0);
    }
    checks.push(cone);
    checks.push(hyper);

    // Σ(PU): singular curve of the D4⁺ critical value set.
    let lifted = ModelGerm {
        name: "D4+ on cone",
        arity: 2,
        out_dim: 4,
        map: model_fn_sigma_pu,
    };
    let mut spu = Check::upper("Sigma(PU) vs brute force (Hausdorff)", 1e-3);
    let mut found = Vec::new();
    for t in ["0.5:2:1501", "-2:-0.5:1501"] {
        let g = GridSpec::parse(&format!("u1=-0.5:0.5:1001,u2={t}"))?;
        for p in brute_force_critical_set(&lifted, &g)? {
            // Every u₃ = 0 sample is the cone apex, which maps onto the origin of Σ(PU).
            found.push((lifted.map)(&p));
        }
    }
    let exact: Vec<Vec<f64>> = linspace(-0.5, 0.5, 20001)
        .into_iter()
        .map(|u| eval_model_singular_set(ModelSet::SigmaPU, &[u]).expect("arity 1"))
        .collect();
    spu.record(hausdorff(&found, &exact), 1.0);
    notes.push(format!("Σ(PU): {} brute-force points", found.len()));
    checks.push(spu);
    Ok(checks)
}

fn suite_ranks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tol;
    let mut morse = Check::upper("Morse family rank deficit", 0.5);
    let mut objects: Vec<GeomObject> = curve_presets(None)
        .into_iter()
        .map(|(_, c)| GeomObject::Curve(c))
        .collect();
    objects.extend(
        surface_presets()
            .into_iter()
            .map(|(_, s)| GeomObject::Surface(s)),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 9);
    for obj in &objects {
        let (doms, fibers): (Vec<(f64, f64)>, Vec<Fiber>) = match obj {
            GeomObject::Curve(c) if c.dim == 5 => (vec![c.domain], vec![]),
            GeomObject::Curve(c) => (vec![c.domain], vec![Fiber::Sign(1), Fiber::Sign(-1)]),
            GeomObject::Surface(s) => (s.domain.to_vec(), vec![Fiber::Sign(1), Fiber::Sign(-1)]),
        };
        for _ in 0..200 {
            let base: Vec<f64> = doms.iter().map(|d| rng.random_range(d.0..d.1)).collect();
            let fiber = if fibers.is_empty() {
                Fiber::Theta(rng.random_range(0.0..TAU))
            } else {
                fibers[rng.random_range(0..2)]
            };
            let mu = rng.random_range(-2.0..2.0);
            let nn = null_normal(obj, &base, fiber, false, tol)?;
            let lam = nn.point.axpy(mu, &nn.ng);
            match morse_family_rank_normalized(obj, &base, &lam, tol) {
                Ok(r) => morse.record((base.len() + 1 - r.rank.min(base.len() + 1)) as f64, 1.0),
                Err(_) => morse.fail(),
            }
        }
    }
    let helix = preset_default("ads4-helix")?;
    let c = helix.as_curve()?;
    let mut vers = Check::upper("versality rank deficit", 0.5);
    let mut sv4 = Check::lower("versality sigma4/sigma1", 1e-8);
    for s in linspace(c.domain.0, c.domain.1, 100) {
        let r = versality_rank_ads4(c, s)?;
        vers.record((4 - r.rank.min(4)) as f64, 1.0);
        sv4.record(r.singular_values[3] / r.singular_values[0], 1.0);
    }
    Ok(vec![morse, vers, sv4])
}

/// Sheet positions X + μ̂·NG/‖NG‖ on a matched grid.
fn matched_sheet(frames: &[(SurfaceFrame, i8)], mus: &[f64], flip: &[f64]) -> Vec<AmbientVector> {
    frames
        .iter()
        .zip(flip)
        .flat_map(|((f, sign), &k)| {
            let ng = f.null_normal(*sign);
            let d = ng.scale(k / ng.euclid_norm());
            mus.iter().map(move |&m| f.x.axpy(m, &d))
        })
        .collect()
}

fn suite_frame_choice(cfg: &VerifyConfig, notes: &mut Vec<String>) -> Result<Vec<Check>> {
    let tol = &cfg.tol;
    let obj = preset_default("ads4-graph-surface")?;
    let s = obj.as_surface()?;
    let r2 = AmbientVector::new(&[0.3, 1.0, 0.2, 0.1, 0.4])?;
    let grid = surface_grid(s, 40);
    let mus = linspace(-2.0, 2.0, 41);
    let mut dist = Check::upper("sheet distance / scale", 1e-6);
    let mut par = Check::upper("rank-1 span residual", 1e-9);
    for sign in [1i8, -1] {
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut c = Vec::new();
        for &u in &grid {
            let f1 = normal_frame(s, u, tol)?;
            let f2 = normal_frame_with_reference(s, u, &r2, tol)?;
            // A boosted section nᵀ' = cosh φ nᵀ + sinh φ nˢ with φ varying over U.
            let phi = 0.4 * (3.0 * u[0]).sin() + 0.2 * u[1];
            let mut f3 = f1;
            f3.n_t = f1.n_t.scale(phi.cosh()).axpy(phi.sinh(), &f1.n_s);
            f3.n_s = f1.n_t.scale(phi.sinh()).axpy(phi.cosh(), &f1.n_s);
            let n1 = f1.null_normal(sign);
            for other in [f2.null_normal(sign), f3.null_normal(sign)] {
                let sv = singular_values(&[n1.to_vec(), other.to_vec()]);
                par.record(sv[1] / sv[0], 1.0);
            }
            a.push((f1, sign));
            b.push((f2, sign));
            c.push((f3, sign));
        }
        let ones = vec![1.0; grid.len()];
        let sa = matched_sheet(&a, &mus, &ones);
        let scale = sa.iter().map(|p| p.euclid_norm()).fold(1.0, f64::max);
        for other in [&b, &c] {
            // Orientation of the second section relative to the first.
            let flip: Vec<f64> = a
                .iter()
                .zip(other.iter())
                .map(|((f, sg), (g, sh))| {
                    f.null_normal(*sg)
                        .dot(&g.null_normal(*sh))
                        .signum()
                        .max(0.0)
                        * 2.0
                        - 1.0
                })
                .map(|k| if k == 0.0 { 1.0 } else { k })
                .collect();
            let flip: Vec<f64> = a
                .iter()
                .zip(other.iter())
                .zip(&flip)
                .map(|(((f, sg), (g, sh)), _)| {
                    let (p, q) = (f.null_normal(*sg), g.null_normal(*sh));
                    let e: f64 = p.coords().iter().zip(q.coords()).map(|(x, y)| x * y).sum();
                    e.signum()
                })
                .collect();
            let sb = matched_sheet(other, &mus, &flip);
            dist.record(compare_point_sets(&sa, &sb), scale);
        }
    }
    notes.push(format!(
        "{} surface samples × {} μ̂ values per sheet",
        grid.len(),
        mus.len()
    ));
    Ok(vec![dist, par])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_suite_passes() {
        let r = run_suite(1, &VerifyConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.summary_line());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite(11, &VerifyConfig::default()).is_err());
    }
}
