//! Singularity labels for evolutes, focal sets and lightlike hypersurfaces.
//!
//! Curves use the ρ/σ/σ′ decision ladder and are cross-checked against the
//! A_k order of the height function at the focal point. Surfaces use the
//! corank of the height Hessian, a splitting-lemma reduction for corank one
//! and the binary-cubic discriminant for corank two.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve_frames::{
    frame_ads3, frame_ads4, invariants_from_jets, CaseTag, CurvatureJets3, CurvatureJets4,
    CurveSpace,
};
use crate::error::{Error, Result};
use crate::grid::scan_roots;
use crate::height::{
    detect_ak, detect_ak_curve, hessian_surface, rotate_bivariate, splitting_reduction,
    surface_height_taylor, taylor_to_derivatives, Bivariate,
};
use crate::parametric::{GeomObject, ParamCurve, ParamSurface};
use crate::sheets::{focal_eval, Fiber};
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SingularityLabel {
    #[serde(rename = "A1_Regular")]
    A1Regular,
    #[serde(rename = "A2_CuspidalEdge")]
    A2CuspidalEdge,
    #[serde(rename = "A3_Swallowtail")]
    A3Swallowtail,
    #[serde(rename = "A4_Butterfly")]
    A4Butterfly,
    #[serde(rename = "D4_Plus")]
    D4Plus,
    #[serde(rename = "D4_Minus")]
    D4Minus,
    Degenerate,
}

impl SingularityLabel {
    pub const ALL: [SingularityLabel; 7] = [
        Self::A1Regular,
        Self::A2CuspidalEdge,
        Self::A3Swallowtail,
        Self::A4Butterfly,
        Self::D4Plus,
        Self::D4Minus,
        Self::Degenerate,
    ];

    /// A_k index of the label, if it is of A type.
    pub fn ak_order(self) -> Option<i32> {
        match self {
            Self::A1Regular => Some(1),
            Self::A2CuspidalEdge => Some(2),
            Self::A3Swallowtail => Some(3),
            Self::A4Butterfly => Some(4),
            _ => None,
        }
    }

    pub fn from_ak(k: i32) -> Self {
        match k {
            1 => Self::A1Regular,
            2 => Self::A2CuspidalEdge,
            3 => Self::A3Swallowtail,
            4 => Self::A4Butterfly,
            _ => Self::Degenerate,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::A1Regular => "A1_Regular",
            Self::A2CuspidalEdge => "A2_CuspidalEdge",
            Self::A3Swallowtail => "A3_Swallowtail",
            Self::A4Butterfly => "A4_Butterfly",
            Self::D4Plus => "D4_Plus",
            Self::D4Minus => "D4_Minus",
            Self::Degenerate => "Degenerate",
        }
    }

    /// Parses the serialized name or a short alias (A1, A2, …, D4+, D4-).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        Self::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(t))
            .or(match t.to_ascii_uppercase().as_str() {
                "A1" => Some(Self::A1Regular),
                "A2" => Some(Self::A2CuspidalEdge),
                "A3" => Some(Self::A3Swallowtail),
                "A4" => Some(Self::A4Butterfly),
                "D4+" | "D4P" | "D4PLUS" => Some(Self::D4Plus),
                "D4-" | "D4M" | "D4MINUS" => Some(Self::D4Minus),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidInput(format!("unknown singularity label '{s}'")))
    }
}

impl std::fmt::Display for SingularityLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Label with the criteria values it was decided from.
///
/// `rho`, `sigma` and `sigma_prime` are the normalized magnitudes used in the
/// decision (raw signed values are kept in `raw`). For surfaces they hold the
/// reduced third, fourth and fifth Taylor coefficients along the kernel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriteriaReport {
    pub label: SingularityLabel,
    pub rho: Option<f64>,
    pub sigma: Option<f64>,
    pub sigma_prime: Option<f64>,
    pub raw: Vec<f64>,
    pub corank: Option<usize>,
    /// A_k order from the height-jet detector (−1 when undetermined).
    pub ak_order: Option<i32>,
    pub mu_star: Option<f64>,
    pub advisory_notes: Vec<String>,
}

impl CriteriaReport {
    fn new(label: SingularityLabel) -> Self {
        Self {
            label,
            rho: None,
            sigma: None,
            sigma_prime: None,
            raw: Vec::new(),
            corank: None,
            ak_order: None,
            mu_star: None,
            advisory_notes: Vec::new(),
        }
    }

    /// Whether the ladder label agrees with the height-jet order.
    pub fn consistent(&self) -> bool {
        match (self.label.ak_order(), self.ak_order) {
            (Some(a), Some(b)) => a == b,
            (None, Some(b)) => self.label == SingularityLabel::Degenerate && b == -1,
            _ => true,
        }
    }
}

/// Ladder on normalized values: first non-vanishing entry decides A2/A3/A4.
fn ladder(values: [f64; 3], tol: f64) -> SingularityLabel {
    match values.iter().position(|v| *v >= tol) {
        Some(0) => SingularityLabel::A2CuspidalEdge,
        Some(1) => SingularityLabel::A3Swallowtail,
        Some(2) => SingularityLabel::A4Butterfly,
        _ => SingularityLabel::Degenerate,
    }
}

fn check_sign(e: i8) -> Result<()> {
    if e == 1 || e == -1 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("branch must be ±1, got {e}")))
    }
}

/// Evolute label from AdS³ curvature jets: A2 iff σ^β ≠ 0, A3 iff σ^β = 0
/// and (σ^β)′ ≠ 0, where β = branch·δ selects σ for the nᵀ + branch·nˢ sheet.
pub fn classify_evolute_jets_ads3(
    jets: &CurvatureJets3,
    branch: i8,
    cfg: &ToleranceConfig,
) -> Result<CriteriaReport> {
    check_sign(branch)?;
    let beta = branch * jets.delta;
    let [sg, sgp, _] = jets.sigma().branch(beta);
    let ns = sg.abs() / jets.sigma_scale();
    let nsp = sgp.abs() / jets.sigma_prime_scale();
    let mut r = CriteriaReport::new(ladder([ns, nsp, 0.0], cfg.zero_detect_tol));
    r.sigma = Some(ns);
    r.sigma_prime = Some(nsp);
    r.raw = vec![sg, sgp];
    if r.label == SingularityLabel::Degenerate {
        r.advisory_notes
            .push("σ and σ′ both vanish: the evolute is not an isolated swallowtail here".into());
    }
    Ok(r)
}

/// Evolute label for an AdS³ curve, cross-checked by the height jet at the
/// evolute point.
pub fn classify_evolute_point_ads3(
    curve: &ParamCurve,
    s: f64,
    branch: i8,
    cfg: &ToleranceConfig,
) -> Result<CriteriaReport> {
    check_sign(branch)?;
    if CurveSpace::of(curve)? != CurveSpace::AdS3 {
        return Err(Error::Dimension {
            expected: 4,
            found: curve.dim,
        });
    }
    let f = frame_ads3(curve, s, cfg)?;
    let mut r = classify_evolute_jets_ads3(&f.curvature_jets(), branch, cfg)?;
    let obj = GeomObject::Curve(curve.clone());
    let fp = focal_eval(&obj, &[s], Fiber::Sign(branch), 0, cfg)?;
    r.mu_star = Some(fp.mu_star);
    let ak = detect_ak_curve(curve, s, &fp.position, cfg)?;
    r.ak_order = Some(ak.k);
    add_mismatch_note(&mut r);
    Ok(r)
}

fn add_mismatch_note(r: &mut CriteriaReport) {
    if !r.consistent() {
        r.advisory_notes.push(format!(
            "height-jet order A{} differs from the invariant ladder label {}",
            r.ak_order.unwrap_or(-1),
            r.label
        ));
    }
}

/// Focal-set label for an AdS⁴ curve at (s, θ): A2 iff ρ ≠ 0, A3 iff ρ = 0
/// and σ ≠ 0, A4 iff ρ = σ = 0 and σ′ ≠ 0.
pub fn classify_focal_point_ads4_curve(
    curve: &ParamCurve,
    s: f64,
    theta: f64,
    cfg: &ToleranceConfig,
) -> Result<CriteriaReport> {
    if CurveSpace::of(curve)? != CurveSpace::AdS4 {
        return Err(Error::Dimension {
            expected: 5,
            found: curve.dim,
        });
    }
    let obj = GeomObject::Curve(curve.clone());
    let fp = focal_eval(&obj, &[s], Fiber::Theta(theta), 0, cfg)?;
    let f = frame_ads4(curve, s, cfg)?;
    let j = f.curvature_jets();
    let rho_n = j.rho_raw(theta)?.abs() / j.rho_scale();
    let tol = cfg.zero_detect_tol;
    let mut r = CriteriaReport::new(SingularityLabel::A2CuspidalEdge);
    r.rho = Some(rho_n);
    r.raw = vec![j.rho(theta)?];
    if rho_n < tol {
        match invariants_from_jets(&j, s, theta, cfg) {
            Ok(inv) => {
                let ns = inv.sigma.abs() / inv.sigma_pair.scale;
                let nsp = inv.sigma_prime.abs() / inv.sigma_pair.prime_scale;
                r.label = ladder([0.0, ns, nsp], tol);
                r.sigma = Some(ns);
                r.sigma_prime = Some(nsp);
                r.raw.extend([inv.sigma, inv.sigma_prime]);
            }
            Err(Error::SigmaUndefined { argument }) => {
                r.label = SingularityLabel::Degenerate;
                r.advisory_notes.push(format!(
                    "σ undefined (negative radicand {argument:e}); label not decided by the ladder"
                ));
            }
            Err(e) => return Err(e),
        }
    }
    r.mu_star = Some(fp.mu_star);
    r.ak_order = Some(detect_ak_curve(curve, s, &fp.position, cfg)?.k);
    add_mismatch_note(&mut r);
    Ok(r)
}

/// Label of a binary cubic a x³ + b x²y + c xy² + d y³ by the sign of its
/// discriminant: negative → one real linear factor (D4⁺), positive → three
/// (D4⁻), vanishing relative to the coefficient size → Degenerate.
pub fn cubic_d4_label(coeffs: [f64; 4], tol: f64) -> (SingularityLabel, f64) {
    let [a, b, c, d] = coeffs;
    let disc = b * b * c * c - 4.0 * a * c.powi(3) - 4.0 * b.powi(3) * d - 27.0 * a * a * d * d
        + 18.0 * a * b * c * d;
    let size = coeffs.iter().map(|v| v.abs()).sum::<f64>();
    let label = if size <= tol || disc.abs() <= tol * size.powi(4) {
        SingularityLabel::Degenerate
    } else if disc < 0.0 {
        SingularityLabel::D4Plus
    } else {
        SingularityLabel::D4Minus
    };
    (label, disc)
}

/// Label of a height-function germ given by its bivariate Taylor
/// coefficients at a critical zero, with the Hessian corank supplied.
pub fn classify_bivariate_germ(
    c: &Bivariate,
    corank: usize,
    kernel: [f64; 2],
    tol: f64,
) -> CriteriaReport {
    match corank {
        0 => {
            let mut r = CriteriaReport::new(SingularityLabel::A1Regular);
            r.corank = Some(0);
            r.ak_order = Some(1);
            r
        }
        1 => {
            let w = [-kernel[1], kernel[0]];
            let rc = rotate_bivariate(c, kernel, w);
            let g = splitting_reduction(&rc);
            let mut d = taylor_to_derivatives(&g);
            d[0] = 0.0;
            let ak = detect_ak(&d, tol);
            let n = &ak.normalized;
            let mut r = CriteriaReport::new(ladder([n[3], n[4], n[5]], tol));
            r.corank = Some(1);
            r.rho = Some(n[3]);
            r.sigma = Some(n[4]);
            r.sigma_prime = Some(n[5]);
            r.raw = g[3..].to_vec();
            r.ak_order = Some(ak.k);
            r
        }
        _ => {
            let (label, disc) = cubic_d4_label([c[3][0], c[2][1], c[1][2], c[0][3]], tol);
            let mut r = CriteriaReport::new(label);
            r.corank = Some(2);
            r.raw = vec![c[3][0], c[2][1], c[1][2], c[0][3], disc];
            r
        }
    }
}

/// Label of the lightlike hypersurface germ at the focal point of principal
/// branch `branch` (0 or 1, ascending curvatures) of the nᵀ + sign·nˢ sheet.
pub fn classify_surface_focal_point(
    surface: &ParamSurface,
    u: [f64; 2],
    sign: i8,
    branch: usize,
    cfg: &ToleranceConfig,
) -> Result<CriteriaReport> {
    if branch > 1 {
        return Err(Error::InvalidInput(format!(
            "principal branch must be 0 or 1, got {branch}"
        )));
    }
    let obj = GeomObject::Surface(surface.clone());
    let fp = focal_eval(&obj, &u, Fiber::Sign(sign), branch, cfg)?;
    let hr = hessian_surface(surface, u, &fp.position, cfg)?;
    let corank = hr.corank.max(1);
    let i = if hr.eigenvalues[0].abs() <= hr.eigenvalues[1].abs() {
        0
    } else {
        1
    };
    let c = surface_height_taylor(surface, u, &fp.position)?;
    let mut r = classify_bivariate_germ(&c, corank, hr.eigenvectors[i], cfg.zero_detect_tol);
    r.mu_star = Some(fp.mu_star);
    if corank == 2 {
        if r.label == SingularityLabel::Degenerate {
            r.advisory_notes.push(
                "umbilic focal point with vanishing cubic part: the D4 dichotomy needs the neighbourhood scan".into(),
            );
        } else {
            r.advisory_notes.push(
                "umbilic focal point: the D4 label assumes the generic neighbourhood conditions"
                    .into(),
            );
        }
    } else if r.label == SingularityLabel::A4Butterfly {
        r.advisory_notes.push(
            "2-ridge point: the neighbouring 1-ridge structure is not decided pointwise".into(),
        );
    }
    Ok(r)
}

/// Ridge order k (0 = not a ridge) of a corank-one focal point: the height
/// function has an A_{k+2} singularity. Returns 3 when all reduced
/// coefficients through the fifth vanish.
pub fn ridge_order(
    surface: &ParamSurface,
    u: [f64; 2],
    sign: i8,
    branch: usize,
    cfg: &ToleranceConfig,
) -> Result<usize> {
    let r = classify_surface_focal_point(surface, u, sign, branch, cfg)?;
    if r.corank != Some(1) {
        return Err(Error::Corank {
            expected: 1,
            found: r.corank.unwrap_or(0),
        });
    }
    Ok(match r.label {
        SingularityLabel::A2CuspidalEdge => 0,
        SingularityLabel::A3Swallowtail => 1,
        SingularityLabel::A4Butterfly => 2,
        _ => 3,
    })
}

/// A scan-located point with its classification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub s: f64,
    pub fiber: Fiber,
    /// Invariant whose zero located the point ("rho" or "sigma").
    pub invariant: &'static str,
    pub report: CriteriaReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct ScanOutcome {
    pub points: Vec<ScanPoint>,
    /// Set when the scanned invariant vanishes on every sample.
    pub degenerate: bool,
    pub notes: Vec<String>,
}

/// Angles θ ∈ [0, 2π) with ρ(s, θ) = 0, tagged by a branch index that is
/// stable in s (0/1 for the two solutions of each case's equation).
pub fn rho_theta_roots(j: &CurvatureJets4) -> Result<Vec<(usize, f64)>> {
    let k1p = j.kappa1[1];
    let kk = j.kappa1[0] * j.kappa2[0];
    let wrap = |t: f64| t.rem_euclid(TAU);
    Ok(match j.case()? {
        // a₁ = −1, a₂ = cosθ.
        CaseTag::Case1 => acos_pair(k1p, kk),
        // a₁ = cosθ, a₂ = −1.
        CaseTag::Case2 => acos_pair(kk, k1p),
        // a₁ = cosθ, a₂ = sinθ.
        CaseTag::Case3 => {
            let t = (-k1p).atan2(kk);
            vec![(0, wrap(t)), (1, wrap(t + PI))]
        }
    })
}

/// Solutions of cosθ = num/den as (branch, θ) with θ = ±acos(num/den).
fn acos_pair(num: f64, den: f64) -> Vec<(usize, f64)> {
    if den == 0.0 {
        return Vec::new();
    }
    let c = num / den;
    if !(-1.0..=1.0).contains(&c) {
        return Vec::new();
    }
    let t = c.acos();
    vec![(0, t), (1, TAU - t)]
}

fn curvature_jets4(curve: &ParamCurve, s: f64, cfg: &ToleranceConfig) -> Result<CurvatureJets4> {
    Ok(frame_ads4(curve, s, cfg)?.curvature_jets())
}

/// Every ρ = 0 point (s, θ) over the s samples, classified.
pub fn scan_rho_ads4(
    curve: &ParamCurve,
    s_values: &[f64],
    cfg: &ToleranceConfig,
) -> Result<ScanOutcome> {
    let per_s: Vec<Result<Vec<ScanPoint>>> = s_values
        .par_iter()
        .map(|&s| {
            let j = curvature_jets4(curve, s, cfg)?;
            let mut pts = Vec::new();
            for (_, theta) in rho_theta_roots(&j)? {
                match classify_focal_point_ads4_curve(curve, s, theta, cfg) {
                    Ok(report) => pts.push(ScanPoint {
                        s,
                        fiber: Fiber::Theta(theta),
                        invariant: "rho",
                        report,
                    }),
                    Err(Error::NoFocalPoint(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(pts)
        })
        .collect();
    let mut out = ScanOutcome::default();
    for p in per_s {
        out.points.extend(p?);
    }
    if out.points.is_empty() {
        out.notes
            .push("ρ has no zero in θ on the sampled range".into());
    }
    Ok(out)
}

/// σ along the ρ = 0 branch `branch` at s (None where the branch or σ is
/// undefined).
fn sigma_on_branch(
    curve: &ParamCurve,
    s: f64,
    branch: usize,
    cfg: &ToleranceConfig,
) -> Option<(f64, f64)> {
    let j = curvature_jets4(curve, s, cfg).ok()?;
    let theta = rho_theta_roots(&j)
        .ok()?
        .into_iter()
        .find(|r| r.0 == branch)?
        .1;
    let inv = invariants_from_jets(&j, s, theta, cfg).ok()?;
    Some((inv.sigma, theta))
}

/// Points where ρ = σ = 0 (butterfly candidates): σ restricted to each
/// ρ = 0 branch is scanned for sign changes in s and refined by bisection.
pub fn scan_sigma_ads4(
    curve: &ParamCurve,
    s_values: &[f64],
    cfg: &ToleranceConfig,
) -> Result<ScanOutcome> {
    let mut out = ScanOutcome::default();
    for branch in 0..2 {
        let roots = scan_roots(
            |s| sigma_on_branch(curve, s, branch, cfg).map(|v| v.0),
            s_values,
            cfg.bisection_tol,
        );
        for s in roots {
            let Some((_, theta)) = sigma_on_branch(curve, s, branch, cfg) else {
                continue;
            };
            match classify_focal_point_ads4_curve(curve, s, theta, cfg) {
                Ok(report) => out.points.push(ScanPoint {
                    s,
                    fiber: Fiber::Theta(theta),
                    invariant: "sigma",
                    report,
                }),
                Err(Error::NoFocalPoint(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    if out.points.is_empty() {
        out.notes
            .push("σ has no zero along the ρ = 0 locus on the sampled range".into());
    }
    Ok(out)
}

/// Zeros of σ^β along an AdS³ curve for both evolute branches. A family on
/// which σ^β and its derivative vanish at every sample is reported as
/// degenerate instead of being root-scanned.
pub fn scan_sigma_ads3(
    curve: &ParamCurve,
    s_values: &[f64],
    cfg: &ToleranceConfig,
) -> Result<ScanOutcome> {
    let jets: Vec<CurvatureJets3> = s_values
        .iter()
        .map(|&s| frame_ads3(curve, s, cfg).map(|f| f.curvature_jets()))
        .collect::<Result<_>>()?;
    let mut out = ScanOutcome::default();
    let mut vanishing = [false; 2];
    for (k, e) in [1i8, -1].into_iter().enumerate() {
        vanishing[k] = jets.iter().all(|j| {
            let [v, d, _] = j.sigma().branch(e * j.delta);
            v.abs() < cfg.zero_detect_tol * j.sigma_scale()
                && d.abs() < cfg.zero_detect_tol * j.sigma_prime_scale()
        });
        if vanishing[k] {
            continue;
        }
        let sigma_at = |s: f64| {
            frame_ads3(curve, s, cfg).ok().map(|f| {
                let j = f.curvature_jets();
                j.sigma().branch(e * j.delta)[0]
            })
        };
        for s in scan_roots(sigma_at, s_values, cfg.bisection_tol) {
            let report = classify_evolute_point_ads3(curve, s, e, cfg)?;
            out.points.push(ScanPoint {
                s,
                fiber: Fiber::Sign(e),
                invariant: "sigma",
                report,
            });
        }
    }
    if vanishing == [true, true] {
        out.degenerate = true;
        out.notes
            .push("σ± identically 0 (degenerate family)".into());
    } else {
        for (k, name) in ["σ⁺", "σ⁻"].iter().enumerate() {
            if vanishing[k] {
                out.degenerate = true;
                out.notes
                    .push(format!("{name} identically 0 (degenerate family)"));
            }
        }
        if out.points.is_empty() {
            out.notes.push("σ± has no zero on the sampled range".into());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_default;

    #[test]
    fn d4_cubics() {
        let tol = 1e-7;
        assert_eq!(
            cubic_d4_label([1.0, 0.0, 0.0, 1.0], tol).0,
            SingularityLabel::D4Plus
        );
        assert_eq!(
            cubic_d4_label([1.0 / 3.0, 0.0, -1.0, 0.0], tol).0,
            SingularityLabel::D4Minus
        );
        assert_eq!(
            cubic_d4_label([1.0, 0.0, 0.0, 0.0], tol).0,
            SingularityLabel::Degenerate
        );
        assert_eq!(
            cubic_d4_label([0.0; 4], tol).0,
            SingularityLabel::Degenerate
        );
    }

    #[test]
    fn constant_jets_ads3() {
        let cfg = ToleranceConfig::default();
        let circle = CurvatureJets3 {
            kappa: [1.0, 0.0, 0.0, 0.0],
            tau: [0.0; 3],
            delta: 1,
        };
        assert_eq!(
            classify_evolute_jets_ads3(&circle, 1, &cfg).unwrap().label,
            SingularityLabel::Degenerate
        );
        let helix = CurvatureJets3 {
            kappa: [2.0, 0.0, 0.0, 0.0],
            tau: [0.5, 0.0, 0.0],
            delta: -1,
        };
        for e in [1, -1] {
            let r = classify_evolute_jets_ads3(&helix, e, &cfg).unwrap();
            assert_eq!(r.label, SingularityLabel::A2CuspidalEdge);
            assert!((r.raw[0].abs() - 1.0).abs() < 1e-15);
        }
        let synth = CurvatureJets3 {
            kappa: [1.0, 0.5, 0.0, 0.0],
            tau: [0.5, 1.0, 0.0],
            delta: 1,
        };
        let r = classify_evolute_jets_ads3(&synth, 1, &cfg).unwrap();
        assert_eq!(r.label, SingularityLabel::A3Swallowtail);
    }

    #[test]
    fn circle_evolute_degenerate() {
        let cfg = ToleranceConfig::default();
        let obj = preset_default("ads3-circle").unwrap();
        let r = classify_evolute_point_ads3(obj.as_curve().unwrap(), 0.7, 1, &cfg).unwrap();
        assert_eq!(r.label, SingularityLabel::Degenerate);
        assert_eq!(r.ak_order, Some(-1));
        assert!(r.consistent());
    }

    #[test]
    fn helix_generic_points_are_cuspidal() {
        let cfg = ToleranceConfig::default();
        let obj = preset_default("ads4-case1-curve").unwrap();
        let c = obj.as_curve().unwrap();
        for (s, th) in [(1.2, 0.3), (1.3, 2.0), (1.45, 4.0)] {
            let r = classify_focal_point_ads4_curve(c, s, th, &cfg).unwrap();
            assert_eq!(r.label, SingularityLabel::A2CuspidalEdge, "{r:?}");
            assert!(r.consistent());
        }
    }

    #[test]
    fn lightcone_sphere_is_umbilic_degenerate() {
        let cfg = ToleranceConfig::default();
        let obj = preset_default("ads4-lightcone-sphere").unwrap();
        let s = obj.as_surface().unwrap();
        let r = classify_surface_focal_point(s, [0.7, 1.1], 1, 0, &cfg).unwrap();
        assert_eq!(r.corank, Some(2));
        assert_eq!(r.label, SingularityLabel::Degenerate);
        assert!(!r.advisory_notes.is_empty());
        assert!(matches!(
            ridge_order(s, [0.7, 1.1], 1, 0, &cfg),
            Err(Error::Corank { .. })
        ));
    }
}
