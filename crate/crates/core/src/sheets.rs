//! Nullcone Gauss images, lightlike hypersurfaces LH = X + μ·NG, focal sets,
//! discriminant sets of order ℓ and sheet comparison.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve_frames::{frame_ads3, frame_ads4, CurveSpace, FrameAdS4};
use crate::error::{Error, Result};
use crate::grid::{scan_roots, GridAxis, GridSpec};
use crate::height::{
    hessian_surface, rotate_bivariate, splitting_reduction, surface_height_taylor,
};
use crate::parametric::{GeomObject, ParamSurface};
use crate::semi_euclidean::{numeric_rank, singular_values, AmbientVector};
use crate::surface_geometry::{
    forms_from, frame_from_partials, principal_from_forms, SurfaceFrame,
};
use crate::tolerance::ToleranceConfig;

/// Position in the unit normal fibre: an angle θ for AdS⁴ curves, a sign
/// selecting nᵀ ± nˢ for codimension-two objects.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fiber {
    Theta(f64),
    Sign(i8),
}

impl Fiber {
    pub fn value(&self) -> f64 {
        match *self {
            Fiber::Theta(t) => t,
            Fiber::Sign(s) => s as f64,
        }
    }
}

/// Null normal NG(θ) = nᵀ + cosθ·b₁ + sinθ·b₂ of an AdS⁴ curve frame.
pub fn ng_curve_ads4(frame: &FrameAdS4, theta: f64) -> AmbientVector {
    let [nt, b1, b2] = frame.normal_triplet();
    let (sn, cs) = theta.sin_cos();
    nt.axpy(cs, &b1).axpy(sn, &b2)
}

/// ∂NG/∂s and ∂NG/∂θ for an AdS⁴ curve frame.
pub fn ng_curve_ads4_derivatives(frame: &FrameAdS4, theta: f64) -> (AmbientVector, AmbientVector) {
    let [_, b1, b2] = frame.normal_triplet();
    let [ntp, b1p, b2p] = frame.normal_triplet_prime();
    let (sn, cs) = theta.sin_cos();
    (
        ntp.axpy(cs, &b1p).axpy(sn, &b2p),
        b1.scale(-sn).axpy(cs, &b2),
    )
}

/// Null normal nᵀ + sign·nˢ of a surface frame.
pub fn ng_surface(frame: &SurfaceFrame, sign: i8) -> AmbientVector {
    frame.null_normal(sign)
}

/// Focal root: μ* and the branch it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FocalRoot {
    pub mu_star: f64,
    pub branch_index: usize,
}

/// Null normal together with the data needed for sheet and focal maps.
#[derive(Debug, Clone)]
pub struct NullNormal {
    pub point: AmbientVector,
    pub ng: AmbientVector,
    /// X_uᵢ.
    pub tangents: Vec<AmbientVector>,
    /// ∂NG/∂uᵢ (empty unless requested).
    pub ng_derivs: Vec<AmbientVector>,
    /// ∂NG/∂θ for angle fibres.
    pub ng_fiber: Option<AmbientVector>,
    pub focal: Vec<FocalRoot>,
}

fn fiber_mismatch(expected: &str) -> Error {
    Error::InvalidInput(format!("this object needs a {expected} fibre coordinate"))
}

fn check_sign(s: i8) -> Result<()> {
    if s == 1 || s == -1 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "fibre sign must be ±1, got {s}"
        )))
    }
}

/// Root of h″ = −1 + μ⟨γ″, NG⟩ for curves.
fn curve_focal(
    gpp: &AmbientVector,
    ng: &AmbientVector,
    kappa: f64,
    cfg: &ToleranceConfig,
) -> Vec<FocalRoot> {
    let c = gpp.dot(ng);
    if c.abs() <= cfg.zero_detect_tol * kappa.abs().max(1.0) {
        Vec::new()
    } else {
        vec![FocalRoot {
            mu_star: 1.0 / c,
            branch_index: 0,
        }]
    }
}

fn surface_frame_at(
    surface: &ParamSurface,
    u: [f64; 2],
    cfg: &ToleranceConfig,
) -> Result<(SurfaceFrame, crate::parametric::SurfacePartials)> {
    let p = surface.partials(u)?;
    let f = frame_from_partials(&p, u, &surface.reference_vector(), cfg)?;
    Ok((f, p))
}

/// Evaluates the null normal and focal data at (base, fiber).
pub fn null_normal(
    obj: &GeomObject,
    base: &[f64],
    fiber: Fiber,
    with_derivs: bool,
    cfg: &ToleranceConfig,
) -> Result<NullNormal> {
    crate::height::check_base(obj, base)?;
    match obj {
        GeomObject::Curve(c) => match CurveSpace::of(c)? {
            CurveSpace::AdS4 => {
                let Fiber::Theta(theta) = fiber else {
                    return Err(fiber_mismatch("theta"));
                };
                let f = frame_ads4(c, base[0], cfg)?;
                let ng = ng_curve_ads4(&f, theta);
                let (ds, dth) = ng_curve_ads4_derivatives(&f, theta);
                let gpp = f.gamma.axpy(f.kappa1, &f.n1);
                Ok(NullNormal {
                    point: f.gamma,
                    ng,
                    tangents: vec![f.t],
                    ng_derivs: if with_derivs { vec![ds] } else { Vec::new() },
                    ng_fiber: Some(dth),
                    focal: curve_focal(&gpp, &ng, f.kappa1, cfg),
                })
            }
            CurveSpace::AdS3 => {
                let Fiber::Sign(e) = fiber else {
                    return Err(fiber_mismatch("sign"));
                };
                check_sign(e)?;
                let f = frame_ads3(c, base[0], cfg)?;
                let (nt, ns) = f.normal_pair();
                let (ntp, nsp) = if f.delta > 0 {
                    (f.b_prime, f.n_prime)
                } else {
                    (f.n_prime, f.b_prime)
                };
                let ef = e as f64;
                let ng = nt.axpy(ef, &ns);
                let gpp = f.gamma.axpy(f.kappa_g, &f.n);
                Ok(NullNormal {
                    point: f.gamma,
                    ng,
                    tangents: vec![f.t],
                    ng_derivs: if with_derivs {
                        vec![ntp.axpy(ef, &nsp)]
                    } else {
                        Vec::new()
                    },
                    ng_fiber: None,
                    focal: curve_focal(&gpp, &ng, f.kappa_g, cfg),
                })
            }
        },
        GeomObject::Surface(s) => {
            let Fiber::Sign(sign) = fiber else {
                return Err(fiber_mismatch("sign"));
            };
            check_sign(sign)?;
            let u = [base[0], base[1]];
            let (f, p) = surface_frame_at(s, u, cfg)?;
            let ng = f.null_normal(sign);
            let pd = principal_from_forms(&forms_from(&p, &f, sign), sign, cfg)?;
            let focal = pd
                .kappas
                .iter()
                .enumerate()
                .filter(|(_, k)| k.abs() > cfg.zero_detect_tol)
                .map(|(i, k)| FocalRoot {
                    mu_star: 1.0 / k,
                    branch_index: i,
                })
                .collect();
            let ng_derivs = if with_derivs {
                surface_ng_derivs(s, u, &f, sign, cfg)?
            } else {
                Vec::new()
            };
            Ok(NullNormal {
                point: f.x,
                ng,
                tangents: f.x_u.to_vec(),
                ng_derivs,
                ng_fiber: None,
                focal,
            })
        }
    }
}

/// Central-difference derivatives of nᵀ + sign·nˢ along the parameters.
fn surface_ng_derivs(
    s: &ParamSurface,
    u: [f64; 2],
    f0: &SurfaceFrame,
    sign: i8,
    cfg: &ToleranceConfig,
) -> Result<Vec<AmbientVector>> {
    let h = cfg.fd_step;
    if !(h > 0.0) {
        return Err(Error::Grid(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let r = s.reference_vector();
    let mut out = Vec::with_capacity(2);
    for i in 0..2 {
        let mut ng = [AmbientVector::zero(s.dim); 2];
        for (k, dir) in [1.0, -1.0].iter().enumerate() {
            let mut v = u;
            v[i] += dir * h;
            let f = frame_from_partials(&s.partials_unchecked(v), v, &r, cfg)?;
            if f.n_t.dot(&f0.n_t) >= 0.0 || f.n_s.dot(&f0.n_s) <= 0.0 {
                return Err(Error::FrameContinuity(format!(
                    "normal frame flips between {u:?} and {v:?}"
                )));
            }
            ng[k] = f.null_normal(sign);
        }
        out.push((ng[0] - ng[1]).scale(0.5 / h));
    }
    Ok(out)
}

/// A point X + μ·NG of the lightlike hypersurface.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SheetPoint {
    pub base: Vec<f64>,
    pub fiber: Fiber,
    pub mu: f64,
    pub position: AmbientVector,
    pub ng: AmbientVector,
}

pub fn lh_eval(
    obj: &GeomObject,
    base: &[f64],
    fiber: Fiber,
    mu: f64,
    cfg: &ToleranceConfig,
) -> Result<SheetPoint> {
    let nn = null_normal(obj, base, fiber, false, cfg)?;
    Ok(SheetPoint {
        base: base.to_vec(),
        fiber,
        mu,
        position: nn.point.axpy(mu, &nn.ng),
        ng: nn.ng,
    })
}

/// μ values at which the height Hessian (or h″) degenerates.
pub fn focal_mu(
    obj: &GeomObject,
    base: &[f64],
    fiber: Fiber,
    cfg: &ToleranceConfig,
) -> Result<Vec<FocalRoot>> {
    Ok(null_normal(obj, base, fiber, false, cfg)?.focal)
}

/// A point of the lightlike focal set (or evolute).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FocalPoint {
    pub base: Vec<f64>,
    pub fiber: Fiber,
    pub mu_star: f64,
    pub position: AmbientVector,
    pub branch_index: usize,
}

pub fn focal_eval(
    obj: &GeomObject,
    base: &[f64],
    fiber: Fiber,
    branch_index: usize,
    cfg: &ToleranceConfig,
) -> Result<FocalPoint> {
    let nn = null_normal(obj, base, fiber, false, cfg)?;
    let root = nn
        .focal
        .iter()
        .find(|r| r.branch_index == branch_index)
        .ok_or_else(|| {
            Error::NoFocalPoint(format!(
                "branch {branch_index} has vanishing curvature at {base:?}, {fiber:?}"
            ))
        })?;
    Ok(FocalPoint {
        base: base.to_vec(),
        fiber,
        mu_star: root.mu_star,
        position: nn.point.axpy(root.mu_star, &nn.ng),
        branch_index,
    })
}

/// Columns of the sheet-map Jacobian: ∂/∂uᵢ, (∂/∂θ), ∂/∂μ.
pub fn sheet_jacobian(
    obj: &GeomObject,
    base: &[f64],
    fiber: Fiber,
    mu: f64,
    cfg: &ToleranceConfig,
) -> Result<Vec<AmbientVector>> {
    let nn = null_normal(obj, base, fiber, true, cfg)?;
    let mut cols: Vec<AmbientVector> = nn
        .tangents
        .iter()
        .zip(&nn.ng_derivs)
        .map(|(x, d)| x.axpy(mu, d))
        .collect();
    if let Some(dth) = nn.ng_fiber {
        cols.push(dth.scale(mu));
    }
    cols.push(nn.ng);
    Ok(cols)
}

/// Rank and pullback-metric diagnostics of the sheet map at one sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SheetRegularity {
    pub rank: usize,
    pub full_rank: bool,
    pub singular_values: Vec<f64>,
    /// det of the Gram matrix ⟨∂ᵢ, ∂ⱼ⟩ of the Jacobian columns.
    pub pullback_det: f64,
    /// Product of squared Euclidean column norms (scale for `pullback_det`).
    pub pullback_scale: f64,
}

pub fn sheet_regularity(cols: &[AmbientVector]) -> SheetRegularity {
    let rows: Vec<Vec<f64>> = (0..cols[0].dim())
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect();
    let sv = singular_values(&rows);
    let rank = numeric_rank(&sv);
    let gram: Vec<Vec<f64>> = cols
        .iter()
        .map(|a| cols.iter().map(|b| a.dot(b)).collect())
        .collect();
    SheetRegularity {
        rank,
        full_rank: rank == cols.len(),
        singular_values: sv,
        pullback_det: crate::semi_euclidean::determinant(&gram),
        pullback_scale: cols.iter().map(|c| c.euclid_sq()).product::<f64>().max(1.0),
    }
}

/// Sampled sheet on a rectangular (base × fibre × μ) grid, μ varying fastest.
#[derive(Debug, Clone, Serialize)]
pub struct SheetGrid {
    /// Axis lengths in order (base axes…, fibre, μ).
    pub dims: Vec<usize>,
    pub points: Vec<SheetPoint>,
    /// Whether the sheet-map Jacobian has full rank at each point.
    pub regular: Vec<bool>,
}

impl SheetGrid {
    pub fn positions(&self) -> Vec<AmbientVector> {
        self.points.iter().map(|p| p.position).collect()
    }
}

/// Concrete sample values resolved from a [`GridSpec`] for one object.
#[derive(Debug, Clone)]
pub struct ResolvedGrid {
    pub base: Vec<Vec<f64>>,
    pub fibers: Vec<Fiber>,
    pub mus: Vec<f64>,
}

impl ResolvedGrid {
    pub fn base_points(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = vec![Vec::new()];
        for axis in &self.base {
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// Axis names accepted for an object: base axes, optional fibre axis.
pub fn axis_names(obj: &GeomObject) -> (Vec<&'static str>, Option<&'static str>) {
    match obj {
        GeomObject::Curve(c) if c.dim == 5 => (vec!["s"], Some("theta")),
        GeomObject::Curve(_) => (vec!["s"], None),
        GeomObject::Surface(_) => (vec!["u", "v"], None),
    }
}

/// Fills unspecified axes with defaults (64 base samples over the domain,
/// 64 angles over [0, 2π), μ ∈ [−2, 2] with 21 samples).
pub fn resolve_grid(obj: &GeomObject, spec: &GridSpec) -> Result<ResolvedGrid> {
    let (base_names, fiber_name) = axis_names(obj);
    let mut allowed = base_names.clone();
    allowed.extend(fiber_name);
    allowed.push("mu");
    spec.check_names(&allowed)?;
    let domains: Vec<(f64, f64)> = match obj {
        GeomObject::Curve(c) => vec![c.domain],
        GeomObject::Surface(s) => s.domain.to_vec(),
    };
    let mut base = Vec::new();
    for (name, dom) in base_names.iter().zip(domains) {
        let axis = match spec.get(name) {
            Some(a) => a,
            None => GridAxis::new(dom.0, dom.1, 64)?,
        };
        base.push(axis.values());
    }
    let fibers = match fiber_name {
        Some(name) => {
            let axis = match spec.get(name) {
                Some(a) => a,
                None => GridAxis::new(0.0, TAU * 63.0 / 64.0, 64)?,
            };
            axis.values().into_iter().map(Fiber::Theta).collect()
        }
        None => vec![Fiber::Sign(1), Fiber::Sign(-1)],
    };
    let mus = spec
        .get("mu")
        .map_or_else(|| GridAxis::new(-2.0, 2.0, 21), Ok)?
        .values();
    Ok(ResolvedGrid { base, fibers, mus })
}

/// Samples the sheet over a grid; points where the frame is undefined abort
/// with the frame error.
pub fn sheet_grid(obj: &GeomObject, spec: &GridSpec, cfg: &ToleranceConfig) -> Result<SheetGrid> {
    let g = resolve_grid(obj, spec)?;
    let bases = g.base_points();
    let mut dims: Vec<usize> = g.base.iter().map(|a| a.len()).collect();
    dims.push(g.fibers.len());
    dims.push(g.mus.len());
    let cells: Vec<(Vec<f64>, Fiber)> = bases
        .iter()
        .flat_map(|b| g.fibers.iter().map(move |f| (b.clone(), *f)))
        .collect();
    let chunks: Vec<Result<Vec<(SheetPoint, bool)>>> = cells
        .par_iter()
        .map(|(b, f)| {
            let nn = null_normal(obj, b, *f, true, cfg)?;
            Ok(g.mus
                .iter()
                .map(|&mu| {
                    let mut cols: Vec<AmbientVector> = nn
                        .tangents
                        .iter()
                        .zip(&nn.ng_derivs)
                        .map(|(x, d)| x.axpy(mu, d))
                        .collect();
                    if let Some(dth) = nn.ng_fiber {
                        cols.push(dth.scale(mu));
                    }
                    cols.push(nn.ng);
                    let reg = sheet_regularity(&cols);
                    (
                        SheetPoint {
                            base: b.clone(),
                            fiber: *f,
                            mu,
                            position: nn.point.axpy(mu, &nn.ng),
                            ng: nn.ng,
                        },
                        reg.full_rank,
                    )
                })
                .collect())
        })
        .collect();
    let mut points = Vec::new();
    let mut regular = Vec::new();
    for c in chunks {
        for (p, r) in c? {
            points.push(p);
            regular.push(r);
        }
    }
    Ok(SheetGrid {
        dims,
        points,
        regular,
    })
}

/// Symmetric nearest-neighbour (Hausdorff-type) distance between two point
/// sets, in the Euclidean norm of the ambient coordinates.
pub fn compare_point_sets(a: &[AmbientVector], b: &[AmbientVector]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() {
            0.0
        } else {
            f64::INFINITY
        };
    }
    directed_distance(a, b).max(directed_distance(b, a))
}

/// Same as [`compare_point_sets`] for sampled sheets.
pub fn compare_sheets(a: &SheetGrid, b: &SheetGrid) -> f64 {
    compare_point_sets(&a.positions(), &b.positions())
}

/// max over p ∈ a of the distance from p to its nearest neighbour in b.
pub fn directed_distance(a: &[AmbientVector], b: &[AmbientVector]) -> f64 {
    let mut sorted: Vec<&AmbientVector> = b.iter().collect();
    sorted.sort_by(|p, q| p[0].total_cmp(&q[0]));
    a.par_iter()
        .map(|p| nearest(p, &sorted))
        .reduce(|| 0.0, f64::max)
}

fn nearest(p: &AmbientVector, sorted: &[&AmbientVector]) -> f64 {
    let start = sorted.partition_point(|q| q[0] < p[0]);
    let mut best = f64::INFINITY;
    for q in sorted[start..].iter() {
        if q[0] - p[0] >= best {
            break;
        }
        best = best.min((**q - *p).euclid_norm());
    }
    for q in sorted[..start].iter().rev() {
        if p[0] - q[0] >= best {
            break;
        }
        best = best.min((**q - *p).euclid_norm());
    }
    best
}

/// One point of a discriminant set with its sheet coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscriminantPoint {
    pub base: Vec<f64>,
    pub fiber: Fiber,
    pub mu: f64,
    pub position: AmbientVector,
}

/// Samples of the discriminant set of order ℓ.
#[derive(Debug, Clone, Serialize)]
pub struct Discriminant {
    pub order: usize,
    pub points: Vec<DiscriminantPoint>,
    /// Set when the order-3 locus is not isolated (the governing invariant
    /// vanishes identically on the sampled family).
    pub degenerate: bool,
    pub notes: Vec<String>,
}

/// D¹ (sheet samples), D² (focal samples) or D³ (focal samples where the
/// focal map drops rank).
pub fn discriminant_samples(
    obj: &GeomObject,
    order: usize,
    spec: &GridSpec,
    cfg: &ToleranceConfig,
) -> Result<Discriminant> {
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidInput(format!(
            "discriminant order must be 1, 2 or 3, got {order}"
        )));
    }
    let g = resolve_grid(obj, spec)?;
    let mut out = Discriminant {
        order,
        points: Vec::new(),
        degenerate: false,
        notes: Vec::new(),
    };
    match order {
        1 => {
            let grid = sheet_grid(obj, spec, cfg)?;
            out.points = grid
                .points
                .into_iter()
                .map(|p| DiscriminantPoint {
                    base: p.base,
                    fiber: p.fiber,
                    mu: p.mu,
                    position: p.position,
                })
                .collect();
        }
        2 => {
            for b in g.base_points() {
                for &f in &g.fibers {
                    let nn = null_normal(obj, &b, f, false, cfg)?;
                    for r in &nn.focal {
                        out.points.push(DiscriminantPoint {
                            base: b.clone(),
                            fiber: f,
                            mu: r.mu_star,
                            position: nn.point.axpy(r.mu_star, &nn.ng),
                        });
                    }
                }
            }
        }
        _ => order_three(obj, &g, cfg, &mut out)?,
    }
    Ok(out)
}

fn push_focal(
    obj: &GeomObject,
    base: &[f64],
    fiber: Fiber,
    branch: usize,
    cfg: &ToleranceConfig,
    out: &mut Discriminant,
) {
    if let Ok(fp) = focal_eval(obj, base, fiber, branch, cfg) {
        out.points.push(DiscriminantPoint {
            base: fp.base,
            fiber,
            mu: fp.mu_star,
            position: fp.position,
        });
    }
}

fn order_three(
    obj: &GeomObject,
    g: &ResolvedGrid,
    cfg: &ToleranceConfig,
    out: &mut Discriminant,
) -> Result<()> {
    match obj {
        GeomObject::Curve(c) if c.dim == 5 => {
            // The focal map (s, θ) ↦ γ + μ*NG is singular exactly where h‴ = 0,
            // i.e. on the zeros of κ₁′a₁ + κ₁κ₂a₂ in θ.
            let mut thetas: Vec<f64> = g.fibers.iter().map(|f| f.value()).collect();
            thetas.push(thetas[0] + TAU);
            for s in &g.base[0] {
                let j = frame_ads4(c, *s, cfg)?.curvature_jets();
                let roots = scan_roots(|t| j.rho_raw(t).ok(), &thetas, cfg.bisection_tol);
                for t in roots {
                    push_focal(obj, &[*s], Fiber::Theta(t.rem_euclid(TAU)), 0, cfg, out);
                }
            }
        }
        GeomObject::Curve(c) => {
            let ss = &g.base[0];
            let jets: Vec<_> = ss
                .iter()
                .map(|&s| frame_ads3(c, s, cfg).map(|f| f.curvature_jets()))
                .collect::<Result<_>>()?;
            for e in [1i8, -1] {
                let beta = |j: &crate::curve_frames::CurvatureJets3| e * j.delta;
                let all_zero = jets.iter().all(|j| {
                    j.sigma().branch(beta(j))[0].abs() < cfg.zero_detect_tol * j.sigma_scale()
                        && j.sigma().branch(beta(j))[1].abs()
                            < cfg.zero_detect_tol * j.sigma_prime_scale()
                });
                if all_zero {
                    out.degenerate = true;
                    out.notes.push(format!(
                        "σ{} identically 0 (degenerate family): the evolute branch nᵀ{}nˢ has no isolated order-3 points",
                        if e > 0 { "⁺" } else { "⁻" },
                        if e > 0 { "+" } else { "−" }
                    ));
                    continue;
                }
                let roots = scan_roots(
                    |s| {
                        frame_ads3(c, s, cfg).ok().map(|f| {
                            let j = f.curvature_jets();
                            j.sigma().branch(beta(&j))[0]
                        })
                    },
                    ss,
                    cfg.bisection_tol,
                );
                for s in roots {
                    push_focal(obj, &[s], Fiber::Sign(e), 0, cfg, out);
                }
            }
        }
        GeomObject::Surface(surf) => {
            // Ridge points: the cubic coefficient of the height function
            // along the kernel direction vanishes. Scan along u for every v.
            for sign in [1i8, -1] {
                for branch in 0..2 {
                    let mut identically_zero = true;
                    for &v in &g.base[1] {
                        let us = &g.base[0];
                        let mut dirs: Vec<Option<[f64; 2]>> = Vec::with_capacity(us.len());
                        let mut prev: Option<[f64; 2]> = None;
                        let mut vals = Vec::with_capacity(us.len());
                        for &u in us {
                            match ridge_cubic(surf, [u, v], sign, branch, prev, cfg) {
                                Ok((g3, d)) => {
                                    if g3.abs() >= cfg.zero_detect_tol {
                                        identically_zero = false;
                                    }
                                    prev = Some(d);
                                    dirs.push(Some(d));
                                    vals.push(Some(g3));
                                }
                                Err(_) => {
                                    dirs.push(None);
                                    vals.push(None);
                                }
                            }
                        }
                        for i in 0..us.len().saturating_sub(1) {
                            let (Some(a), Some(b), Some(d)) = (vals[i], vals[i + 1], dirs[i])
                            else {
                                continue;
                            };
                            if a != 0.0 && (a < 0.0) != (b < 0.0) {
                                let root = crate::grid::bisect(
                                    |x| {
                                        ridge_cubic(surf, [x, v], sign, branch, Some(d), cfg)
                                            .map_or(f64::NAN, |r| r.0)
                                    },
                                    us[i],
                                    us[i + 1],
                                    cfg.bisection_tol,
                                );
                                // Sign changes through a pole (curvature crossing zero) are not ridges.
                                let at_root =
                                    ridge_cubic(surf, [root, v], sign, branch, Some(d), cfg);
                                if at_root.is_ok_and(|r| r.0.abs() <= cfg.zero_detect_tol) {
                                    push_focal(
                                        obj,
                                        &[root, v],
                                        Fiber::Sign(sign),
                                        branch,
                                        cfg,
                                        out,
                                    );
                                }
                            }
                        }
                    }
                    if identically_zero {
                        out.degenerate = true;
                        out.notes.push(format!(
                            "branch {branch} of nᵀ{}nˢ: ridge cubic vanishes on every sample (ridge family)",
                            if sign > 0 { "+" } else { "−" }
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Normalized cubic coefficient g₃ of the height function along the kernel
/// direction at the focal point of `branch`, with the direction oriented to
/// agree with `reference` when given. Returns (g₃, direction).
pub(crate) fn ridge_cubic(
    surface: &ParamSurface,
    u: [f64; 2],
    sign: i8,
    branch: usize,
    reference: Option<[f64; 2]>,
    cfg: &ToleranceConfig,
) -> Result<(f64, [f64; 2])> {
    let obj_fp = {
        let p = surface.partials(u)?;
        let f = frame_from_partials(&p, u, &surface.reference_vector(), cfg)?;
        let pd = principal_from_forms(&forms_from(&p, &f, sign), sign, cfg)?;
        let k = pd.kappas[branch];
        if k.abs() <= cfg.zero_detect_tol {
            return Err(Error::NoFocalPoint(format!(
                "branch {branch} curvature vanishes"
            )));
        }
        f.x.axpy(1.0 / k, &f.null_normal(sign))
    };
    let hr = hessian_surface(surface, u, &obj_fp, cfg)?;
    // Kernel direction: eigenvector of the eigenvalue closest to zero.
    let i = if hr.eigenvalues[0].abs() <= hr.eigenvalues[1].abs() {
        0
    } else {
        1
    };
    let mut k = hr.eigenvectors[i];
    if let Some(r) = reference {
        if k[0] * r[0] + k[1] * r[1] < 0.0 {
            k = [-k[0], -k[1]];
        }
    }
    let w = [-k[1], k[0]];
    let c = surface_height_taylor(surface, u, &obj_fp)?;
    let rc = rotate_bivariate(&c, k, w);
    let g = splitting_reduction(&rc);
    let scale = 1.0 + rc.iter().flatten().map(|v| v.abs()).fold(0.0, f64::max);
    Ok((g[3] / scale, k))
}

/// Shape-operator eigenvalues of an AdS⁴ curve's normal bundle at (s, θ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberShape {
    /// Eigenvalue along the fibre direction ∂/∂θ.
    pub fiber: f64,
    /// Eigenvalue along ∂/∂s.
    pub tangential: f64,
    /// Matrix of −Πᵗ∘dNG in the basis (∂/∂s, ∂/∂θ), column-major.
    pub matrix: [[f64; 2]; 2],
}

/// −Πᵗ∘dNG on span(∂/∂s, ∂/∂θ), where the tangent image of ∂/∂s is t and
/// that of ∂/∂θ is ξ_θ = −sinθ·b₁ + cosθ·b₂.
pub fn fiber_shape_eigenvalue(
    obj: &GeomObject,
    s: f64,
    theta: f64,
    cfg: &ToleranceConfig,
) -> Result<FiberShape> {
    let c = obj.as_curve()?;
    if c.dim != 5 {
        return Err(Error::Dimension {
            expected: 5,
            found: c.dim,
        });
    }
    let f = frame_ads4(c, s, cfg)?;
    let (ng_s, xi) = ng_curve_ads4_derivatives(&f, theta);
    // Coordinates of the projection onto span(t, ξ) (orthonormal, spacelike).
    let proj = |w: &AmbientVector| [w.dot(&f.t) / f.t.dot(&f.t), w.dot(&xi) / xi.dot(&xi)];
    let cs = proj(&ng_s).map(|v| -v);
    let cth = proj(&xi).map(|v| -v);
    let m = [[cs[0], cth[0]], [cs[1], cth[1]]];
    // Eigenvalues of the 2×2 matrix m (row-major here).
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
    let (e1, e2) = (tr / 2.0 - disc, tr / 2.0 + disc);
    // The fibre eigenvalue is the one whose eigenvector is closest to ∂/∂θ.
    let fiber_score = |e: f64| {
        // Eigenvector of m for e: solve (m − e)v = 0.
        let (a, b) = (m[0][0] - e, m[0][1]);
        let v = if a.abs() + b.abs() > 1e-14 {
            [-b, a]
        } else {
            [m[1][1] - e, -m[1][0]]
        };
        let n = (v[0] * v[0] + v[1] * v[1]).sqrt().max(1e-300);
        (v[1] / n).abs()
    };
    let (fiber, tangential) = if fiber_score(e1) >= fiber_score(e2) {
        (e1, e2)
    } else {
        (e2, e1)
    };
    Ok(FiberShape {
        fiber,
        tangential,
        matrix: [[m[0][0], m[1][0]], [m[0][1], m[1][1]]],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_default;

    #[test]
    fn ng_is_null_and_normal() {
        let cfg = ToleranceConfig::default();
        let obj = preset_default("ads4-generic-curve").unwrap();
        let c = obj.as_curve().unwrap();
        let f = frame_ads4(c, 2.3, &cfg).unwrap();
        for th in [0.0, 1.0, 2.0, 4.0] {
            let ng = ng_curve_ads4(&f, th);
            assert!(ng.dot(&ng).abs() < 1e-12);
            assert!(ng.dot(&f.gamma).abs() < 1e-12);
            assert!(ng.dot(&f.t).abs() < 1e-12);
            let other = ng_curve_ads4(&f, 0.5);
            assert!((ng.dot(&other) - (-1.0 + (th - 0.5f64).cos())).abs() < 1e-12);
        }
    }

    #[test]
    fn helix_fiber_eigenvalue_is_minus_one() {
        let cfg = ToleranceConfig::default();
        let obj = preset_default("ads4-helix").unwrap();
        for (s, th) in [(0.1, 0.0), (1.3, std::f64::consts::FRAC_PI_2), (4.0, 2.2)] {
            let fs = fiber_shape_eigenvalue(&obj, s, th, &cfg).unwrap();
            assert!((fs.fiber + 1.0).abs() < 1e-9, "{fs:?}");
        }
    }

    #[test]
    fn focal_mu_cases() {
        let cfg = ToleranceConfig::default();
        let c1 = preset_default("ads4-case1-curve").unwrap();
        let f = frame_ads4(c1.as_curve().unwrap(), 1.2, &cfg).unwrap();
        for th in [0.0, 1.0, 3.0] {
            let r = focal_mu(&c1, &[1.2], Fiber::Theta(th), &cfg).unwrap();
            assert_eq!(r.len(), 1);
            assert!((r[0].mu_star + 1.0 / f.kappa1).abs() < 1e-12);
        }
        let c2 = preset_default("ads4-generic-curve").unwrap();
        let r = focal_mu(&c2, &[2.3], Fiber::Theta(std::f64::consts::FRAC_PI_2), &cfg).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn nearest_neighbour_distance() {
        let p = |x: f64, y: f64| AmbientVector::new(&[x, y, 0.0, 0.0]).unwrap();
        let a = vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 1.0)];
        assert_eq!(compare_point_sets(&a, &a), 0.0);
        let b: Vec<_> = a.iter().map(|v| *v + p(0.0, 0.5)).collect();
        assert!((compare_point_sets(&a, &b) - 0.5).abs() < 1e-15);
    }
}
