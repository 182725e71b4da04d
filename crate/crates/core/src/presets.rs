//! Named example objects.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::parametric::{GeomObject, ParamCurve, ParamSurface};
use crate::semi_euclidean::AmbientVector;
use crate::terms::{combine, integrate, multiply, Factor, ScalarTerm, SurfaceTerm, TermSum};

/// Description of a preset and its default parameters.
#[derive(Debug, Clone, Copy)]
pub struct PresetInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub defaults: &'static [(&'static str, f64)],
}

/// Every shipped preset.
pub const PRESETS: &[PresetInfo] = &[
    PresetInfo {
        name: "ads3-circle",
        summary: "(√(1+r²), 0, r cos(s/r), r sin(s/r)); constant κ, zero τ",
        defaults: &[("r", 1.0)],
    },
    PresetInfo {
        name: "ads3-helix",
        summary: "(A cos ps, A sin ps, B cos qs, B sin qs), A² = 1 + B², q solved for unit speed",
        defaults: &[("B", 1.0), ("p", 1.0)],
    },
    PresetInfo {
        name: "ads4-helix",
        summary: "(A cos ps, A sin ps, B cos qs, B sin qs, 0), A² = 1 + B², q solved for unit speed",
        defaults: &[("B", 1.0), ("p", 1.0)],
    },
    PresetInfo {
        name: "ads4-generic-curve",
        summary: "horospherical lift of a twisted Minkowski helix; Case 2 frame on the default domain",
        defaults: &[("omega", 1.0), ("c", 0.5), ("amp", 0.6), ("nu", 1.0), ("s_min", 2.0), ("s_max", 2.9)],
    },
    PresetInfo {
        name: "ads4-case1-curve",
        summary: "horospherical lift with a timelike principal normal (Case 1 frame)",
        defaults: &[("omega", 1.0), ("c", 2.0), ("amp", 2.0), ("nu", 1.5), ("s_min", 1.1), ("s_max", 1.48)],
    },
    PresetInfo {
        name: "ads4-case3-curve",
        summary: "horospherical lift with a timelike binormal (Case 3 frame)",
        defaults: &[("omega", 1.0), ("c", 1.0), ("amp", 0.3), ("nu", 2.5), ("s_min", 0.2), ("s_max", 0.6)],
    },
    PresetInfo {
        name: "ads4-lightcone-sphere",
        summary: "(1, r, r cos u cos v, r cos u sin v, r sin u) inside the lightcone at (1,0,0,0,0)",
        defaults: &[("r", 1.0)],
    },
    PresetInfo {
        name: "ads4-product-torus",
        summary: "(α + β cos v, β sin v, (c + a cos v) cos u, (c + a cos v) sin u, a sin v)",
        defaults: &[("c", 2.0), ("a", 1.0)],
    },
    PresetInfo {
        name: "ads4-graph-surface",
        summary: "horospherical lift of the spacelike graph y₀ = a u²/2 + b v²/2 + e(u³ + u²v + v³)/6 over [−w, w]²",
        defaults: &[("a", 0.8), ("b", 0.3), ("e", 0.5), ("w", 0.4)],
    },
];

pub fn preset_info(name: &str) -> Option<&'static PresetInfo> {
    PRESETS.iter().find(|p| p.name == name)
}

/// Builds a preset. Parameters not supplied take their defaults; unknown
/// parameter names are rejected.
pub fn preset(name: &str, params: &BTreeMap<String, f64>) -> Result<GeomObject> {
    let info =
        preset_info(name).ok_or_else(|| Error::InvalidInput(format!("unknown preset '{name}'")))?;
    for key in params.keys() {
        let known =
            info.defaults.iter().any(|(k, _)| k == key) || (name == "ads4-helix" && key == "q");
        if !known {
            return Err(Error::InvalidInput(format!(
                "preset '{name}' has no parameter '{key}'"
            )));
        }
    }
    let get = |k: &str| -> f64 {
        params
            .get(k)
            .copied()
            .or_else(|| info.defaults.iter().find(|(n, _)| *n == k).map(|(_, v)| *v))
            .expect("parameter has a default")
    };
    for (k, _) in info.defaults {
        if !get(k).is_finite() {
            return Err(Error::PresetConstraint(format!(
                "parameter {k} must be finite"
            )));
        }
    }
    match name {
        "ads3-circle" => ads3_circle(get("r")).map(GeomObject::Curve),
        "ads3-helix" => ads3_helix(get("B"), get("p")).map(GeomObject::Curve),
        "ads4-helix" => {
            ads4_helix(get("B"), get("p"), params.get("q").copied()).map(GeomObject::Curve)
        }
        "ads4-generic-curve" | "ads4-case1-curve" | "ads4-case3-curve" => horospherical_curve(
            get("omega"),
            get("c"),
            get("amp"),
            get("nu"),
            (get("s_min"), get("s_max")),
        )
        .map(GeomObject::Curve),
        "ads4-lightcone-sphere" => lightcone_sphere(get("r")).map(GeomObject::Surface),
        "ads4-product-torus" => product_torus(get("c"), get("a")).map(GeomObject::Surface),
        "ads4-graph-surface" => {
            graph_surface(get("a"), get("b"), get("e"), get("w")).map(GeomObject::Surface)
        }
        _ => unreachable!("preset table and constructor list agree"),
    }
}

/// Preset with default parameters.
pub fn preset_default(name: &str) -> Result<GeomObject> {
    preset(name, &BTreeMap::new())
}

pub fn ads3_circle(r: f64) -> Result<ParamCurve> {
    if r <= 0.0 {
        return Err(Error::PresetConstraint(
            "circle radius must be positive".into(),
        ));
    }
    ParamCurve::new(
        vec![
            vec![ScalarTerm::poly((1.0 + r * r).sqrt(), 0)],
            vec![],
            vec![ScalarTerm::cos(r, 1.0 / r)],
            vec![ScalarTerm::sin(r, 1.0 / r)],
        ],
        (0.0, TAU * r),
    )
}

/// Frequency q with −(1+B²)p² + B²q² = 1.
fn helix_q(b: f64, p: f64) -> Result<f64> {
    if b <= 0.0 {
        return Err(Error::PresetConstraint(
            "helix radius B must be positive".into(),
        ));
    }
    Ok(((1.0 + (1.0 + b * b) * p * p) / (b * b)).sqrt())
}

pub fn ads3_helix(b: f64, p: f64) -> Result<ParamCurve> {
    let q = helix_q(b, p)?;
    let a = (1.0 + b * b).sqrt();
    ParamCurve::new(
        vec![
            vec![ScalarTerm::cos(a, p)],
            vec![ScalarTerm::sin(a, p)],
            vec![ScalarTerm::cos(b, q)],
            vec![ScalarTerm::sin(b, q)],
        ],
        (0.0, TAU),
    )
}

pub fn ads4_helix(b: f64, p: f64, q: Option<f64>) -> Result<ParamCurve> {
    let solved = helix_q(b, p)?;
    let q = match q {
        Some(q) => {
            let resid = -(1.0 + b * b) * p * p + b * b * q * q - 1.0;
            if resid.abs() > 1e-12 * (1.0 + b * b * q * q) {
                return Err(Error::PresetConstraint(format!(
                    "−(1+B²)p² + B²q² = 1 fails by {resid:e}; q should be {solved}"
                )));
            }
            q
        }
        None => solved,
    };
    let a = (1.0 + b * b).sqrt();
    ParamCurve::new(
        vec![
            vec![ScalarTerm::cos(a, p)],
            vec![ScalarTerm::sin(a, p)],
            vec![ScalarTerm::cos(b, q)],
            vec![ScalarTerm::sin(b, q)],
            vec![],
        ],
        (0.0, TAU),
    )
}

/// Lift of a unit-speed Minkowski-space curve y(s) through the horosphere
/// x = (1 + ⟨y,y⟩/2, y₀, y₁, y₂, ⟨y,y⟩/2), which is an isometric embedding of
/// ℝ³₁ into AdS⁴. Here y′ = (t, cos ωs − t sin ωs, sin ωs + t cos ωs) with
/// t = c + amp·cos νs, so ⟨y′,y′⟩ = 1 identically.
pub fn horospherical_curve(
    omega: f64,
    c: f64,
    amp: f64,
    nu: f64,
    domain: (f64, f64),
) -> Result<ParamCurve> {
    if omega == 0.0 {
        return Err(Error::PresetConstraint("omega must be nonzero".into()));
    }
    let t: TermSum = vec![ScalarTerm::poly(c, 0), ScalarTerm::cos(amp, nu)];
    let cos_w = vec![ScalarTerm::cos(1.0, omega)];
    let sin_w = vec![ScalarTerm::sin(1.0, omega)];
    let y0p = combine(&[(1.0, &t)]);
    let y1p = combine(&[(1.0, &cos_w), (-1.0, &multiply(&t, &sin_w))]);
    let y2p = combine(&[(1.0, &sin_w), (1.0, &multiply(&t, &cos_w))]);
    let (y0, y1, y2) = (integrate(&y0p), integrate(&y1p), integrate(&y2p));
    let q = combine(&[
        (-1.0, &multiply(&y0, &y0)),
        (1.0, &multiply(&y1, &y1)),
        (1.0, &multiply(&y2, &y2)),
    ]);
    let one = vec![ScalarTerm::poly(1.0, 0)];
    let xm1 = combine(&[(1.0, &one), (0.5, &q)]);
    let x3 = combine(&[(0.5, &q)]);
    ParamCurve::new(vec![xm1, y0, y1, y2, x3], domain)
}

fn st(coeff: f64, u: Factor, v: Factor) -> SurfaceTerm {
    SurfaceTerm::new(coeff, u, v)
}

pub fn lightcone_sphere(r: f64) -> Result<ParamSurface> {
    if r <= 0.0 {
        return Err(Error::PresetConstraint(
            "sphere radius must be positive".into(),
        ));
    }
    let one = Factor::ONE;
    let s = ParamSurface::new(
        vec![
            vec![st(1.0, one, one)],
            vec![st(r, one, one)],
            vec![st(r, Factor::cos(1.0), Factor::cos(1.0))],
            vec![st(r, Factor::cos(1.0), Factor::sin(1.0))],
            vec![st(r, Factor::sin(1.0), one)],
        ],
        [(-1.2, 1.2), (0.0, TAU)],
    )?;
    // e₀ projects onto a null normal here, so the timelike chart uses e₋₁ − e₀.
    s.with_reference(AmbientVector::new(&[1.0, -1.0, 0.0, 0.0, 0.0])?)
}

pub fn product_torus(c: f64, a: f64) -> Result<ParamSurface> {
    if !(c > a && a > 0.0) {
        return Err(Error::PresetConstraint("torus needs c > a > 0".into()));
    }
    let p = (1.0 + (c + a).powi(2)).sqrt();
    let m = (1.0 + (c - a).powi(2)).sqrt();
    let (alpha, beta) = ((p + m) / 2.0, (p - m) / 2.0);
    if a <= beta {
        return Err(Error::PresetConstraint(format!(
            "torus is not spacelike: a = {a} must exceed β = {beta}"
        )));
    }
    let one = Factor::ONE;
    ParamSurface::new(
        vec![
            vec![st(alpha, one, one), st(beta, one, Factor::cos(1.0))],
            vec![st(beta, one, Factor::sin(1.0))],
            vec![
                st(c, Factor::cos(1.0), one),
                st(a, Factor::cos(1.0), Factor::cos(1.0)),
            ],
            vec![
                st(c, Factor::sin(1.0), one),
                st(a, Factor::sin(1.0), Factor::cos(1.0)),
            ],
            vec![st(a, one, Factor::sin(1.0))],
        ],
        [(0.0, TAU), (0.0, TAU)],
    )
}

type Poly2 = BTreeMap<(u32, u32), f64>;

fn poly2_mul(p: &Poly2, q: &Poly2) -> Poly2 {
    let mut out = Poly2::new();
    for (&(a, b), x) in p {
        for (&(c, d), y) in q {
            *out.entry((a + c, b + d)).or_insert(0.0) += x * y;
        }
    }
    out
}

fn poly2_terms(p: &Poly2, k: f64) -> Vec<SurfaceTerm> {
    p.iter()
        .filter(|(_, c)| **c != 0.0)
        .map(|(&(a, b), c)| st(k * c, Factor::poly(a), Factor::poly(b)))
        .collect()
}

/// Horospherical lift of the Minkowski graph y = (f(u,v), u, v) with
/// f = a u²/2 + b v²/2 + e(u³ + u²v + v³)/6. The lift is isometric, so the
/// surface is spacelike wherever |∇f| < 1.
pub fn graph_surface(a: f64, b: f64, e: f64, w: f64) -> Result<ParamSurface> {
    if !(w > 0.0) {
        return Err(Error::PresetConstraint(
            "half-width w must be positive".into(),
        ));
    }
    // Bound |∇f| on the square by the sum of monomial bounds.
    let grad_bound = (a.abs() * w + e.abs() * (0.5 + 1.0) * w * w)
        .hypot(b.abs() * w + e.abs() * (1.0 / 6.0 + 0.5) * w * w * 3.0);
    if grad_bound >= 1.0 {
        return Err(Error::PresetConstraint(format!(
            "graph is not spacelike on [−w, w]²: |∇f| may reach {grad_bound}"
        )));
    }
    let f: Poly2 = [
        ((2, 0), a / 2.0),
        ((0, 2), b / 2.0),
        ((3, 0), e / 6.0),
        ((2, 1), e / 6.0),
        ((0, 3), e / 6.0),
    ]
    .into_iter()
    .collect();
    let mut q: Poly2 = poly2_mul(&f, &f)
        .into_iter()
        .map(|(k, v)| (k, -v))
        .collect();
    *q.entry((2, 0)).or_insert(0.0) += 1.0;
    *q.entry((0, 2)).or_insert(0.0) += 1.0;
    let mut xm1 = poly2_terms(&q, 0.5);
    xm1.push(st(1.0, Factor::ONE, Factor::ONE));
    ParamSurface::new(
        vec![
            xm1,
            poly2_terms(&f, 1.0),
            vec![st(1.0, Factor::poly(1), Factor::ONE)],
            vec![st(1.0, Factor::ONE, Factor::poly(1))],
            poly2_terms(&q, 0.5),
        ],
        [(-w, w), (-w, w)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parametric::validate;
    use crate::semi_euclidean::nullcone_residual;
    use crate::tolerance::ToleranceConfig;

    #[test]
    fn every_preset_validates_tightly() {
        let cfg = ToleranceConfig::default();
        for info in PRESETS {
            let obj = preset_default(info.name).unwrap();
            let n = if obj.base_dim() == 1 { 1000 } else { 40 };
            let r = validate(&obj, n, &cfg).unwrap();
            assert!(r.ok, "{} failed validation: {r:?}", info.name);
            assert!(
                r.max_ads_residual < 1e-12,
                "{}: {}",
                info.name,
                r.max_ads_residual
            );
            assert!(
                r.max_unit_speed_residual < 1e-12,
                "{}: {}",
                info.name,
                r.max_unit_speed_residual
            );
        }
    }

    #[test]
    fn circle_values() {
        let c = ads3_circle(1.0).unwrap();
        let p = c.eval_derivative(0.0, 0).unwrap();
        assert_eq!(p.coords(), &[2f64.sqrt(), 0.0, 1.0, 0.0]);
    }

    #[test]
    fn helix_q_is_solved() {
        assert!((helix_q(1.0, 1.0).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert!(ads4_helix(1.0, 1.0, Some(3f64.sqrt())).is_ok());
        assert!(matches!(
            ads4_helix(1.0, 1.0, Some(2.0)),
            Err(Error::PresetConstraint(_))
        ));
    }

    #[test]
    fn lightcone_sphere_lies_on_lightcone() {
        let s = lightcone_sphere(1.0).unwrap();
        let l0 = AmbientVector::basis(5, -1);
        for u in s.samples(20) {
            let x = s.partials(u).unwrap().point();
            assert!(nullcone_residual(&x, &l0).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn unknown_parameters_are_rejected() {
        let mut p = BTreeMap::new();
        p.insert("zz".to_string(), 1.0);
        assert!(preset("ads3-circle", &p).is_err());
        assert!(preset_default("nope").is_err());
    }
}
