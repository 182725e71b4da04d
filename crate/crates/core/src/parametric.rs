//! Parametric curves and surfaces with exact derivatives.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::semi_euclidean::{ads_residual, AmbientVector, MAX_DIM, MIN_DIM};
use crate::terms::{sum_derivatives, ScalarTerm, SurfaceTerm, TermSum};
use crate::tolerance::ToleranceConfig;

/// Highest curve derivative order available.
pub const MAX_CURVE_ORDER: usize = 5;
/// Highest total order of surface partial derivatives.
pub const MAX_SURFACE_ORDER: usize = 5;

/// Slack allowed when testing parameter membership in the domain.
const DOMAIN_SLACK: f64 = 1e-12;

fn check_dim(dim: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: MIN_DIM,
            found: dim,
        })
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "domain [{a}, {b}] is not a proper interval"
        )))
    }
}

fn in_interval(x: f64, (a, b): (f64, f64)) -> Result<()> {
    let slack = DOMAIN_SLACK * (1.0 + a.abs().max(b.abs()));
    if x.is_finite() && x >= a - slack && x <= b + slack {
        Ok(())
    } else {
        Err(Error::Domain {
            value: x,
            min: a,
            max: b,
        })
    }
}

/// Spacelike curve γ: [s_min, s_max] → ℝⁿ⁺²₂ given by term sums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamCurve {
    pub dim: usize,
    pub domain: (f64, f64),
    pub coords: Vec<TermSum>,
}

impl ParamCurve {
    pub fn new(coords: Vec<TermSum>, domain: (f64, f64)) -> Result<Self> {
        let dim = coords.len();
        check_dim(dim)?;
        check_interval(domain.0, domain.1)?;
        for t in coords.iter().flatten() {
            t.validate()?;
        }
        Ok(Self {
            dim,
            domain,
            coords,
        })
    }

    /// Derivatives γ, γ′, …, γ⁽ᵐ⁾ without domain checks.
    pub fn derivatives_unchecked(&self, s: f64, m: usize) -> [AmbientVector; MAX_CURVE_ORDER + 1] {
        let mut out = [AmbientVector::zero(self.dim); MAX_CURVE_ORDER + 1];
        let mut buf = [0.0f64; MAX_CURVE_ORDER + 1];
        for (i, terms) in self.coords.iter().enumerate() {
            sum_derivatives(terms, s, m, &mut buf);
            for k in 0..=m {
                out[k][i] = buf[k];
            }
        }
        out
    }

    /// Derivatives 0..=m at `s`, checked against order and domain limits.
    pub fn derivatives(&self, s: f64, m: usize) -> Result<Vec<AmbientVector>> {
        if m > MAX_CURVE_ORDER {
            return Err(Error::Order {
                requested: m,
                max: MAX_CURVE_ORDER,
            });
        }
        in_interval(s, self.domain)?;
        Ok(self.derivatives_unchecked(s, m)[..=m].to_vec())
    }

    /// γ⁽ᵒʳᵈᵉʳ⁾(s).
    pub fn eval_derivative(&self, s: f64, order: usize) -> Result<AmbientVector> {
        Ok(self.derivatives(s, order)?[order])
    }

    pub fn check_param(&self, s: f64) -> Result<()> {
        in_interval(s, self.domain)
    }

    /// Uniform samples of the domain including both endpoints.
    pub fn samples(&self, n: usize) -> Vec<f64> {
        linspace(self.domain.0, self.domain.1, n)
    }

    /// Reparametrization s ↦ γ(k·s) (leaves the unit-speed class unless k = ±1).
    pub fn rescaled_parameter(&self, k: f64) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|ts| ts.iter().map(|t| rescale_term(t, k)).collect::<TermSum>())
            .collect();
        let (a, b) = (self.domain.0 / k, self.domain.1 / k);
        Self::new(coords, (a.min(b), a.max(b)))
    }

    /// Multiplies every coordinate by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        let mut out = self.clone();
        for t in out.coords.iter_mut().flatten() {
            t.coeff *= k;
        }
        out
    }
}

fn rescale_term(t: &ScalarTerm, k: f64) -> ScalarTerm {
    ScalarTerm {
        coeff: t.coeff * k.powi(t.power as i32),
        freq: t.freq * k,
        ..*t
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// All partial derivatives ∂ᵤᵃ∂ᵥᵇX with a + b ≤ 5 at one point.
#[derive(Debug, Clone, Copy)]
pub struct SurfacePartials {
    d: [[AmbientVector; MAX_SURFACE_ORDER + 1]; MAX_SURFACE_ORDER + 1],
}

impl SurfacePartials {
    /// ∂ᵤᵃ∂ᵥᵇX.
    pub fn get(&self, a: usize, b: usize) -> AmbientVector {
        assert!(a + b <= MAX_SURFACE_ORDER);
        self.d[a][b]
    }

    /// Partial derivative addressed by a multi-index of variable labels (0 = u₁, 1 = u₂).
    pub fn by_indices(&self, idx: &[usize]) -> AmbientVector {
        let a = idx.iter().filter(|&&i| i == 0).count();
        self.get(a, idx.len() - a)
    }

    pub fn point(&self) -> AmbientVector {
        self.d[0][0]
    }

    pub fn tangents(&self) -> [AmbientVector; 2] {
        [self.d[1][0], self.d[0][1]]
    }
}

/// Spacelike surface X: U ⊂ ℝ² → ℝⁿ⁺²₂ given by two-variable term sums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSurface {
    pub dim: usize,
    pub domain: [(f64, f64); 2],
    pub coords: Vec<Vec<SurfaceTerm>>,
    /// Reference vector projected onto the normal plane to build nᵀ.
    pub reference: Option<AmbientVector>,
}

impl ParamSurface {
    pub fn new(coords: Vec<Vec<SurfaceTerm>>, domain: [(f64, f64); 2]) -> Result<Self> {
        let dim = coords.len();
        check_dim(dim)?;
        for (a, b) in domain {
            check_interval(a, b)?;
        }
        for t in coords.iter().flatten() {
            t.validate()?;
        }
        Ok(Self {
            dim,
            domain,
            coords,
            reference: None,
        })
    }

    pub fn with_reference(mut self, r: AmbientVector) -> Result<Self> {
        if r.dim() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: r.dim(),
            });
        }
        self.reference = Some(r);
        Ok(self)
    }

    /// Reference vector for the timelike normal chart (defaults to e₀).
    pub fn reference_vector(&self) -> AmbientVector {
        self.reference
            .unwrap_or_else(|| AmbientVector::basis(self.dim, 0))
    }

    pub fn check_param(&self, u: [f64; 2]) -> Result<()> {
        in_interval(u[0], self.domain[0])?;
        in_interval(u[1], self.domain[1])
    }

    pub fn partials_unchecked(&self, u: [f64; 2]) -> SurfacePartials {
        let mut d = [[AmbientVector::zero(self.dim); MAX_SURFACE_ORDER + 1]; MAX_SURFACE_ORDER + 1];
        let mut fu = [0.0f64; 8];
        let mut fv = [0.0f64; 8];
        for (i, terms) in self.coords.iter().enumerate() {
            for t in terms {
                t.u.derivatives(u[0], MAX_SURFACE_ORDER, &mut fu);
                t.v.derivatives(u[1], MAX_SURFACE_ORDER, &mut fv);
                for a in 0..=MAX_SURFACE_ORDER {
                    for b in 0..=MAX_SURFACE_ORDER - a {
                        d[a][b][i] += t.coeff * fu[a] * fv[b];
                    }
                }
            }
        }
        SurfacePartials { d }
    }

    pub fn partials(&self, u: [f64; 2]) -> Result<SurfacePartials> {
        self.check_param(u)?;
        Ok(self.partials_unchecked(u))
    }

    /// ∂ᵤᵃ∂ᵥᵇX(u).
    pub fn eval_partial(&self, u: [f64; 2], a: usize, b: usize) -> Result<AmbientVector> {
        if a + b > MAX_SURFACE_ORDER {
            return Err(Error::Order {
                requested: a + b,
                max: MAX_SURFACE_ORDER,
            });
        }
        Ok(self.partials(u)?.get(a, b))
    }

    /// Uniform `n × n` grid over the domain, u₁ varying slowest.
    pub fn samples(&self, n: usize) -> Vec<[f64; 2]> {
        let us = linspace(self.domain[0].0, self.domain[0].1, n);
        let vs = linspace(self.domain[1].0, self.domain[1].1, n);
        us.iter()
            .flat_map(|&u| vs.iter().map(move |&v| [u, v]))
            .collect()
    }
}

/// Either kind of parametric object.
#[derive(Debug, Clone, PartialEq)]
pub enum GeomObject {
    Curve(ParamCurve),
    Surface(ParamSurface),
}

impl GeomObject {
    pub fn dim(&self) -> usize {
        match self {
            GeomObject::Curve(c) => c.dim,
            GeomObject::Surface(s) => s.dim,
        }
    }

    /// Number of base parameters (1 for curves, 2 for surfaces).
    pub fn base_dim(&self) -> usize {
        match self {
            GeomObject::Curve(_) => 1,
            GeomObject::Surface(_) => 2,
        }
    }

    pub fn as_curve(&self) -> Result<&ParamCurve> {
        match self {
            GeomObject::Curve(c) => Ok(c),
            GeomObject::Surface(_) => Err(Error::InvalidInput("a curve is required".into())),
        }
    }

    pub fn as_surface(&self) -> Result<&ParamSurface> {
        match self {
            GeomObject::Surface(s) => Ok(s),
            GeomObject::Curve(_) => Err(Error::InvalidInput("a surface is required".into())),
        }
    }

    /// Parses the JSON object format
    /// `{"dim": 5, "domain": [a,b], "coords": [[term, …], …]}` for curves and
    /// `{"type": "surface", "domain": [[a,b],[c,d]], "coords": [[sterm, …], …]}`
    /// for surfaces. Surfaces may carry an optional `"reference"` vector.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("top-level JSON value must be an object".into()))?;
        let is_surface = match obj.get("type").and_then(Value::as_str) {
            Some("surface") => true,
            Some("curve") => false,
            Some(other) => {
                return Err(Error::InvalidInput(format!(
                    "unknown object type '{other}'"
                )))
            }
            None => {
                matches!(obj.get("domain"), Some(Value::Array(a)) if a.first().is_some_and(Value::is_array))
            }
        };
        let coords = obj
            .get("coords")
            .ok_or_else(|| Error::InvalidInput("missing 'coords'".into()))?;
        let domain = obj
            .get("domain")
            .ok_or_else(|| Error::InvalidInput("missing 'domain'".into()))?;
        let bad = |e: serde_json::Error| Error::InvalidInput(e.to_string());
        let out = if is_surface {
            let coords: Vec<Vec<SurfaceTerm>> =
                serde_json::from_value(coords.clone()).map_err(bad)?;
            let d: [[f64; 2]; 2] = serde_json::from_value(domain.clone()).map_err(bad)?;
            let mut s = ParamSurface::new(coords, [(d[0][0], d[0][1]), (d[1][0], d[1][1])])?;
            if let Some(r) = obj.get("reference") {
                let r: AmbientVector = serde_json::from_value(r.clone()).map_err(bad)?;
                s = s.with_reference(r)?;
            }
            GeomObject::Surface(s)
        } else {
            let coords: Vec<TermSum> = serde_json::from_value(coords.clone()).map_err(bad)?;
            let d: [f64; 2] = serde_json::from_value(domain.clone()).map_err(bad)?;
            GeomObject::Curve(ParamCurve::new(coords, (d[0], d[1]))?)
        };
        if let Some(dim) = obj.get("dim").and_then(Value::as_u64) {
            if dim as usize != out.dim() {
                return Err(Error::Dimension {
                    expected: dim as usize,
                    found: out.dim(),
                });
            }
        }
        Ok(out)
    }

    /// Serializes back to the JSON object format accepted by [`GeomObject::from_json`].
    pub fn to_json(&self) -> Value {
        match self {
            GeomObject::Curve(c) => serde_json::json!({
                "type": "curve",
                "dim": c.dim,
                "domain": [c.domain.0, c.domain.1],
                "coords": c.coords,
            }),
            GeomObject::Surface(s) => {
                let mut v = serde_json::json!({
                    "type": "surface",
                    "dim": s.dim,
                    "domain": [[s.domain[0].0, s.domain[0].1], [s.domain[1].0, s.domain[1].1]],
                    "coords": s.coords,
                });
                if let Some(r) = s.reference {
                    v["reference"] = serde_json::to_value(r).expect("vector serializes");
                }
                v
            }
        }
    }
}

/// Outcome of [`validate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub max_ads_residual: f64,
    /// |⟨γ′,γ′⟩ − 1| for curves; 0 for surfaces.
    pub max_unit_speed_residual: f64,
    /// Smallest eigenvalue of the first fundamental form (surfaces only).
    pub min_metric_eigenvalue: Option<f64>,
    pub failing_samples: Vec<Vec<f64>>,
}

/// Checks AdS membership and spacelikeness on a uniform parameter grid
/// (`n_samples` per parameter axis).
pub fn validate(
    obj: &GeomObject,
    n_samples: usize,
    cfg: &ToleranceConfig,
) -> Result<ValidationReport> {
    if n_samples < 2 {
        return Err(Error::Grid("validation needs at least 2 samples".into()));
    }
    let tol = cfg.algebraic_tol;
    let mut rep = ValidationReport {
        ok: true,
        max_ads_residual: 0.0,
        max_unit_speed_residual: 0.0,
        min_metric_eigenvalue: None,
        failing_samples: Vec::new(),
    };
    match obj {
        GeomObject::Curve(c) => {
            for s in c.samples(n_samples) {
                let d = c.derivatives_unchecked(s, 1);
                let ra = ads_residual(&d[0]).abs();
                let ru = (d[1].dot(&d[1]) - 1.0).abs();
                rep.max_ads_residual = rep.max_ads_residual.max(ra);
                rep.max_unit_speed_residual = rep.max_unit_speed_residual.max(ru);
                if ra >= tol || ru >= tol {
                    rep.failing_samples.push(vec![s]);
                }
            }
        }
        GeomObject::Surface(sf) => {
            let mut min_eig = f64::INFINITY;
            for u in sf.samples(n_samples) {
                let p = sf.partials_unchecked(u);
                let ra = ads_residual(&p.point()).abs();
                let [xu, xv] = p.tangents();
                let (a, b, c) = (xu.dot(&xu), xu.dot(&xv), xv.dot(&xv));
                let lam_min = 0.5 * (a + c) - (0.25 * (a - c).powi(2) + b * b).sqrt();
                min_eig = min_eig.min(lam_min);
                rep.max_ads_residual = rep.max_ads_residual.max(ra);
                if ra >= tol || lam_min <= tol {
                    rep.failing_samples.push(u.to_vec());
                }
            }
            rep.min_metric_eigenvalue = Some(min_eig);
        }
    }
    rep.ok = rep.failing_samples.is_empty();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::ScalarTerm;

    fn circle() -> ParamCurve {
        ParamCurve::new(
            vec![
                vec![ScalarTerm::poly(2f64.sqrt(), 0)],
                vec![],
                vec![ScalarTerm::cos(1.0, 1.0)],
                vec![ScalarTerm::sin(1.0, 1.0)],
            ],
            (0.0, std::f64::consts::TAU),
        )
        .unwrap()
    }

    #[test]
    fn order_and_domain_errors() {
        let c = circle();
        assert!(matches!(
            c.eval_derivative(0.0, 6),
            Err(Error::Order { .. })
        ));
        assert!(matches!(
            c.eval_derivative(-1.0, 0),
            Err(Error::Domain { .. })
        ));
        assert_eq!(
            c.eval_derivative(0.0, 1).unwrap().coords(),
            &[0.0, 0.0, 0.0, 1.0]
        );
    }

    #[test]
    fn validation_detects_scaling_and_speed() {
        let cfg = ToleranceConfig::default();
        let c = GeomObject::Curve(circle());
        assert!(validate(&c, 50, &cfg).unwrap().ok);
        let scaled = GeomObject::Curve(circle().scaled(1.1));
        let r = validate(&scaled, 50, &cfg).unwrap();
        assert!(!r.ok);
        assert!((r.max_ads_residual - 0.21).abs() < 1e-12);
        let fast = GeomObject::Curve(circle().rescaled_parameter(2.0).unwrap());
        let r = validate(&fast, 50, &cfg).unwrap();
        assert!(!r.ok);
        assert!((r.max_unit_speed_residual - 3.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let c = GeomObject::Curve(circle());
        let back = GeomObject::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        let err = GeomObject::from_json(&serde_json::json!({"domain": [0, 1]}));
        assert!(err.is_err());
    }
}
