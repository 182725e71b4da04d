//! The AdS-height family H(u, λ) = ⟨X(u), λ⟩ + 1: jets, A_k detection,
//! Hessians, Morse-family and versality ranks, Legendrian lift coordinates.

use nalgebra::{Matrix2, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parametric::{GeomObject, ParamCurve, ParamSurface, MAX_CURVE_ORDER, MAX_SURFACE_ORDER};
use crate::semi_euclidean::{ads_residual, numeric_rank, singular_values, AmbientVector};
use crate::tolerance::ToleranceConfig;

/// Local differential data of a curve or surface at one parameter value.
#[derive(Debug, Clone)]
pub(crate) struct Local {
    pub point: AmbientVector,
    /// X_uᵢ.
    pub first: Vec<AmbientVector>,
    /// X_uᵢuⱼ.
    pub second: Vec<Vec<AmbientVector>>,
}

pub(crate) fn check_base(obj: &GeomObject, base: &[f64]) -> Result<()> {
    if base.len() != obj.base_dim() {
        return Err(Error::Arity {
            expected: obj.base_dim(),
            found: base.len(),
        });
    }
    Ok(())
}

pub(crate) fn local_data(obj: &GeomObject, base: &[f64]) -> Result<Local> {
    check_base(obj, base)?;
    match obj {
        GeomObject::Curve(c) => {
            let d = c.derivatives(base[0], 2)?;
            Ok(Local {
                point: d[0],
                first: vec![d[1]],
                second: vec![vec![d[2]]],
            })
        }
        GeomObject::Surface(s) => {
            let p = s.partials([base[0], base[1]])?;
            Ok(Local {
                point: p.point(),
                first: p.tangents().to_vec(),
                second: vec![
                    vec![p.get(2, 0), p.get(1, 1)],
                    vec![p.get(1, 1), p.get(0, 2)],
                ],
            })
        }
    }
}

/// Rejects λ off AdS (relative to its Euclidean size).
pub fn check_in_ads(lambda: &AmbientVector, cfg: &ToleranceConfig) -> Result<()> {
    let r = ads_residual(lambda);
    if !(r.abs() <= cfg.algebraic_tol * lambda.euclid_sq().max(1.0)) {
        return Err(Error::ModelSpace { residual: r });
    }
    Ok(())
}

fn check_dims(obj_dim: usize, lambda: &AmbientVector) -> Result<()> {
    if lambda.dim() != obj_dim {
        return Err(Error::Dimension {
            expected: obj_dim,
            found: lambda.dim(),
        });
    }
    Ok(())
}

/// H(u, λ) = ⟨X(u), λ⟩ + 1.
pub fn height(
    obj: &GeomObject,
    base: &[f64],
    lambda: &AmbientVector,
    cfg: &ToleranceConfig,
) -> Result<f64> {
    check_dims(obj.dim(), lambda)?;
    check_in_ads(lambda, cfg)?;
    Ok(local_data(obj, base)?.point.dot(lambda) + 1.0)
}

/// h(s) = H(s, λ) and its derivatives for a curve.
#[derive(Debug, Clone, Serialize)]
pub struct HeightJet {
    pub s: f64,
    pub lambda: AmbientVector,
    pub value: f64,
    /// h′, h″, … up to the requested order.
    pub derivatives: Vec<f64>,
}

impl HeightJet {
    /// h, h′, … as a single list.
    pub fn all(&self) -> Vec<f64> {
        std::iter::once(self.value)
            .chain(self.derivatives.iter().copied())
            .collect()
    }
}

pub fn height_jet_curve(
    curve: &ParamCurve,
    s: f64,
    lambda: &AmbientVector,
    max_order: usize,
    cfg: &ToleranceConfig,
) -> Result<HeightJet> {
    if max_order > MAX_CURVE_ORDER {
        return Err(Error::Order {
            requested: max_order,
            max: MAX_CURVE_ORDER,
        });
    }
    check_dims(curve.dim, lambda)?;
    check_in_ads(lambda, cfg)?;
    let d = curve.derivatives(s, max_order)?;
    Ok(HeightJet {
        s,
        lambda: *lambda,
        value: d[0].dot(lambda) + 1.0,
        derivatives: d[1..=max_order].iter().map(|v| v.dot(lambda)).collect(),
    })
}

/// Outcome of A_k detection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AkReport {
    /// 0: not a critical zero; 1..=4: A_k; −1: all derivatives through the
    /// fifth vanish.
    pub k: i32,
    /// |h⁽ʲ⁾| / (1 + Σᵢ |h⁽ⁱ⁾|), j = 0..=5.
    pub normalized: Vec<f64>,
}

/// A_k order from h, h′, …, h⁽⁵⁾. When every supplied derivative vanishes the
/// order is undetermined and −1 is returned.
pub fn detect_ak(values: &[f64], tol: f64) -> AkReport {
    let total: f64 = 1.0 + values.iter().map(|v| v.abs()).sum::<f64>();
    let normalized: Vec<f64> = values.iter().map(|v| v.abs() / total).collect();
    let zero = |j: usize| normalized.get(j).is_some_and(|&v| v < tol);
    let k = if !zero(0) || !zero(1) {
        0
    } else {
        (2..values.len().min(6))
            .find(|&j| !zero(j))
            .map_or(-1, |j| j as i32 - 1)
    };
    AkReport { k, normalized }
}

pub fn detect_ak_curve(
    curve: &ParamCurve,
    s: f64,
    lambda: &AmbientVector,
    cfg: &ToleranceConfig,
) -> Result<AkReport> {
    let jet = height_jet_curve(curve, s, lambda, MAX_CURVE_ORDER, cfg)?;
    Ok(detect_ak(&jet.all(), cfg.zero_detect_tol))
}

/// Gradient, Hessian and corank of u ↦ H(u, λ) on a surface.
#[derive(Debug, Clone, Serialize)]
pub struct HessianReport {
    pub gradient: [f64; 2],
    pub hessian: [[f64; 2]; 2],
    /// Ascending eigenvalues of the Hessian.
    pub eigenvalues: [f64; 2],
    /// Unit eigenvectors matching `eigenvalues`.
    pub eigenvectors: [[f64; 2]; 2],
    pub corank: usize,
    /// Scale used for the vanishing test of eigenvalues.
    pub scale: f64,
}

impl HessianReport {
    /// Kernel directions (eigenvectors of vanishing eigenvalues).
    pub fn kernel(&self, tol: f64) -> Vec<[f64; 2]> {
        (0..2)
            .filter(|&i| self.eigenvalues[i].abs() <= tol * self.scale)
            .map(|i| self.eigenvectors[i])
            .collect()
    }
}

pub fn hessian_surface(
    surface: &ParamSurface,
    u: [f64; 2],
    lambda: &AmbientVector,
    cfg: &ToleranceConfig,
) -> Result<HessianReport> {
    check_dims(surface.dim, lambda)?;
    check_in_ads(lambda, cfg)?;
    let p = surface.partials(u)?;
    let hm = [
        [p.get(2, 0).dot(lambda), p.get(1, 1).dot(lambda)],
        [p.get(1, 1).dot(lambda), p.get(0, 2).dot(lambda)],
    ];
    let scale = 1.0
        + lambda.euclid_norm()
            * [p.get(2, 0), p.get(1, 1), p.get(0, 2)]
                .iter()
                .map(|v| v.euclid_norm())
                .fold(0.0, f64::max);
    let eig = SymmetricEigen::new(Matrix2::new(hm[0][0], hm[0][1], hm[1][0], hm[1][1]));
    let mut order = [0usize, 1];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.map(|i| eig.eigenvalues[i]);
    let eigenvectors = order.map(|i| [eig.eigenvectors[(0, i)], eig.eigenvectors[(1, i)]]);
    let corank = eigenvalues
        .iter()
        .filter(|e| e.abs() <= cfg.zero_detect_tol * scale)
        .count();
    Ok(HessianReport {
        gradient: [p.get(1, 0).dot(lambda), p.get(0, 1).dot(lambda)],
        hessian: hm,
        eigenvalues,
        eigenvectors,
        corank,
        scale,
    })
}

/// Singular-value rank of a dense matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub rows: usize,
    pub cols: usize,
    /// Descending singular values.
    pub singular_values: Vec<f64>,
    pub rank: usize,
}

impl RankReport {
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let sv = singular_values(rows);
        RankReport {
            rows: rows.len(),
            cols: rows.first().map_or(0, |r| r.len()),
            rank: numeric_rank(&sv),
            singular_values: sv,
        }
    }
}

/// ∂λ-gradient of ⟨v, λ⟩ in the chart (λ₀, λ₁, …, λₙ) of U⁺₋₁, where
/// λ₋₁ = √(1 − λ₀² + Σλᵢ²).
fn chart_gradient(v: &AmbientVector, lambda: &AmbientVector) -> Vec<f64> {
    let l = lambda[0];
    (1..v.dim())
        .map(|k| AmbientVector::metric_sign(k) * (v[k] - v[0] * lambda[k] / l))
        .collect()
}

/// Jacobian rank of (H, ∂H/∂u₁, …) in the U⁺₋₁ chart. Points with λ₋₁ ≤ 0
/// are outside the chart and rejected.
pub fn morse_family_rank(
    obj: &GeomObject,
    base: &[f64],
    lambda: &AmbientVector,
    cfg: &ToleranceConfig,
) -> Result<RankReport> {
    check_dims(obj.dim(), lambda)?;
    check_in_ads(lambda, cfg)?;
    if !(lambda[0] > 0.0) {
        return Err(Error::Chart(format!(
            "λ₋₁ = {} is not positive; the point lies outside U⁺₋₁",
            lambda[0]
        )));
    }
    let loc = local_data(obj, base)?;
    Ok(morse_matrix(&loc, lambda))
}

/// As [`morse_family_rank`], but first moves λ (and the object) into the
/// chart with the isometry negating (x₋₁, x₀) when λ₋₁ < 0.
pub fn morse_family_rank_normalized(
    obj: &GeomObject,
    base: &[f64],
    lambda: &AmbientVector,
    cfg: &ToleranceConfig,
) -> Result<RankReport> {
    check_dims(obj.dim(), lambda)?;
    check_in_ads(lambda, cfg)?;
    let mut loc = local_data(obj, base)?;
    let mut lam = *lambda;
    if lam[0] < 0.0 {
        let flip = |v: &mut AmbientVector| {
            v[0] = -v[0];
            v[1] = -v[1];
        };
        flip(&mut lam);
        flip(&mut loc.point);
        loc.first.iter_mut().for_each(flip);
        loc.second.iter_mut().flatten().for_each(flip);
    }
    if !(lam[0] > 0.0) {
        return Err(Error::Chart(
            "λ₋₁ vanishes; no chart of this family applies".into(),
        ));
    }
    Ok(morse_matrix(&loc, &lam))
}

fn morse_matrix(loc: &Local, lambda: &AmbientVector) -> RankReport {
    let s = loc.first.len();
    let mut rows = Vec::with_capacity(s + 1);
    let mut r0: Vec<f64> = loc.first.iter().map(|x| x.dot(lambda)).collect();
    r0.extend(chart_gradient(&loc.point, lambda));
    rows.push(r0);
    for i in 0..s {
        let mut r: Vec<f64> = (0..s).map(|j| loc.second[i][j].dot(lambda)).collect();
        r.extend(chart_gradient(&loc.first[i], lambda));
        rows.push(r);
    }
    RankReport::from_rows(&rows)
}

/// Rank of the 4×5 matrix with rows γ, γ′, γ″, γ‴ and the first two columns
/// negated.
pub fn versality_rank_ads4(curve: &ParamCurve, s: f64) -> Result<RankReport> {
    if curve.dim != 5 {
        return Err(Error::Dimension {
            expected: 5,
            found: curve.dim,
        });
    }
    let d = curve.derivatives(s, 3)?;
    Ok(versality_matrix_rank(&d))
}

/// Versality rank check for arbitrary derivative vectors.
pub fn versality_matrix_rank(derivs: &[AmbientVector]) -> RankReport {
    let rows: Vec<Vec<f64>> = derivs
        .iter()
        .map(|v| {
            (0..v.dim())
                .map(|k| AmbientVector::metric_sign(k) * v[k])
                .collect()
        })
        .collect();
    RankReport::from_rows(&rows)
}

/// Point of the Legendrian lift: λ with normalized homogeneous coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct LegendrianLift {
    pub lambda: AmbientVector,
    pub homogeneous: Vec<f64>,
}

/// Raw homogeneous coordinates (X₋₁λ₀ − X₀λ₋₁ : X₁λ₋₁ − X₋₁λ₁ : ⋯).
pub fn legendrian_raw(x: &AmbientVector, lambda: &AmbientVector) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.dim() - 1);
    out.push(x[0] * lambda[1] - x[1] * lambda[0]);
    for k in 2..x.dim() {
        out.push(x[k] * lambda[0] - x[0] * lambda[k]);
    }
    out
}

/// Scales a homogeneous vector to unit Euclidean norm with first nonzero
/// entry positive.
pub fn normalize_homogeneous(raw: &[f64], cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(norm > cfg.algebraic_tol) {
        return Err(Error::LiftDegenerate);
    }
    let lead = raw
        .iter()
        .find(|v| v.abs() > cfg.algebraic_tol * norm)
        .copied()
        .unwrap_or(1.0);
    let s = if lead < 0.0 { -1.0 / norm } else { 1.0 / norm };
    Ok(raw.iter().map(|v| v * s).collect())
}

pub fn legendrian_lift(
    obj: &GeomObject,
    base: &[f64],
    lambda: &AmbientVector,
    cfg: &ToleranceConfig,
) -> Result<LegendrianLift> {
    check_dims(obj.dim(), lambda)?;
    check_in_ads(lambda, cfg)?;
    let loc = local_data(obj, base)?;
    Ok(LegendrianLift {
        lambda: *lambda,
        homogeneous: normalize_homogeneous(&legendrian_raw(&loc.point, lambda), cfg)?,
    })
}

/// Degree-5 Taylor coefficients cₐᵦ of H(u₀ + (x, y), λ) in the surface
/// parameters; c[a][b] multiplies xᵃyᵇ.
pub type Bivariate = [[f64; 6]; 6];

pub fn surface_height_taylor(
    surface: &ParamSurface,
    u: [f64; 2],
    lambda: &AmbientVector,
) -> Result<Bivariate> {
    check_dims(surface.dim, lambda)?;
    let p = surface.partials(u)?;
    let fact = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0];
    let mut c = [[0.0; 6]; 6];
    for a in 0..=MAX_SURFACE_ORDER {
        for b in 0..=MAX_SURFACE_ORDER - a {
            c[a][b] = p.get(a, b).dot(lambda) / (fact[a] * fact[b]);
        }
    }
    c[0][0] += 1.0;
    Ok(c)
}

type Poly1 = [f64; 6];

fn mul1(a: &Poly1, b: &Poly1) -> Poly1 {
    let mut out = [0.0; 6];
    for i in 0..6 {
        for j in 0..6 - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

fn pow1(a: &Poly1, n: usize) -> Poly1 {
    let mut out = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    for _ in 0..n {
        out = mul1(&out, a);
    }
    out
}

/// Substitutes u = x·k + y·w (k, w ∈ ℝ²) into a bivariate polynomial.
pub fn rotate_bivariate(c: &Bivariate, k: [f64; 2], w: [f64; 2]) -> Bivariate {
    // Represent each linear form as a bivariate polynomial and expand.
    let lin = |a: f64, b: f64| {
        let mut p = [[0.0; 6]; 6];
        p[1][0] = a;
        p[0][1] = b;
        p
    };
    let mul2 = |p: &Bivariate, q: &Bivariate| {
        let mut out = [[0.0; 6]; 6];
        for a in 0..6 {
            for b in 0..6 - a {
                if p[a][b] == 0.0 {
                    continue;
                }
                for c2 in 0..6 - a - b {
                    for d in 0..6 - a - b - c2 {
                        out[a + c2][b + d] += p[a][b] * q[c2][d];
                    }
                }
            }
        }
        out
    };
    let ux = lin(k[0], w[0]);
    let uy = lin(k[1], w[1]);
    let mut px = vec![{
        let mut one = [[0.0; 6]; 6];
        one[0][0] = 1.0;
        one
    }];
    let mut py = px.clone();
    for i in 1..6 {
        px.push(mul2(&px[i - 1], &ux));
        py.push(mul2(&py[i - 1], &uy));
    }
    let mut out = [[0.0; 6]; 6];
    for a in 0..6 {
        for b in 0..6 - a {
            if c[a][b] == 0.0 {
                continue;
            }
            let term = mul2(&px[a], &py[b]);
            for (o, t) in out.iter_mut().flatten().zip(term.iter().flatten()) {
                *o += c[a][b] * t;
            }
        }
    }
    out
}

/// Splitting-lemma reduction of a corank-one germ whose Hessian is diagonal
/// with ∂²/∂y² ≠ 0: eliminates y through ∂f/∂y = 0 and returns the Taylor
/// coefficients of x ↦ f(x, φ(x)) up to degree 5.
pub fn splitting_reduction(c: &Bivariate) -> Poly1 {
    let cyy = 2.0 * c[0][2];
    let eval = |phi: &Poly1, deriv_y: bool| -> Poly1 {
        let mut out = [0.0; 6];
        for a in 0..6 {
            for b in 0..6 - a {
                let (coef, power) = if deriv_y {
                    if b == 0 {
                        continue;
                    }
                    (b as f64 * c[a][b], b - 1)
                } else {
                    (c[a][b], b)
                };
                if coef == 0.0 {
                    continue;
                }
                let t = pow1(phi, power);
                for i in 0..6 - a {
                    out[a + i] += coef * t[i];
                }
            }
        }
        out
    };
    let mut phi = [0.0; 6];
    if cyy != 0.0 {
        for _ in 0..8 {
            let fy = eval(&phi, true);
            for i in 0..6 {
                phi[i] -= fy[i] / cyy;
            }
            phi[0] = 0.0;
        }
    }
    eval(&phi, false)
}

/// Derivative values j!·gⱼ of a univariate Taylor polynomial.
pub fn taylor_to_derivatives(g: &Poly1) -> Vec<f64> {
    let fact = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0];
    g.iter().zip(fact).map(|(c, f)| c * f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detect_ak_ladder() {
        let tol = 1e-7;
        assert_eq!(detect_ak(&[0.3, 0.0, 1.0, 0.0, 0.0, 0.0], tol).k, 0);
        assert_eq!(detect_ak(&[0.0, 0.0, 1.0, 0.0, 0.0, 0.0], tol).k, 1);
        assert_eq!(detect_ak(&[0.0, 0.0, 0.0, 2.0, 0.0, 0.0], tol).k, 2);
        assert_eq!(detect_ak(&[0.0, 0.0, 0.0, 0.0, 1.0, 1.0], tol).k, 3);
        assert_eq!(detect_ak(&[0.0, 0.0, 0.0, 0.0, 0.0, 1.0], tol).k, 4);
        assert_eq!(detect_ak(&[0.0; 6], tol).k, -1);
    }

    #[test]
    fn splitting_reduces_a3_germ() {
        // f = y² + x⁴ + x²y: eliminating y = −x²/2 gives x⁴ − x⁴/4 = ¾x⁴.
        let mut c = [[0.0; 6]; 6];
        c[0][2] = 1.0;
        c[4][0] = 1.0;
        c[2][1] = 1.0;
        let g = splitting_reduction(&c);
        assert!(g[3].abs() < 1e-15);
        assert!((g[4] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn rotation_matches_direct_substitution() {
        let mut c = [[0.0; 6]; 6];
        c[1][2] = 0.7;
        c[3][0] = -1.1;
        c[0][2] = 0.4;
        let (cs, sn) = (0.6f64, 0.8f64);
        let r = rotate_bivariate(&c, [cs, sn], [-sn, cs]);
        let f = |u: f64, v: f64| 0.7 * u * v * v - 1.1 * u.powi(3) + 0.4 * v * v;
        let (x, y) = (0.3, -0.2);
        let direct = f(x * cs - y * sn, x * sn + y * cs);
        let mut via = 0.0;
        for a in 0..6 {
            for b in 0..6 - a {
                via += r[a][b] * x.powi(a as i32) * y.powi(b as i32);
            }
        }
        assert!((direct - via).abs() < 1e-14);
    }
}
