//! Normal frames, fundamental forms and nullcone principal curvatures of
//! spacelike surfaces in AdS⁴.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parametric::{ParamSurface, SurfacePartials};
use crate::semi_euclidean::{generalized_eigen, wedge_unchecked, AmbientVector};
use crate::tolerance::ToleranceConfig;

/// Adopted normal frame (nᵀ, nˢ) at a surface point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SurfaceFrame {
    pub at: [f64; 2],
    pub x: AmbientVector,
    pub x_u: [AmbientVector; 2],
    /// Timelike unit normal, ⟨nᵀ,nᵀ⟩ = −1.
    pub n_t: AmbientVector,
    /// Spacelike unit normal, ⟨nˢ,nˢ⟩ = 1.
    pub n_s: AmbientVector,
    /// First fundamental form gᵢⱼ = ⟨X_uᵢ, X_uⱼ⟩.
    pub g: [[f64; 2]; 2],
}

impl SurfaceFrame {
    /// Null normal nᵀ + sign·nˢ.
    pub fn null_normal(&self, sign: i8) -> AmbientVector {
        self.n_t.axpy(sign_f(sign), &self.n_s)
    }
}

pub(crate) fn sign_f(sign: i8) -> f64 {
    if sign < 0 {
        -1.0
    } else {
        1.0
    }
}

fn check_sign(sign: i8) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "normal sign must be ±1, got {sign}"
        )))
    }
}

fn first_form(xu: &[AmbientVector; 2]) -> [[f64; 2]; 2] {
    let g12 = xu[0].dot(&xu[1]);
    [[xu[0].dot(&xu[0]), g12], [g12, xu[1].dot(&xu[1])]]
}

fn inverse2(m: &[[f64; 2]; 2]) -> Option<[[f64; 2]; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    Some([
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ])
}

fn check_metric(g: &[[f64; 2]; 2], cfg: &ToleranceConfig) -> Result<()> {
    let scale = g[0][0].abs().max(g[1][1].abs()).max(1e-300);
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if g[0][0] <= cfg.algebraic_tol * scale || det <= cfg.algebraic_tol * scale * scale {
        return Err(Error::MetricDegenerate(format!(
            "first fundamental form is not positive definite (g₁₁ = {:e}, det = {det:e})",
            g[0][0]
        )));
    }
    Ok(())
}

/// Sign of det(X, nᵀ, e₁, …, eₙ), which reduces to the (−1, 0) minor of (X, nᵀ).
fn adopted_sign(x: &AmbientVector, nt: &AmbientVector) -> f64 {
    x[0] * nt[1] - x[1] * nt[0]
}

/// Frame at `u` using the surface's reference vector for nᵀ.
pub fn normal_frame(
    surface: &ParamSurface,
    u: [f64; 2],
    cfg: &ToleranceConfig,
) -> Result<SurfaceFrame> {
    normal_frame_with_reference(surface, u, &surface.reference_vector(), cfg)
}

/// Frame at `u` with nᵀ obtained by projecting `reference` onto the normal
/// Lorentz plane.
pub fn normal_frame_with_reference(
    surface: &ParamSurface,
    u: [f64; 2],
    reference: &AmbientVector,
    cfg: &ToleranceConfig,
) -> Result<SurfaceFrame> {
    if surface.dim != 5 {
        return Err(Error::Dimension {
            expected: 5,
            found: surface.dim,
        });
    }
    if reference.dim() != surface.dim {
        return Err(Error::Dimension {
            expected: surface.dim,
            found: reference.dim(),
        });
    }
    let p = surface.partials(u)?;
    frame_from_partials(&p, u, reference, cfg)
}

pub(crate) fn frame_from_partials(
    p: &SurfacePartials,
    u: [f64; 2],
    reference: &AmbientVector,
    cfg: &ToleranceConfig,
) -> Result<SurfaceFrame> {
    let x = p.point();
    let xu = p.tangents();
    let g = first_form(&xu);
    check_metric(&g, cfg)?;
    let gi = inverse2(&g).ok_or_else(|| Error::MetricDegenerate("g is singular".into()))?;
    // X is orthogonal to X_uᵢ (⟨X,X⟩ ≡ −1), so the projection splits.
    let mut r = reference.axpy(reference.dot(&x), &x);
    let rx = [reference.dot(&xu[0]), reference.dot(&xu[1])];
    for i in 0..2 {
        for j in 0..2 {
            r = r.axpy(-gi[i][j] * rx[i], &xu[j]);
        }
    }
    let q = r.dot(&r);
    if q >= -cfg.zero_detect_tol * r.euclid_sq().max(1.0) {
        return Err(Error::Chart(format!(
            "reference projects to a non-timelike normal (⟨r,r⟩ = {q:e}); supply another reference"
        )));
    }
    let mut nt = r.scale(1.0 / (-q).sqrt());
    let orient = adopted_sign(&x, &nt);
    if orient.abs() <= cfg.algebraic_tol {
        return Err(Error::Chart(
            "adopted orientation is undetermined at this point".into(),
        ));
    }
    if orient < 0.0 {
        nt = -nt;
    }
    let w = wedge_unchecked(&[x, nt, xu[0], xu[1]]);
    let ww = w.dot(&w);
    if ww <= cfg.zero_detect_tol * w.euclid_sq().max(1e-300) {
        return Err(Error::CausalDegeneracy(format!(
            "wedge normal is not spacelike (⟨w,w⟩ = {ww:e})"
        )));
    }
    let ns = w.scale(1.0 / ww.sqrt());
    Ok(SurfaceFrame {
        at: u,
        x,
        x_u: xu,
        n_t: nt,
        n_s: ns,
        g,
    })
}

/// Largest deviation of the Gram matrix of (X, nᵀ, nˢ, X_u₁, X_u₂) from the
/// block form diag(−1, −1, 1, g).
pub fn frame_gram_residual(f: &SurfaceFrame) -> f64 {
    let vs = [f.x, f.n_t, f.n_s, f.x_u[0], f.x_u[1]];
    let mut ideal = [[0.0; 5]; 5];
    ideal[0][0] = -1.0;
    ideal[1][1] = -1.0;
    ideal[2][2] = 1.0;
    for i in 0..2 {
        for j in 0..2 {
            ideal[3 + i][3 + j] = f.g[i][j];
        }
    }
    let mut worst = 0.0f64;
    for i in 0..5 {
        for j in 0..5 {
            worst = worst.max((vs[i].dot(&vs[j]) - ideal[i][j]).abs());
        }
    }
    worst
}

/// First and second fundamental forms for the null normal nᵀ + sign·nˢ.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FundamentalForms {
    pub g: [[f64; 2]; 2],
    pub h: [[f64; 2]; 2],
}

pub fn fundamental_forms(
    surface: &ParamSurface,
    u: [f64; 2],
    sign: i8,
    cfg: &ToleranceConfig,
) -> Result<FundamentalForms> {
    check_sign(sign)?;
    let p = surface.partials(u)?;
    let f = frame_from_partials(&p, u, &surface.reference_vector(), cfg)?;
    Ok(forms_from(&p, &f, sign))
}

pub(crate) fn forms_from(p: &SurfacePartials, f: &SurfaceFrame, sign: i8) -> FundamentalForms {
    let ng = f.null_normal(sign);
    let h12 = ng.dot(&p.get(1, 1));
    FundamentalForms {
        g: f.g,
        h: [[ng.dot(&p.get(2, 0)), h12], [h12, ng.dot(&p.get(0, 2))]],
    }
}

/// Nullcone principal curvatures and related data.
#[derive(Debug, Clone, Serialize)]
pub struct PrincipalData {
    pub sign: i8,
    pub g: [[f64; 2]; 2],
    pub h: [[f64; 2]; 2],
    /// Ascending principal curvatures.
    pub kappas: [f64; 2],
    /// Principal directions in parameter coordinates, g-normalized.
    pub directions: [[f64; 2]; 2],
    pub k_n: f64,
    pub umbilic: bool,
}

pub fn principal_curvatures(
    surface: &ParamSurface,
    u: [f64; 2],
    sign: i8,
    cfg: &ToleranceConfig,
) -> Result<PrincipalData> {
    check_sign(sign)?;
    let ff = fundamental_forms(surface, u, sign, cfg)?;
    principal_from_forms(&ff, sign, cfg)
}

pub fn principal_from_forms(
    ff: &FundamentalForms,
    sign: i8,
    cfg: &ToleranceConfig,
) -> Result<PrincipalData> {
    let to_vec = |m: &[[f64; 2]; 2]| m.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
    let eig = generalized_eigen(&to_vec(&ff.h), &to_vec(&ff.g))?;
    let kappas = [eig.values[0], eig.values[1]];
    let directions = [
        [eig.vectors[0][0], eig.vectors[0][1]],
        [eig.vectors[1][0], eig.vectors[1][1]],
    ];
    let det_g = ff.g[0][0] * ff.g[1][1] - ff.g[0][1] * ff.g[1][0];
    let det_h = ff.h[0][0] * ff.h[1][1] - ff.h[0][1] * ff.h[1][0];
    let spread = 1.0f64.max(kappas[0].abs()).max(kappas[1].abs());
    Ok(PrincipalData {
        sign,
        g: ff.g,
        h: ff.h,
        kappas,
        directions,
        k_n: det_h / det_g,
        umbilic: (kappas[1] - kappas[0]).abs() < cfg.zero_detect_tol * spread,
    })
}

/// Mismatch in the nullcone Weingarten formula, using central differences of
/// the frame field for ∂ᵢ(nᵀ + sign·nˢ).
pub fn weingarten_residual(
    surface: &ParamSurface,
    u: [f64; 2],
    sign: i8,
    cfg: &ToleranceConfig,
) -> Result<f64> {
    check_sign(sign)?;
    let hstep = cfg.fd_step;
    if !(hstep > 0.0) {
        return Err(Error::Grid(format!(
            "finite-difference step must be positive, got {hstep}"
        )));
    }
    let r = surface.reference_vector();
    let p0 = surface.partials(u)?;
    let f0 = frame_from_partials(&p0, u, &r, cfg)?;
    let ff = forms_from(&p0, &f0, sign);
    let gi = inverse2(&ff.g).ok_or_else(|| Error::MetricDegenerate("g is singular".into()))?;
    // Shape operator hᵢʲ = Σₖ hᵢₖ g^{kj}.
    let mut hs = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            hs[i][j] = (0..2).map(|k| ff.h[i][k] * gi[k][j]).sum();
        }
    }
    let mut worst = 0.0f64;
    let mut scale = 1.0f64;
    for i in 0..2 {
        let mut ng = [AmbientVector::zero(5); 2];
        for (k, dir) in [1.0, -1.0].iter().enumerate() {
            let mut v = u;
            v[i] += dir * hstep;
            let f = frame_from_partials(&surface.partials_unchecked(v), v, &r, cfg)?;
            if f.n_t.dot(&f0.n_t) >= 0.0 || f.n_s.dot(&f0.n_s) <= 0.0 {
                return Err(Error::FrameContinuity(format!(
                    "normal frame flips orientation between {u:?} and {v:?}"
                )));
            }
            ng[k] = f.null_normal(sign);
        }
        let d = (ng[0] - ng[1]).scale(0.5 / hstep);
        // Tangential projection Σₖₗ g^{kl}⟨d, X_uₖ⟩ X_uₗ.
        let dx = [d.dot(&f0.x_u[0]), d.dot(&f0.x_u[1])];
        let mut res = AmbientVector::zero(5);
        for k in 0..2 {
            for l in 0..2 {
                res = res.axpy(gi[k][l] * dx[k], &f0.x_u[l]);
            }
        }
        for j in 0..2 {
            res = res.axpy(hs[i][j], &f0.x_u[j]);
            scale = scale.max(hs[i][j].abs() * f0.x_u[j].max_abs());
        }
        worst = worst.max(res.max_abs());
    }
    Ok(worst / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{lightcone_sphere, product_torus};

    #[test]
    fn lightcone_sphere_is_totally_umbilic() {
        let cfg = ToleranceConfig::default();
        let s = lightcone_sphere(1.0).unwrap();
        for u in s.samples(12) {
            let f = normal_frame(&s, u, &cfg).unwrap();
            assert!(frame_gram_residual(&f) < 1e-12, "{u:?}");
            assert!(adopted_sign(&f.x, &f.n_t) > 0.0);
            assert!(f.null_normal(1).dot(&f.null_normal(1)).abs() < 1e-12);
            for sign in [1, -1] {
                let pd = principal_curvatures(&s, u, sign, &cfg).unwrap();
                assert!(pd.umbilic, "{u:?} {sign} {:?}", pd.kappas);
                assert!((pd.k_n - pd.kappas[0] * pd.kappas[1]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn weingarten_holds_on_presets() {
        let cfg = ToleranceConfig::default();
        let s = lightcone_sphere(1.0).unwrap();
        let t = product_torus(2.0, 1.0).unwrap();
        for u in [[0.3, 1.0], [-0.5, 4.0]] {
            for sign in [1, -1] {
                assert!(weingarten_residual(&s, u, sign, &cfg).unwrap() < 1e-5);
            }
        }
        for u in [[0.3, 1.0], [2.5, 4.0]] {
            for sign in [1, -1] {
                assert!(weingarten_residual(&t, u, sign, &cfg).unwrap() < 1e-5);
            }
        }
    }

    #[test]
    fn zero_step_is_rejected() {
        let cfg = ToleranceConfig {
            fd_step: 0.0,
            ..Default::default()
        };
        let s = lightcone_sphere(1.0).unwrap();
        assert!(matches!(
            weingarten_residual(&s, [0.1, 0.2], 1, &cfg),
            Err(Error::Grid(_))
        ));
    }
}
