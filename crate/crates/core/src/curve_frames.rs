//! Frenet-type frames and curvature invariants of spacelike curves in AdS³
//! and AdS⁴.
//!
//! All curvature derivatives come from Taylor-jet propagation of the exact
//! curve derivatives; finite differences appear only in residual checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jets::{Jet, VJet};
use crate::parametric::{ParamCurve, MAX_CURVE_ORDER};
use crate::semi_euclidean::AmbientVector;
use crate::tolerance::ToleranceConfig;

/// Margin below which ⟨v,v⟩ is considered null relative to ‖v‖².
const CAUSAL_MARGIN: f64 = 1e-10;

/// Which normal of an AdS⁴ curve frame is timelike.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// n₁ timelike.
    Case1,
    /// n₂ timelike.
    Case2,
    /// n₃ timelike.
    Case3,
}

fn sign_i8(x: f64) -> i8 {
    if x >= 0.0 {
        1
    } else {
        -1
    }
}

fn curve_jet(curve: &ParamCurve, s: f64) -> VJet {
    let d = curve.derivatives_unchecked(s, MAX_CURVE_ORDER);
    VJet::from_derivatives(&d)
}

/// Normalizes `v` (a jet) by √|⟨v,v⟩| and reports the causal sign.
fn normalize_jet(v: &VJet, what: &str, cfg: &ToleranceConfig) -> Result<(VJet, Jet, i8)> {
    let q = v.dot(v);
    let e2 = v.value().euclid_sq();
    let q0 = q.value();
    if e2.sqrt() <= cfg.zero_detect_tol {
        return Err(Error::FrameUndefined(format!("{what} vanishes")));
    }
    if q0.abs() <= CAUSAL_MARGIN * e2.max(1.0) {
        return Err(Error::CausalDegeneracy(format!(
            "{what} is null within margin (⟨v,v⟩ = {q0:e})"
        )));
    }
    let delta = sign_i8(q0);
    let kappa = q
        .scale(delta as f64)
        .sqrt()
        .expect("positive by construction");
    if kappa.value() <= cfg.zero_detect_tol {
        return Err(Error::FrameUndefined(format!(
            "curvature from {what} vanishes"
        )));
    }
    let n = v.mul_scalar(&kappa.recip().expect("nonzero"));
    Ok((n, kappa, delta))
}

/// Frame (γ, t, n, b) of a spacelike curve in AdS³.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FrameAdS3 {
    pub s: f64,
    pub gamma: AmbientVector,
    pub t: AmbientVector,
    pub n: AmbientVector,
    pub b: AmbientVector,
    pub kappa_g: f64,
    pub tau_g: f64,
    /// Causal sign of n: ⟨n,n⟩ = δ, ⟨b,b⟩ = −δ.
    pub delta: i8,
    /// κ_g, κ_g′, κ_g″, κ_g‴.
    pub kappa_derivs: [f64; 4],
    /// τ_g, τ_g′, τ_g″.
    pub tau_derivs: [f64; 3],
    pub n_prime: AmbientVector,
    pub b_prime: AmbientVector,
}

impl FrameAdS3 {
    /// Timelike and spacelike unit normals (nᵀ, nˢ).
    pub fn normal_pair(&self) -> (AmbientVector, AmbientVector) {
        if self.delta > 0 {
            (self.b, self.n)
        } else {
            (self.n, self.b)
        }
    }

    pub fn curvature_jets(&self) -> CurvatureJets3 {
        CurvatureJets3 {
            kappa: self.kappa_derivs,
            tau: self.tau_derivs,
            delta: self.delta,
        }
    }
}

/// Builds the AdS³ frame at `s`.
pub fn frame_ads3(curve: &ParamCurve, s: f64, cfg: &ToleranceConfig) -> Result<FrameAdS3> {
    if curve.dim != 4 {
        return Err(Error::Dimension {
            expected: 4,
            found: curve.dim,
        });
    }
    curve.check_param(s)?;
    frame_ads3_unchecked(curve, s, cfg)
}

fn frame_ads3_unchecked(curve: &ParamCurve, s: f64, cfg: &ToleranceConfig) -> Result<FrameAdS3> {
    let g = curve_jet(curve, s);
    let t = g.diff();
    let a = t.diff();
    let v = a.sub(&g.truncate(a.len()));
    let (n, kappa, delta) = normalize_jet(&v, "γ″ − γ", cfg)?;
    let len = n.len();
    let b = VJet::wedge(&[&g.truncate(len), &t.truncate(len), &n]);
    let n_prime = n.diff();
    let tau = b.diff().dot(&n);
    let kd = kappa.derivatives();
    let td = tau.derivatives();
    Ok(FrameAdS3 {
        s,
        gamma: g.value(),
        t: t.value(),
        n: n.value(),
        b: b.value(),
        kappa_g: kd[0],
        tau_g: td[0],
        delta,
        kappa_derivs: [kd[0], kd[1], kd[2], kd[3]],
        tau_derivs: [td[0], td[1], td[2]],
        n_prime: n_prime.value(),
        b_prime: b.diff().value(),
    })
}

/// Curvature data of an AdS³ curve: derivatives of κ_g and τ_g plus δ.
///
/// Usually extracted from a frame, but can be built directly to probe the
/// invariant and classification logic with prescribed curvature functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureJets3 {
    pub kappa: [f64; 4],
    pub tau: [f64; 3],
    pub delta: i8,
}

/// σ± with their first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaPM {
    pub sigma_plus: f64,
    pub sigma_minus: f64,
    /// (σ⁺)′, (σ⁺)″.
    pub plus_derivs: [f64; 2],
    /// (σ⁻)′, (σ⁻)″.
    pub minus_derivs: [f64; 2],
}

impl SigmaPM {
    /// σ^β and its first two derivatives for β = ±1.
    pub fn branch(&self, beta: i8) -> [f64; 3] {
        if beta >= 0 {
            [self.sigma_plus, self.plus_derivs[0], self.plus_derivs[1]]
        } else {
            [self.sigma_minus, self.minus_derivs[0], self.minus_derivs[1]]
        }
    }
}

impl CurvatureJets3 {
    /// σ^β = κ′ − β κ τ as a jet (σ, σ′, σ″).
    pub fn sigma(&self) -> SigmaPM {
        let k = Jet::from_derivatives(&self.kappa);
        let tau = Jet::from_derivatives(&self.tau);
        let kt = k.mul(&tau);
        let kp = k.diff();
        let plus = kp.sub(&kt).derivatives();
        let minus = kp.add(&kt).derivatives();
        SigmaPM {
            sigma_plus: plus[0],
            sigma_minus: minus[0],
            plus_derivs: [plus[1], plus[2]],
            minus_derivs: [minus[1], minus[2]],
        }
    }

    /// Scale used to normalize σ-type quantities.
    pub fn sigma_scale(&self) -> f64 {
        1.0 + self.kappa[1].abs() + (self.kappa[0] * self.tau[0]).abs()
    }

    pub fn sigma_prime_scale(&self) -> f64 {
        1.0 + self.kappa[2].abs()
            + (self.kappa[1] * self.tau[0]).abs()
            + (self.kappa[0] * self.tau[1]).abs()
    }
}

/// σ±(s) = κ_g′ ∓ κ_g τ_g.
pub fn sigma_pm_ads3(curve: &ParamCurve, s: f64, cfg: &ToleranceConfig) -> Result<SigmaPM> {
    Ok(frame_ads3(curve, s, cfg)?.curvature_jets().sigma())
}

/// Frame (γ, t, n₁, n₂, n₃) of a spacelike curve in AdS⁴.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FrameAdS4 {
    pub s: f64,
    pub gamma: AmbientVector,
    pub t: AmbientVector,
    pub n1: AmbientVector,
    pub n2: AmbientVector,
    pub n3: AmbientVector,
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    pub delta1: i8,
    pub delta2: i8,
    pub delta3: i8,
    pub case_tag: CaseTag,
    /// κ₁, κ₁′, κ₁″, κ₁‴.
    pub kappa1_derivs: [f64; 4],
    /// κ₂, κ₂′, κ₂″.
    pub kappa2_derivs: [f64; 3],
    /// κ₃, κ₃′.
    pub kappa3_derivs: [f64; 2],
    /// n₁′, n₂′, n₃′.
    pub n_prime: [AmbientVector; 3],
}

impl FrameAdS4 {
    pub fn normals(&self) -> [AmbientVector; 3] {
        [self.n1, self.n2, self.n3]
    }

    pub fn deltas(&self) -> [i8; 3] {
        [self.delta1, self.delta2, self.delta3]
    }

    /// Indices (into n₁, n₂, n₃) of (nᵀ, b₁, b₂) for the frame's case.
    pub fn relabeling(&self) -> [usize; 3] {
        relabeling(self.case_tag)
    }

    /// The case-dependent triple (nᵀ, b₁, b₂).
    pub fn normal_triplet(&self) -> [AmbientVector; 3] {
        let n = self.normals();
        self.relabeling().map(|i| n[i])
    }

    /// Derivatives of (nᵀ, b₁, b₂).
    pub fn normal_triplet_prime(&self) -> [AmbientVector; 3] {
        self.relabeling().map(|i| self.n_prime[i])
    }

    pub fn curvature_jets(&self) -> CurvatureJets4 {
        CurvatureJets4 {
            kappa1: self.kappa1_derivs,
            kappa2: self.kappa2_derivs,
            kappa3: self.kappa3_derivs,
            delta: self.deltas(),
        }
    }
}

/// Indices of (nᵀ, b₁, b₂) among (n₁, n₂, n₃) for each case.
pub fn relabeling(case: CaseTag) -> [usize; 3] {
    match case {
        CaseTag::Case1 => [0, 1, 2],
        CaseTag::Case2 => [1, 0, 2],
        CaseTag::Case3 => [2, 0, 1],
    }
}

/// Builds the AdS⁴ frame at `s`.
pub fn frame_ads4(curve: &ParamCurve, s: f64, cfg: &ToleranceConfig) -> Result<FrameAdS4> {
    if curve.dim != 5 {
        return Err(Error::Dimension {
            expected: 5,
            found: curve.dim,
        });
    }
    curve.check_param(s)?;
    frame_ads4_unchecked(curve, s, cfg)
}

pub(crate) fn frame_ads4_unchecked(
    curve: &ParamCurve,
    s: f64,
    cfg: &ToleranceConfig,
) -> Result<FrameAdS4> {
    let g = curve_jet(curve, s);
    let t = g.diff();
    let a = t.diff();
    let v = a.sub(&g.truncate(a.len()));
    let (n1, k1, d1) = normalize_jet(&v, "γ″ − γ", cfg)?;
    let w = n1
        .diff()
        .add(&t.truncate(n1.len() - 1).mul_scalar(&k1.scale(d1 as f64)));
    let (n2, k2, d2) = normalize_jet(&w, "n₁′ + δ₁κ₁t", cfg)?;
    let len = n2.len();
    let n3 = VJet::wedge(&[&g.truncate(len), &t.truncate(len), &n1.truncate(len), &n2]);
    let d3 = sign_i8(n3.value().dot(&n3.value()));
    let k3 = n2.diff().dot(&n3).scale(d3 as f64);
    let timelike = [d1, d2, d3].iter().filter(|&&d| d < 0).count();
    if timelike != 1 {
        return Err(Error::CausalDegeneracy(format!(
            "expected exactly one timelike normal, found {timelike}"
        )));
    }
    let case_tag = if d1 < 0 {
        CaseTag::Case1
    } else if d2 < 0 {
        CaseTag::Case2
    } else {
        CaseTag::Case3
    };
    let k1d = k1.derivatives();
    let k2d = k2.derivatives();
    let k3d = k3.derivatives();
    Ok(FrameAdS4 {
        s,
        gamma: g.value(),
        t: t.value(),
        n1: n1.value(),
        n2: n2.value(),
        n3: n3.value(),
        kappa1: k1d[0],
        kappa2: k2d[0],
        kappa3: k3d[0],
        delta1: d1,
        delta2: d2,
        delta3: d3,
        case_tag,
        kappa1_derivs: [k1d[0], k1d[1], k1d[2], k1d[3]],
        kappa2_derivs: [k2d[0], k2d[1], k2d[2]],
        kappa3_derivs: [k3d[0], k3d[1]],
        n_prime: [n1.diff().value(), n2.diff().value(), n3.diff().value()],
    })
}

/// Which ambient space a curve lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurveSpace {
    AdS3,
    AdS4,
}

impl CurveSpace {
    pub fn of(curve: &ParamCurve) -> Result<Self> {
        match curve.dim {
            4 => Ok(CurveSpace::AdS3),
            5 => Ok(CurveSpace::AdS4),
            d => Err(Error::Dimension {
                expected: 5,
                found: d,
            }),
        }
    }
}

/// Max-norm mismatch between central-difference derivatives of the frame
/// vectors and the Frenet–Serret right-hand sides, normalized by
/// max(1, |κ| values).
pub fn frenet_residual(
    curve: &ParamCurve,
    s: f64,
    space: CurveSpace,
    cfg: &ToleranceConfig,
) -> Result<f64> {
    curve.check_param(s)?;
    let h = cfg.fd_step;
    match space {
        CurveSpace::AdS3 => {
            let f = frame_ads3(curve, s, cfg)?;
            let fp = frame_ads3_unchecked(curve, s + h, cfg)?;
            let fm = frame_ads3_unchecked(curve, s - h, cfg)?;
            let d = |a: AmbientVector, b: AmbientVector| (a - b).scale(0.5 / h);
            let (k, tau, dl) = (f.kappa_g, f.tau_g, f.delta as f64);
            let rows = [
                d(fp.gamma, fm.gamma) - f.t,
                d(fp.t, fm.t) - (f.gamma + f.n.scale(k)),
                d(fp.n, fm.n) - (f.t.scale(-dl * k) + f.b.scale(dl * tau)),
                d(fp.b, fm.b) - f.n.scale(dl * tau),
            ];
            let norm = 1.0f64.max(k.abs()).max(tau.abs());
            Ok(rows.iter().map(|r| r.max_abs()).fold(0.0, f64::max) / norm)
        }
        CurveSpace::AdS4 => {
            let f = frame_ads4(curve, s, cfg)?;
            let fp = frame_ads4_unchecked(curve, s + h, cfg)?;
            let fm = frame_ads4_unchecked(curve, s - h, cfg)?;
            let d = |a: AmbientVector, b: AmbientVector| (a - b).scale(0.5 / h);
            let (k1, k2, k3) = (f.kappa1, f.kappa2, f.kappa3);
            let (d1, d3) = (f.delta1 as f64, f.delta3 as f64);
            let rows = [
                d(fp.gamma, fm.gamma) - f.t,
                d(fp.t, fm.t) - (f.gamma + f.n1.scale(k1)),
                d(fp.n1, fm.n1) - (f.t.scale(-d1 * k1) + f.n2.scale(k2)),
                d(fp.n2, fm.n2) - (f.n1.scale(d3 * k2) + f.n3.scale(k3)),
                d(fp.n3, fm.n3) - f.n2.scale(d1 * k3),
            ];
            let norm = 1.0f64.max(k1.abs()).max(k2.abs()).max(k3.abs());
            Ok(rows.iter().map(|r| r.max_abs()).fold(0.0, f64::max) / norm)
        }
    }
}

/// Max deviation of the frame Gram matrix from its ideal diagonal form.
pub fn gram_residual_ads3(f: &FrameAdS3) -> f64 {
    let vs = [f.gamma, f.t, f.n, f.b];
    let dl = f.delta as f64;
    let ideal = [-1.0, 1.0, dl, -dl];
    gram_dev(&vs, &ideal)
}

pub fn gram_residual_ads4(f: &FrameAdS4) -> f64 {
    let vs = [f.gamma, f.t, f.n1, f.n2, f.n3];
    let ideal = [-1.0, 1.0, f.delta1 as f64, f.delta2 as f64, f.delta3 as f64];
    gram_dev(&vs, &ideal)
}

fn gram_dev(vs: &[AmbientVector], ideal: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..vs.len() {
        for j in 0..vs.len() {
            let target = if i == j { ideal[i] } else { 0.0 };
            worst = worst.max((vs[i].dot(&vs[j]) - target).abs());
        }
    }
    worst
}

/// Curvature data of an AdS⁴ curve: derivatives of κ₁, κ₂, κ₃ and δ signs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureJets4 {
    pub kappa1: [f64; 4],
    pub kappa2: [f64; 3],
    pub kappa3: [f64; 2],
    pub delta: [i8; 3],
}

/// Both θ-free branches A ∓ κ₁κ₂κ₃R of σ with first derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaBranches {
    /// A − κ₁κ₂κ₃R and its derivative.
    pub lower: [f64; 2],
    /// A + κ₁κ₂κ₃R and its derivative.
    pub upper: [f64; 2],
    /// R² = δ₂(κ₁κ₂)² + δ₁κ₁′².
    pub radicand: f64,
    /// Normalization scale for σ.
    pub scale: f64,
    /// Normalization scale for σ′.
    pub prime_scale: f64,
}

impl SigmaBranches {
    /// Branch selected by `sign` (−1 lower, +1 upper).
    pub fn branch(&self, sign: i8) -> [f64; 2] {
        if sign < 0 {
            self.lower
        } else {
            self.upper
        }
    }
}

impl CurvatureJets4 {
    pub fn case(&self) -> Result<CaseTag> {
        match self.delta {
            [-1, 1, 1] => Ok(CaseTag::Case1),
            [1, -1, 1] => Ok(CaseTag::Case2),
            [1, 1, -1] => Ok(CaseTag::Case3),
            d => Err(Error::CausalDegeneracy(format!(
                "inconsistent causal signs {d:?}"
            ))),
        }
    }

    /// aᵢ = ⟨nᵢ, NG(θ)⟩ for the case relabeling.
    pub fn normal_components(&self, theta: f64) -> Result<[f64; 3]> {
        let (sn, cs) = theta.sin_cos();
        let idx = relabeling(self.case()?);
        let mut a = [0.0; 3];
        a[idx[0]] = -1.0;
        a[idx[1]] = cs;
        a[idx[2]] = sn;
        Ok(a)
    }

    /// ρ(s,θ) in the sign convention of the per-case displays
    /// (ρ₁ = κ₁′ − cosθ κ₁κ₂, ρ₂ = κ₁′cosθ − κ₁κ₂, ρ₃ = κ₁′cosθ + κ₁κ₂ sinθ).
    pub fn rho(&self, theta: f64) -> Result<f64> {
        let sign = if self.case()? == CaseTag::Case1 {
            -1.0
        } else {
            1.0
        };
        Ok(sign * self.rho_raw(theta)?)
    }

    /// κ₁′a₁ + κ₁κ₂a₂, the bracket of h‴ at a focal point (h‴ = μ·bracket).
    pub fn rho_raw(&self, theta: f64) -> Result<f64> {
        let a = self.normal_components(theta)?;
        Ok(self.kappa1[1] * a[0] + self.kappa1[0] * self.kappa2[0] * a[1])
    }

    pub fn rho_scale(&self) -> f64 {
        1.0 + self.kappa1[1].abs() + (self.kappa1[0] * self.kappa2[0]).abs()
    }

    /// η(s,θ) = (κ₁″ + δ₃κ₁κ₂²)a₁ + (2κ₁′κ₂ + κ₁κ₂′)a₂ + κ₁κ₂κ₃a₃.
    pub fn eta(&self, theta: f64) -> Result<f64> {
        let a = self.normal_components(theta)?;
        let [k1, k1p, k1pp, _] = self.kappa1;
        let [k2, k2p, _] = self.kappa2;
        let k3 = self.kappa3[0];
        let d3 = self.delta[2] as f64;
        Ok((k1pp + d3 * k1 * k2 * k2) * a[0]
            + (2.0 * k1p * k2 + k1 * k2p) * a[1]
            + k1 * k2 * k3 * a[2])
    }

    /// Both σ branches with derivatives.
    pub fn sigma_branches(&self, cfg: &ToleranceConfig) -> Result<SigmaBranches> {
        let k1 = Jet::from_derivatives(&self.kappa1);
        let k2 = Jet::from_derivatives(&self.kappa2);
        let k3 = Jet::from_derivatives(&self.kappa3);
        let k1p = k1.diff();
        let k1pp = k1p.diff();
        let k2p = k2.diff();
        let [d1, d2, d3] = self.delta.map(|d| d as f64);
        let k12 = k1.mul(&k2).truncate(2);
        let a = k12
            .mul(&k1pp.add(&k1.mul(&k2).mul(&k2).scale(d3)))
            .sub(&k1p.mul(&k1p.mul(&k2).scale(2.0).add(&k1.mul(&k2p))));
        let rad = k12
            .mul(&k12)
            .scale(d2)
            .add(&k1p.mul(&k1p).scale(d1))
            .truncate(2);
        let rad_scale = (k12.value().powi(2) + k1p.value().powi(2)).max(1e-300);
        let r0 = rad.value();
        if r0 < -cfg.zero_detect_tol * rad_scale {
            return Err(Error::SigmaUndefined { argument: r0 });
        }
        let r = if r0 > 0.0 {
            rad.sqrt().expect("positive")
        } else {
            Jet::constant(0.0, 2)
        };
        let kkk = k12.mul(&k3);
        let spread = kkk.mul(&r);
        let lower = a.sub(&spread).derivatives();
        let upper = a.add(&spread).derivatives();
        let [k1v, k1pv, k1ppv, k1pppv] = self.kappa1;
        let [k2v, k2pv, k2ppv] = self.kappa2;
        let [k3v, k3pv] = self.kappa3;
        let scale = 1.0
            + (k1v * k2v * k1ppv).abs()
            + (k1v * k1v * k2v.powi(3)).abs()
            + (k1pv * (2.0 * k1pv * k2v + k1v * k2pv)).abs()
            + (k1v * k2v * k3v).abs() * r.value();
        let prime_scale = 1.0
            + (k1v * k2v * k1pppv).abs()
            + ((k1pv * k2v + k1v * k2pv) * k1ppv).abs()
            + (k1v * k1v * k2v * k2v * k2pv).abs()
            + (k1pv * k1v * k2v.powi(3)).abs()
            + (k1ppv * (2.0 * k1pv * k2v + k1v * k2pv)).abs()
            + (k1pv * (3.0 * k1pv * k2pv + 2.0 * k1ppv * k2v + k1v * k2ppv)).abs()
            + (k1v * k2v * k3pv).abs() * r.value()
            + spread.derivative(1).abs();
        Ok(SigmaBranches {
            lower: [lower[0], lower[1]],
            upper: [upper[0], upper[1]],
            radicand: r0,
            scale,
            prime_scale,
        })
    }

    /// Branch sign (−1 lower, +1 upper) of σ selected by θ through the
    /// case-specific sign rule at ρ(s,θ) = 0.
    pub fn sigma_branch_sign(&self, theta: f64) -> Result<i8> {
        let (sn, cs) = theta.sin_cos();
        let [k1, k1p, _, _] = self.kappa1;
        let k2 = self.kappa2[0];
        Ok(match self.case()? {
            CaseTag::Case1 => -sign_i8(sn),
            CaseTag::Case2 => sign_i8(k1p * sn),
            CaseTag::Case3 => -sign_i8(cs * k1 * k2 - sn * k1p),
        })
    }
}

/// ρ, η and σ at (s, θ) for an AdS⁴ curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveInvariants {
    pub s: f64,
    pub theta: f64,
    pub case_tag: CaseTag,
    pub rho: f64,
    pub eta: f64,
    /// σ on the branch selected by θ.
    pub sigma: f64,
    pub sigma_prime: f64,
    /// −1 for A − κ₁κ₂κ₃R, +1 for A + κ₁κ₂κ₃R.
    pub sigma_branch: i8,
    pub sigma_pair: SigmaBranches,
}

/// Curve invariants from curvature jets (no curve needed).
pub fn invariants_from_jets(
    j: &CurvatureJets4,
    s: f64,
    theta: f64,
    cfg: &ToleranceConfig,
) -> Result<CurveInvariants> {
    let pair = j.sigma_branches(cfg)?;
    let branch = j.sigma_branch_sign(theta)?;
    let [sigma, sigma_prime] = pair.branch(branch);
    Ok(CurveInvariants {
        s,
        theta,
        case_tag: j.case()?,
        rho: j.rho(theta)?,
        eta: j.eta(theta)?,
        sigma,
        sigma_prime,
        sigma_branch: branch,
        sigma_pair: pair,
    })
}

/// ρ, η and σ at (s, θ) for an AdS⁴ curve.
pub fn curve_invariants_ads4(
    curve: &ParamCurve,
    s: f64,
    theta: f64,
    cfg: &ToleranceConfig,
) -> Result<CurveInvariants> {
    let f = frame_ads4(curve, s, cfg)?;
    invariants_from_jets(&f.curvature_jets(), s, theta, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{ads3_circle, ads4_helix};
    use approx::assert_abs_diff_eq;

    #[test]
    fn circle_frame_values() {
        let cfg = ToleranceConfig::default();
        let c = ads3_circle(1.0).unwrap();
        for &s in &[0.0, 1.0, 4.0] {
            let f = frame_ads3(&c, s, &cfg).unwrap();
            assert_abs_diff_eq!(f.kappa_g, 2f64.sqrt(), epsilon = 1e-14);
            assert_abs_diff_eq!(f.tau_g, 0.0, epsilon = 1e-14);
            assert_eq!(f.delta, 1);
            assert!(gram_residual_ads3(&f) < 1e-13);
            let sg = f.curvature_jets().sigma();
            assert_abs_diff_eq!(sg.sigma_plus, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(sg.sigma_minus, 0.0, epsilon = 1e-14);
        }
        assert!(frenet_residual(&c, 1.0, CurveSpace::AdS3, &cfg).unwrap() < 1e-7);
    }

    #[test]
    fn binormal_is_the_wedge() {
        let cfg = ToleranceConfig::default();
        let c = ads3_circle(0.7).unwrap();
        let f = frame_ads3(&c, 0.4, &cfg).unwrap();
        let w = crate::semi_euclidean::wedge(&[f.gamma, f.t, f.n]).unwrap();
        assert!((w - f.b).max_abs() < 1e-15);
        assert_abs_diff_eq!(f.b.dot(&f.b), -(f.delta as f64), epsilon = 1e-12);
    }

    #[test]
    fn helix_frame_matches_hand_values() {
        let cfg = ToleranceConfig::default();
        let c = ads4_helix(1.0, 1.0, None).unwrap();
        let f = frame_ads4(&c, 0.0, &cfg).unwrap();
        assert_abs_diff_eq!(f.kappa1, 2.0 * 2f64.sqrt(), epsilon = 1e-13);
        assert_eq!(f.delta1, 1);
        assert!(matches!(f.case_tag, CaseTag::Case2 | CaseTag::Case3));
        assert!(gram_residual_ads4(&f) < 1e-12);
        assert!(frenet_residual(&c, 0.5, CurveSpace::AdS4, &cfg).unwrap() < 1e-6);
    }

    #[test]
    fn constant_curvature_rho_is_theta_free() {
        let cfg = ToleranceConfig::default();
        let c = ads4_helix(1.0, 1.0, None).unwrap();
        let f = frame_ads4(&c, 0.3, &cfg).unwrap();
        if f.case_tag == CaseTag::Case2 {
            for &th in &[0.0, 1.0, 2.5] {
                let inv = curve_invariants_ads4(&c, 0.3, th, &cfg);
                let rho = f.curvature_jets().rho(th).unwrap();
                assert_abs_diff_eq!(rho, -f.kappa1 * f.kappa2, epsilon = 1e-12);
                // σ needs √(κ₁′² − (κ₁κ₂)²), which is imaginary here.
                assert!(matches!(inv, Err(Error::SigmaUndefined { .. })));
            }
        }
    }

    #[test]
    fn synthetic_case1_rho_vanishes_at_half_pi() {
        let j = CurvatureJets4 {
            kappa1: [1.5, 0.0, 0.0, 0.0],
            kappa2: [0.8, 0.0, 0.0],
            kappa3: [0.4, 0.0],
            delta: [-1, 1, 1],
        };
        assert_abs_diff_eq!(
            j.rho(std::f64::consts::FRAC_PI_2).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(j.rho(0.0).unwrap(), -1.5 * 0.8, epsilon = 1e-15);
    }

    #[test]
    fn eta_matches_the_case_displays() {
        let k1 = [1.3, 0.4, -0.7, 0.2];
        let k2 = [0.9, 0.25, 0.1];
        let k3 = [0.6, -0.3];
        let th = 0.77f64;
        let (sn, cs) = th.sin_cos();
        let (a, b, c) = (k1[0], k1[1], k1[2]);
        let (d, e) = (k2[0], k2[1]);
        let f = k3[0];
        let eta1 = (2.0 * b * d + a * e) * cs - c - a * d * d + a * d * f * sn;
        let eta2 = (c + a * d * d) * cs - 2.0 * b * d - a * e + a * d * f * sn;
        let eta3 = (2.0 * b * d + a * e) * sn + (c - a * d * d) * cs - a * d * f;
        let mk = |delta| CurvatureJets4 {
            kappa1: k1,
            kappa2: k2,
            kappa3: k3,
            delta,
        };
        assert_abs_diff_eq!(mk([-1, 1, 1]).eta(th).unwrap(), eta1, epsilon = 1e-14);
        assert_abs_diff_eq!(mk([1, -1, 1]).eta(th).unwrap(), eta2, epsilon = 1e-14);
        assert_abs_diff_eq!(mk([1, 1, -1]).eta(th).unwrap(), eta3, epsilon = 1e-14);
    }

    #[test]
    fn sigma_is_proportional_to_eta_on_rho_roots() {
        // Case 1: ρ₁ = 0 ⇔ cosθ = κ₁′/(κ₁κ₂); then σ₁ = −κ₁κ₂·η₁.
        let cfg = ToleranceConfig::default();
        let j = CurvatureJets4 {
            kappa1: [1.3, 0.4, -0.7, 0.2],
            kappa2: [0.9, 0.25, 0.1],
            kappa3: [0.6, -0.3],
            delta: [-1, 1, 1],
        };
        let c = j.kappa1[1] / (j.kappa1[0] * j.kappa2[0]);
        for th in [c.acos(), -c.acos()] {
            let inv = invariants_from_jets(&j, 0.0, th, &cfg).unwrap();
            assert!(inv.rho.abs() < 1e-14);
            let k12 = j.kappa1[0] * j.kappa2[0];
            assert_abs_diff_eq!(inv.sigma, -k12 * inv.eta, epsilon = 1e-12);
        }
    }
}
