//! Polynomial normal forms of the sheet germs, the parametrized singular sets
//! of those models, and a brute-force rank-drop scanner used as an oracle.

use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::SingularityLabel;
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::semi_euclidean::singular_values;

/// Polynomial map germ ℝⁿ → ℝᵐ at the origin.
#[derive(Clone, Copy)]
pub struct ModelGerm {
    pub name: &'static str,
    pub arity: usize,
    pub out_dim: usize,
    pub map: ModelMap,
}

/// Evaluator of a model map at a parameter tuple.
pub type ModelMap = fn(&[f64]) -> Vec<f64>;

impl std::fmt::Debug for ModelGerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ModelGerm({}: ℝ{} → ℝ{})",
            self.name, self.arity, self.out_dim
        )
    }
}

impl ModelGerm {
    /// Normal form of the lightlike hypersurface germ for a label.
    pub fn normal_form(label: SingularityLabel) -> Result<Self> {
        let (name, map): (&'static str, ModelMap) = match label {
            SingularityLabel::A1Regular => ("A1", |u| vec![u[0], u[1], u[2], 0.0]),
            SingularityLabel::A2CuspidalEdge => ("A2", |u| {
                vec![3.0 * u[0] * u[0], 2.0 * u[0].powi(3), u[1], u[2]]
            }),
            SingularityLabel::A3Swallowtail => ("A3", |u| {
                let x = u[0];
                vec![
                    4.0 * x.powi(3) + 2.0 * x * u[1],
                    3.0 * x.powi(4) + u[1] * x * x,
                    u[1],
                    u[2],
                ]
            }),
            SingularityLabel::A4Butterfly => ("A4", |u| {
                let x = u[0];
                vec![
                    5.0 * x.powi(4) + 3.0 * u[1] * x * x + 2.0 * x * u[2],
                    4.0 * x.powi(5) + 2.0 * u[1] * x.powi(3) + u[2] * x * x,
                    u[1],
                    u[2],
                ]
            }),
            SingularityLabel::D4Plus => ("D4+", |u| {
                let [a, b, c] = [u[0], u[1], u[2]];
                vec![
                    2.0 * (a.powi(3) + b.powi(3)) + a * b * c,
                    3.0 * a * a + b * c,
                    3.0 * b * b + a * c,
                    c,
                ]
            }),
            SingularityLabel::D4Minus => ("D4-", |u| {
                let [a, b, c] = [u[0], u[1], u[2]];
                vec![
                    (a.powi(3) / 3.0 - a * b * b) + (a * a + b * b) * c,
                    b * b - a * a - 2.0 * a * c,
                    2.0 * (a * b - b * c),
                    c,
                ]
            }),
            SingularityLabel::Degenerate => {
                return Err(Error::InvalidInput(
                    "a degenerate label has no normal form".into(),
                ))
            }
        };
        Ok(Self {
            name,
            arity: 3,
            out_dim: 4,
            map,
        })
    }

    pub fn eval(&self, u: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                found: u.len(),
            });
        }
        Ok((self.map)(u))
    }

    /// Central-difference Jacobian (rows = outputs), step scaled to |u|.
    pub fn jacobian(&self, u: &[f64]) -> Vec<Vec<f64>> {
        let mut cols = Vec::with_capacity(self.arity);
        let mut p = u.to_vec();
        for i in 0..self.arity {
            let h = 1e-5 * (1.0 + u[i].abs());
            p[i] = u[i] + h;
            let fp = (self.map)(&p);
            p[i] = u[i] - h;
            let fm = (self.map)(&p);
            p[i] = u[i];
            cols.push(
                fp.iter()
                    .zip(&fm)
                    .map(|(a, b)| (a - b) / (2.0 * h))
                    .collect::<Vec<_>>(),
            );
        }
        (0..self.out_dim)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect()
    }

    /// σ_min / σ_max of the Jacobian, 0 at rank drop.
    pub fn rank_ratio(&self, u: &[f64]) -> f64 {
        let sv = singular_values(&self.jacobian(u));
        let smax = sv.first().copied().unwrap_or(0.0);
        if smax == 0.0 {
            return 0.0;
        }
        sv.get(self.arity - 1).copied().unwrap_or(0.0) / smax
    }
}

pub fn eval_normal_form(label: SingularityLabel, params: &[f64]) -> Result<Vec<f64>> {
    ModelGerm::normal_form(label)?.eval(params)
}

/// Parametrized model sets: singular sets of the normal forms and the
/// stable wavefront models they are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModelSet {
    /// (u², u³).
    C23,
    /// (u², u³, u⁴).
    C234,
    /// (u², u³, u⁴, u⁵).
    C2345,
    /// Critical value set of the butterfly, parameters (u₁, u₂).
    CBF,
    /// Singular curve of the D4⁺ critical value set, parameter u₃.
    SigmaPU,
    /// Singular curves of the D4⁻ critical value set, parameters (u₃, branch ∈ {0,1,2}).
    SigmaPY,
    /// Swallowtail (3u⁴ + u²v, 4u³ + 2uv, v).
    SW,
    /// Butterfly (5u⁴ + 3vu² + 2wu, 4u⁵ + 2vu³ + wu², v, w).
    BF,
    /// Purse (3u₁² + u₂u₃, 3u₂² + u₁u₃, u₃) on u₃² = 36u₁u₂.
    PU,
    /// Pyramid (u₂² − u₁² − 2u₁u₃, 2(u₁u₂ − u₂u₃), u₃) on u₃² = u₁² + u₂².
    PY,
}

impl ModelSet {
    pub const ALL: [ModelSet; 10] = [
        Self::C23,
        Self::C234,
        Self::C2345,
        Self::CBF,
        Self::SigmaPU,
        Self::SigmaPY,
        Self::SW,
        Self::BF,
        Self::PU,
        Self::PY,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::C23 => "C(2,3)",
            Self::C234 => "C(2,3,4)",
            Self::C2345 => "C(2,3,4,5)",
            Self::CBF => "C(BF)",
            Self::SigmaPU => "Sigma(PU)",
            Self::SigmaPY => "Sigma(PY)",
            Self::SW => "SW",
            Self::BF => "BF",
            Self::PU => "PU",
            Self::PY => "PY",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Self::C23 | Self::C234 | Self::C2345 | Self::SigmaPU => 1,
            Self::CBF | Self::SigmaPY | Self::SW => 2,
            Self::BF | Self::PU | Self::PY => 3,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|m| {
                let n = m.name().to_ascii_lowercase();
                n == key || n.replace("sigma", "σ") == key || n.replace(['(', ')', ','], "") == key
            })
            .ok_or_else(|| Error::InvalidInput(format!("unknown model set '{s}'")))
    }
}

/// Point of a model set at the given parameters. Constrained sets (PU, PY)
/// reject parameters off their defining quadric.
pub fn eval_model_singular_set(set: ModelSet, t: &[f64]) -> Result<Vec<f64>> {
    if t.len() != set.arity() {
        return Err(Error::Arity {
            expected: set.arity(),
            found: t.len(),
        });
    }
    let constraint = |resid: f64, size: f64| -> Result<()> {
        if resid.abs() > 1e-9 * (1.0 + size) {
            Err(Error::ModelSpace { residual: resid })
        } else {
            Ok(())
        }
    };
    Ok(match set {
        ModelSet::C23 => vec![t[0].powi(2), t[0].powi(3)],
        ModelSet::C234 => (2..=4).map(|k| t[0].powi(k)).collect(),
        ModelSet::C2345 => (2..=5).map(|k| t[0].powi(k)).collect(),
        ModelSet::CBF => {
            let (a, b) = (t[0], t[1]);
            vec![
                10.0 * a.powi(3) + 3.0 * b * a,
                5.0 * a.powi(4) + b * a * a,
                6.0 * a.powi(5) + b * a.powi(3),
                b,
            ]
        }
        ModelSet::SigmaPU => {
            let u = t[0];
            vec![5.0 * u.powi(3) / 108.0, u * u / 4.0, u * u / 4.0, u]
        }
        ModelSet::SigmaPY => {
            let u = t[0];
            let c = 4.0 * u.powi(3) / 3.0;
            let r3 = 3.0f64.sqrt();
            match t[1] {
                0.0 => vec![c, -3.0 * u * u, 0.0, u],
                1.0 => vec![c, 1.5 * u * u, -1.5 * r3 * u * u, u],
                2.0 => vec![c, 1.5 * u * u, 1.5 * r3 * u * u, u],
                b => {
                    return Err(Error::InvalidInput(format!(
                        "Σ(PY) branch must be 0, 1 or 2, got {b}"
                    )))
                }
            }
        }
        ModelSet::SW => {
            let (u, v) = (t[0], t[1]);
            vec![
                3.0 * u.powi(4) + u * u * v,
                4.0 * u.powi(3) + 2.0 * u * v,
                v,
            ]
        }
        ModelSet::BF => {
            let (u, v, w) = (t[0], t[1], t[2]);
            vec![
                5.0 * u.powi(4) + 3.0 * v * u * u + 2.0 * w * u,
                4.0 * u.powi(5) + 2.0 * v * u.powi(3) + w * u * u,
                v,
                w,
            ]
        }
        ModelSet::PU => {
            let (a, b, c) = (t[0], t[1], t[2]);
            constraint(c * c - 36.0 * a * b, c * c)?;
            vec![3.0 * a * a + b * c, 3.0 * b * b + a * c, c]
        }
        ModelSet::PY => {
            let (a, b, c) = (t[0], t[1], t[2]);
            constraint(c * c - a * a - b * b, c * c)?;
            vec![b * b - a * a - 2.0 * a * c, 2.0 * (a * b - b * c), c]
        }
    })
}

/// Golden-section minimization on [a, b].
fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}

/// Threshold on σ_min/σ_max for an accepted rank drop.
pub const MODEL_RANK_TOL: f64 = 1e-8;

/// Parameters where the model Jacobian drops rank, located by scanning lines
/// parallel to each grid axis, refining local minima of σ_min/σ_max by
/// golden section and keeping minima below [`MODEL_RANK_TOL`].
///
/// Axes are named `u1`, `u2`, …; an axis with min = max fixes that
/// parameter (a slice).
pub fn brute_force_critical_set(model: &ModelGerm, spec: &GridSpec) -> Result<Vec<Vec<f64>>> {
    let names: Vec<String> = (1..=model.arity).map(|i| format!("u{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    spec.check_names(&refs)?;
    let axes: Vec<Vec<f64>> = names
        .iter()
        .map(|n| {
            let a = spec.get(n).ok_or_else(|| {
                Error::Grid(format!("axis '{n}' is required for model {}", model.name))
            })?;
            Ok(if a.min == a.max {
                vec![a.min]
            } else {
                a.values()
            })
        })
        .collect::<Result<_>>()?;
    let mut lines: Vec<(usize, Vec<f64>)> = Vec::new();
    for d in 0..model.arity {
        if axes[d].len() < 2 {
            continue;
        }
        let mut bases: Vec<Vec<f64>> = vec![vec![0.0; model.arity]];
        for (i, ax) in axes.iter().enumerate() {
            if i == d {
                continue;
            }
            bases = bases
                .into_iter()
                .flat_map(|b| {
                    ax.iter().map(move |&v| {
                        let mut q = b.clone();
                        q[i] = v;
                        q
                    })
                })
                .collect();
        }
        lines.extend(bases.into_iter().map(|b| (d, b)));
    }
    let found: Vec<Vec<Vec<f64>>> = lines
        .par_iter()
        .map(|(d, base)| {
            let xs = &axes[*d];
            let at = |x: f64| {
                let mut p = base.clone();
                p[*d] = x;
                p
            };
            let r: Vec<f64> = xs.iter().map(|&x| model.rank_ratio(&at(x))).collect();
            let mut out = Vec::new();
            for i in 0..xs.len() {
                let left = if i > 0 { r[i - 1] } else { f64::INFINITY };
                let right = if i + 1 < xs.len() {
                    r[i + 1]
                } else {
                    f64::INFINITY
                };
                if !(r[i] <= left && r[i] < right) {
                    continue;
                }
                let a = if i > 0 { xs[i - 1] } else { xs[i] };
                let b = if i + 1 < xs.len() { xs[i + 1] } else { xs[i] };
                let x = golden_min(
                    |x| model.rank_ratio(&at(x)),
                    a,
                    b,
                    1e-14 * (1.0 + xs[i].abs()),
                );
                if model.rank_ratio(&at(x)) < MODEL_RANK_TOL {
                    out.push(at(x));
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// max over p ∈ a of the Euclidean distance to the nearest point of b.
pub fn directed_hausdorff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let mut sorted: Vec<&Vec<f64>> = b.iter().collect();
    sorted.sort_by(|p, q| p[0].total_cmp(&q[0]));
    a.par_iter()
        .map(|p| {
            let start = sorted.partition_point(|q| q[0] < p[0]);
            let dist = |q: &Vec<f64>| {
                p.iter()
                    .zip(q)
                    .map(|(x, y)| (x - y).powi(2))
                    .sum::<f64>()
                    .sqrt()
            };
            let mut best = f64::INFINITY;
            for q in &sorted[start..] {
                if q[0] - p[0] >= best {
                    break;
                }
                best = best.min(dist(q));
            }
            for q in sorted[..start].iter().rev() {
                if p[0] - q[0] >= best {
                    break;
                }
                best = best.min(dist(q));
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

/// Symmetric Hausdorff distance between finite point sets.
pub fn hausdorff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() {
            0.0
        } else {
            f64::INFINITY
        };
    }
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_values() {
        assert_eq!(
            eval_normal_form(SingularityLabel::A2CuspidalEdge, &[1.0, 0.0, 0.0]).unwrap(),
            vec![3.0, 2.0, 0.0, 0.0]
        );
        assert_eq!(
            eval_normal_form(SingularityLabel::D4Plus, &[1.0, 1.0, 0.0]).unwrap(),
            vec![4.0, 3.0, 3.0, 0.0]
        );
        assert_eq!(
            eval_normal_form(SingularityLabel::A3Swallowtail, &[0.0; 3]).unwrap(),
            vec![0.0; 4]
        );
        assert!(eval_normal_form(SingularityLabel::A3Swallowtail, &[0.0; 2]).is_err());
    }

    #[test]
    fn model_set_values() {
        let pu = eval_model_singular_set(ModelSet::SigmaPU, &[2.0]).unwrap();
        let expect = [10.0 / 27.0, 1.0, 1.0, 2.0];
        for (a, b) in pu.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(
            eval_model_singular_set(ModelSet::C234, &[2.0]).unwrap(),
            vec![4.0, 8.0, 16.0]
        );
        assert_eq!(
            eval_model_singular_set(ModelSet::C2345, &[0.0]).unwrap(),
            vec![0.0; 4]
        );
        assert!(eval_model_singular_set(ModelSet::PU, &[1.0, 1.0, 1.0]).is_err());
        assert!(eval_model_singular_set(ModelSet::PU, &[1.0, 1.0, 6.0]).is_ok());
        assert_eq!(ModelSet::parse("sigma(pu)").unwrap(), ModelSet::SigmaPU);
        assert_eq!(ModelSet::parse("C234").unwrap(), ModelSet::C234);
    }

    #[test]
    fn a1_has_no_critical_points() {
        let m = ModelGerm::normal_form(SingularityLabel::A1Regular).unwrap();
        let g = GridSpec::parse("u1=-1:1:11,u2=-1:1:11,u3=-1:1:11").unwrap();
        assert!(brute_force_critical_set(&m, &g).unwrap().is_empty());
    }

    #[test]
    fn a3_critical_parabola() {
        let m = ModelGerm::normal_form(SingularityLabel::A3Swallowtail).unwrap();
        let g = GridSpec::parse("u1=-0.3:0.3:61,u2=-0.5:0.1:61,u3=0:0:2").unwrap();
        let pts = brute_force_critical_set(&m, &g).unwrap();
        assert!(pts.len() > 50);
        for p in &pts {
            assert!((p[1] + 6.0 * p[0] * p[0]).abs() < 1e-9, "{p:?}");
        }
    }
}
