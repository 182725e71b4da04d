//! Property tests for the geometric invariants.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use adsgeom::classifier::{cubic_d4_label, SingularityLabel};
use adsgeom::curve_frames::frame_ads4;
use adsgeom::export::{records_from_json, to_csv, to_json, SampleRecord};
use adsgeom::height::{height, height_jet_curve};
use adsgeom::parametric::GeomObject;
use adsgeom::presets::{preset, preset_default};
use adsgeom::semi_euclidean::{ads_residual, causal_class, det_rows, pseudo_inner, wedge};
use adsgeom::sheets::{fiber_shape_eigenvalue, lh_eval, null_normal, Fiber};
use adsgeom::surface_geometry::principal_curvatures;
use adsgeom::terms::{sum_derivatives, ScalarTerm};
use adsgeom::{AmbientVector, ToleranceConfig};
use proptest::prelude::*;

fn vec_strategy(dim: usize) -> impl Strategy<Value = AmbientVector> {
    prop::collection::vec(-3.0f64..3.0, dim).prop_map(|c| AmbientVector::new(&c).unwrap())
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn curve(name: &str) -> GeomObject {
    preset_default(name).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pseudo_inner_is_bilinear_and_symmetric(
        x in vec_strategy(5), y in vec_strategy(5), z in vec_strategy(5), a in -2.0f64..2.0, b in -2.0f64..2.0,
    ) {
        let lhs = pseudo_inner(&x.scale(a).axpy(b, &y), &z).unwrap();
        let rhs = a * pseudo_inner(&x, &z).unwrap() + b * pseudo_inner(&y, &z).unwrap();
        let scale = (x.euclid_norm() + y.euclid_norm()) * z.euclid_norm() * 4.0 + 1.0;
        prop_assert!((lhs - rhs).abs() < 1e-12 * scale);
        prop_assert_eq!(pseudo_inner(&x, &y).unwrap(), pseudo_inner(&y, &x).unwrap());
    }

    #[test]
    fn wedge_is_orthogonal_and_matches_determinant(
        dim in 4usize..=5, seed in prop::collection::vec(-2.0f64..2.0, 25),
    ) {
        let rows: Vec<AmbientVector> = seed.chunks(5).take(dim).map(|c| AmbientVector::new(&c[..dim]).unwrap()).collect();
        let (x, vs) = rows.split_first().unwrap();
        let w = wedge(vs).unwrap();
        let scale: f64 = rows.iter().map(|v| v.euclid_norm().max(1.0)).product();
        for v in vs {
            prop_assert!(v.dot(&w).abs() < 1e-9 * scale);
        }
        prop_assert!((x.dot(&w) - det_rows(&rows).unwrap()).abs() < 1e-9 * scale);
    }

    #[test]
    fn causal_class_is_invariant_under_positive_scaling(x in vec_strategy(5), k in 0.01f64..100.0) {
        // Away from the tolerance band the class is a property of the ray.
        let q = x.dot(&x) / x.euclid_sq();
        prop_assume!(q.abs() > 1e-6 && x.max_abs() > 1e-3);
        prop_assert_eq!(causal_class(&x, &tol()).unwrap(), causal_class(&x.scale(k), &tol()).unwrap());
    }

    #[test]
    fn cosine_second_derivative_is_exact(omega in -5.0f64..5.0, s in -10.0f64..10.0) {
        let mut out = [0.0; 3];
        sum_derivatives(&[ScalarTerm::cos(1.0, omega)], s, 2, &mut out);
        prop_assert_eq!(out[2], -omega * omega * (omega * s).cos());
    }

    #[test]
    fn first_curvature_identity(name in prop::sample::select(vec!["ads4-helix", "ads4-case1-curve", "ads4-generic-curve", "ads4-case3-curve"]), t in 0.0f64..1.0) {
        let obj = curve(name);
        let c = obj.as_curve().unwrap();
        let s = c.domain.0 + t * (c.domain.1 - c.domain.0);
        let f = frame_ads4(c, s, &tol()).unwrap();
        let g2 = c.eval_derivative(s, 2).unwrap();
        // γ″ − γ = κ₁ δ₁ n₁, so κ₁² δ₁ = ⟨γ″, γ″⟩ + 1.
        let lhs = f.kappa1 * f.kappa1 * f.delta1 as f64;
        prop_assert!((lhs - (g2.dot(&g2) + 1.0)).abs() < 1e-9 * (1.0 + lhs.abs()));
    }

    #[test]
    fn helix_case_tag_is_shift_invariant(s in 0.0f64..3.0, c in 0.0f64..3.0) {
        let obj = curve("ads4-helix");
        let h = obj.as_curve().unwrap();
        let a = frame_ads4(h, s, &tol()).unwrap();
        let b = frame_ads4(h, s + c, &tol()).unwrap();
        prop_assert_eq!(a.case_tag, b.case_tag);
        prop_assert!((a.kappa1 - b.kappa1).abs() < 1e-9);
    }

    #[test]
    fn sheet_points_are_null_and_in_ads(
        name in prop::sample::select(vec!["ads4-helix", "ads4-case1-curve", "ads4-case3-curve"]),
        t in 0.0f64..1.0, theta in 0.0f64..TAU, mu in -2.0f64..2.0,
    ) {
        let obj = curve(name);
        let c = obj.as_curve().unwrap();
        let s = c.domain.0 + t * (c.domain.1 - c.domain.0);
        let p = lh_eval(&obj, &[s], Fiber::Theta(theta), mu, &tol()).unwrap();
        let scale = p.position.euclid_sq().max(1.0);
        prop_assert!(p.ng.dot(&p.ng).abs() < 1e-10 * p.ng.euclid_sq().max(1.0));
        prop_assert!(ads_residual(&p.position).abs() < 1e-10 * scale);
        // H and ∂H/∂s vanish on the sheet.
        let jet = height_jet_curve(c, s, &p.position, 1, &tol()).unwrap();
        prop_assert!(jet.value.abs() < 1e-10 * scale);
        prop_assert!(jet.derivatives[0].abs() < 1e-10 * scale);
    }

    #[test]
    fn height_derivatives_match_finite_differences(t in 0.05f64..0.95, theta in 0.0f64..TAU, mu in -1.5f64..1.5) {
        let obj = curve("ads4-case1-curve");
        let c = obj.as_curve().unwrap();
        let s = c.domain.0 + t * (c.domain.1 - c.domain.0);
        let lam = lh_eval(&obj, &[s], Fiber::Theta(theta), mu, &tol()).unwrap().position;
        let h = 1e-4;
        let jet = height_jet_curve(c, s, &lam, 2, &tol()).unwrap();
        let f = |x: f64| height(&obj, &[x], &lam, &tol()).unwrap();
        let d1 = (f(s + h) - f(s - h)) / (2.0 * h);
        let d2 = (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
        let scale = lam.euclid_sq().max(1.0);
        prop_assert!((jet.derivatives[0] - d1).abs() < 1e-6 * scale);
        prop_assert!((jet.derivatives[1] - d2).abs() < 1e-4 * scale);
    }

    #[test]
    fn helix_fiber_eigenvalue_is_minus_one(b in 0.3f64..2.0, p in 0.3f64..2.0, s in 0.0f64..5.0, theta in 0.0f64..TAU) {
        let params = BTreeMap::from([("B".to_string(), b), ("p".to_string(), p)]);
        let obj = preset("ads4-helix", &params).unwrap();
        let c = obj.as_curve().unwrap();
        let s = s.clamp(c.domain.0, c.domain.1);
        let fs = fiber_shape_eigenvalue(&obj, s, theta, &tol()).unwrap();
        prop_assert!((fs.fiber + 1.0).abs() < 1e-9);
    }

    #[test]
    fn surface_forms_are_symmetric_and_g_positive(
        name in prop::sample::select(vec!["ads4-lightcone-sphere", "ads4-product-torus", "ads4-graph-surface"]),
        a in 0.02f64..0.98, b in 0.02f64..0.98, sign in prop::sample::select(vec![1i8, -1]),
    ) {
        let obj = preset_default(name).unwrap();
        let s = obj.as_surface().unwrap();
        let u = [s.domain[0].0 + a * (s.domain[0].1 - s.domain[0].0), s.domain[1].0 + b * (s.domain[1].1 - s.domain[1].0)];
        let pd = principal_curvatures(s, u, sign, &tol()).unwrap();
        prop_assert_eq!(pd.h[0][1], pd.h[1][0]);
        prop_assert_eq!(pd.g[0][1], pd.g[1][0]);
        prop_assert!(pd.g[0][0] > 0.0 && pd.g[0][0] * pd.g[1][1] - pd.g[0][1] * pd.g[1][0] > 0.0);
        let nn = null_normal(&obj, &u, Fiber::Sign(sign), false, &tol()).unwrap();
        prop_assert!(nn.ng.dot(&nn.ng).abs() < 1e-10 * nn.ng.euclid_sq());
    }

    #[test]
    fn d4_labels_survive_linear_changes(a in 0.2f64..3.0, d in 0.2f64..3.0, r in 0.0f64..TAU) {
        // x³ + y³ and x³/3 − xy² in rotated and rescaled coordinates.
        let (c, s) = (r.cos(), r.sin());
        let cubic = |f: &dyn Fn(f64, f64) -> f64| -> [f64; 4] {
            // Coefficients of f(a(cx − sy), d(sx + cy)) recovered by sampling.
            let g = |x: f64, y: f64| f(a * (c * x - s * y), d * (s * x + c * y));
            let c30 = g(1.0, 0.0);
            let c03 = g(0.0, 1.0);
            let p = g(1.0, 1.0) - c30 - c03;
            let m = g(1.0, -1.0) - c30 + c03;
            [c30, (p - m) / 2.0, (p + m) / 2.0, c03]
        };
        let plus = cubic(&|x, y| x.powi(3) + y.powi(3));
        let minus = cubic(&|x, y| x.powi(3) / 3.0 - x * y * y);
        prop_assert_eq!(cubic_d4_label(plus, 1e-7).0, SingularityLabel::D4Plus);
        prop_assert_eq!(cubic_d4_label(minus, 1e-7).0, SingularityLabel::D4Minus);
    }

    #[test]
    fn json_export_round_trips(vals in prop::collection::vec(-1e6f64..1e6, 1..40), tiny in -1e-300f64..1e-300) {
        let records: Vec<SampleRecord> = vals
            .chunks(4)
            .map(|c| SampleRecord {
                params: vec![("s".into(), c[0]), ("mu".into(), tiny)],
                coords: c.to_vec(),
                attrs: vec![("regular".into(), 1.0)],
            })
            .filter(|r| r.coords.len() == 4)
            .collect();
        let text = to_json(&records);
        prop_assert_eq!(records_from_json(&text).unwrap(), records.clone());
        prop_assert_eq!(to_csv(&records).unwrap(), to_csv(&records).unwrap());
    }
}
