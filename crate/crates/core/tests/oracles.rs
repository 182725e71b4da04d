//! Hand-derived and finite-difference reference values.

use std::f64::consts::{PI, SQRT_2, TAU};

use adsgeom::classifier::ridge_order;
use adsgeom::curve_frames::frame_ads4;
use adsgeom::grid::GridSpec;
use adsgeom::height::{
    height_jet_curve, legendrian_lift, legendrian_raw, morse_family_rank_normalized,
};
use adsgeom::presets::preset_default;
use adsgeom::sheets::{discriminant_samples, lh_eval, null_normal, Fiber};
use adsgeom::ToleranceConfig;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

#[test]
fn second_derivative_matches_difference_of_first() {
    let h = 1e-5;
    for name in [
        "ads3-circle",
        "ads3-helix",
        "ads4-helix",
        "ads4-case1-curve",
        "ads4-generic-curve",
        "ads4-case3-curve",
    ] {
        let obj = preset_default(name).unwrap();
        let c = obj.as_curve().unwrap();
        for s in c.samples(25).into_iter().skip(1).take(23) {
            let d2 = c.eval_derivative(s, 2).unwrap();
            let fd = (c.eval_derivative(s + h, 1).unwrap() - c.eval_derivative(s - h, 1).unwrap())
                .scale(0.5 / h);
            let scale = d2.euclid_norm().max(1.0);
            assert!((d2 - fd).euclid_norm() < 1e-8 * scale, "{name} at {s}");
        }
    }
}

#[test]
fn curvature_derivatives_match_differences_of_curvature() {
    let h = 1e-5;
    for name in ["ads4-case1-curve", "ads4-generic-curve", "ads4-case3-curve"] {
        let obj = preset_default(name).unwrap();
        let c = obj.as_curve().unwrap();
        for s in c.samples(15).into_iter().skip(1).take(13) {
            let f = frame_ads4(c, s, &tol()).unwrap();
            let k = |x: f64| frame_ads4(c, x, &tol()).unwrap();
            let (fp, fm) = (k(s + h), k(s - h));
            let dk1 = (fp.kappa1 - fm.kappa1) / (2.0 * h);
            let dk2 = (fp.kappa2 - fm.kappa2) / (2.0 * h);
            let scale = 1.0 + f.kappa1.abs() + f.kappa2.abs();
            assert!(
                (f.kappa1_derivs[1] - dk1).abs() < 1e-6 * scale,
                "{name} κ₁′ at {s}"
            );
            assert!(
                (f.kappa2_derivs[1] - dk2).abs() < 1e-6 * scale,
                "{name} κ₂′ at {s}"
            );
        }
    }
}

#[test]
fn circle_sample_values() {
    let obj = preset_default("ads3-circle").unwrap();
    let c = obj.as_curve().unwrap();
    assert_eq!(
        c.eval_derivative(0.0, 0).unwrap().to_vec(),
        vec![SQRT_2, 0.0, 1.0, 0.0]
    );
    assert_eq!(
        c.eval_derivative(0.0, 1).unwrap().to_vec(),
        vec![0.0, 0.0, 0.0, 1.0]
    );
}

#[test]
fn null_normals_pair_like_unit_circle() {
    // ⟨nᵀ + cos θ b₁ + sin θ b₂, nᵀ + cos θ′ b₁ + sin θ′ b₂⟩ = −1 + cos(θ − θ′).
    let obj = preset_default("ads4-helix").unwrap();
    for s in [0.3, 2.0, 5.1] {
        for i in 0..12 {
            for j in 0..12 {
                let (a, b) = (TAU * i as f64 / 12.0, TAU * j as f64 / 12.0);
                let na = null_normal(&obj, &[s], Fiber::Theta(a), false, &tol())
                    .unwrap()
                    .ng;
                let nb = null_normal(&obj, &[s], Fiber::Theta(b), false, &tol())
                    .unwrap()
                    .ng;
                assert!((na.dot(&nb) - (-1.0 + (a - b).cos())).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn case1_second_height_derivative_is_affine_in_mu() {
    // h″ = −μκ₁ − 1 along the Case 1 sheet.
    let obj = preset_default("ads4-case1-curve").unwrap();
    let c = obj.as_curve().unwrap();
    for s in c.samples(9) {
        let k1 = frame_ads4(c, s, &tol()).unwrap().kappa1;
        for theta in [0.0, 1.3, 4.0] {
            for mu in [-1.0, -0.25, 0.5, 2.0] {
                let lam = lh_eval(&obj, &[s], Fiber::Theta(theta), mu, &tol())
                    .unwrap()
                    .position;
                let h2 = height_jet_curve(c, s, &lam, 2, &tol()).unwrap().derivatives[1];
                assert!((h2 - (-mu * k1 - 1.0)).abs() < 1e-10 * (1.0 + mu.abs() * k1));
            }
        }
    }
}

#[test]
fn legendrian_covector_annihilates_sheet_tangents() {
    let obj = preset_default("ads4-case3-curve").unwrap();
    let c = obj.as_curve().unwrap();
    let h = 1e-6;
    for s in c.samples(7).into_iter().skip(1).take(5) {
        for theta in [0.4, 2.5] {
            for mu in [-0.7, 0.9] {
                let x = c.eval_derivative(s, 0).unwrap();
                let p = |s: f64, t: f64, m: f64| {
                    lh_eval(&obj, &[s], Fiber::Theta(t), m, &tol())
                        .unwrap()
                        .position
                };
                let lam = p(s, theta, mu);
                let raw = legendrian_raw(&x, &lam);
                let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
                let tangents = [
                    (p(s + h, theta, mu) - p(s - h, theta, mu)).scale(0.5 / h),
                    (p(s, theta + h, mu) - p(s, theta - h, mu)).scale(0.5 / h),
                    (p(s, theta, mu + h) - p(s, theta, mu - h)).scale(0.5 / h),
                ];
                for t in tangents {
                    // Chart coordinates are λ₀, λ₁, …; λ₋₁ is dependent.
                    let pairing: f64 = raw.iter().zip(&t.coords()[1..]).map(|(a, b)| a * b).sum();
                    assert!(
                        pairing.abs() < 1e-8 * norm * t.euclid_norm().max(1.0),
                        "{pairing}"
                    );
                }
                // θ and θ + 2π describe the same sheet point and the same lift.
                let a = legendrian_lift(&obj, &[s], &lam, &tol()).unwrap();
                let b = legendrian_lift(&obj, &[s], &p(s, theta + TAU, mu), &tol()).unwrap();
                for (u, v) in a.homogeneous.iter().zip(&b.homogeneous) {
                    assert!((u - v).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn morse_family_ranks_on_generic_samples() {
    let helix = preset_default("ads4-helix").unwrap();
    let lam = lh_eval(&helix, &[1.0], Fiber::Theta(PI / 3.0), 0.4, &tol())
        .unwrap()
        .position;
    assert_eq!(
        morse_family_rank_normalized(&helix, &[1.0], &lam, &tol())
            .unwrap()
            .rank,
        2
    );

    let surf = preset_default("ads4-graph-surface").unwrap();
    let lam = lh_eval(&surf, &[0.1, -0.05], Fiber::Sign(1), 0.3, &tol())
        .unwrap()
        .position;
    assert_eq!(
        morse_family_rank_normalized(&surf, &[0.1, -0.05], &lam, &tol())
            .unwrap()
            .rank,
        3
    );
}

#[test]
fn ridge_scan_points_have_ridge_order_one() {
    let obj = preset_default("ads4-graph-surface").unwrap();
    let s = obj.as_surface().unwrap();
    let spec = GridSpec::parse("u=-0.4:0.4:24,v=-0.4:0.4:24").unwrap();
    let d = discriminant_samples(&obj, 3, &spec, &tol()).unwrap();
    assert!(!d.points.is_empty());
    for p in d.points.iter().take(10) {
        let Fiber::Sign(sign) = p.fiber else {
            panic!("surfaces use sign fibres")
        };
        let orders: Vec<usize> = (0..2)
            .filter_map(|b| ridge_order(s, [p.base[0], p.base[1]], sign, b, &tol()).ok())
            .collect();
        assert!(orders.contains(&1), "{:?} -> {orders:?}", p.base);
    }
}
