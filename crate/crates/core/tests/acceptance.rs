//! Acceptance criteria. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails. Bounds and minimum sample counts are pinned here and
//! checked against the measured worst case of every suite check, so a change
//! to a suite threshold cannot silently loosen a criterion.

use adsgeom::verification::{run_suite, Check, SuiteReport, VerifyConfig};

/// (check name, bound, minimum samples). Lower-bound checks are recognised
/// from the suite report.
type Pin = (&'static str, f64, usize);

const CRITERIA: [(&str, &[Pin]); 10] = [
    (
        "algebra: wedge orthogonality and determinant identity",
        &[
            ("wedge orthogonality", 1e-9, 2000),
            ("determinant identity", 1e-9, 2000),
        ],
    ),
    (
        "frames: Gram and Frenet/Weingarten residuals on all presets",
        &[
            ("Gram residual", 1e-8, 9000),
            ("Frenet/Weingarten residual", 1e-6, 9000),
        ],
    ),
    (
        "null sheets: lightlike normal, AdS membership, H, dH, pullback det",
        &[
            ("<NG,NG>", 1e-8, 200 * 64),
            ("ads residual", 1e-8, 200 * 64 * 21),
            ("H", 1e-8, 200 * 64 * 21),
            ("dH", 1e-8, 200 * 64 * 21),
            ("pullback det/scale", 1e-8, 200 * 64 * 21),
        ],
    ),
    (
        "focal sets: vanishing at mu*, non-vanishing at 0.9/1.1 mu*",
        &[
            ("|h''| at focal", 1e-8, 1000),
            ("|h''| at 0.9/1.1 mu*", 1e-3, 2000),
            ("|det Hess| at focal", 1e-8, 400),
            ("|det Hess| at 0.9/1.1 mu*", 1e-3, 400),
        ],
    ),
    (
        "fiber shape eigenvalue -1 on ads4-helix",
        &[("|fiber eigenvalue + 1|", 1e-9, 1000)],
    ),
    (
        "lightcone sphere: focal collapse to lambda0, umbilic everywhere",
        &[
            ("|focal - lambda0|", 1e-7, 400),
            ("non-umbilic points", 0.5, 400),
        ],
    ),
    (
        "classification: rho/sigma/sigma' labels agree with A_k detection",
        &[
            ("Case 1 label/A_k mismatches", 0.5, 100),
            ("Case 2 label/A_k mismatches", 0.5, 100),
            ("Case 3 label/A_k mismatches", 0.5, 100),
            ("Case 1 ρ-located points", 99.5, 1),
            ("Case 2 ρ-located points", 99.5, 1),
            ("Case 3 ρ-located points", 99.5, 1),
        ],
    ),
    (
        "model sets: brute-force critical sets match parametrizations",
        &[
            ("A3 critical set vs u2=-6u1^2 (Hausdorff)", 1e-3, 1),
            ("A3 critical values vs C(2,3,4) (Hausdorff)", 1e-3, 1),
            ("D4+ rank-drop residual |u3^2-36u1u2|", 1e-6, 100),
            ("D4+ critical slices vs u1u2=u3^2/36 (Hausdorff)", 1e-3, 2),
            ("Sigma(PU) vs brute force (Hausdorff)", 1e-3, 1),
        ],
    ),
    (
        "ranks: Morse family s+1, versality 4 with sigma4 > 1e-8 sigma1",
        &[
            ("Morse family rank deficit", 0.5, 200 * 9),
            ("versality rank deficit", 0.5, 100),
            ("versality sigma4/sigma1", 1e-8, 100),
        ],
    ),
    (
        "frame choice: sheets agree and null normals are parallel",
        &[
            ("sheet distance / scale", 1e-6, 2),
            ("rank-1 span residual", 1e-9, 1000),
        ],
    ),
];

fn evaluate(report: &SuiteReport, pins: &[Pin]) -> Vec<String> {
    let mut problems = Vec::new();
    for &(name, bound, min_samples) in pins {
        let Some(c): Option<&Check> = report.checks.iter().find(|c| c.name == name) else {
            problems.push(format!("check '{name}' missing"));
            continue;
        };
        let within = if c.lower_bound {
            c.worst > bound
        } else {
            c.worst < bound
        };
        if !within || c.failures > 0 {
            problems.push(format!(
                "{name}: worst {:.3e} vs {bound:e}, {} failures",
                c.worst, c.failures
            ));
        }
        if c.samples < min_samples {
            problems.push(format!("{name}: {} samples < {min_samples}", c.samples));
        }
    }
    problems
}

#[test]
fn acceptance_criteria() {
    let cfg = VerifyConfig::default();
    let mut failed = 0;
    for (i, (title, pins)) in CRITERIA.iter().enumerate() {
        let id = i + 1;
        let problems = match run_suite(id, &cfg) {
            Ok(report) => evaluate(&report, pins),
            Err(e) => vec![format!("suite error: {e}")],
        };
        if problems.is_empty() {
            println!("PASS criterion {id:>2}: {title}");
        } else {
            failed += 1;
            println!("FAIL criterion {id:>2}: {title}: {}", problems.join("; "));
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
