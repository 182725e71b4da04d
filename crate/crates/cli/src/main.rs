//! `adsgeom` command-line front end.
//!
//! Reports go to stdout as JSON (or CSV/OBJ for sampled data). Failures are
//! written to stderr as a single JSON record `{"error": kind, "message": …}`.
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use adsgeom::classifier::{
    classify_evolute_point_ads3, classify_focal_point_ads4_curve, classify_surface_focal_point,
    ridge_order, scan_rho_ads4, scan_sigma_ads3, scan_sigma_ads4, SingularityLabel,
};
use adsgeom::curve_frames::{
    curve_invariants_ads4, frame_ads3, frame_ads4, sigma_pm_ads3, CurveSpace,
};
use adsgeom::export::{export_samples, sheet_records, Format, Projection, SampleRecord};
use adsgeom::grid::{GridAxis, GridSpec};
use adsgeom::height::{
    detect_ak_curve, height_jet_curve, hessian_surface, morse_family_rank_normalized,
};
use adsgeom::models::{brute_force_critical_set, eval_model_singular_set, ModelGerm, ModelSet};
use adsgeom::parametric::{validate, GeomObject};
use adsgeom::presets::{preset, PRESETS};
use adsgeom::sheets::{
    axis_names, discriminant_samples, focal_eval, null_normal, resolve_grid, sheet_grid, Fiber,
};
use adsgeom::surface_geometry::{normal_frame, principal_curvatures};
use adsgeom::verification::{run_suite, VerifyConfig};
use adsgeom::{AmbientVector, Error, ToleranceConfig};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "adsgeom",
    version,
    about = "Lightlike hypersurfaces along spacelike submanifolds of anti-de Sitter space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ObjectArgs {
    /// Shipped preset name (see `validate --list`).
    #[arg(long, conflicts_with = "input")]
    preset: Option<String>,
    /// Preset parameter override `name=value` (repeatable).
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// JSON file describing a curve or surface.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Tolerance overrides, e.g. `zero=1e-6,fd=1e-4` (applied after ADS_TOL).
    #[arg(long)]
    tol: Option<String>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, default_value = "json")]
    format: String,
    /// Three coordinate labels (from -1) kept in OBJ output.
    #[arg(long)]
    project: Option<String>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check AdS membership, unit speed and spacelikeness.
    Validate {
        #[command(flatten)]
        obj: ObjectArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// List the shipped presets and their default parameters.
        #[arg(long)]
        list: bool,
    },
    /// Moving frame at a base point.
    Frame {
        #[command(flatten)]
        obj: ObjectArgs,
        /// Base point `s` or `u,v` (domain midpoint when omitted).
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Curve invariants (ρ, σ, σ′ for AdS⁴ curves; σ± for AdS³ curves).
    Invariants {
        #[command(flatten)]
        obj: ObjectArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
    },
    /// Principal nullcone curvatures of a surface.
    SurfaceCurvature {
        #[command(flatten)]
        obj: ObjectArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<i8>,
    },
    /// Sample the lightlike hypersurface over a grid.
    Sheet {
        #[command(flatten)]
        obj: ObjectArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Sample the focal set (nullcone focal points).
    Focal {
        #[command(flatten)]
        obj: ObjectArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Discriminant set of order 1, 2 or 3.
    Discriminant {
        #[command(flatten)]
        obj: ObjectArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Classify the singularity at one focal point.
    Classify {
        #[command(flatten)]
        obj: ObjectArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Fibre angle for AdS⁴ curves.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        /// Sheet sign (AdS³ curves and surfaces).
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i8,
        /// Principal branch (surfaces).
        #[arg(long, default_value_t = 0)]
        branch: usize,
    },
    /// Locate and classify the zeros of an invariant along the object.
    Scan {
        #[command(flatten)]
        obj: ObjectArgs,
        /// rho or sigma for curves, ridge for surfaces.
        #[arg(long)]
        invariant: String,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Height function jets, A_k detection and Morse-family rank.
    HeightProbe {
        #[command(flatten)]
        obj: ObjectArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Explicit λ in AdS (comma-separated ambient coordinates).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Sheet fibre (θ for AdS⁴ curves, ±1 otherwise) used when λ is not given.
        #[arg(long, allow_hyphen_values = true)]
        fiber: Option<f64>,
        /// Sheet parameter; defaults to the first focal value.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<f64>,
        #[arg(long, default_value_t = 5)]
        order: usize,
    },
    /// Normal forms and model singular sets.
    Models {
        #[command(flatten)]
        out: OutputArgs,
        /// Model set name, e.g. "C(2,3,4)", "Sigma(PU)", SW, BF.
        #[arg(long, conflicts_with = "normal_form")]
        set: Option<String>,
        /// Normal form label, e.g. A3 or D4+.
        #[arg(long)]
        normal_form: Option<String>,
        /// Brute-force the critical set of the normal form instead of sampling it.
        #[arg(long, requires = "normal_form")]
        critical: bool,
        /// Axes u1, u2, … over the model parameters.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Run the invariant suites.
    Verify {
        /// Suite ids to run (all when omitted).
        #[arg(long = "suite")]
        suites: Vec<usize>,
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Failure split by exit code.
enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Grid(_) | Error::Projection(_) | Error::InvalidInput(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Domain(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("{}", json!({"error": "UsageError", "message": msg}));
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
            ExitCode::from(1)
        }
    }
}

fn tolerances(arg: Option<&str>) -> CliResult<ToleranceConfig> {
    let mut tol = ToleranceConfig::default();
    if let Ok(env) = std::env::var("ADS_TOL") {
        tol = tol.with_overrides(&env)?;
    }
    if let Some(spec) = arg {
        tol = tol.with_overrides(spec)?;
    }
    Ok(tol)
}

fn load_object(a: &ObjectArgs) -> CliResult<(GeomObject, ToleranceConfig)> {
    let tol = tolerances(a.tol.as_deref())?;
    let obj = match (&a.preset, &a.input) {
        (Some(name), None) => {
            let mut params = BTreeMap::new();
            for p in &a.params {
                let Some((k, v)) = p.split_once('=') else {
                    return usage(format!("parameter '{p}' is not name=value"));
                };
                let Ok(v) = v.trim().parse::<f64>() else {
                    return usage(format!("parameter value '{v}' is not a number"));
                };
                params.insert(k.trim().to_string(), v);
            }
            preset(name, &params)?
        }
        (None, Some(path)) => {
            if !a.params.is_empty() {
                return usage("--param applies to presets only");
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let value: Value = serde_json::from_str(&text).map_err(|e| {
                CliError::Usage(format!(
                    "malformed JSON at line {}, column {}: {e}",
                    e.line(),
                    e.column()
                ))
            })?;
            GeomObject::from_json(&value)?
        }
        _ => return usage("exactly one of --preset or --input is required"),
    };
    Ok((obj, tol))
}

fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("'{x}' is not a number")))
        })
        .collect()
}

/// Base point from `--at`, defaulting to the domain midpoint.
fn base_point(obj: &GeomObject, at: Option<&str>) -> CliResult<Vec<f64>> {
    let base = match at {
        Some(s) => parse_list(s)?,
        None => match obj {
            GeomObject::Curve(c) => vec![0.5 * (c.domain.0 + c.domain.1)],
            GeomObject::Surface(s) => s.domain.iter().map(|d| 0.5 * (d.0 + d.1)).collect(),
        },
    };
    if base.len() != obj.base_dim() {
        return usage(format!(
            "--at needs {} value(s), got {}",
            obj.base_dim(),
            base.len()
        ));
    }
    Ok(base)
}

fn surface_point(base: &[f64]) -> [f64; 2] {
    [base[0], base[1]]
}

fn check_sign(sign: i8) -> CliResult<i8> {
    if sign == 1 || sign == -1 {
        Ok(sign)
    } else {
        usage(format!("sign must be 1 or -1, got {sign}"))
    }
}

fn grid_spec(g: Option<&str>) -> CliResult<GridSpec> {
    Ok(g.map(GridSpec::parse).transpose()?.unwrap_or_default())
}

fn emit(text: &str, path: Option<&PathBuf>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => write_stdout(text),
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn write_stdout(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            usage(format!("cannot write to stdout: {e}"))
        }
        _ => Ok(()),
    }
}

fn emit_json<T: Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    write_stdout(&(text + "\n"))
}

fn export(records: &[SampleRecord], dims: Option<&[usize]>, out: &OutputArgs) -> CliResult<()> {
    let format: Format = out.format.parse()?;
    let dim = records.first().map_or(5, |r| r.coords.len());
    let proj = out
        .project
        .as_deref()
        .map(|p| Projection::parse(p, dim))
        .transpose()?;
    if proj.is_some() && format != Format::Obj {
        return usage("--project applies to OBJ output only");
    }
    emit(
        &export_samples(records, format, dims, proj)?,
        out.output.as_ref(),
    )
}

fn fiber_param(f: Fiber) -> (String, f64) {
    match f {
        Fiber::Theta(t) => ("theta".into(), t),
        Fiber::Sign(s) => ("sign".into(), s as f64),
    }
}

fn run(cmd: Command) -> CliResult<u8> {
    match cmd {
        Command::Validate { obj, samples, list } => {
            if list {
                let items: Vec<Value> = PRESETS
                    .iter()
                    .map(|p| {
                        let defaults: serde_json::Map<String, Value> = p
                            .defaults
                            .iter()
                            .map(|(k, v)| (k.to_string(), json!(v)))
                            .collect();
                        json!({"name": p.name, "summary": p.summary, "defaults": defaults})
                    })
                    .collect();
                emit_json(&items)?;
                return Ok(0);
            }
            let (o, tol) = load_object(&obj)?;
            let report = validate(&o, samples, &tol)?;
            emit_json(&report)?;
            Ok(if report.ok { 0 } else { 1 })
        }
        Command::Frame { obj, at } => {
            let (o, tol) = load_object(&obj)?;
            let base = base_point(&o, at.as_deref())?;
            match &o {
                GeomObject::Curve(c) => match CurveSpace::of(c)? {
                    CurveSpace::AdS3 => emit_json(&frame_ads3(c, base[0], &tol)?)?,
                    CurveSpace::AdS4 => emit_json(&frame_ads4(c, base[0], &tol)?)?,
                },
                GeomObject::Surface(s) => emit_json(&normal_frame(s, surface_point(&base), &tol)?)?,
            }
            Ok(0)
        }
        Command::Invariants { obj, at, theta } => {
            let (o, tol) = load_object(&obj)?;
            let base = base_point(&o, at.as_deref())?;
            let c = o.as_curve()?;
            match CurveSpace::of(c)? {
                CurveSpace::AdS3 => emit_json(&sigma_pm_ads3(c, base[0], &tol)?)?,
                CurveSpace::AdS4 => emit_json(&curve_invariants_ads4(c, base[0], theta, &tol)?)?,
            }
            Ok(0)
        }
        Command::SurfaceCurvature { obj, at, sign } => {
            let (o, tol) = load_object(&obj)?;
            let base = base_point(&o, at.as_deref())?;
            let s = o.as_surface()?;
            let signs = match sign {
                Some(sg) => vec![check_sign(sg)?],
                None => vec![1, -1],
            };
            let mut out = Vec::new();
            for sg in signs {
                let pd = principal_curvatures(s, surface_point(&base), sg, &tol)?;
                out.push(json!({"sign": sg, "principal": pd}));
            }
            emit_json(&out)?;
            Ok(0)
        }
        Command::Sheet { obj, out, grid } => {
            let (o, tol) = load_object(&obj)?;
            let g = sheet_grid(&o, &grid_spec(grid.as_deref())?, &tol)?;
            export(&sheet_records(&o, &g), Some(&g.dims), &out)?;
            Ok(0)
        }
        Command::Focal { obj, out, grid } => {
            let (o, tol) = load_object(&obj)?;
            let spec = grid_spec(grid.as_deref())?;
            if spec.get("mu").is_some() {
                return usage("the focal set has no mu axis");
            }
            let rg = resolve_grid(&o, &spec)?;
            let (names, _) = axis_names(&o);
            let mut records = Vec::new();
            for base in rg.base_points() {
                for &f in &rg.fibers {
                    for branch in 0..2 {
                        match focal_eval(&o, &base, f, branch, &tol) {
                            Ok(fp) => {
                                let mut params: Vec<(String, f64)> = names
                                    .iter()
                                    .zip(&base)
                                    .map(|(n, v)| (n.to_string(), *v))
                                    .collect();
                                params.push(fiber_param(f));
                                params.push(("branch".into(), branch as f64));
                                records.push(SampleRecord {
                                    params,
                                    coords: fp.position.coords().to_vec(),
                                    attrs: vec![("mu_star".into(), fp.mu_star)],
                                });
                            }
                            Err(Error::NoFocalPoint(_)) => {}
                            Err(e) => return Err(e.into()),
                        }
                    }
                }
            }
            export(&records, None, &out)?;
            Ok(0)
        }
        Command::Discriminant {
            obj,
            out,
            grid,
            order,
        } => {
            let (o, tol) = load_object(&obj)?;
            let d = discriminant_samples(&o, order, &grid_spec(grid.as_deref())?, &tol)?;
            if out.format == "json" && out.project.is_none() {
                let text =
                    serde_json::to_string_pretty(&d).map_err(|e| CliError::Usage(e.to_string()))?;
                emit(&(text + "\n"), out.output.as_ref())?;
            } else {
                let (names, _) = axis_names(&o);
                let records: Vec<SampleRecord> = d
                    .points
                    .iter()
                    .map(|p| {
                        let mut params: Vec<(String, f64)> = names
                            .iter()
                            .zip(&p.base)
                            .map(|(n, v)| (n.to_string(), *v))
                            .collect();
                        params.push(fiber_param(p.fiber));
                        params.push(("mu".into(), p.mu));
                        SampleRecord {
                            params,
                            coords: p.position.coords().to_vec(),
                            attrs: Vec::new(),
                        }
                    })
                    .collect();
                export(&records, None, &out)?;
            }
            for n in &d.notes {
                eprintln!("note: {n}");
            }
            Ok(0)
        }
        Command::Classify {
            obj,
            at,
            theta,
            sign,
            branch,
        } => {
            let (o, tol) = load_object(&obj)?;
            let base = base_point(&o, at.as_deref())?;
            match &o {
                GeomObject::Curve(c) => match CurveSpace::of(c)? {
                    CurveSpace::AdS3 => emit_json(&classify_evolute_point_ads3(
                        c,
                        base[0],
                        check_sign(sign)?,
                        &tol,
                    )?)?,
                    CurveSpace::AdS4 => {
                        emit_json(&classify_focal_point_ads4_curve(c, base[0], theta, &tol)?)?
                    }
                },
                GeomObject::Surface(s) => {
                    let u = surface_point(&base);
                    let sign = check_sign(sign)?;
                    let report = classify_surface_focal_point(s, u, sign, branch, &tol)?;
                    let ridge = ridge_order(s, u, sign, branch, &tol).ok();
                    let mut v = serde_json::to_value(&report)
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                    v["ridge_order"] = json!(ridge);
                    emit_json(&v)?;
                }
            }
            Ok(0)
        }
        Command::Scan {
            obj,
            invariant,
            samples,
            grid,
        } => {
            let (o, tol) = load_object(&obj)?;
            if samples < 2 {
                return usage("--samples must be at least 2");
            }
            let outcome =
                match (&o, invariant.as_str()) {
                    (GeomObject::Curve(c), inv) => {
                        let ss = GridAxis::new(c.domain.0, c.domain.1, samples)?.values();
                        match (CurveSpace::of(c)?, inv) {
                            (CurveSpace::AdS4, "rho") => {
                                serde_json::to_value(scan_rho_ads4(c, &ss, &tol)?)
                            }
                            (CurveSpace::AdS4, "sigma") => {
                                serde_json::to_value(scan_sigma_ads4(c, &ss, &tol)?)
                            }
                            (CurveSpace::AdS3, "sigma") => {
                                serde_json::to_value(scan_sigma_ads3(c, &ss, &tol)?)
                            }
                            (space, other) => {
                                return usage(format!(
                                    "invariant '{other}' is not available for {space:?} curves"
                                ))
                            }
                        }
                    }
                    (GeomObject::Surface(_), "ridge") => serde_json::to_value(
                        discriminant_samples(&o, 3, &grid_spec(grid.as_deref())?, &tol)?,
                    ),
                    (GeomObject::Surface(_), other) => {
                        return usage(format!(
                            "invariant '{other}' is not available for surfaces (use ridge)"
                        ))
                    }
                }
                .map_err(|e| CliError::Usage(e.to_string()))?;
            if let Some(notes) = outcome["notes"].as_array() {
                for n in notes.iter().filter_map(Value::as_str) {
                    eprintln!("note: {n}");
                }
            }
            emit_json(&outcome)?;
            Ok(0)
        }
        Command::HeightProbe {
            obj,
            at,
            lambda,
            fiber,
            mu,
            order,
        } => {
            let (o, tol) = load_object(&obj)?;
            let base = base_point(&o, at.as_deref())?;
            let lam = match lambda {
                Some(l) => AmbientVector::new(&parse_list(&l)?)?,
                None => {
                    let f = match (&o, fiber) {
                        (GeomObject::Curve(c), f) if c.dim == 5 => Fiber::Theta(f.unwrap_or(0.0)),
                        (_, f) => Fiber::Sign(check_sign(f.unwrap_or(1.0) as i8)?),
                    };
                    let nn = null_normal(&o, &base, f, false, &tol)?;
                    let mu = mu
                        .or_else(|| nn.focal.first().map(|r| r.mu_star))
                        .unwrap_or(0.0);
                    nn.point.axpy(mu, &nn.ng)
                }
            };
            let rank = morse_family_rank_normalized(&o, &base, &lam, &tol)?;
            let v = match &o {
                GeomObject::Curve(c) => json!({
                    "jet": height_jet_curve(c, base[0], &lam, order, &tol)?,
                    "ak": detect_ak_curve(c, base[0], &lam, &tol)?,
                    "morse_rank": rank,
                }),
                GeomObject::Surface(s) => json!({
                    "lambda": lam,
                    "hessian": hessian_surface(s, surface_point(&base), &lam, &tol)?,
                    "morse_rank": rank,
                }),
            };
            emit_json(&v)?;
            Ok(0)
        }
        Command::Models {
            out,
            set,
            normal_form,
            critical,
            grid,
        } => {
            let spec = GridSpec::parse(&grid)?;
            let records: Vec<SampleRecord> = match (set, normal_form) {
                (Some(name), None) => {
                    let m = ModelSet::parse(&name)?;
                    let names: Vec<String> = (1..=m.arity()).map(|i| format!("u{i}")).collect();
                    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                    spec.check_names(&refs)?;
                    let axes: Vec<Vec<f64>> = names
                        .iter()
                        .map(|n| {
                            spec.get(n)
                                .map(|a| a.values())
                                .ok_or_else(|| CliError::Usage(format!("axis '{n}' is required")))
                        })
                        .collect::<CliResult<_>>()?;
                    let mut out = Vec::new();
                    for t in cartesian(&axes) {
                        match eval_model_singular_set(m, &t) {
                            Ok(coords) => out.push(SampleRecord {
                                params: names.iter().cloned().zip(t.iter().copied()).collect(),
                                coords,
                                attrs: Vec::new(),
                            }),
                            // Samples off a constrained model space are skipped.
                            Err(Error::ModelSpace { .. }) => {}
                            Err(e) => return Err(e.into()),
                        }
                    }
                    out
                }
                (None, Some(label)) => {
                    let germ = ModelGerm::normal_form(SingularityLabel::parse(&label)?)?;
                    let names: Vec<String> = (1..=germ.arity).map(|i| format!("u{i}")).collect();
                    let points = if critical {
                        brute_force_critical_set(&germ, &spec)?
                    } else {
                        let axes: Vec<Vec<f64>> = names
                            .iter()
                            .map(|n| {
                                spec.get(n).map(|a| a.values()).ok_or_else(|| {
                                    CliError::Usage(format!("axis '{n}' is required"))
                                })
                            })
                            .collect::<CliResult<_>>()?;
                        cartesian(&axes)
                    };
                    points
                        .iter()
                        .map(|p| {
                            Ok(SampleRecord {
                                params: names.iter().cloned().zip(p.iter().copied()).collect(),
                                coords: germ.eval(p)?,
                                attrs: vec![("rank_ratio".into(), germ.rank_ratio(p))],
                            })
                        })
                        .collect::<adsgeom::Result<_>>()?
                }
                _ => return usage("exactly one of --set or --normal-form is required"),
            };
            export(&records, None, &out)?;
            Ok(0)
        }
        Command::Verify { suites, seed, json } => {
            let cfg = VerifyConfig {
                seed,
                ..VerifyConfig::default()
            };
            let ids = if suites.is_empty() {
                (1..=10).collect()
            } else {
                suites
            };
            let mut reports = Vec::new();
            for id in ids {
                reports.push(run_suite(id, &cfg)?);
            }
            let all = reports.iter().all(|r| r.passed());
            if json {
                emit_json(&reports)?;
            } else {
                let mut text = String::new();
                for r in &reports {
                    text += &format!("{}\n", r.summary_line());
                    for n in &r.notes {
                        text += &format!("      {n}\n");
                    }
                }
                let passed = reports.iter().filter(|r| r.passed()).count();
                text += &format!("{passed}/{} suites passed\n", reports.len());
                write_stdout(&text)?;
            }
            Ok(if all { 0 } else { 1 })
        }
    }
}

fn cartesian(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect()
    })
}
