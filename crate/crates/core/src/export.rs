//! Sample export as CSV, JSON records or OBJ meshes.
//!
//! Floats are written with the shortest representation that round-trips
//! (at most 17 significant digits), so identical inputs give byte-identical
//! files.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::parametric::GeomObject;
use crate::sheets::{Fiber, SheetGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Obj,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "obj" => Ok(Self::Obj),
            _ => Err(Error::InvalidInput(format!(
                "unknown format '{s}' (expected csv, json or obj)"
            ))),
        }
    }
}

/// Ordered triple of ambient coordinates (storage indices) used for OBJ
/// vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Projection(pub [usize; 3]);

impl Projection {
    /// Parses three distinct coordinate labels (−1, 0, 1, …, n).
    pub fn parse(spec: &str, dim: usize) -> Result<Self> {
        let labels: Vec<i64> = spec
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Projection(format!("'{t}' is not a coordinate label")))
            })
            .collect::<Result<_>>()?;
        if labels.len() != 3 {
            return Err(Error::Projection(format!(
                "expected three labels, got {}",
                labels.len()
            )));
        }
        let max = dim as i64 - 2;
        let mut idx = [0usize; 3];
        for (slot, &l) in idx.iter_mut().zip(&labels) {
            if l < -1 || l > max {
                return Err(Error::Projection(format!(
                    "label {l} is outside −1..={max}"
                )));
            }
            *slot = (l + 1) as usize;
        }
        if idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2] {
            return Err(Error::Projection(format!(
                "labels {labels:?} are not distinct"
            )));
        }
        Ok(Self(idx))
    }

    /// Drops λ₋₁ and keeps labels 0, 1, 2.
    pub fn default_for(dim: usize) -> Result<Self> {
        Self::parse("0,1,2", dim)
    }
}

/// Shortest round-trip decimal form of `x`, switching to exponent notation
/// for very small or very large magnitudes.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// One exported sample: named parameters, ambient coordinates and named
/// attributes.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub params: Vec<(String, f64)>,
    pub coords: Vec<f64>,
    pub attrs: Vec<(String, f64)>,
}

impl SampleRecord {
    pub fn to_json(&self) -> Value {
        let map = |kv: &[(String, f64)]| {
            Value::Object(
                kv.iter()
                    .map(|(k, v)| (k.clone(), Value::from(*v)))
                    .collect::<Map<_, _>>(),
            )
        };
        serde_json::json!({
            "params": map(&self.params),
            "coords": self.coords,
            "attrs": map(&self.attrs),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidInput(format!("sample record: {what}"));
        let pairs = |key: &str| -> Result<Vec<(String, f64)>> {
            match v.get(key) {
                None => Ok(Vec::new()),
                Some(Value::Object(m)) => m
                    .iter()
                    .map(|(k, x)| {
                        x.as_f64()
                            .map(|f| (k.clone(), f))
                            .ok_or_else(|| bad(&format!("{key}.{k} is not a number")))
                    })
                    .collect(),
                Some(_) => Err(bad(&format!("'{key}' must be an object"))),
            }
        };
        let coords = v
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing 'coords' array"))?
            .iter()
            .map(|x| x.as_f64().ok_or_else(|| bad("coordinate is not a number")))
            .collect::<Result<_>>()?;
        Ok(Self {
            params: pairs("params")?,
            coords,
            attrs: pairs("attrs")?,
        })
    }
}

/// Records of a sampled sheet: base parameters, fibre, μ, ambient
/// coordinates and the Jacobian rank flag.
pub fn sheet_records(obj: &GeomObject, grid: &SheetGrid) -> Vec<SampleRecord> {
    let (names, _) = crate::sheets::axis_names(obj);
    grid.points
        .iter()
        .zip(&grid.regular)
        .map(|(p, &reg)| {
            let mut params: Vec<(String, f64)> = names
                .iter()
                .zip(&p.base)
                .map(|(n, v)| (n.to_string(), *v))
                .collect();
            params.push(match p.fiber {
                Fiber::Theta(t) => ("theta".into(), t),
                Fiber::Sign(s) => ("sign".into(), s as f64),
            });
            params.push(("mu".into(), p.mu));
            SampleRecord {
                params,
                coords: p.position.to_vec(),
                attrs: vec![("regular".into(), if reg { 1.0 } else { 0.0 })],
            }
        })
        .collect()
}

/// Projected mesh of samples on a rectangular grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshOutput {
    pub vertices: Vec<[f64; 3]>,
    /// Zero-based vertex indices.
    pub faces: Vec<Vec<usize>>,
    pub attributes: Vec<(String, Vec<f64>)>,
}

/// Builds quads over the first two axes of length > 1, one sheet for each
/// index combination of the remaining axes (grid index order, last axis
/// fastest). With fewer than two such axes the mesh has no faces.
pub fn build_mesh(
    records: &[SampleRecord],
    dims: &[usize],
    proj: Projection,
) -> Result<MeshOutput> {
    let total: usize = dims.iter().product();
    if total != records.len() {
        return Err(Error::Grid(format!(
            "grid dims {dims:?} do not match {} samples",
            records.len()
        )));
    }
    let mut vertices = Vec::with_capacity(records.len());
    for r in records {
        if proj.0.iter().any(|&i| i >= r.coords.len()) {
            return Err(Error::Projection(format!(
                "projection {:?} needs more than {} coordinates",
                proj.0,
                r.coords.len()
            )));
        }
        vertices.push(proj.0.map(|i| r.coords[i]));
    }
    let strides: Vec<usize> = (0..dims.len())
        .map(|i| dims[i + 1..].iter().product())
        .collect();
    let active: Vec<usize> = (0..dims.len()).filter(|&i| dims[i] > 1).collect();
    let mut faces = Vec::new();
    if active.len() >= 2 {
        let (a, b) = (active[0], active[1]);
        for base in 0..total {
            let ia = (base / strides[a]) % dims[a];
            let ib = (base / strides[b]) % dims[b];
            if ia + 1 < dims[a] && ib + 1 < dims[b] {
                faces.push(vec![
                    base,
                    base + strides[a],
                    base + strides[a] + strides[b],
                    base + strides[b],
                ]);
            }
        }
    }
    let mut attributes: Vec<(String, Vec<f64>)> = Vec::new();
    if let Some(first) = records.first() {
        for (k, (name, _)) in first.params.iter().chain(&first.attrs).enumerate() {
            let col = records
                .iter()
                .map(|r| {
                    if k < first.params.len() {
                        r.params.get(k).map_or(f64::NAN, |p| p.1)
                    } else {
                        r.attrs
                            .get(k - first.params.len())
                            .map_or(f64::NAN, |p| p.1)
                    }
                })
                .collect();
            attributes.push((name.clone(), col));
        }
    }
    Ok(MeshOutput {
        vertices,
        faces,
        attributes,
    })
}

fn check_uniform(records: &[SampleRecord]) -> Result<()> {
    if let Some(first) = records.first() {
        for r in records {
            let same = r.coords.len() == first.coords.len()
                && r.params
                    .iter()
                    .map(|p| &p.0)
                    .eq(first.params.iter().map(|p| &p.0))
                && r.attrs
                    .iter()
                    .map(|p| &p.0)
                    .eq(first.attrs.iter().map(|p| &p.0));
            if !same {
                return Err(Error::InvalidInput(
                    "samples do not share one column layout".into(),
                ));
            }
        }
    }
    Ok(())
}

pub fn to_csv(records: &[SampleRecord]) -> Result<String> {
    check_uniform(records)?;
    let mut out = String::new();
    let Some(first) = records.first() else {
        return Ok(out);
    };
    let mut header: Vec<String> = first.params.iter().map(|p| p.0.clone()).collect();
    header.extend((0..first.coords.len()).map(|i| format!("x{}", i as i64 - 1)));
    header.extend(first.attrs.iter().map(|p| p.0.clone()));
    out.push_str(&header.join(","));
    out.push('\n');
    for r in records {
        let row: Vec<String> = r
            .params
            .iter()
            .map(|p| p.1)
            .chain(r.coords.iter().copied())
            .chain(r.attrs.iter().map(|p| p.1))
            .map(fmt_f64)
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn to_json(records: &[SampleRecord]) -> String {
    let arr = Value::Array(records.iter().map(SampleRecord::to_json).collect());
    let mut s = serde_json::to_string_pretty(&arr).expect("sample records serialize");
    s.push('\n');
    s
}

pub fn records_from_json(text: &str) -> Result<Vec<SampleRecord>> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        Error::InvalidInput(format!(
            "malformed JSON at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    v.as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array of sample records".into()))?
        .iter()
        .map(SampleRecord::from_json)
        .collect()
}

/// OBJ text: `v` lines, `f` lines (1-based) and per-vertex attributes as
/// `#a <vertex> name=value …` comment lines.
pub fn to_obj(mesh: &MeshOutput) -> String {
    let mut out = String::from("# lightlike sheet samples\n");
    for v in &mesh.vertices {
        let _ = writeln!(
            out,
            "v {} {} {}",
            fmt_f64(v[0]),
            fmt_f64(v[1]),
            fmt_f64(v[2])
        );
    }
    for f in &mesh.faces {
        let idx: Vec<String> = f.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(out, "f {}", idx.join(" "));
    }
    for i in 0..mesh.vertices.len() {
        let parts: Vec<String> = mesh
            .attributes
            .iter()
            .map(|(n, col)| format!("{n}={}", fmt_f64(col[i])))
            .collect();
        if !parts.is_empty() {
            let _ = writeln!(out, "#a {} {}", i + 1, parts.join(" "));
        }
    }
    out
}

/// Serializes samples. `dims` gives the grid shape for OBJ faces (a flat
/// list of points when absent).
pub fn export_samples(
    records: &[SampleRecord],
    format: Format,
    dims: Option<&[usize]>,
    proj: Option<Projection>,
) -> Result<String> {
    match format {
        Format::Csv => to_csv(records),
        Format::Json => {
            check_uniform(records)?;
            Ok(to_json(records))
        }
        Format::Obj => {
            check_uniform(records)?;
            let dim = records.first().map_or(4, |r| r.coords.len());
            let proj = match proj {
                Some(p) => p,
                None => Projection::default_for(dim)?,
            };
            let flat = [records.len()];
            let mesh = build_mesh(records, dims.unwrap_or(&flat), proj)?;
            Ok(to_obj(&mesh))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(s: f64, c: [f64; 4]) -> SampleRecord {
        SampleRecord {
            params: vec![("s".into(), s)],
            coords: c.to_vec(),
            attrs: vec![("rank".into(), 2.0)],
        }
    }

    #[test]
    fn csv_single_row() {
        let csv = to_csv(&[rec(0.5, [1.0, 0.0, 0.1, 1e-20])]).unwrap();
        assert_eq!(csv, "s,x-1,x0,x1,x2,rank\n0.5,1,0,0.1,1e-20,2\n");
    }

    #[test]
    fn obj_two_by_two() {
        let recs: Vec<_> = (0..4)
            .map(|i| rec(i as f64, [1.0, i as f64, 2.0, 3.0]))
            .collect();
        let obj = export_samples(&recs, Format::Obj, Some(&[2, 2]), None).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 4);
        let faces: Vec<_> = obj.lines().filter(|l| l.starts_with("f ")).collect();
        assert_eq!(faces, vec!["f 1 3 4 2"]);
        assert!(obj.contains("#a 1 s=0 rank=2"));
    }

    #[test]
    fn json_round_trip() {
        let recs = vec![rec(0.1, [1.0 / 3.0, -2.0f64.sqrt(), 1e-300, 7.0e17])];
        let back = records_from_json(&to_json(&recs)).unwrap();
        assert_eq!(back, recs);
    }

    #[test]
    fn projection_checks() {
        assert_eq!(
            Projection::parse("1,2,3", 5).unwrap(),
            Projection([2, 3, 4])
        );
        assert!(Projection::parse("1,2,3", 4).is_err());
        assert!(Projection::parse("1,1,2", 5).is_err());
        assert!(Projection::parse("1,2", 5).is_err());
        assert_eq!(Projection::default_for(4).unwrap(), Projection([1, 2, 3]));
    }
}
