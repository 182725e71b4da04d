//! Named sampling axes (`name=min:max:count`) and root scanning helpers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parametric::linspace;

/// Uniformly sampled closed interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::Grid(format!(
                "an axis needs at least 2 points, got {count}"
            )));
        }
        if !(min.is_finite() && max.is_finite()) || min > max {
            return Err(Error::Grid(format!("axis range [{min}, {max}] is invalid")));
        }
        Ok(Self { min, max, count })
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.count)
    }
}

/// Ordered list of named axes, e.g. `s=0:6.28:200,theta=0:6.28:100`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GridSpec {
    pub axes: Vec<(String, GridAxis)>,
}

impl GridSpec {
    pub fn parse(spec: &str) -> Result<Self> {
        let mut axes = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, range) = part.split_once('=').ok_or_else(|| {
                Error::Grid(format!(
                    "axis '{part}' is not of the form name=min:max:count"
                ))
            })?;
            let fields: Vec<&str> = range.split(':').collect();
            if fields.len() != 3 {
                return Err(Error::Grid(format!(
                    "axis '{part}' is not of the form name=min:max:count"
                )));
            }
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Grid(format!("'{s}' in axis '{name}' is not a number")))
            };
            let count = fields[2].trim().parse::<usize>().map_err(|_| {
                Error::Grid(format!(
                    "count '{}' in axis '{name}' is not an integer",
                    fields[2]
                ))
            })?;
            let name = name.trim().to_string();
            if axes.iter().any(|(n, _)| *n == name) {
                return Err(Error::Grid(format!("axis '{name}' given twice")));
            }
            axes.push((
                name,
                GridAxis::new(num(fields[0])?, num(fields[1])?, count)?,
            ));
        }
        Ok(Self { axes })
    }

    pub fn get(&self, name: &str) -> Option<GridAxis> {
        self.axes.iter().find(|(n, _)| n == name).map(|(_, a)| *a)
    }

    pub fn with(mut self, name: &str, axis: GridAxis) -> Self {
        match self.axes.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = axis,
            None => self.axes.push((name.to_string(), axis)),
        }
        self
    }

    /// Rejects axis names outside `allowed`.
    pub fn check_names(&self, allowed: &[&str]) -> Result<()> {
        for (n, _) in &self.axes {
            if !allowed.contains(&n.as_str()) {
                return Err(Error::Grid(format!(
                    "unknown axis '{n}' (expected one of {})",
                    allowed.join(", ")
                )));
            }
        }
        Ok(())
    }
}

/// Bisection on a bracketing interval [a, b] with f(a)·f(b) ≤ 0.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Roots of `f` located by sign changes between consecutive samples of `xs`
/// and refined by bisection. Samples where `f` is undefined (`None`) break
/// brackets.
pub fn scan_roots<F: FnMut(f64) -> Option<f64>>(mut f: F, xs: &[f64], tol: f64) -> Vec<f64> {
    let vals: Vec<Option<f64>> = xs.iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..xs.len().saturating_sub(1) {
        let (Some(a), Some(b)) = (vals[i], vals[i + 1]) else {
            continue;
        };
        if a == 0.0 {
            if roots.last().is_none_or(|&r: &f64| (r - xs[i]).abs() > tol) {
                roots.push(xs[i]);
            }
            continue;
        }
        if (a < 0.0) != (b < 0.0) && b != 0.0 {
            roots.push(bisect(|x| f(x).unwrap_or(f64::NAN), xs[i], xs[i + 1], tol));
        }
    }
    if let Some(&Some(last)) = vals.last() {
        if last == 0.0 {
            roots.push(*xs.last().unwrap());
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_named_axes() {
        let g = GridSpec::parse("s=0:6.28:200, theta=0:6.28:100,mu=-2:2:50").unwrap();
        assert_eq!(g.axes.len(), 3);
        assert_eq!(
            g.get("mu").unwrap(),
            GridAxis {
                min: -2.0,
                max: 2.0,
                count: 50
            }
        );
        assert!(GridSpec::parse("s=0:1:1").is_err());
        assert!(GridSpec::parse("s=0:1").is_err());
        assert!(GridSpec::parse("s=a:1:3").is_err());
        assert!(GridSpec::parse("s=0:1:3,s=0:1:3").is_err());
    }

    #[test]
    fn scan_finds_sine_roots() {
        let xs = linspace(0.5, 10.0, 50);
        let r = scan_roots(|x| Some(x.sin()), &xs, 1e-13);
        let pi = std::f64::consts::PI;
        assert_eq!(r.len(), 3);
        for (k, root) in r.iter().enumerate() {
            assert!((root - (k + 1) as f64 * pi).abs() < 1e-12);
        }
    }
}
