use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds used across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Residual bound for algebraic identities (membership, orthonormality).
    pub algebraic_tol: f64,
    /// Threshold for deciding that a normalized invariant vanishes.
    pub zero_detect_tol: f64,
    /// Step used by finite-difference oracles and frame differencing.
    pub fd_step: f64,
    /// Interval width at which bisection stops.
    pub bisection_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            algebraic_tol: 1e-9,
            zero_detect_tol: 1e-7,
            fd_step: 1e-5,
            bisection_tol: 1e-12,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("algebraic_tol", self.algebraic_tol),
            ("zero_detect_tol", self.zero_detect_tol),
            ("fd_step", self.fd_step),
            ("bisection_tol", self.bisection_tol),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "tolerance {name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Applies overrides written as `key=value` pairs separated by commas, e.g.
    /// `zero=1e-6,fd=1e-4`. Both the full field names and the short aliases
    /// `algebraic`, `zero`, `fd`, `bisection` are accepted.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::InvalidInput(format!("tolerance override '{item}' is not key=value"))
            })?;
            let v: f64 = value.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("tolerance value '{value}' is not a number"))
            })?;
            match key.trim() {
                "algebraic" | "algebraic_tol" => self.algebraic_tol = v,
                "zero" | "zero_detect" | "zero_detect_tol" => self.zero_detect_tol = v,
                "fd" | "fd_step" => self.fd_step = v,
                "bisection" | "bisection_tol" => self.bisection_tol = v,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown tolerance key '{other}'"
                    )))
                }
            }
        }
        self.validate()?;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let t = ToleranceConfig::default();
        t.validate().unwrap();
        assert_eq!(t.zero_detect_tol, 1e-7);
    }

    #[test]
    fn overrides_parse() {
        let t = ToleranceConfig::default()
            .with_overrides("zero=1e-6, fd_step=2e-5")
            .unwrap();
        assert_eq!(t.zero_detect_tol, 1e-6);
        assert_eq!(t.fd_step, 2e-5);
        assert!(ToleranceConfig::default().with_overrides("fd=0").is_err());
        assert!(ToleranceConfig::default().with_overrides("what=1").is_err());
    }
}
