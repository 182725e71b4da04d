//! Term language for closed-form coordinate functions.
//!
//! A term is `coeff · s^power · T(freq · s)` with `T ∈ {cos, sin, 1}`. Sums of
//! such terms are closed under differentiation, multiplication and
//! integration, which is all the presets need.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Trigonometric factor of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Cos,
    Sin,
    Poly,
}

/// `s^power · T(freq·s)` without coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub kind: TermKind,
    #[serde(default)]
    pub freq: f64,
    #[serde(default)]
    pub power: u32,
}

impl Factor {
    pub const ONE: Factor = Factor {
        kind: TermKind::Poly,
        freq: 0.0,
        power: 0,
    };

    pub fn cos(freq: f64) -> Self {
        Self {
            kind: TermKind::Cos,
            freq,
            power: 0,
        }
    }

    pub fn sin(freq: f64) -> Self {
        Self {
            kind: TermKind::Sin,
            freq,
            power: 0,
        }
    }

    pub fn poly(power: u32) -> Self {
        Self {
            kind: TermKind::Poly,
            freq: 0.0,
            power,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.freq.is_finite() {
            return Err(Error::InvalidInput("term frequency must be finite".into()));
        }
        Ok(())
    }

    /// Writes f, f′, …, f⁽ᵐ⁾ into `out[..=m]`.
    pub fn derivatives(&self, s: f64, m: usize, out: &mut [f64]) {
        // Derivatives of the trigonometric part T(ωs): T⁽ʲ⁾ values.
        let mut trig = [0.0f64; 8];
        match self.kind {
            TermKind::Poly => trig[0] = 1.0,
            TermKind::Cos | TermKind::Sin => {
                let (sn, cs) = (self.freq * s).sin_cos();
                // Cycle cos → −sin → −cos → sin (for cos), shifted for sin.
                let cycle = match self.kind {
                    TermKind::Cos => [cs, -sn, -cs, sn],
                    _ => [sn, cs, -sn, -cs],
                };
                let mut w = 1.0;
                for (j, t) in trig.iter_mut().enumerate().take(m + 1) {
                    *t = cycle[j % 4] * w;
                    w *= self.freq;
                }
            }
        }
        let p = self.power as usize;
        for (k, o) in out.iter_mut().enumerate().take(m + 1) {
            // Leibniz: Σ_j C(k,j) (s^p)^{(j)} T^{(k−j)}.
            let mut acc = 0.0;
            let mut binom = 1.0;
            for j in 0..=k.min(p) {
                let falling: f64 = (0..j).map(|i| (p - i) as f64).product();
                let mono = falling * s.powi((p - j) as i32);
                acc += binom * mono * trig[k - j];
                binom = binom * (k - j) as f64 / (j + 1) as f64;
            }
            *o = acc;
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        let mut out = [0.0];
        self.derivatives(s, 0, &mut out);
        out[0]
    }
}

/// One-variable term `coeff · factor`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarTerm {
    pub kind: TermKind,
    pub coeff: f64,
    #[serde(default)]
    pub freq: f64,
    #[serde(default)]
    pub power: u32,
}

impl ScalarTerm {
    pub fn new(coeff: f64, f: Factor) -> Self {
        Self {
            kind: f.kind,
            coeff,
            freq: f.freq,
            power: f.power,
        }
    }

    pub fn cos(coeff: f64, freq: f64) -> Self {
        Self::new(coeff, Factor::cos(freq))
    }

    pub fn sin(coeff: f64, freq: f64) -> Self {
        Self::new(coeff, Factor::sin(freq))
    }

    pub fn poly(coeff: f64, power: u32) -> Self {
        Self::new(coeff, Factor::poly(power))
    }

    pub fn factor(&self) -> Factor {
        Factor {
            kind: self.kind,
            freq: if self.kind == TermKind::Poly {
                0.0
            } else {
                self.freq
            },
            power: self.power,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.coeff.is_finite() {
            return Err(Error::InvalidInput(
                "term coefficient must be finite".into(),
            ));
        }
        self.factor().validate()
    }
}

/// Sum of one-variable terms.
pub type TermSum = Vec<ScalarTerm>;

/// Evaluates derivatives 0..=m of a term sum.
pub fn sum_derivatives(terms: &[ScalarTerm], s: f64, m: usize, out: &mut [f64]) {
    out[..=m].iter_mut().for_each(|v| *v = 0.0);
    let mut buf = [0.0f64; 8];
    for t in terms {
        t.factor().derivatives(s, m, &mut buf);
        for k in 0..=m {
            out[k] += t.coeff * buf[k];
        }
    }
}

/// Brings a term to canonical form: non-negative frequency, `cos(0)` becomes
/// a monomial and `sin(0)` vanishes.
fn normalize(t: ScalarTerm) -> Option<ScalarTerm> {
    let mut t = t;
    if t.kind == TermKind::Poly {
        t.freq = 0.0;
    } else if t.freq < 0.0 {
        t.freq = -t.freq;
        if t.kind == TermKind::Sin {
            t.coeff = -t.coeff;
        }
    }
    if t.kind != TermKind::Poly && t.freq == 0.0 {
        match t.kind {
            TermKind::Cos => t.kind = TermKind::Poly,
            _ => return None,
        }
    }
    (t.coeff != 0.0).then_some(t)
}

/// Merges like terms and drops zeros.
pub fn simplify(terms: &[ScalarTerm]) -> TermSum {
    let mut out: TermSum = Vec::new();
    for t in terms.iter().filter_map(|t| normalize(*t)) {
        if let Some(o) = out
            .iter_mut()
            .find(|o| o.kind == t.kind && o.power == t.power && o.freq == t.freq)
        {
            o.coeff += t.coeff;
        } else {
            out.push(t);
        }
    }
    out.retain(|t| t.coeff.abs() > 1e-300);
    out
}

fn mul_terms(a: &ScalarTerm, b: &ScalarTerm) -> Vec<ScalarTerm> {
    use TermKind::*;
    let c = a.coeff * b.coeff;
    let p = a.power + b.power;
    let (fa, fb) = (a.freq, b.freq);
    let mk = |kind, coeff, freq| ScalarTerm {
        kind,
        coeff,
        freq,
        power: p,
    };
    match (a.kind, b.kind) {
        (Poly, k) => vec![mk(k, c, fb)],
        (k, Poly) => vec![mk(k, c, fa)],
        (Cos, Cos) => vec![mk(Cos, c / 2.0, fa - fb), mk(Cos, c / 2.0, fa + fb)],
        (Sin, Sin) => vec![mk(Cos, c / 2.0, fa - fb), mk(Cos, -c / 2.0, fa + fb)],
        (Sin, Cos) => vec![mk(Sin, c / 2.0, fa + fb), mk(Sin, c / 2.0, fa - fb)],
        (Cos, Sin) => vec![mk(Sin, c / 2.0, fa + fb), mk(Sin, c / 2.0, fb - fa)],
    }
}

/// Product of two term sums.
pub fn multiply(a: &[ScalarTerm], b: &[ScalarTerm]) -> TermSum {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.extend(mul_terms(x, y));
        }
    }
    simplify(&out)
}

/// Linear combination Σ kᵢ·aᵢ.
pub fn combine(parts: &[(f64, &[ScalarTerm])]) -> TermSum {
    let mut out = Vec::new();
    for (k, a) in parts {
        out.extend(a.iter().map(|t| ScalarTerm {
            coeff: t.coeff * k,
            ..*t
        }));
    }
    simplify(&out)
}

fn integrate_term(t: &ScalarTerm) -> Vec<ScalarTerm> {
    let t = match normalize(*t) {
        Some(t) => t,
        None => return Vec::new(),
    };
    let p = t.power;
    match t.kind {
        TermKind::Poly => vec![ScalarTerm::new(
            t.coeff / (p + 1) as f64,
            Factor::poly(p + 1),
        )],
        TermKind::Cos | TermKind::Sin => {
            let w = t.freq;
            // ∫ s^p cos(ws) = s^p sin(ws)/w − (p/w) ∫ s^{p−1} sin(ws)
            // ∫ s^p sin(ws) = −s^p cos(ws)/w + (p/w) ∫ s^{p−1} cos(ws)
            let (lead_kind, lead_sign, rest_kind, rest_sign) = match t.kind {
                TermKind::Cos => (TermKind::Sin, 1.0, TermKind::Sin, -1.0),
                _ => (TermKind::Cos, -1.0, TermKind::Cos, 1.0),
            };
            let mut out = vec![ScalarTerm {
                kind: lead_kind,
                coeff: lead_sign * t.coeff / w,
                freq: w,
                power: p,
            }];
            if p > 0 {
                let inner = ScalarTerm {
                    kind: rest_kind,
                    coeff: rest_sign * t.coeff * p as f64 / w,
                    freq: w,
                    power: p - 1,
                };
                out.extend(integrate_term(&inner));
            }
            out
        }
    }
}

/// Antiderivative `F` of a term sum normalized so that `F(0) = 0`.
pub fn integrate(a: &[ScalarTerm]) -> TermSum {
    let mut out: Vec<ScalarTerm> = a.iter().flat_map(integrate_term).collect();
    let mut v = [0.0];
    sum_derivatives(&out, 0.0, 0, &mut v);
    if v[0] != 0.0 {
        out.push(ScalarTerm::poly(-v[0], 0));
    }
    simplify(&out)
}

/// Two-variable term `coeff · f(u) · g(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceTerm {
    pub coeff: f64,
    #[serde(default = "one_factor")]
    pub u: Factor,
    #[serde(default = "one_factor")]
    pub v: Factor,
}

fn one_factor() -> Factor {
    Factor::ONE
}

impl SurfaceTerm {
    pub fn new(coeff: f64, u: Factor, v: Factor) -> Self {
        Self { coeff, u, v }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.coeff.is_finite() {
            return Err(Error::InvalidInput(
                "term coefficient must be finite".into(),
            ));
        }
        self.u.validate()?;
        self.v.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn eval(terms: &[ScalarTerm], s: f64, k: usize) -> f64 {
        let mut out = [0.0; 6];
        sum_derivatives(terms, s, k, &mut out);
        out[k]
    }

    #[test]
    fn cos_second_derivative_is_exact() {
        let w = 2.5;
        let t = [ScalarTerm::cos(1.0, w)];
        for &s in &[0.0, 0.3, 1.7] {
            assert_eq!(eval(&t, s, 2), -w * w * (w * s).cos());
        }
    }

    #[test]
    fn leibniz_for_polynomial_times_sine() {
        // d³/ds³ [s² sin s] = −s² cos s − 6 s sin s + 6 cos s.
        let t = [ScalarTerm {
            kind: TermKind::Sin,
            coeff: 1.0,
            freq: 1.0,
            power: 2,
        }];
        let s = 0.8f64;
        let expect = -s * s * s.cos() - 6.0 * s * s.sin() + 6.0 * s.cos();
        assert_abs_diff_eq!(eval(&t, s, 3), expect, epsilon = 1e-13);
    }

    #[test]
    fn multiply_uses_product_to_sum() {
        let a = [ScalarTerm::cos(2.0, 1.0)];
        let b = [ScalarTerm::sin(1.0, 3.0), ScalarTerm::poly(1.0, 1)];
        let p = multiply(&a, &b);
        for &s in &[0.1f64, 0.9, 2.3] {
            let expect = 2.0 * s.cos() * ((3.0 * s).sin() + s);
            assert_abs_diff_eq!(eval(&p, s, 0), expect, epsilon = 1e-13);
        }
    }

    #[test]
    fn integrate_inverts_differentiation() {
        let a = vec![
            ScalarTerm {
                kind: TermKind::Cos,
                coeff: 1.5,
                freq: 2.0,
                power: 2,
            },
            ScalarTerm::sin(-0.5, 0.7),
            ScalarTerm::poly(3.0, 1),
        ];
        let f = integrate(&a);
        for &s in &[0.0f64, 0.4, 1.9] {
            assert_abs_diff_eq!(eval(&f, s, 1), eval(&a, s, 0), epsilon = 1e-12);
        }
        assert_abs_diff_eq!(eval(&f, 0.0, 0), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn normalization_rules() {
        let t = simplify(&[
            ScalarTerm::sin(1.0, -2.0),
            ScalarTerm::sin(4.0, 0.0),
            ScalarTerm::cos(2.0, 0.0),
        ]);
        assert_eq!(t.len(), 2);
        assert!(t.contains(&ScalarTerm {
            kind: TermKind::Sin,
            coeff: -1.0,
            freq: 2.0,
            power: 0
        }));
        assert!(t.contains(&ScalarTerm::poly(2.0, 0)));
    }

    #[test]
    fn json_schema_round_trip() {
        let t: ScalarTerm =
            serde_json::from_str(r#"{"kind":"cos","coeff":1.0,"freq":2.0}"#).unwrap();
        assert_eq!(t, ScalarTerm::cos(1.0, 2.0));
        let p: ScalarTerm =
            serde_json::from_str(r#"{"kind":"poly","coeff":3.0,"power":2}"#).unwrap();
        assert_eq!(p, ScalarTerm::poly(3.0, 2));
        let st: SurfaceTerm =
            serde_json::from_str(r#"{"coeff":2.0,"u":{"kind":"sin","freq":1.0}}"#).unwrap();
        assert_eq!(st.v, Factor::ONE);
    }
}
