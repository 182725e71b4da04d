//! Truncated Taylor series ("jets") in one variable.
//!
//! Frame construction needs exact derivatives of quantities such as
//! κ₁ = √|⟨γ″−γ, γ″−γ⟩| up to third order. Propagating Taylor coefficients
//! through products, square roots and reciprocals gives those derivatives
//! exactly (up to rounding) from the closed-form curve derivatives.

use crate::semi_euclidean::{wedge_unchecked, AmbientVector};

/// Maximum number of stored coefficients (orders 0..=5).
pub const JET_CAP: usize = 6;

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Scalar jet: `c[k]` is the k-th Taylor coefficient f⁽ᵏ⁾/k!.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; JET_CAP],
    len: usize,
}

impl Jet {
    pub fn constant(v: f64, len: usize) -> Self {
        let mut c = [0.0; JET_CAP];
        c[0] = v;
        Self {
            c,
            len: len.clamp(1, JET_CAP),
        }
    }

    /// Builds a jet from derivative values f, f′, f″, ….
    pub fn from_derivatives(d: &[f64]) -> Self {
        let len = d.len().clamp(1, JET_CAP);
        let mut c = [0.0; JET_CAP];
        for (k, v) in d.iter().take(len).enumerate() {
            c[k] = v / factorial(k);
        }
        Self { c, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative value (k < len).
    pub fn derivative(&self, k: usize) -> f64 {
        assert!(
            k < self.len,
            "jet of length {} has no derivative {k}",
            self.len
        );
        self.c[k] * factorial(k)
    }

    pub fn derivatives(&self) -> Vec<f64> {
        (0..self.len).map(|k| self.derivative(k)).collect()
    }

    /// Derivative jet, one order shorter.
    pub fn diff(&self) -> Self {
        assert!(self.len >= 2, "cannot differentiate a jet of length 1");
        let mut c = [0.0; JET_CAP];
        for k in 0..self.len - 1 {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Self {
            c,
            len: self.len - 1,
        }
    }

    pub fn truncate(&self, len: usize) -> Self {
        let mut out = *self;
        out.len = len.clamp(1, self.len);
        for k in out.len..JET_CAP {
            out.c[k] = 0.0;
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.len.min(o.len);
        let mut c = [0.0; JET_CAP];
        for k in 0..len {
            c[k] = self.c[k] + o.c[k];
        }
        Self { c, len }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        for v in &mut out.c[..self.len] {
            *v *= k;
        }
        out
    }

    pub fn add_const(&self, k: f64) -> Self {
        let mut out = *self;
        out.c[0] += k;
        out
    }

    /// Cauchy product.
    pub fn mul(&self, o: &Self) -> Self {
        let len = self.len.min(o.len);
        let mut c = [0.0; JET_CAP];
        for k in 0..len {
            for j in 0..=k {
                c[k] += self.c[j] * o.c[k - j];
            }
        }
        Self { c, len }
    }

    /// Square root; requires a positive constant term.
    pub fn sqrt(&self) -> Option<Self> {
        if !(self.c[0] > 0.0) {
            return None;
        }
        let mut b = [0.0; JET_CAP];
        b[0] = self.c[0].sqrt();
        for k in 1..self.len {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= b[j] * b[k - j];
            }
            b[k] = acc / (2.0 * b[0]);
        }
        Some(Self {
            c: b,
            len: self.len,
        })
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Option<Self> {
        if self.c[0] == 0.0 {
            return None;
        }
        let mut b = [0.0; JET_CAP];
        b[0] = 1.0 / self.c[0];
        for k in 1..self.len {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += self.c[j] * b[k - j];
            }
            b[k] = -acc / self.c[0];
        }
        Some(Self {
            c: b,
            len: self.len,
        })
    }
}

/// Vector-valued jet with ambient-vector coefficients.
#[derive(Debug, Clone, Copy)]
pub struct VJet {
    c: [AmbientVector; JET_CAP],
    len: usize,
}

impl VJet {
    /// Builds a jet from derivative vectors v, v′, v″, ….
    pub fn from_derivatives(d: &[AmbientVector]) -> Self {
        assert!(!d.is_empty());
        let dim = d[0].dim();
        let len = d.len().min(JET_CAP);
        let mut c = [AmbientVector::zero(dim); JET_CAP];
        for (k, v) in d.iter().take(len).enumerate() {
            c[k] = v.scale(1.0 / factorial(k));
        }
        Self { c, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.c[0].dim()
    }

    pub fn value(&self) -> AmbientVector {
        self.c[0]
    }

    pub fn derivative(&self, k: usize) -> AmbientVector {
        assert!(k < self.len);
        self.c[k].scale(factorial(k))
    }

    pub fn diff(&self) -> Self {
        assert!(self.len >= 2);
        let mut out = *self;
        for k in 0..self.len - 1 {
            out.c[k] = self.c[k + 1].scale((k + 1) as f64);
        }
        out.c[self.len - 1] = AmbientVector::zero(self.dim());
        out.len = self.len - 1;
        out
    }

    pub fn truncate(&self, len: usize) -> Self {
        let mut out = *self;
        out.len = len.clamp(1, self.len);
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.len.min(o.len);
        let mut out = *self;
        for k in 0..len {
            out.c[k] = self.c[k] + o.c[k];
        }
        out.len = len;
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let len = self.len.min(o.len);
        let mut out = *self;
        for k in 0..len {
            out.c[k] = self.c[k] - o.c[k];
        }
        out.len = len;
        out
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        for v in &mut out.c[..self.len] {
            *v = v.scale(k);
        }
        out
    }

    /// Product with a scalar jet.
    pub fn mul_scalar(&self, s: &Jet) -> Self {
        let len = self.len.min(s.len);
        let mut out = *self;
        for k in 0..len {
            let mut acc = AmbientVector::zero(self.dim());
            for j in 0..=k {
                acc = acc.axpy(s.c[j], &self.c[k - j]);
            }
            out.c[k] = acc;
        }
        out.len = len;
        out
    }

    /// Pseudo scalar product as a scalar jet.
    pub fn dot(&self, o: &Self) -> Jet {
        let len = self.len.min(o.len);
        let mut c = [0.0; JET_CAP];
        for k in 0..len {
            for j in 0..=k {
                c[k] += self.c[j].dot(&o.c[k - j]);
            }
        }
        Jet { c, len }
    }

    /// Wedge product of `dim − 1` jets, expanded multilinearly.
    pub fn wedge(factors: &[&VJet]) -> Self {
        let dim = factors[0].dim();
        assert_eq!(factors.len(), dim - 1, "wedge needs dim − 1 jet factors");
        let len = factors.iter().map(|f| f.len).min().unwrap();
        let mut out = VJet {
            c: [AmbientVector::zero(dim); JET_CAP],
            len,
        };
        let m = factors.len();
        let mut idx = vec![0usize; m];
        let mut args = vec![AmbientVector::zero(dim); m];
        for total in 0..len {
            // Enumerate compositions of `total` into m non-negative parts.
            compositions(total, m, &mut idx, 0, &mut |parts| {
                for (a, (f, &p)) in args.iter_mut().zip(factors.iter().zip(parts.iter())) {
                    *a = f.c[p];
                }
                out.c[total] += wedge_unchecked(&args);
            });
        }
        out
    }
}

fn compositions(
    remaining: usize,
    parts: usize,
    idx: &mut Vec<usize>,
    pos: usize,
    f: &mut dyn FnMut(&[usize]),
) {
    if pos == parts - 1 {
        idx[pos] = remaining;
        f(idx);
        return;
    }
    for k in 0..=remaining {
        idx[pos] = k;
        compositions(remaining - k, parts, idx, pos + 1, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn exp_jet(x: f64, len: usize) -> Jet {
        Jet::from_derivatives(&vec![x.exp(); len])
    }

    #[test]
    fn sqrt_and_recip_match_closed_forms() {
        // f = eˣ: √f = e^{x/2}, 1/f = e^{−x}.
        let x = 0.3;
        let f = exp_jet(x, 6);
        let r = f.sqrt().unwrap();
        for k in 0..6 {
            assert_abs_diff_eq!(
                r.derivative(k),
                (x / 2.0).exp() * 0.5f64.powi(k as i32),
                epsilon = 1e-12
            );
        }
        let q = f.recip().unwrap();
        for k in 0..6 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(q.derivative(k), sign * (-x).exp(), epsilon = 1e-12);
        }
    }

    #[test]
    fn product_rule() {
        // sin·cos = sin(2x)/2.
        let x = 0.7f64;
        let s = Jet::from_derivatives(&[x.sin(), x.cos(), -x.sin(), -x.cos(), x.sin()]);
        let c = Jet::from_derivatives(&[x.cos(), -x.sin(), -x.cos(), x.sin(), x.cos()]);
        let p = s.mul(&c);
        let y = 2.0 * x;
        let expect = [
            y.sin() / 2.0,
            y.cos(),
            -2.0 * y.sin(),
            -4.0 * y.cos(),
            8.0 * y.sin(),
        ];
        for (k, e) in expect.iter().enumerate() {
            assert_abs_diff_eq!(p.derivative(k), e, epsilon = 1e-12);
        }
        let d = p.diff();
        assert_abs_diff_eq!(d.derivative(0), y.cos(), epsilon = 1e-12);
        assert_eq!(d.len(), 4);
    }

    #[test]
    fn sqrt_rejects_non_positive() {
        assert!(Jet::constant(-1.0, 3).sqrt().is_none());
        assert!(Jet::constant(0.0, 3).recip().is_none());
    }
}
