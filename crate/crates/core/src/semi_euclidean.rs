//! Index-2 semi-Euclidean linear algebra.
//!
//! Coordinates are stored in the order (x₋₁, x₀, x₁, …, x_n); the first two
//! carry the negative signs of the metric.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

/// Largest ambient dimension supported (AdS⁵ would be 6).
pub const MAX_DIM: usize = 6;
/// Smallest ambient dimension (AdS³).
pub const MIN_DIM: usize = 4;

/// A point or vector of ℝⁿ⁺²₂.
#[derive(Clone, Copy, PartialEq)]
pub struct AmbientVector {
    dim: usize,
    c: [f64; MAX_DIM],
}

impl AmbientVector {
    /// Builds a vector from its coordinates (x₋₁, x₀, x₁, …).
    pub fn new(coords: &[f64]) -> Result<Self> {
        let dim = coords.len();
        if !(MIN_DIM..=MAX_DIM).contains(&dim) {
            return Err(Error::Dimension {
                expected: MIN_DIM.max(dim.min(MAX_DIM)),
                found: dim,
            });
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
        let mut c = [0.0; MAX_DIM];
        c[..dim].copy_from_slice(coords);
        Ok(Self { dim, c })
    }

    /// The zero vector of the given dimension.
    pub fn zero(dim: usize) -> Self {
        assert!(
            (MIN_DIM..=MAX_DIM).contains(&dim),
            "unsupported dimension {dim}"
        );
        Self {
            dim,
            c: [0.0; MAX_DIM],
        }
    }

    /// Basis vector addressed by its metric label (−1, 0, 1, …).
    pub fn basis(dim: usize, label: i32) -> Self {
        let mut v = Self::zero(dim);
        let idx = (label + 1) as usize;
        assert!(idx < dim, "basis label {label} out of range for dim {dim}");
        v.c[idx] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.c[..self.dim]
    }

    /// Metric sign of coordinate slot `i` (0-based storage index).
    #[inline]
    pub fn metric_sign(i: usize) -> f64 {
        if i < 2 {
            -1.0
        } else {
            1.0
        }
    }

    /// Pseudo scalar product without a dimension check.
    #[inline]
    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        let mut s = -self.c[0] * other.c[0] - self.c[1] * other.c[1];
        for i in 2..self.dim {
            s += self.c[i] * other.c[i];
        }
        s
    }

    /// Euclidean squared norm of the coordinate vector.
    #[inline]
    pub fn euclid_sq(&self) -> f64 {
        self.coords().iter().map(|v| v * v).sum()
    }

    pub fn euclid_norm(&self) -> f64 {
        self.euclid_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coords().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        for v in &mut out.c[..self.dim] {
            *v *= k;
        }
        out
    }

    /// `self + k·other`.
    #[inline]
    pub fn axpy(&self, k: f64, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            out.c[i] += k * other.c[i];
        }
        out
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.coords().to_vec()
    }
}

impl fmt::Debug for AmbientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AmbientVector{:?}", self.coords())
    }
}

impl Index<usize> for AmbientVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        assert!(i < self.dim);
        &self.c[i]
    }
}

impl IndexMut<usize> for AmbientVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        assert!(i < self.dim);
        &mut self.c[i]
    }
}

impl Add for AmbientVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.axpy(1.0, &rhs)
    }
}

impl Sub for AmbientVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.axpy(-1.0, &rhs)
    }
}

impl AddAssign for AmbientVector {
    fn add_assign(&mut self, rhs: Self) {
        *self = self.axpy(1.0, &rhs);
    }
}

impl SubAssign for AmbientVector {
    fn sub_assign(&mut self, rhs: Self) {
        *self = self.axpy(-1.0, &rhs);
    }
}

impl Neg for AmbientVector {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul<AmbientVector> for f64 {
    type Output = AmbientVector;
    fn mul(self, rhs: AmbientVector) -> AmbientVector {
        rhs.scale(self)
    }
}

impl Mul<f64> for AmbientVector {
    type Output = AmbientVector;
    fn mul(self, rhs: f64) -> AmbientVector {
        self.scale(rhs)
    }
}

impl Serialize for AmbientVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AmbientVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        AmbientVector::new(&v).map_err(serde::de::Error::custom)
    }
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalClass {
    Spacelike,
    Null,
    Timelike,
}

impl CausalClass {
    /// The sign convention sign(x) ∈ {1, 0, −1}.
    pub fn sign(self) -> i8 {
        match self {
            CausalClass::Spacelike => 1,
            CausalClass::Null => 0,
            CausalClass::Timelike => -1,
        }
    }
}

fn check_dims(x: &AmbientVector, y: &AmbientVector) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::Dimension {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    Ok(())
}

/// ⟨x,y⟩ = −x₋₁y₋₁ − x₀y₀ + Σ xᵢyᵢ.
pub fn pseudo_inner(x: &AmbientVector, y: &AmbientVector) -> Result<f64> {
    check_dims(x, y)?;
    Ok(x.dot(y))
}

/// Classifies ⟨x,x⟩ against a tolerance relative to max(1, Σxᵢ²).
pub fn causal_class(x: &AmbientVector, cfg: &ToleranceConfig) -> Result<CausalClass> {
    if x.max_abs() <= cfg.algebraic_tol {
        return Err(Error::ZeroVector);
    }
    let q = x.dot(x);
    let scale = x.euclid_sq().max(1.0);
    Ok(if q > cfg.algebraic_tol * scale {
        CausalClass::Spacelike
    } else if q < -cfg.algebraic_tol * scale {
        CausalClass::Timelike
    } else {
        CausalClass::Null
    })
}

/// ‖x‖ = √|⟨x,x⟩|.
pub fn pseudo_norm(x: &AmbientVector) -> f64 {
    x.dot(x).abs().sqrt()
}

/// ⟨x,x⟩ + 1, which vanishes exactly on AdS.
pub fn ads_residual(x: &AmbientVector) -> f64 {
    x.dot(x) + 1.0
}

/// ⟨x−a, x−a⟩, which vanishes on the nullcone with vertex `a`.
pub fn nullcone_residual(x: &AmbientVector, a: &AmbientVector) -> Result<f64> {
    check_dims(x, a)?;
    let d = *x - *a;
    Ok(d.dot(&d))
}

/// Determinant of an `n × n` row-major matrix by LU with partial pivoting.
pub fn determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a = [[0.0f64; MAX_DIM]; MAX_DIM];
    assert!(n <= MAX_DIM, "determinant supports at most {MAX_DIM} rows");
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.len(), n, "determinant needs a square matrix");
        a[i][..n].copy_from_slice(row);
    }
    det_in_place(&mut a, n)
}

fn det_in_place(a: &mut [[f64; MAX_DIM]; MAX_DIM], n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            if f != 0.0 {
                for k in col + 1..n {
                    a[r][k] -= f * a[col][k];
                }
            }
        }
    }
    det
}

/// Determinant of the square matrix whose rows are the given vectors.
pub fn det_rows(rows: &[AmbientVector]) -> Result<f64> {
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.dim() != n) {
        return Err(Error::Dimension {
            expected: n,
            found: bad.dim(),
        });
    }
    let mut a = [[0.0f64; MAX_DIM]; MAX_DIM];
    for (i, r) in rows.iter().enumerate() {
        a[i][..n].copy_from_slice(r.coords());
    }
    Ok(det_in_place(&mut a, n))
}

/// Generalized wedge product of `dim − 1` vectors.
///
/// The result `w` satisfies ⟨x, w⟩ = det(x, v₁, …, v_{dim−1}) for every `x`;
/// component `i` is the metric sign times the cofactor of entry (0, i).
pub fn wedge(vs: &[AmbientVector]) -> Result<AmbientVector> {
    let dim = vs.first().map(|v| v.dim()).ok_or(Error::Arity {
        expected: MIN_DIM - 1,
        found: 0,
    })?;
    if vs.len() != dim - 1 {
        return Err(Error::Arity {
            expected: dim - 1,
            found: vs.len(),
        });
    }
    if let Some(bad) = vs.iter().find(|v| v.dim() != dim) {
        return Err(Error::Dimension {
            expected: dim,
            found: bad.dim(),
        });
    }
    Ok(wedge_unchecked(vs))
}

pub(crate) fn wedge_unchecked(vs: &[AmbientVector]) -> AmbientVector {
    let dim = vs[0].dim();
    let m = dim - 1;
    let mut out = AmbientVector::zero(dim);
    for col in 0..dim {
        let mut a = [[0.0f64; MAX_DIM]; MAX_DIM];
        for (r, v) in vs.iter().enumerate() {
            let mut k = 0;
            for j in 0..dim {
                if j != col {
                    a[r][k] = v.c[j];
                    k += 1;
                }
            }
        }
        let minor = det_in_place(&mut a, m);
        let cof = if col % 2 == 0 { minor } else { -minor };
        out.c[col] = AmbientVector::metric_sign(col) * cof;
    }
    out
}

/// Result of a generalized symmetric eigenproblem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Eigenvectors (columns of the pencil), normalized so that vᵀ g v = 1.
    pub vectors: Vec<Vec<f64>>,
}

/// Solves h·v = κ·g·v for symmetric `h` and symmetric positive definite `g`.
///
/// Uses the Cholesky factor g = L Lᵀ and the symmetric eigenproblem of
/// L⁻¹ h L⁻ᵀ, so eigenvalues are real by construction.
pub fn generalized_eigen(h: &[Vec<f64>], g: &[Vec<f64>]) -> Result<GeneralizedEigen> {
    let n = g.len();
    if n == 0 || n > 3 {
        return Err(Error::Dimension {
            expected: 3,
            found: n,
        });
    }
    for row in h.iter().chain(g.iter()) {
        if row.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: row.len(),
            });
        }
    }
    if h.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: h.len(),
        });
    }
    let gm = DMatrix::from_fn(n, n, |i, j| 0.5 * (g[i][j] + g[j][i]));
    let hm = DMatrix::from_fn(n, n, |i, j| 0.5 * (h[i][j] + h[j][i]));
    let scale = gm.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    for k in 1..=n {
        let minor = gm.view((0, 0), (k, k)).determinant();
        if minor <= 1e-12 * scale.powi(k as i32) {
            return Err(Error::MetricDegenerate(format!(
                "leading minor {k} of g is {minor:e}"
            )));
        }
    }
    let chol = gm
        .clone()
        .cholesky()
        .ok_or_else(|| Error::MetricDegenerate("Cholesky factorization failed".into()))?;
    let l = chol.l();
    let linv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::MetricDegenerate("Cholesky factor is singular".into()))?;
    let c = &linv * hm * linv.transpose();
    let c = (&c + c.transpose()) * 0.5;
    let eig = SymmetricEigen::new(c);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let lt_inv = linv.transpose();
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| {
            let y = eig.eigenvectors.column(i).into_owned();
            let v = &lt_inv * y;
            v.iter().copied().collect()
        })
        .collect();
    Ok(GeneralizedEigen { values, vectors })
}

/// Singular values of a dense row-major matrix, in descending order.
pub fn singular_values(rows: &[Vec<f64>]) -> Vec<f64> {
    let r = rows.len();
    if r == 0 {
        return Vec::new();
    }
    let c = rows[0].len();
    let m = DMatrix::from_fn(r, c, |i, j| rows[i][j]);
    let mut sv: Vec<f64> = m
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Relative threshold applied to σ_max when counting the numeric rank.
pub const RANK_REL_TOL: f64 = 1e-8;

/// Numeric rank: singular values above `RANK_REL_TOL · σ_max`.
pub fn numeric_rank(sv: &[f64]) -> usize {
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_REL_TOL * smax).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(c: &[f64]) -> AmbientVector {
        AmbientVector::new(c).unwrap()
    }

    #[test]
    fn metric_on_basis() {
        let e = |l| AmbientVector::basis(4, l);
        assert_eq!(pseudo_inner(&e(-1), &e(-1)).unwrap(), -1.0);
        assert_eq!(pseudo_inner(&e(0), &e(0)).unwrap(), -1.0);
        assert_eq!(pseudo_inner(&e(1), &e(1)).unwrap(), 1.0);
        let ones = v(&[1.0; 4]);
        assert_eq!(pseudo_inner(&ones, &ones).unwrap(), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = AmbientVector::zero(4);
        let b = AmbientVector::zero(5);
        assert!(matches!(pseudo_inner(&a, &b), Err(Error::Dimension { .. })));
        assert!(AmbientVector::new(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn causal_classes() {
        let cfg = ToleranceConfig::default();
        assert_eq!(
            causal_class(&v(&[1., 0., 0., 0.]), &cfg).unwrap(),
            CausalClass::Timelike
        );
        assert_eq!(
            causal_class(&v(&[0., 0., 1., 0.]), &cfg).unwrap(),
            CausalClass::Spacelike
        );
        assert_eq!(
            causal_class(&v(&[1., 0., 1., 0.]), &cfg).unwrap(),
            CausalClass::Null
        );
        assert_eq!(
            causal_class(&AmbientVector::zero(4), &cfg),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn norms_and_residuals() {
        assert_eq!(pseudo_norm(&v(&[1., 0., 0., 0.])), 1.0);
        assert_eq!(pseudo_norm(&v(&[1., 0., 1., 0.])), 0.0);
        assert_eq!(pseudo_norm(&v(&[0., 0., 3., 4.])), 5.0);
        assert_eq!(ads_residual(&v(&[1., 0., 0., 0.])), 0.0);
        assert_eq!(ads_residual(&v(&[0., 0., 1., 0.])), 2.0);
        assert_abs_diff_eq!(
            ads_residual(&v(&[2f64.sqrt(), 0., 1., 0., 0.])),
            0.0,
            epsilon = 1e-15
        );
        let a = v(&[0.3, -1.0, 2.0, 0.5]);
        assert_eq!(nullcone_residual(&a, &a).unwrap(), 0.0);
        assert_eq!(
            nullcone_residual(&(a + v(&[1., 0., 1., 0.])), &a).unwrap(),
            0.0
        );
        assert_abs_diff_eq!(
            nullcone_residual(&(a + v(&[0., 0., 1., 0.])), &a).unwrap(),
            1.0
        );
    }

    #[test]
    fn wedge_canonical_examples() {
        let e = |l| AmbientVector::basis(4, l);
        assert_eq!(
            wedge(&[e(0), e(1), e(2)]).unwrap().coords(),
            &[-1.0, 0.0, 0.0, 0.0]
        );
        let w = wedge(&[e(-1), e(1), e(2)]).unwrap();
        assert_eq!(w.coords(), &[0.0, 1.0, 0.0, 0.0]);
        // ⟨e₀, w⟩ = det(e₀, e₋₁, e₁, e₂) = −1.
        assert_eq!(e(0).dot(&w), -1.0);
        assert!(matches!(
            wedge(&[e(0), e(1)]),
            Err(Error::Arity {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = vec![
            vec![2.0, -1.0, 0.5],
            vec![1.0, 3.0, -2.0],
            vec![0.0, 4.0, 1.0],
        ];
        let expect = 2.0 * (3.0 * 1.0 + 8.0) + 1.0 * (1.0 * 1.0) + 0.5 * 4.0;
        assert_abs_diff_eq!(determinant(&m), expect, epsilon = 1e-12);
    }

    #[test]
    fn generalized_eigen_examples() {
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let r = generalized_eigen(&id, &id).unwrap();
        assert_abs_diff_eq!(r.values[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.values[1], 1.0, epsilon = 1e-14);
        let h = vec![vec![2.0, 0.0], vec![0.0, 6.0]];
        let g = vec![vec![1.0, 0.0], vec![0.0, 2.0]];
        let r = generalized_eigen(&h, &g).unwrap();
        assert_abs_diff_eq!(r.values[0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.values[1], 3.0, epsilon = 1e-14);
        let bad = vec![vec![1.0, 0.0], vec![0.0, -1.0]];
        assert!(matches!(
            generalized_eigen(&h, &bad),
            Err(Error::MetricDegenerate(_))
        ));
    }

    #[test]
    fn rank_counts_relative_singular_values() {
        let rows = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![1.0, 1.0, 0.0],
        ];
        let sv = singular_values(&rows);
        assert_eq!(numeric_rank(&sv), 2);
    }
}
