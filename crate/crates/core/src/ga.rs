//! Geometric product through the anti-commutative tensor product.
//!
//! For homogeneous vectors `a`, `b` the product `ab` is represented by the
//! rank-1 matrix `Q = a ⊗ b`. The trace of its Euclidean block is the inner
//! product numerator and the antisymmetric part `Q - Qᵀ` carries the outer
//! product (bivector) coefficients.

use std::collections::BTreeMap;

use crate::error::{check_dim, Error, Result};
use crate::matrix::{dot, Matrix};
use crate::projective::{same_dim, HomVector};
use crate::scalar::Scalar;

/// `Q = a ⊗ b` for two homogeneous vectors of dimension `n`, stored as an
/// `(n+1) x (n+1)` matrix with the homogeneous row/column last.
#[derive(Debug, Clone, PartialEq)]
pub struct GeomProductMatrix<S> {
    entries: Matrix<S>,
}

impl<S: Scalar> GeomProductMatrix<S> {
    pub fn entries(&self) -> &Matrix<S> {
        &self.entries
    }

    /// Euclidean dimension `n`.
    pub fn dim(&self) -> usize {
        self.entries.rows() - 1
    }

    /// Trace of the top-left `n x n` block (the Euclidean inner product
    /// numerator).
    pub fn euclidean_trace(&self) -> S {
        (0..self.dim()).fold(S::zero(), |acc, i| acc + self.entries[(i, i)].clone())
    }

    /// `w_a * w_b`.
    pub fn corner(&self) -> &S {
        let n = self.dim();
        &self.entries[(n, n)]
    }

    /// `(Q + Qᵀ) / 2`.
    pub fn symmetric_part(&self) -> Matrix<S> {
        let t = self.entries.transpose();
        let half = S::one() / S::from_i64(2);
        let n = self.entries.rows();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (self.entries[(i, j)].clone() + t[(i, j)].clone()) * half.clone();
            }
        }
        out
    }
}

pub fn tensor_product<S: Scalar>(
    a: &HomVector<S>,
    b: &HomVector<S>,
) -> Result<GeomProductMatrix<S>> {
    same_dim(a, b)?;
    Ok(GeomProductMatrix {
        entries: outer_matrix(&a.components(), &b.components()),
    })
}

/// Plain `u vᵀ`.
pub fn outer_matrix<S: Scalar>(u: &[S], v: &[S]) -> Matrix<S> {
    let mut m = Matrix::zeros(u.len(), v.len());
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            m[(i, j)] = ui.clone() * vj.clone();
        }
    }
    m
}

/// A scalar in homogeneous form `[value : w]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveScalar<S> {
    pub value: S,
    pub w: S,
}

impl<S: Scalar> ProjectiveScalar<S> {
    /// `value / w`, or `None` when `w` is zero.
    pub fn euclidean(&self) -> Option<S> {
        (!self.w.is_zero()).then(|| self.value.clone() / self.w.clone())
    }
}

/// `[Σ a_i b_i : w_a w_b]`, the inner product in homogeneous form.
pub fn inner_product<S: Scalar>(a: &HomVector<S>, b: &HomVector<S>) -> Result<ProjectiveScalar<S>> {
    same_dim(a, b)?;
    Ok(ProjectiveScalar {
        value: dot(a.coords(), b.coords()),
        w: a.w().clone() * b.w().clone(),
    })
}

/// `Q - Qᵀ`.
pub fn antisymmetric_part<S: Scalar>(q: &GeomProductMatrix<S>) -> Matrix<S> {
    let e = &q.entries;
    let n = e.rows();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = e[(i, j)].clone() - e[(j, i)].clone();
        }
    }
    out
}

/// Grade-2 element stored sparsely by ascending index pair `(i, j)`, `i < j`,
/// zero-based. Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Bivector<S> {
    len: usize,
    coeffs: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> Bivector<S> {
    /// Length of the underlying vectors.
    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Coefficient of `e_i e_j`; `get(j, i) == -get(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> S {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => S::zero(),
            Less => self.coeffs.get(&(i, j)).cloned().unwrap_or_else(S::zero),
            Greater => -self.coeffs.get(&(j, i)).cloned().unwrap_or_else(S::zero),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients in ascending pair order.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &S)> {
        self.coeffs.iter()
    }

    pub fn neg(&self) -> Self {
        Self {
            len: self.len,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }
}

/// `u ∧ v` for plain vectors: coefficient `(i, j)` is `u_i v_j - u_j v_i`.
pub fn wedge2<S: Scalar>(u: &[S], v: &[S]) -> Result<Bivector<S>> {
    check_dim(u.len(), v.len())?;
    let mut coeffs = BTreeMap::new();
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let c = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
            if !c.is_zero() {
                coeffs.insert((i, j), c);
            }
        }
    }
    Ok(Bivector {
        len: u.len(),
        coeffs,
    })
}

/// `a ∧ b` over all `n + 1` homogeneous components.
pub fn outer_product_pair<S: Scalar>(a: &HomVector<S>, b: &HomVector<S>) -> Result<Bivector<S>> {
    same_dim(a, b)?;
    wedge2(&a.components(), &b.components())
}

/// E³ cross product.
pub fn cross3<S: Scalar>(a: &[S], b: &[S]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

/// n-ary outer product of `k` rows of length `k + 1`, returned in
/// complement form: component `c` is `(-1)^c · det(rows without column c)`
/// (zero-based `c`, so the signs run `+, -, +, ...`).
///
/// The result is orthogonal to every row. For `k = 2` it is the E³ cross
/// product; for `k = 3` it matches the usual 4D cross product.
pub fn wedge_rows<S: Scalar>(rows: &Matrix<S>) -> Result<WedgeOutcome<S>> {
    check_dim(rows.rows() + 1, rows.cols())?;
    let mut max_bits: Option<u64> = None;
    let components = (0..rows.cols())
        .map(|c| {
            let d = S::determinant(&rows.without_column(c));
            if let Some(b) = d.max_bits {
                max_bits = Some(max_bits.map_or(b, |m| m.max(b)));
            }
            if c % 2 == 0 {
                d.value
            } else {
                -d.value
            }
        })
        .collect();
    Ok(WedgeOutcome {
        components,
        max_bits,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WedgeOutcome<S> {
    pub components: Vec<S>,
    /// Largest integer intermediate over all minors (exact backend).
    pub max_bits: Option<u64>,
}

/// Generalized cross product of `n - 1` vectors in `n`-space.
pub fn generalized_cross<S: Scalar>(vectors: &[Vec<S>]) -> Result<Vec<S>> {
    let m = Matrix::from_rows(vectors.to_vec())?;
    Ok(wedge_rows(&m)?.components)
}

/// Both sides of the transformation rule for the generalized cross product
/// under a linear map `M`:
///
/// `(M a₁) ∧ … ∧ (M aₙ₋₁)  =  det(M) · (M⁻¹)ᵀ · (a₁ ∧ … ∧ aₙ₋₁)`
///
/// The left side applies `M` first; the right side transforms the product
/// through the inverse transpose. The caller compares them.
pub fn transform_cross_identity_check<S: Scalar>(
    m: &Matrix<S>,
    vectors: &[Vec<S>],
) -> Result<(Vec<S>, Vec<S>)> {
    let n = m.rows();
    check_dim(n, m.cols())?;
    check_dim(n.saturating_sub(1), vectors.len())?;
    for v in vectors {
        check_dim(n, v.len())?;
    }
    let det = S::determinant(m).value;
    let scale = m.max_abs().powi(n as i32);
    if det.is_negligible(1e-12, scale) {
        return Err(Error::SingularTransform);
    }

    let mapped = vectors
        .iter()
        .map(|v| m.mul_vec(v))
        .collect::<Result<Vec<_>>>()?;
    let left = generalized_cross(&mapped)?;

    let cross = generalized_cross(vectors)?;
    let inv_t = m.inverse()?.transpose();
    let right = inv_t
        .mul_vec(&cross)?
        .into_iter()
        .map(|c| c * det.clone())
        .collect();
    Ok((left, right))
}

/// `q_ij = (r_i · a)(s_j · b)`, the product `(R a) ⊗ (S b)`.
///
/// The alternative factorization `r_i (a ⊗ b) s_jᵀ` is evaluated by
/// [`bilinear_product_matrix_via_tensor`]; in debug builds the two are
/// checked against each other.
pub fn bilinear_product_matrix<S: Scalar>(
    r_rows: &[Vec<S>],
    s_rows: &[Vec<S>],
    a: &[S],
    b: &[S],
) -> Result<Matrix<S>> {
    for r in r_rows {
        check_dim(a.len(), r.len())?;
    }
    for s in s_rows {
        check_dim(b.len(), s.len())?;
    }
    let ra: Vec<S> = r_rows.iter().map(|r| dot(r, a)).collect();
    let sb: Vec<S> = s_rows.iter().map(|s| dot(s, b)).collect();
    let q = outer_matrix(&ra, &sb);
    #[cfg(debug_assertions)]
    {
        let alt = bilinear_product_matrix_via_tensor(r_rows, s_rows, a, b)?;
        let scale = q.max_abs().max(1.0);
        let agree = q
            .row_iter()
            .flatten()
            .zip(alt.row_iter().flatten())
            .all(|(x, y)| (x.clone() - y.clone()).is_negligible(1e-12, scale));
        debug_assert!(agree);
    }
    Ok(q)
}

/// `q_ij = r_i (a ⊗ b) s_jᵀ`, the multilinear rewriting of
/// [`bilinear_product_matrix`] with the constant middle factor `a ⊗ b`.
pub fn bilinear_product_matrix_via_tensor<S: Scalar>(
    r_rows: &[Vec<S>],
    s_rows: &[Vec<S>],
    a: &[S],
    b: &[S],
) -> Result<Matrix<S>> {
    let w = outer_matrix(a, b);
    let mut q = Matrix::zeros(r_rows.len(), s_rows.len());
    for (i, r) in r_rows.iter().enumerate() {
        check_dim(a.len(), r.len())?;
        let rw: Vec<S> = (0..b.len()).map(|col| dot(r, &w.column(col))).collect();
        for (j, s) in s_rows.iter().enumerate() {
            check_dim(b.len(), s.len())?;
            q[(i, j)] = dot(&rw, s);
        }
    }
    Ok(q)
}
