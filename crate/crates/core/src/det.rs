//! Determinant engines.
//!
//! - [`bareiss_rational`]: fraction-free Bareiss elimination over integers
//!   after clearing row denominators. Production engine for [`Rational`].
//! - [`partial_pivot`]: Gaussian elimination with partial pivoting.
//!   Production engine for `f64`.
//! - [`bareiss`]: generic Bareiss over any field backend.
//! - [`laplace`]: cofactor expansion, exponential cost. Used as a reference
//!   for small matrices only.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::scalar::{denominator_lcm, Rational, Scalar};

/// Largest size [`laplace`] accepts.
pub const LAPLACE_MAX_DIM: usize = 8;

/// Cofactor (Laplace) expansion along the first row.
///
/// # Panics
///
/// If the matrix is not square or larger than [`LAPLACE_MAX_DIM`].
pub fn laplace<S: Scalar>(m: &Matrix<S>) -> S {
    assert!(m.is_square(), "determinant of a non-square matrix");
    assert!(
        m.rows() <= LAPLACE_MAX_DIM,
        "laplace expansion is exponential in n"
    );
    let n = m.rows();
    match n {
        0 => S::one(),
        1 => m[(0, 0)].clone(),
        2 => m[(0, 0)].clone() * m[(1, 1)].clone() - m[(0, 1)].clone() * m[(1, 0)].clone(),
        _ => (0..n).fold(S::zero(), |acc, j| {
            let a = &m[(0, j)];
            if a.is_zero() {
                return acc;
            }
            let term = a.clone() * laplace(&m.minor(0, j));
            if j % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        }),
    }
}

/// Gaussian elimination with partial pivoting; the determinant is the
/// signed product of pivots.
pub fn partial_pivot<S: Scalar>(m: &Matrix<S>) -> S {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut det = S::one();
    for k in 0..n {
        let mut pivot = k;
        for r in k + 1..n {
            if a[(r, k)].abs() > a[(pivot, k)].abs() {
                pivot = r;
            }
        }
        if a[(pivot, k)].is_zero() {
            return S::zero();
        }
        if pivot != k {
            a.swap_rows(pivot, k);
            det = -det;
        }
        let p = a[(k, k)].clone();
        det = det * p.clone();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone() / p.clone();
            for j in k + 1..n {
                let v = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                a[(i, j)] = v;
            }
        }
    }
    det
}

/// Bareiss elimination over a field backend. Every division is exact in
/// integer-valued inputs.
pub fn bareiss<S: Scalar>(m: &Matrix<S>) -> S {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return S::one();
    }
    let mut a = m.clone();
    let mut sign = S::one();
    let mut prev = S::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return S::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[(i, j)].clone() * a[(k, k)].clone()
                    - a[(i, k)].clone() * a[(k, j)].clone())
                    / prev.clone();
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Integer Bareiss on an integer matrix. Returns the determinant and the
/// bit length of the largest intermediate.
pub fn bareiss_integer(mut a: Vec<Vec<BigInt>>) -> (BigInt, u64) {
    let n = a.len();
    let mut bits = a.iter().flatten().map(|v| v.bits()).max().unwrap_or(0);
    if n == 0 {
        return (BigInt::one(), bits);
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return (BigInt::zero(), bits),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..n {
                let v = (&row[j] * &pivot_row[k] - &row[k] * &pivot_row[j]) / &prev;
                bits = bits.max(v.bits());
                row[j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    (if negate { -d } else { d }, bits)
}

/// Fraction-free determinant of a rational matrix: each row is scaled by
/// the LCM of its denominators, the integer determinant is computed with
/// [`bareiss_integer`], and the scaling is divided back out.
pub fn bareiss_rational(m: &Matrix<Rational>) -> (Rational, u64) {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = m
        .row_iter()
        .map(|row| {
            let l = denominator_lcm(row);
            let ints = row.iter().map(|r| r.numer() * (&l / r.denom())).collect();
            scale *= &l;
            ints
        })
        .collect();
    let (d, bits) = bareiss_integer(rows);
    let value = Rational::new(d, scale);
    debug_assert!(value.denom().is_positive());
    (value, bits)
}
