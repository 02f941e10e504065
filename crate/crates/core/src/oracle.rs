//! Reference solvers that do not go through the outer product. The
//! verification harness and the tests compare the outer-product solver
//! against these.

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Solves `Ax = b` by Gaussian elimination with partial pivoting and back
/// substitution. `None` when `A` is singular (exactly, or numerically for
/// floats).
pub fn gauss_solve<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    let n = a.rows();
    if !a.is_square() || b.len() != n {
        return None;
    }
    let mut m = a.augment(b).ok()?;
    let scale = a.max_abs();
    for k in 0..n {
        let pivot = (k..n).max_by(|&i, &j| {
            m[(i, k)]
                .abs()
                .partial_cmp(&m[(j, k)].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[(pivot, k)].is_negligible(1e-14, scale) {
            return None;
        }
        m.swap_rows(k, pivot);
        for i in k + 1..n {
            if m[(i, k)].is_zero() {
                continue;
            }
            let f = m[(i, k)].clone() / m[(k, k)].clone();
            for j in k..=n {
                let v = m[(i, j)].clone() - f.clone() * m[(k, j)].clone();
                m[(i, j)] = v;
            }
        }
    }
    let mut x = vec![S::zero(); n];
    for i in (0..n).rev() {
        let mut acc = m[(i, n)].clone();
        for j in i + 1..n {
            acc = acc - m[(i, j)].clone() * x[j].clone();
        }
        x[i] = acc / m[(i, i)].clone();
    }
    Some(x)
}
