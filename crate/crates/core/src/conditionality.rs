//! Angular conditionality of a matrix and of a lifted system.
//!
//! For rows `a_i`, `a_j` the angle
//!
//! ```text
//! γ_ij = arccos( |a_i · a_j| / (‖a_i‖ ‖a_j‖) )  ∈ [0, π/2]
//! ```
//!
//! and `κ_γ(A) = min γ_ij / max γ_kl` over distinct row pairs. `κ_γ = 1`
//! means pairwise equiangular rows (all orthogonal for the identity), `κ_γ = 0`
//! means two rows are linearly dependent. `κ_β` is the same ratio over the
//! rows of `[A | -b]`.
//!
//! Angles are evaluated as `atan2(‖a_i ∧ a_j‖, |a_i · a_j|)` from the squared
//! sine and cosine ratios. Both ratios are invariant under row scaling, and
//! on the exact backend they are canonical rationals, so `κ_γ` does not
//! change at all when rows are rescaled.

use crate::error::{check_dim, Error, Result};
use crate::matrix::{dot, Matrix};
use crate::scalar::Scalar;
use crate::solver::lift;

/// Extreme pairwise angles (radians) and the row pairs attaining them.
/// Ties resolve to the first pair in `(i, j)` lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleExtrema {
    pub min_angle: f64,
    pub max_angle: f64,
    pub argmin_pair: (usize, usize),
    pub argmax_pair: (usize, usize),
}

impl AngleExtrema {
    /// `min / max`; zero when every pair is dependent.
    pub fn ratio(&self) -> f64 {
        if self.max_angle > 0.0 {
            self.min_angle / self.max_angle
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalityReport {
    pub kappa_gamma: f64,
    pub kappa_beta: Option<f64>,
    /// Angles between rows of `A`.
    pub gamma: AngleExtrema,
    /// Angles between rows of `[A | -b]`, when a right-hand side was given.
    pub beta: Option<AngleExtrema>,
    pub notes: Vec<String>,
}

impl ConditionalityReport {
    pub fn min_angle(&self) -> f64 {
        self.gamma.min_angle
    }

    pub fn max_angle(&self) -> f64 {
        self.gamma.max_angle
    }

    pub fn argmin_pair(&self) -> (usize, usize) {
        self.gamma.argmin_pair
    }

    pub fn argmax_pair(&self) -> (usize, usize) {
        self.gamma.argmax_pair
    }
}

/// Squared sine and cosine of the folded angle, in the backend's arithmetic.
/// `None` if either vector is zero.
struct PairGram<S> {
    sin_sq: S,
    cos_sq: S,
}

fn pair_gram<S: Scalar>(u: &[S], v: &[S]) -> Option<PairGram<S>> {
    let nu = dot(u, u);
    let nv = dot(v, v);
    if nu.is_zero() || nv.is_zero() {
        return None;
    }
    let d = dot(u, v);
    // ‖u ∧ v‖² by Lagrange's identity, summed over the 2x2 minors
    let mut wedge_sq = S::zero();
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let m = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
            wedge_sq = wedge_sq + m.sq();
        }
    }
    let denom = nu * nv;
    Some(PairGram {
        sin_sq: wedge_sq / denom.clone(),
        cos_sq: d.sq() / denom,
    })
}

fn angle_from_gram<S: Scalar>(g: &PairGram<S>) -> f64 {
    let s = g.sin_sq.to_f64().max(0.0).sqrt();
    let c = g.cos_sq.to_f64().max(0.0).sqrt();
    s.atan2(c)
}

/// Folded angle `γ ∈ [0, π/2]` between two nonzero vectors.
pub fn pairwise_angle<S: Scalar>(u: &[S], v: &[S]) -> Result<f64> {
    check_dim(u.len(), v.len())?;
    if u.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroRow(0));
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroRow(1));
    }
    let g = pair_gram(u, v).expect("both vectors are nonzero");
    Ok(angle_from_gram(&g))
}

/// Pairwise angle extrema over the rows of `m`. Pairs involving a zero row
/// count as angle 0; their indices are returned separately.
fn row_angle_extrema<S: Scalar>(m: &Matrix<S>) -> Result<(AngleExtrema, Vec<usize>)> {
    let rows = m.rows();
    if rows < 2 {
        return Err(Error::TooFewRows(rows));
    }
    let zero_rows: Vec<usize> = (0..rows)
        .filter(|&i| m.row(i).iter().all(|x| x.is_zero()))
        .collect();

    // Order by sin² (monotone in γ on [0, π/2]) in the backend's arithmetic
    // so ties are exact on the rational backend.
    let mut best_min: Option<(S, (usize, usize), f64)> = None;
    let mut best_max: Option<(S, (usize, usize), f64)> = None;
    for i in 0..rows {
        for j in i + 1..rows {
            let (key, angle) = match pair_gram(m.row(i), m.row(j)) {
                Some(g) => {
                    let a = angle_from_gram(&g);
                    (g.sin_sq, a)
                }
                None => (S::zero(), 0.0),
            };
            if best_min.as_ref().is_none_or(|(k, _, _)| key < *k) {
                best_min = Some((key.clone(), (i, j), angle));
            }
            if best_max.as_ref().is_none_or(|(k, _, _)| key > *k) {
                best_max = Some((key, (i, j), angle));
            }
        }
    }
    let (_, argmin_pair, min_angle) = best_min.expect("at least one pair");
    let (_, argmax_pair, max_angle) = best_max.expect("at least one pair");
    Ok((
        AngleExtrema {
            min_angle,
            max_angle,
            argmin_pair,
            argmax_pair,
        },
        zero_rows,
    ))
}

fn extrema_notes(
    label: &str,
    extrema: &AngleExtrema,
    zero_rows: &[usize],
    notes: &mut Vec<String>,
) {
    for i in zero_rows {
        notes.push(format!("{label}: row {i} is zero (maximal degeneracy)"));
    }
    if extrema.max_angle == 0.0 {
        notes.push(format!("{label}: all rows are pairwise linearly dependent"));
    } else if extrema.min_angle == 0.0 && zero_rows.is_empty() {
        let (i, j) = extrema.argmin_pair;
        notes.push(format!("{label}: rows {i} and {j} are linearly dependent"));
    }
}

/// `κ_γ(A)` over all unordered row pairs of an `m x k` matrix (`m >= 2`).
///
/// A zero row does not fail: it yields `κ_γ = 0` with a note.
pub fn kappa_gamma<S: Scalar>(a: &Matrix<S>) -> Result<ConditionalityReport> {
    let (gamma, zero_rows) = row_angle_extrema(a)?;
    let mut notes = Vec::new();
    extrema_notes("A", &gamma, &zero_rows, &mut notes);
    Ok(ConditionalityReport {
        kappa_gamma: gamma.ratio(),
        kappa_beta: None,
        gamma,
        beta: None,
        notes,
    })
}

/// `κ_γ(A)` together with `κ_β([A | -b])`.
///
/// `κ_β` is not invariant under scaling of `b`; it changes with the
/// relative weight of the right-hand side column.
pub fn kappa_beta<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Result<ConditionalityReport> {
    let lifted = lift(a, b)?;
    let mut report = kappa_gamma(a)?;
    let (beta, zero_rows) = row_angle_extrema(lifted.matrix())?;
    extrema_notes("[A|-b]", &beta, &zero_rows, &mut report.notes);
    report.kappa_beta = Some(beta.ratio());
    report.beta = Some(beta);
    Ok(report)
}

/// `max|d_i| / min|d_i|`, the eigenvalue ratio of a diagonal matrix.
pub fn eigen_ratio_diagonal<S: Scalar>(d: &[S]) -> Result<S> {
    if let Some(i) = d.iter().position(|x| x.is_zero()) {
        return Err(Error::ZeroDiagonal(i));
    }
    let mut abs = d.iter().map(|x| x.abs());
    let first = abs
        .next()
        .ok_or_else(|| Error::InvalidInput("empty diagonal".into()))?;
    let (lo, hi) = abs.fold((first.clone(), first), |(lo, hi), x| {
        let lo = if x < lo { x.clone() } else { lo };
        let hi = if x > hi { x } else { hi };
        (lo, hi)
    });
    Ok(hi / lo)
}

/// Diagonal entries when `m` is square and diagonal.
pub fn diagonal_entries<S: Scalar>(m: &Matrix<S>) -> Option<Vec<S>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let off_diagonal_zero = (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)].is_zero()));
    off_diagonal_zero.then(|| (0..n).map(|i| m[(i, i)].clone()).collect())
}
