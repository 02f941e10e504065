//! Linear systems through the outer product.
//!
//! `Ax = b` is lifted to the homogeneous system `D ξ = 0` with
//! `D = [A | -b]`, whose solution is the n-ary outer product of the rows of
//! `D`:
//!
//! ```text
//! ξ = d₁ ∧ d₂ ∧ … ∧ dₙ,    x_i = ξ_i / ξ_w
//! ```
//!
//! A native `n x (n+1)` homogeneous system `A ξ = 0` is solved by the very
//! same product. Singular inputs are not errors; they show up in the
//! [`Classification`] of the result.

use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::ga::wedge_rows;
use crate::matrix::{dot, norm2_f64, Matrix};
use crate::projective::{HomVector, Role};
use crate::scalar::Scalar;

/// `ξ` counts as zero when `max|ξ_k| <= XI_ZERO_EPS * max|d_ij|^n` (float).
pub const XI_ZERO_EPS: f64 = 1e-10;
/// `ξ_w` counts as zero when `|ξ_w| <= XI_W_ZERO_EPS * max|ξ_k|` (float).
pub const XI_W_ZERO_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Built from `Ax = b` as `[A | -b]`.
    LiftedFromAxb,
    /// Given directly as an `n x (n+1)` homogeneous system.
    NativeHomogeneous,
}

/// `n` rows of `n + 1` components each.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedSystem<S> {
    rows: Matrix<S>,
    origin: Origin,
}

impl<S: Scalar> LiftedSystem<S> {
    pub fn new(rows: Matrix<S>, origin: Origin) -> Result<Self> {
        check_dim(rows.rows() + 1, rows.cols())?;
        Ok(Self { rows, origin })
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.rows
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// Number of unknowns in the Euclidean sense.
    pub fn n(&self) -> usize {
        self.rows.rows()
    }

    /// Rows as hyperplanes in `P^n`. Zero rows have no projective meaning and
    /// are rejected.
    pub fn hyperplanes(&self) -> Result<Vec<HomVector<S>>> {
        self.rows
            .row_iter()
            .map(|r| HomVector::from_components(r.to_vec(), Role::Hyperplane))
            .collect()
    }
}

/// `D = [A | -b]`.
pub fn lift<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Result<LiftedSystem<S>> {
    check_dim(a.rows(), a.cols())?;
    check_dim(a.rows(), b.len())?;
    let neg_b: Vec<S> = b.iter().map(|v| -v.clone()).collect();
    LiftedSystem::new(a.augment(&neg_b)?, Origin::LiftedFromAxb)
}

/// `ξ = d₁ ∧ … ∧ dₙ` for `n` homogeneous vectors of dimension `n`.
///
/// Component `k` (zero-based) is `(-1)^k · det(M_k)` where `M_k` drops
/// column `k`. May be the zero vector when the rows are dependent.
pub fn outer_product_n<S: Scalar>(rows: &[HomVector<S>]) -> Result<Vec<S>> {
    for r in rows {
        check_dim(rows.len(), r.dim())?;
    }
    let m = Matrix::from_rows(rows.iter().map(HomVector::components).collect())?;
    Ok(wedge_rows(&m)?.components)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `ξ_w ≠ 0`: a finite solution `x = ξ / ξ_w`.
    Unique,
    /// `ξ_w = 0`, `ξ ≠ 0`: `(ξ_1, …, ξ_n)` is only a direction.
    AtInfinity,
    /// `ξ = 0`: row rank below `n`.
    RankDeficient,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Unique => "unique",
            Classification::AtInfinity => "at-infinity",
            Classification::RankDeficient => "rank-deficient",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OuterSolution<S> {
    xi: Vec<S>,
    classification: Classification,
    residual_norm: f64,
    det_value: S,
    origin: Origin,
    max_bits: Option<u64>,
}

impl<S: Scalar> OuterSolution<S> {
    /// Raw `ξ = [ξ_1, …, ξ_n : ξ_w]`.
    pub fn xi(&self) -> &[S] {
        &self.xi
    }

    pub fn xi_w(&self) -> &S {
        self.xi.last().expect("ξ has n + 1 >= 1 components")
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    /// For a unique solution of `Ax = b`: `‖A x - b‖₂`. Otherwise the
    /// normalized null-space residual `‖D ξ‖ / (‖D‖_F ‖ξ‖)`, zero when
    /// `ξ = 0`. Exact zero on the exact backend whenever the identity holds.
    pub fn residual_norm(&self) -> f64 {
        self.residual_norm
    }

    /// `(-1)^n ξ_w`: equals `det(A)` for lifted systems and the determinant
    /// of the first `n` columns for native ones.
    pub fn det_value(&self) -> &S {
        &self.det_value
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// Bit length of the largest integer intermediate (exact backend).
    pub fn max_bits(&self) -> Option<u64> {
        self.max_bits
    }

    /// Euclidean solution `ξ_i / ξ_w` when the classification is unique.
    pub fn solution(&self) -> Option<Vec<S>> {
        if self.classification != Classification::Unique {
            return None;
        }
        let w = self.xi_w();
        Some(
            self.xi[..self.xi.len() - 1]
                .iter()
                .map(|v| v.clone() / w.clone())
                .collect(),
        )
    }

    /// `(ξ_1, …, ξ_n)` for solutions at infinity.
    pub fn direction(&self) -> Option<&[S]> {
        (self.classification == Classification::AtInfinity).then(|| &self.xi[..self.xi.len() - 1])
    }

    /// `ξ` as a projective point; fails for rank-deficient results.
    pub fn homogeneous(&self) -> Result<HomVector<S>> {
        HomVector::from_components(self.xi.clone(), Role::Point)
    }
}

/// Solves `Ax = b` for square `A` through `ξ = outer_product_n(lift(A, b))`.
pub fn solve_axb<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Result<OuterSolution<S>> {
    Ok(solve_lifted(&lift(a, b)?))
}

/// Solves `A ξ = 0` for an `n x (n+1)` matrix.
pub fn solve_homogeneous<S: Scalar>(a: &Matrix<S>) -> Result<OuterSolution<S>> {
    let sys = LiftedSystem::new(a.clone(), Origin::NativeHomogeneous)?;
    Ok(solve_lifted(&sys))
}

pub fn solve_lifted<S: Scalar>(sys: &LiftedSystem<S>) -> OuterSolution<S> {
    let d = sys.matrix();
    let n = sys.n();
    let wedge = wedge_rows(d).expect("lifted system has n x (n+1) shape");
    let xi = wedge.components;
    let classification = classify(d, &xi);

    let xi_w = xi[n].clone();
    let det_value = if n.is_multiple_of(2) { xi_w } else { -xi_w };

    let residual_norm = match (sys.origin, classification) {
        (Origin::LiftedFromAxb, Classification::Unique) => {
            let w = xi[n].clone();
            let x: Vec<S> = xi[..n].iter().map(|v| v.clone() / w.clone()).collect();
            // D [x : 1] = A x - b
            let r: Vec<S> = d
                .row_iter()
                .map(|row| dot(&row[..n], &x) + row[n].clone())
                .collect();
            residual_2norm(&r)
        }
        _ => normalized_null_residual(d, &xi),
    };

    OuterSolution {
        xi,
        classification,
        residual_norm,
        det_value,
        origin: sys.origin,
        max_bits: wedge.max_bits,
    }
}

fn classify<S: Scalar>(d: &Matrix<S>, xi: &[S]) -> Classification {
    let n = d.rows();
    let xi_scale = xi.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
    let d_scale = d.max_abs().powi(n as i32);
    if xi.iter().all(|v| v.is_negligible(XI_ZERO_EPS, d_scale)) {
        Classification::RankDeficient
    } else if xi[n].is_negligible(XI_W_ZERO_EPS, xi_scale) {
        Classification::AtInfinity
    } else {
        Classification::Unique
    }
}

fn residual_2norm<S: Scalar>(r: &[S]) -> f64 {
    if r.iter().all(Zero::is_zero) {
        0.0
    } else {
        norm2_f64(r)
    }
}

/// `‖A ξ‖₂ / (‖A‖_F ‖ξ‖₂)`, exactly zero when `A ξ` is exactly zero.
pub fn normalized_null_residual<S: Scalar>(a: &Matrix<S>, xi: &[S]) -> f64 {
    let r = a.mul_vec(xi).expect("ξ has one entry per column");
    let num = residual_2norm(&r);
    if num == 0.0 {
        return 0.0;
    }
    num / (a.frobenius_norm() * norm2_f64(xi))
}

/// Row `i` of `D` scaled by `lambda`; used to check scale covariance.
pub fn scale_lifted_row<S: Scalar>(
    sys: &LiftedSystem<S>,
    i: usize,
    lambda: &S,
) -> Result<LiftedSystem<S>> {
    if i >= sys.n() {
        return Err(Error::InvalidInput(format!("row {i} out of range")));
    }
    let mut m = sys.rows.clone();
    m.scale_row(i, lambda);
    LiftedSystem::new(m, sys.origin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::scalar::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn rv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x)).collect()
    }

    fn mq(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows).unwrap()
    }

    fn hyper(c: &[i64]) -> HomVector<Rational> {
        HomVector::from_components(rv(c), Role::Hyperplane).unwrap()
    }

    #[test]
    fn lift_examples() {
        let s = lift(&mq(&[&[1, 0], &[0, 1]]), &rv(&[1, 1])).unwrap();
        assert_eq!(s.matrix(), &mq(&[&[1, 0, -1], &[0, 1, -1]]));
        assert_eq!(s.origin(), Origin::LiftedFromAxb);
        let s = lift(&mq(&[&[2, 0], &[0, 4]]), &rv(&[2, 4])).unwrap();
        assert_eq!(s.matrix(), &mq(&[&[2, 0, -2], &[0, 4, -4]]));
        let s = lift(&mq(&[&[2, 1], &[3, 4]]), &rv(&[0, 0])).unwrap();
        assert_eq!(s.matrix().column(2), rv(&[0, 0]));
    }

    #[test]
    fn lift_rejects_bad_shapes() {
        assert!(lift(&mq(&[&[1, 0, 0], &[0, 1, 0]]), &rv(&[1, 1])).is_err());
        assert!(lift(&mq(&[&[1, 0], &[0, 1]]), &rv(&[1])).is_err());
    }

    #[test]
    fn outer_product_n_examples() {
        let xi = outer_product_n(&[hyper(&[1, 0, -1]), hyper(&[0, 1, -1])]).unwrap();
        assert_eq!(xi, rv(&[1, 1, 1]));

        let e = [
            hyper(&[1, 0, 0, 0]),
            hyper(&[0, 1, 0, 0]),
            hyper(&[0, 0, 1, 0]),
        ];
        assert_eq!(outer_product_n(&e).unwrap(), rv(&[0, 0, 0, -1]));

        let rep = [
            hyper(&[1, 2, 3, 4]),
            hyper(&[5, 6, 7, 8]),
            hyper(&[1, 2, 3, 4]),
        ];
        assert_eq!(outer_product_n(&rep).unwrap(), rv(&[0, 0, 0, 0]));
    }

    #[test]
    fn outer_product_n_shape_error() {
        assert!(outer_product_n(&[hyper(&[1, 0, 0, 1]), hyper(&[0, 1, 0, 1])]).is_err());
    }

    #[test]
    fn appendix_sign_pattern_in_four_components() {
        // (+, -, +, -) cofactors of three 4-vectors match the component-wise
        // triple products x1·(x2 × x3) over the remaining columns.
        let x = [rv(&[1, 2, -1, 3]), rv(&[0, 4, 2, 1]), rv(&[5, -3, 1, 2])];
        let xi = outer_product_n(&[
            hyper(&[1, 2, -1, 3]),
            hyper(&[0, 4, 2, 1]),
            hyper(&[5, -3, 1, 2]),
        ])
        .unwrap();
        let pick = |v: &Vec<Rational>, drop: usize| -> Vec<Rational> {
            v.iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, c)| c.clone())
                .collect()
        };
        for (k, got) in xi.iter().enumerate() {
            let c = crate::ga::cross3(&pick(&x[1], k), &pick(&x[2], k));
            let triple = dot(&pick(&x[0], k), &c);
            let want = if k % 2 == 0 { triple } else { -triple };
            assert_eq!(*got, want, "component {k}");
        }
    }

    #[test]
    fn solve_axb_unique() {
        let sol = solve_axb(&mq(&[&[2, 0], &[0, 4]]), &rv(&[2, 4])).unwrap();
        assert_eq!(sol.classification(), Classification::Unique);
        assert_eq!(sol.solution().unwrap(), rv(&[1, 1]));
        assert_eq!(sol.residual_norm(), 0.0);
        assert_eq!(sol.det_value(), &r(8));
        assert!(sol.max_bits().is_some());

        let oracle = oracle::gauss_solve(&mq(&[&[2, 0], &[0, 4]]), &rv(&[2, 4])).unwrap();
        assert_eq!(sol.solution().unwrap(), oracle);
    }

    #[test]
    fn solve_axb_inconsistent_is_at_infinity() {
        let sol = solve_axb(&mq(&[&[1, 1], &[1, 1]]), &rv(&[1, 2])).unwrap();
        assert_eq!(sol.classification(), Classification::AtInfinity);
        // cofactors of (1,1,-1),(1,1,-2)
        assert_eq!(sol.xi(), rv(&[-1, 1, 0]).as_slice());
        assert_eq!(sol.direction().unwrap(), rv(&[-1, 1]).as_slice());
        assert!(sol.solution().is_none());
        assert_eq!(sol.residual_norm(), 0.0);

        let f = solve_axb(&mq(&[&[1, 1], &[1, 1]]).to_f64(), &[1.0, 2.0]).unwrap();
        assert_eq!(f.classification(), Classification::AtInfinity);
    }

    #[test]
    fn solve_axb_rank_deficient() {
        let sol = solve_axb(&mq(&[&[1, 1], &[2, 2]]), &rv(&[1, 2])).unwrap();
        assert_eq!(sol.classification(), Classification::RankDeficient);
        assert!(sol.homogeneous().is_err());
        let f = solve_axb(&mq(&[&[1, 1], &[2, 2]]).to_f64(), &[1.0, 2.0]).unwrap();
        assert_eq!(f.classification(), Classification::RankDeficient);
    }

    #[test]
    fn solve_homogeneous_examples() {
        let sol = solve_homogeneous(&mq(&[&[1, 0, -1], &[0, 1, -1]])).unwrap();
        assert_eq!(sol.xi(), rv(&[1, 1, 1]).as_slice());
        assert_eq!(sol.residual_norm(), 0.0);
        assert_eq!(sol.origin(), Origin::NativeHomogeneous);

        let sol = solve_homogeneous(&mq(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert_eq!(sol.xi(), rv(&[0, 0, 1]).as_slice());

        let sol = solve_homogeneous(&mq(&[&[1, 2, 3], &[2, 4, 6]])).unwrap();
        assert_eq!(sol.classification(), Classification::RankDeficient);
        assert_eq!(sol.residual_norm(), 0.0);

        assert!(solve_homogeneous(&mq(&[&[1, 2], &[3, 4]])).is_err());
    }

    #[test]
    fn float_residual_on_scaled_system() {
        let a = Matrix::from_rows(vec![vec![1e-3, 2.0], vec![3.0, 4e3]]).unwrap();
        let sol = solve_axb(&a, &[1.0, 2.0]).unwrap();
        assert_eq!(sol.classification(), Classification::Unique);
        assert!(sol.residual_norm() < 1e-9);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(128))]

        #[test]
        fn cramer_equivalence_and_null_space(
            n in 2usize..=5,
            entries in proptest::collection::vec(-9i64..=9, 30),
        ) {
            let a = Matrix::from_rows((0..n).map(|i| rv(&entries[i * n..(i + 1) * n])).collect()).unwrap();
            let b = rv(&entries[25..25 + n]);
            let sys = lift(&a, &b).unwrap();
            let sol = solve_lifted(&sys);
            let xi = sol.xi().to_vec();
            proptest::prop_assert!(sys.matrix().mul_vec(&xi).unwrap().iter().all(|v| v == &r(0)));

            let det = crate::det::laplace(&a);
            proptest::prop_assert_eq!(sol.det_value(), &det);
            match oracle::gauss_solve(&a, &b) {
                Some(x) => {
                    proptest::prop_assert_eq!(sol.classification(), Classification::Unique);
                    proptest::prop_assert_eq!(sol.solution().unwrap(), x);
                }
                None => proptest::prop_assert_ne!(sol.classification(), Classification::Unique),
            }
        }

        #[test]
        fn laplace_and_elimination_engines_agree(
            n in 2usize..=6,
            entries in proptest::collection::vec(-9i64..=9, 42),
        ) {
            let d = Matrix::from_rows((0..n).map(|i| rv(&entries[i * (n + 1)..(i + 1) * (n + 1)])).collect()).unwrap();
            let xi = solve_homogeneous(&d).unwrap().xi().to_vec();
            for (k, v) in xi.iter().enumerate() {
                let m = crate::det::laplace(&d.without_column(k));
                let want = if k % 2 == 0 { m } else { -m };
                proptest::prop_assert_eq!(v, &want);
            }
        }

        #[test]
        fn row_scaling_scales_xi(
            entries in proptest::collection::vec(-9i64..=9, 12),
            row in 0usize..3,
            lambda in proptest::prop_oneof![-7i64..=-1, 1i64..=7],
        ) {
            let d = Matrix::from_rows(entries.chunks(4).map(rv).collect()).unwrap();
            let sys = LiftedSystem::new(d, Origin::NativeHomogeneous).unwrap();
            let base = solve_lifted(&sys);
            let scaled = solve_lifted(&scale_lifted_row(&sys, row, &r(lambda)).unwrap());
            let want: Vec<Rational> = base.xi().iter().map(|v| v.clone() * r(lambda)).collect();
            proptest::prop_assert_eq!(scaled.xi(), want.as_slice());
            proptest::prop_assert_eq!(scaled.classification(), base.classification());
            proptest::prop_assert_eq!(scaled.solution(), base.solution());
        }
    }
}
