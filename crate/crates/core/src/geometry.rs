//! Projective constructions in 2D and 3D.
//!
//! Meet and join are the same computation under duality: the intersection
//! of two lines and the line through two points are both `u ∧ v`, and the
//! intersection of three planes and the plane through three points are both
//! `u ∧ v ∧ w`. Every construction here goes through
//! [`outer_product_n`](crate::solver::outer_product_n) and only the role tag
//! of the result differs.

use crate::error::{check_dim, Error, Result};
use crate::ga::{antisymmetric_part, cross3, tensor_product, wedge_rows};
use crate::matrix::{dot, norm2_f64, Matrix};
use crate::projective::{HomVector, Role};
use crate::scalar::Scalar;
use crate::solver::outer_product_n;

/// Relative tolerance for float degeneracy tests in this module.
pub const DEGENERACY_EPS: f64 = 1e-12;

/// Float incidence tolerance: `|ρ·x| <= 1e-10 ‖ρ‖ ‖x‖`.
pub const INCIDENCE_EPS: f64 = 1e-10;

/// Shared meet/join: the outer product of `elements`, tagged `result_role`.
/// `None` when the product vanishes (dependent inputs).
fn wedge_elements<S: Scalar>(
    elements: &[&HomVector<S>],
    dim: usize,
    result_role: Role,
) -> Result<Option<HomVector<S>>> {
    for e in elements {
        check_dim(dim, e.dim())?;
    }
    let owned: Vec<HomVector<S>> = elements.iter().map(|e| (*e).clone()).collect();
    let xi = outer_product_n(&owned)?;
    let scale = elements
        .iter()
        .map(|e| norm2_f64(&e.components()))
        .product::<f64>();
    if xi.iter().all(|v| v.is_negligible(DEGENERACY_EPS, scale)) {
        return Ok(None);
    }
    HomVector::from_components(xi, result_role).map(Some)
}

/// Intersection point of two lines `[a, b : c]` (`ax + by + cw = 0`).
/// Parallel lines meet at infinity (`w = 0`).
pub fn intersect_lines_2d<S: Scalar>(p1: &HomVector<S>, p2: &HomVector<S>) -> Result<HomVector<S>> {
    wedge_elements(&[p1, p2], 2, Role::Point)?.ok_or(Error::RankDeficient)
}

/// Line through two points; dual of [`intersect_lines_2d`].
pub fn line_through_points_2d<S: Scalar>(
    x1: &HomVector<S>,
    x2: &HomVector<S>,
) -> Result<HomVector<S>> {
    wedge_elements(&[x1, x2], 2, Role::Hyperplane)?.ok_or(Error::CoincidentPoints)
}

/// Common point of three planes `[a, b, c : d]`. Planes through a common
/// line give [`Error::RankDeficient`].
pub fn intersect_planes_3<S: Scalar>(
    rho1: &HomVector<S>,
    rho2: &HomVector<S>,
    rho3: &HomVector<S>,
) -> Result<HomVector<S>> {
    wedge_elements(&[rho1, rho2, rho3], 3, Role::Point)?.ok_or(Error::RankDeficient)
}

/// Plane through three points; dual of [`intersect_planes_3`].
pub fn plane_through_points_3<S: Scalar>(
    x1: &HomVector<S>,
    x2: &HomVector<S>,
    x3: &HomVector<S>,
) -> Result<HomVector<S>> {
    wedge_elements(&[x1, x2, x3], 3, Role::Hyperplane)?.ok_or(Error::CollinearPoints)
}

/// `ρ · x` over all homogeneous components.
pub fn incidence<S: Scalar>(hyperplane: &HomVector<S>, point: &HomVector<S>) -> S {
    dot(&hyperplane.components(), &point.components())
}

/// `|ρ · x| / (‖ρ‖ ‖x‖)`; exactly zero when the incidence is exact.
pub fn normalized_incidence<S: Scalar>(hyperplane: &HomVector<S>, point: &HomVector<S>) -> f64 {
    let d = incidence(hyperplane, point);
    if d.is_zero() {
        return 0.0;
    }
    d.to_f64().abs() / (norm2_f64(&hyperplane.components()) * norm2_f64(&point.components()))
}

/// True when the point lies on the hyperplane (exactly, or within
/// [`INCIDENCE_EPS`] for floats).
pub fn is_incident<S: Scalar>(hyperplane: &HomVector<S>, point: &HomVector<S>) -> bool {
    if S::is_exact() {
        incidence(hyperplane, point).is_zero()
    } else {
        normalized_incidence(hyperplane, point) <= INCIDENCE_EPS
    }
}

/// Barycentric coordinates of `x` with respect to the triangle
/// `x1, x2, x3` in the plane.
///
/// The coordinate rows `[x1, x2, x3 : x]`, `[y1, y2, y3 : y]` and
/// `[w1, w2, w3 : w]` are wedged to `μ`; the homogeneous weights are
/// `-μ_i / μ_w`. They are rescaled by `w_i / w` so the result always sums to
/// one and reproduces the Euclidean query point (a no-op when every `w` is 1).
pub fn barycentric<S: Scalar>(
    x1: &HomVector<S>,
    x2: &HomVector<S>,
    x3: &HomVector<S>,
    x: &HomVector<S>,
) -> Result<[S; 3]> {
    let verts = [x1, x2, x3];
    for v in verts.iter().chain(std::iter::once(&x)) {
        check_dim(2, v.dim())?;
    }
    if x.w().is_zero() {
        return Err(Error::AtInfinity);
    }
    // rows [x1, x2, x3 : x], [y1, y2, y3 : y], [w1, w2, w3 : w]
    let rows = Matrix::from_rows(
        (0..3)
            .map(|k| {
                let mut row: Vec<S> = verts.iter().map(|v| v.component(k).clone()).collect();
                row.push(x.component(k).clone());
                row
            })
            .collect(),
    )?;
    let mu = wedge_rows(&rows)?.components;

    let scale = verts
        .iter()
        .map(|v| norm2_f64(&v.components()))
        .product::<f64>();
    let mu_w = mu[3].clone();
    if mu_w.is_negligible(DEGENERACY_EPS, scale) {
        return Err(Error::DegenerateTriangle);
    }
    let weight =
        |i: usize| -> S { -(mu[i].clone() / mu_w.clone()) * verts[i].w().clone() / x.w().clone() };
    Ok([weight(0), weight(1), weight(2)])
}

/// A line in 3D in Plücker form.
///
/// `l` is the antisymmetric point-form matrix; `omega = (l₄₁, l₄₂, l₄₃)` is
/// the direction and `v = (l₂₃, l₃₁, l₁₂)` the moment (one-based indices).
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerLine<S> {
    l: Matrix<S>,
    omega: [S; 3],
    v: [S; 3],
}

impl<S: Scalar> PluckerLine<S> {
    /// Builds the line from direction and moment, filling `l`.
    pub fn from_direction_moment(omega: [S; 3], v: [S; 3]) -> Self {
        let mut l = Matrix::zeros(4, 4);
        let mut put = |i: usize, j: usize, val: &S| {
            l[(i, j)] = val.clone();
            l[(j, i)] = -val.clone();
        };
        put(3, 0, &omega[0]);
        put(3, 1, &omega[1]);
        put(3, 2, &omega[2]);
        put(1, 2, &v[0]);
        put(2, 0, &v[1]);
        put(0, 1, &v[2]);
        Self { l, omega, v }
    }

    fn from_point_matrix(l: Matrix<S>) -> Self {
        let omega = [l[(3, 0)].clone(), l[(3, 1)].clone(), l[(3, 2)].clone()];
        let v = [l[(1, 2)].clone(), l[(2, 0)].clone(), l[(0, 1)].clone()];
        Self { l, omega, v }
    }

    pub fn l(&self) -> &Matrix<S> {
        &self.l
    }

    pub fn omega(&self) -> &[S; 3] {
        &self.omega
    }

    pub fn v(&self) -> &[S; 3] {
        &self.v
    }

    /// `ω · v`, zero for every line built from points or planes.
    pub fn grassmann_residual(&self) -> S {
        dot(&self.omega, &self.v)
    }

    /// Plücker six-tuple `(ω, v)`.
    pub fn six(&self) -> [S; 6] {
        [
            self.omega[0].clone(),
            self.omega[1].clone(),
            self.omega[2].clone(),
            self.v[0].clone(),
            self.v[1].clone(),
            self.v[2].clone(),
        ]
    }

    /// Same projective line: the six-tuples are proportional.
    pub fn same_line(&self, other: &Self, rel: f64) -> bool {
        let a = self.six();
        let b = other.six();
        let scale = norm2_f64(&a) * norm2_f64(&b);
        (0..6).all(|i| {
            (i + 1..6).all(|j| {
                (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone())
                    .is_negligible(rel, scale)
            })
        })
    }
}

fn is_zero_matrix<S: Scalar>(m: &Matrix<S>, scale: f64) -> bool {
    m.row_iter()
        .flatten()
        .all(|v| v.is_negligible(DEGENERACY_EPS, scale))
}

/// Line through two points: `L = x₁x₂ᵀ - x₂x₁ᵀ`.
pub fn plucker_from_points<S: Scalar>(
    x1: &HomVector<S>,
    x2: &HomVector<S>,
) -> Result<PluckerLine<S>> {
    check_dim(3, x1.dim())?;
    check_dim(3, x2.dim())?;
    // L is the antisymmetric part of the tensor product x1 ⊗ x2
    let l = antisymmetric_part(&tensor_product(x1, x2)?);
    let scale = norm2_f64(&x1.components()) * norm2_f64(&x2.components());
    if is_zero_matrix(&l, scale) {
        return Err(Error::CoincidentPoints);
    }
    Ok(PluckerLine::from_point_matrix(l))
}

/// Line of intersection of two planes.
///
/// `ρ₁ρ₂ᵀ - ρ₂ρ₁ᵀ` is the same antisymmetric construction applied to the
/// dual elements; it yields the dual matrix, in which the roles of
/// direction and moment are exchanged. The result is returned in point form
/// so that it compares directly with [`plucker_from_points`].
pub fn plucker_from_planes<S: Scalar>(
    rho1: &HomVector<S>,
    rho2: &HomVector<S>,
) -> Result<PluckerLine<S>> {
    check_dim(3, rho1.dim())?;
    check_dim(3, rho2.dim())?;
    let dual = antisymmetric_part(&tensor_product(rho1, rho2)?);
    let scale = norm2_f64(&rho1.components()) * norm2_f64(&rho2.components());
    if is_zero_matrix(&dual, scale) {
        return Err(Error::CoincidentPlanes);
    }
    let direction = [
        dual[(1, 2)].clone(),
        dual[(2, 0)].clone(),
        dual[(0, 1)].clone(),
    ];
    let moment = [
        dual[(3, 0)].clone(),
        dual[(3, 1)].clone(),
        dual[(3, 2)].clone(),
    ];
    Ok(PluckerLine::from_direction_moment(direction, moment))
}

/// `q(t) = (ω × v) / ‖ω‖² + ω t`. `q(0)` is the point of the line closest to
/// the origin. The parameterization depends on the representative chosen for
/// `(ω, v)`; the point set does not.
pub fn plucker_parametric_point<S: Scalar>(line: &PluckerLine<S>, t: &S) -> Result<[S; 3]> {
    let omega = &line.omega;
    let norm_sq = dot(omega, omega);
    let scale = dot(&line.v, &line.v).to_f64().sqrt().max(1.0);
    if norm_sq.to_f64().sqrt() <= DEGENERACY_EPS * scale || norm_sq.is_zero() {
        return Err(Error::LineAtInfinity);
    }
    let c = cross3(omega, &line.v);
    Ok([0, 1, 2].map(|i| c[i].clone() / norm_sq.clone() + omega[i].clone() * t.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::to_euclidean;
    use crate::scalar::Rational;
    use num_traits::{Signed, Zero};

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pt(c: &[i64]) -> HomVector<Rational> {
        HomVector::from_i64(c, 1, Role::Point).unwrap()
    }

    fn hp(c: &[i64], w: i64) -> HomVector<Rational> {
        HomVector::from_i64(c, w, Role::Hyperplane).unwrap()
    }

    #[test]
    fn lines_meet_at_point() {
        let x = intersect_lines_2d(&hp(&[1, 0], -1), &hp(&[0, 1], -1)).unwrap();
        assert_eq!(x.role(), Role::Point);
        assert_eq!(to_euclidean(&x).unwrap(), vec![r(1), r(1)]);
    }

    #[test]
    fn parallel_lines_meet_at_infinity() {
        let x = intersect_lines_2d(&hp(&[1, 0], -1), &hp(&[1, 0], -2)).unwrap();
        assert!(x.w().is_zero());
        assert!(x.coords()[0].is_zero());
        assert_eq!(x.coords()[1].abs(), r(1));
        assert!(x.is_at_infinity());
    }

    #[test]
    fn coincident_lines_have_no_unique_meet() {
        assert_eq!(
            intersect_lines_2d(&hp(&[1, 2], 3), &hp(&[2, 4], 6)).unwrap_err(),
            Error::RankDeficient
        );
    }

    #[test]
    fn line_through_points_examples() {
        let l = line_through_points_2d(&pt(&[0, 0]), &pt(&[1, 1])).unwrap();
        assert_eq!(l.role(), Role::Hyperplane);
        assert!(l.projectively_eq(&hp(&[1, -1], 0), 0.0));
        let l = line_through_points_2d(&pt(&[0, 0]), &pt(&[1, 0])).unwrap();
        assert!(l.projectively_eq(&hp(&[0, 1], 0), 0.0));
        for p in [pt(&[0, 0]), pt(&[1, 0])] {
            assert!(incidence(&l, &p).is_zero());
        }
        assert_eq!(
            line_through_points_2d(
                &pt(&[2, 3]),
                &HomVector::from_i64(&[4, 6], 2, Role::Point).unwrap()
            )
            .unwrap_err(),
            Error::CoincidentPoints
        );
    }

    #[test]
    fn duality_round_trip_2d() {
        let p = pt(&[3, -2]);
        let l1 = line_through_points_2d(&p, &pt(&[7, 1])).unwrap();
        let l2 = line_through_points_2d(&p, &pt(&[-4, 5])).unwrap();
        assert!(intersect_lines_2d(&l1, &l2)
            .unwrap()
            .projectively_eq(&p, 0.0));
    }

    #[test]
    fn planes_meet_at_point() {
        let origin =
            intersect_planes_3(&hp(&[1, 0, 0], 0), &hp(&[0, 1, 0], 0), &hp(&[0, 0, 1], 0)).unwrap();
        assert_eq!(origin.coords(), &[r(0), r(0), r(0)]);
        assert_eq!(origin.w().abs(), r(1));

        let x = intersect_planes_3(
            &hp(&[1, 0, 0], -1),
            &hp(&[0, 1, 0], -2),
            &hp(&[0, 0, 1], -3),
        )
        .unwrap();
        assert_eq!(to_euclidean(&x).unwrap(), vec![r(1), r(2), r(3)]);

        // all contain the z-axis
        let err = intersect_planes_3(&hp(&[1, 0, 0], 0), &hp(&[0, 1, 0], 0), &hp(&[1, 1, 0], 0))
            .unwrap_err();
        assert_eq!(err, Error::RankDeficient);
    }

    #[test]
    fn plane_through_points_examples() {
        let p = plane_through_points_3(&pt(&[1, 0, 0]), &pt(&[0, 1, 0]), &pt(&[0, 0, 1])).unwrap();
        assert!(p.projectively_eq(&hp(&[1, 1, 1], -1), 0.0));
        let p = plane_through_points_3(&pt(&[0, 0, 0]), &pt(&[1, 0, 0]), &pt(&[0, 1, 0])).unwrap();
        assert!(p.coords()[0].is_zero() && p.coords()[1].is_zero() && p.w().is_zero());
        assert_eq!(p.coords()[2].abs(), r(1));
        assert_eq!(
            plane_through_points_3(&pt(&[0, 0, 0]), &pt(&[1, 1, 1]), &pt(&[2, 2, 2])).unwrap_err(),
            Error::CollinearPoints
        );
    }

    #[test]
    fn barycentric_examples() {
        let (a, b, c) = (pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]));
        let centroid = HomVector::point(vec![q(1, 3), q(1, 3)], r(1)).unwrap();
        assert_eq!(
            barycentric(&a, &b, &c, &centroid).unwrap(),
            [q(1, 3), q(1, 3), q(1, 3)]
        );
        assert_eq!(barycentric(&a, &b, &c, &a).unwrap(), [r(1), r(0), r(0)]);
        // elimination oracle for (1/2, 1/4): λ = (1/4, 1/2, 1/4)
        let x = HomVector::point(vec![q(1, 2), q(1, 4)], r(1)).unwrap();
        assert_eq!(
            barycentric(&a, &b, &c, &x).unwrap(),
            [q(1, 4), q(1, 2), q(1, 4)]
        );
    }

    #[test]
    fn barycentric_with_non_unit_weights() {
        // Same triangle and query as above with scaled representatives.
        let a = HomVector::<Rational>::from_i64(&[0, 0], 3, Role::Point).unwrap();
        let b = HomVector::from_i64(&[-2, 0], -2, Role::Point).unwrap();
        let c = HomVector::from_i64(&[0, 5], 5, Role::Point).unwrap();
        let x = HomVector::from_i64(&[2, 1], 4, Role::Point).unwrap();
        assert_eq!(
            barycentric(&a, &b, &c, &x).unwrap(),
            [q(1, 4), q(1, 2), q(1, 4)]
        );
    }

    #[test]
    fn barycentric_degenerate_triangle() {
        let err = barycentric(&pt(&[0, 0]), &pt(&[1, 1]), &pt(&[2, 2]), &pt(&[0, 1])).unwrap_err();
        assert_eq!(err, Error::DegenerateTriangle);
    }

    #[test]
    fn plucker_from_points_examples() {
        let line = plucker_from_points(&pt(&[0, 0, 0]), &pt(&[1, 0, 0])).unwrap();
        assert_eq!(line.omega(), &[r(1), r(0), r(0)]);
        assert_eq!(line.v(), &[r(0), r(0), r(0)]);

        let (x1, x2) = (pt(&[1, 2, 3]), pt(&[-1, 4, 0]));
        let a = plucker_from_points(&x1, &x2).unwrap();
        let b = plucker_from_points(&x2, &x1).unwrap();
        let neg: Vec<Rational> = a.l().row_iter().flatten().map(|v| -v.clone()).collect();
        assert_eq!(b.l().row_iter().flatten().cloned().collect::<Vec<_>>(), neg);
        assert!(a.grassmann_residual().is_zero());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a.l()[(i, j)], -a.l()[(j, i)].clone());
            }
        }

        assert_eq!(
            plucker_from_points(&x1, &x1.scaled(&r(-3)).unwrap()).unwrap_err(),
            Error::CoincidentPoints
        );
    }

    #[test]
    fn plucker_from_planes_examples() {
        let line = plucker_from_planes(&hp(&[0, 0, 1], 0), &hp(&[0, 1, 0], 0)).unwrap();
        for t in [-2, 0, 1, 5] {
            let p = plucker_parametric_point(&line, &r(t)).unwrap();
            assert!(p[1].is_zero() && p[2].is_zero());
        }
        assert_eq!(
            plucker_from_planes(&hp(&[1, 2, 3], 4), &hp(&[2, 4, 6], 8)).unwrap_err(),
            Error::CoincidentPlanes
        );
    }

    #[test]
    fn planes_and_points_give_same_line() {
        // line through (0,0,1) and (1,0,1) = planes z = 1 and y = 0
        let from_pts = plucker_from_points(&pt(&[0, 0, 1]), &pt(&[1, 0, 1])).unwrap();
        let from_planes = plucker_from_planes(&hp(&[0, 0, 1], -1), &hp(&[0, 1, 0], 0)).unwrap();
        assert_eq!(from_pts.omega(), &[r(1), r(0), r(0)]);
        assert_eq!(from_pts.v(), &[r(0), r(1), r(0)]);
        assert_eq!(from_planes.omega(), &[r(-1), r(0), r(0)]);
        assert_eq!(from_planes.v(), &[r(0), r(-1), r(0)]);
        assert!(from_pts.same_line(&from_planes, 0.0));
    }

    #[test]
    fn parametric_point_examples() {
        let x_axis = PluckerLine::from_direction_moment([r(1), r(0), r(0)], [r(0), r(0), r(0)]);
        assert_eq!(
            plucker_parametric_point(&x_axis, &r(2)).unwrap(),
            [r(2), r(0), r(0)]
        );

        let (x1, x2) = (pt(&[1, 2, 3]), pt(&[4, -1, 2]));
        let line = plucker_from_points(&x1, &x2).unwrap();
        let q0 = plucker_parametric_point(&line, &r(0)).unwrap();
        assert!(dot(&q0, line.omega()).is_zero());
        // each generator is q(t*) with t* solved from the direction component
        for x in [&x1, &x2] {
            let e = to_euclidean(x).unwrap();
            let t = (e[0].clone() - q0[0].clone()) / line.omega()[0].clone();
            assert_eq!(plucker_parametric_point(&line, &t).unwrap().to_vec(), e);
        }

        let at_inf = PluckerLine::from_direction_moment([r(0), r(0), r(0)], [r(0), r(0), r(1)]);
        assert_eq!(
            plucker_parametric_point(&at_inf, &r(0)).unwrap_err(),
            Error::LineAtInfinity
        );
    }

    #[test]
    fn dimension_checks() {
        let p2 = pt(&[1, 2]);
        let p3 = pt(&[1, 2, 3]);
        assert!(matches!(
            intersect_lines_2d(&p3, &p3),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            plucker_from_points(&p2, &p2),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            barycentric(&p3, &p3, &p3, &p3),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
