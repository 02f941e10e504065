//! Linear systems solved as outer products of homogeneous hyperplanes.
//!
//! `Ax = b` is lifted to the rows of `[A | -b]`, each read as a hyperplane in
//! homogeneous coordinates. Their outer product `ξ` is the projective
//! solution: `x = ξ_i / ξ_w` when `ξ_w != 0`, a direction at infinity when
//! only `ξ_w` vanishes, and rank deficiency when `ξ = 0`.
//!
//! Everything is generic over [`Scalar`], implemented for `f64` and for
//! arbitrary precision rationals ([`Rational`]).
//!
//! ```
//! use outersolve::{solve_axb, Classification, Matrix};
//!
//! let a = Matrix::<f64>::from_i64_rows(&[&[2, 1], &[1, 3]]).unwrap();
//! let sol = solve_axb(&a, &[3.0, 5.0]).unwrap();
//! assert_eq!(sol.classification(), Classification::Unique);
//! let x = sol.solution().unwrap();
//! assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
//! ```

pub mod cli;
pub mod conditionality;
pub mod det;
pub mod error;
pub mod ga;
pub mod geometry;
pub mod matrix;
pub mod oracle;
pub mod projective;
pub mod scalar;
pub mod solver;

pub use conditionality::{
    eigen_ratio_diagonal, kappa_beta, kappa_gamma, pairwise_angle, AngleExtrema,
    ConditionalityReport,
};
pub use error::{Error, Result};
pub use ga::{
    antisymmetric_part, bilinear_product_matrix, cross3, generalized_cross, inner_product,
    outer_matrix, outer_product_pair, tensor_product, transform_cross_identity_check, wedge2,
    Bivector, GeomProductMatrix, ProjectiveScalar,
};
pub use geometry::{
    barycentric, incidence, intersect_lines_2d, intersect_planes_3, is_incident,
    line_through_points_2d, plane_through_points_3, plucker_from_planes, plucker_from_points,
    plucker_parametric_point, PluckerLine,
};
pub use matrix::Matrix;
pub use projective::{from_euclidean, normalize, to_euclidean, HomVector, Role};
pub use scalar::{Backend, Rational, Scalar};
pub use solver::{
    lift, outer_product_n, solve_axb, solve_homogeneous, solve_lifted, Classification,
    LiftedSystem, Origin, OuterSolution,
};
