use thiserror::Error;

/// Failures raised by the library operations.
///
/// Degenerate *solutions* (rank deficiency, solutions at infinity) are
/// reported through [`crate::solver::Classification`], not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the zero homogeneous vector does not denote a projective element")]
    ZeroVector,

    #[error("projective element lies at infinity and has no Euclidean image")]
    AtInfinity,

    #[error("transformation matrix is singular")]
    SingularTransform,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("points coincide, no unique line through them")]
    CoincidentPoints,

    #[error("points are collinear, no unique plane through them")]
    CollinearPoints,

    #[error("planes coincide, no unique line of intersection")]
    CoincidentPlanes,

    #[error("elements do not meet in a unique point")]
    RankDeficient,

    #[error("triangle vertices are collinear")]
    DegenerateTriangle,

    #[error("line lies at infinity (zero direction)")]
    LineAtInfinity,

    #[error("row {0} is the zero vector")]
    ZeroRow(usize),

    #[error("at least two rows are required, found {0}")]
    TooFewRows(usize),

    #[error("diagonal entry {0} is zero")]
    ZeroDiagonal(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
