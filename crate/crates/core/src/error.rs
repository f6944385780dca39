use thiserror::Error;

/// Errors produced by the simplex geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("minor of a 1x1 matrix is undefined")]
    DegenerateMinor,

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("trailing principal submatrix is singular")]
    SingularFace,

    #[error("wrong model for this operation: {0}")]
    WrongModel(&'static str),

    #[error("point lies outside the light cone (<x,x> = {0})")]
    OutsideLightCone(f64),

    #[error("point has no valid direction on the sphere (<x,x> = {0})")]
    DegenerateDirection(f64),

    #[error("edge lengths do not describe a realizable simplex: {0}")]
    NotRealizableInput(String),

    #[error("projection is degenerate: signed minor sum vanishes")]
    ProjectionDegenerate,

    #[error("invalid edge lengths: {0}")]
    InvalidEdgeLengths(String),

    #[error("invalid barycentric point: {0}")]
    InvalidPoint(String),

    #[error("invalid curvature: {0}")]
    InvalidCurvature(f64),

    #[error("unknown geometry `{0}`; expected euclidean, hyperbolic, spherical or kappa=<value>")]
    UnknownGeometry(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
