use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("plane is not Lagrangian: the symplectic form does not vanish on it")]
    NotIsotropic,
    #[error("matrix does not preserve the symplectic form")]
    NotSymplectic,
    #[error("matrix is singular")]
    Singular,
    #[error("Lagrangian planes are not transverse")]
    NotTransverse,
    #[error("Maslov form is degenerate for this triple")]
    DegenerateMaslovForm,
    #[error("polygon needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("consecutive vertices {0} and {1} are not incident")]
    NotLegendrian(usize, usize),
    #[error("vertices {0}, {1}, {2} are linearly dependent")]
    DegenerateCorner(usize, usize, usize),
    #[error("polygon is not transverse")]
    NotTransversePolygon,
    #[error("polygon is not generic: some non-adjacent vertex pair is incident")]
    NotGeneric,
    #[error("polygon closes with sign +1, so it lifts to a loop in the 3-sphere")]
    ContractiblePolygon,
    #[error("flag reconstruction needs an even vertex count, got {0}")]
    OddVertexCount(usize),
    #[error("segment pair is degenerate: both segments pass through a common line")]
    SegmentPairDegenerate,
    #[error("oriented intersection is undefined: subspaces do not span the whole space")]
    BadIntersection,
    #[error("matrix must have determinant 1")]
    NotUnimodular,
    #[error("circles are tangent, Maslov index is undefined")]
    TangentCircles,
    #[error("need at least {0} flags, got {1}")]
    TupleTooShort(usize, usize),
    #[error("positivity parameters must be strictly positive")]
    NotPositiveParam,
    #[error("unipotent parameters are outside the positive semigroup")]
    NotInSemigroup,
    #[error("cannot parse rational number from {0:?}")]
    BadRational(String),
    #[error("parameter list is invalid for this operation")]
    BadParameterList,
    #[error("scene cannot be rendered with the available chart moves")]
    Unrenderable,
}
