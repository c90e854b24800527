use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("triangle vertices are collinear")]
    DegenerateTriangle,
    #[error("the three reference points are collinear")]
    CollinearTriple,
    #[error("points are not pairwise distinct")]
    DuplicatePoints,
    #[error("inconsistent point dimensions")]
    DimensionMismatch,
    #[error("operation supports ambient dimension 2 or 3 only, got {0}")]
    UnsupportedDimension(usize),
    #[error("map is not total on the source or exceeds the target range")]
    InvalidMap,
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("configuration is not in V5 form")]
    InvalidV5,
    #[error("cross-operator base point lies in ch(X) but not in X")]
    CrossPrecondition,
    #[error("configuration is not complete")]
    NotComplete,
    #[error("size {size} exceeds guard {guard}")]
    GuardExceeded { size: usize, guard: usize },
    #[error("planar classification requires affine dimension <= 2")]
    ClassifierDimension,
    #[error("lattice cannot be enumerated: the configuration is not finitely completable")]
    InfiniteLattice,
}
