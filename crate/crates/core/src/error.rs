use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix of shape {rows}x{cols} cannot hold {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("right-hand side is not in the range of the matrix")]
    NotInRange,
    #[error("relation is not monotone")]
    NotMonotone,
    #[error("double-cone has an empty positive part")]
    EmptyPositivePart,
    #[error("subspace given as skew part is not skew")]
    NotSkew,
    #[error("generator {index} has a zero duality product")]
    DegenerateGenerator { index: usize },
    #[error("double-cone is not a linear subspace")]
    NotLinear,
    #[error("sequence index must be at least 1")]
    BadIndex,
    #[error("cannot parse {what}")]
    Parse { what: String },
}
