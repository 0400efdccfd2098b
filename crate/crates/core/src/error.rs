use alloc::string::String;

use crate::scalar::Scalar;

/// Everything that can go wrong in the core library.
///
/// Basis indices carried by variants are zero-based.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("bracket [X{i},X{i}] may not be specified")]
    DiagonalBracket { i: usize },

    #[error("bracket entry ({i},{j}) must satisfy i < j")]
    UnorderedBracket { i: usize, j: usize },

    #[error("duplicate bracket entry ({i},{j})")]
    DuplicateBracket { i: usize, j: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("Jacobi identity fails on basis triple {triple:?} with residual {residual}")]
    JacobiViolation {
        triple: (usize, usize, usize),
        residual: Scalar,
    },

    #[error("Gram matrix is not symmetric at ({i},{j})")]
    MetricNotSymmetric { i: usize, j: usize },

    #[error("Gram matrix is not positive definite: leading minor {minor} is not positive")]
    MetricNotPositiveDefinite { minor: usize },

    #[error("subspace is not closed under the bracket: basis pair ({i},{j}) escapes")]
    NotASubalgebra { i: usize, j: usize },

    #[error("operator is not an orthogonal projection")]
    NotAProjection,

    #[error("algebra has a non-zero abelian factor; its orthogonal decomposition is not unique")]
    AbelianFactorPresent,

    #[error("no separating element of the symmetric centroid found after {attempts} samples")]
    GenericityFailure { attempts: usize },

    #[error("operator is not an orthogonal bi-invariant complex structure")]
    InvalidComplexStructure,

    #[error("normalizer sqrt({0}) is irrational; use the numeric backend")]
    IrrationalNormalizer(Scalar),

    #[error("block {index} is abelian")]
    AbelianBlock { index: usize },

    #[error("requested {l} factors but there are {k} blocks")]
    InvalidFactorCount { l: usize, k: usize },

    #[error("block {index} admits no orthogonal bi-invariant complex structure")]
    NoComplexStructureOnBlock { index: usize },

    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
