use metrilie::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 1;
    pub const AXIOM: i32 = 2;
    pub const ABELIAN: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] CoreError),

    #[error("malformed document: {0}")]
    Document(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown example {0:?}; run `metrilie examples list`")]
    UnknownExample(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::JacobiViolation { .. }
                | CoreError::MetricNotSymmetric { .. }
                | CoreError::MetricNotPositiveDefinite { .. }
                | CoreError::InvalidComplexStructure
                | CoreError::NoComplexStructureOnBlock { .. } => exit::AXIOM,
                CoreError::AbelianFactorPresent | CoreError::AbelianBlock { .. } => exit::ABELIAN,
                CoreError::InternalAssertion(_) | CoreError::GenericityFailure { .. } => exit::INTERNAL,
                _ => exit::PARSE,
            },
            _ => exit::PARSE,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => match e {
                CoreError::Parse(_) => "parse",
                CoreError::DimensionMismatch { .. } => "dimension_mismatch",
                CoreError::DiagonalBracket { .. } => "diagonal_bracket",
                CoreError::UnorderedBracket { .. } => "unordered_bracket",
                CoreError::DuplicateBracket { .. } => "duplicate_bracket",
                CoreError::IndexOutOfRange { .. } => "index_out_of_range",
                CoreError::JacobiViolation { .. } => "jacobi_violation",
                CoreError::MetricNotSymmetric { .. } => "metric_not_symmetric",
                CoreError::MetricNotPositiveDefinite { .. } => "metric_not_positive_definite",
                CoreError::NotASubalgebra { .. } => "not_a_subalgebra",
                CoreError::NotAProjection => "not_a_projection",
                CoreError::AbelianFactorPresent => "abelian_factor_present",
                CoreError::GenericityFailure { .. } => "genericity_failure",
                CoreError::InvalidComplexStructure => "invalid_complex_structure",
                CoreError::IrrationalNormalizer(_) => "irrational_normalizer",
                CoreError::AbelianBlock { .. } => "abelian_block",
                CoreError::InvalidFactorCount { .. } => "invalid_factor_count",
                CoreError::NoComplexStructureOnBlock { .. } => "no_complex_structure_on_block",
                CoreError::InternalAssertion(_) => "internal_assertion",
            },
            CliError::Document(_) => "malformed_document",
            CliError::Io { .. } => "io",
            CliError::UnknownExample(_) => "unknown_example",
            CliError::Usage(_) => "usage",
        }
    }
}

impl CliError {
    /// Human-readable message with basis indices shifted to the 1-based
    /// convention of documents.
    pub fn message(&self) -> String {
        let CliError::Core(e) = self else { return self.to_string() };
        match e {
            CoreError::JacobiViolation { triple: (a, b, c), residual } => format!(
                "Jacobi identity fails on basis triple ({}, {}, {}) with residual {residual}",
                a + 1,
                b + 1,
                c + 1
            ),
            CoreError::DiagonalBracket { i } => format!("bracket [X{0},X{0}] may not be specified", i + 1),
            CoreError::UnorderedBracket { i, j } => format!("bracket entry ({},{}) must satisfy i < j", i + 1, j + 1),
            CoreError::DuplicateBracket { i, j } => format!("duplicate bracket entry ({},{})", i + 1, j + 1),
            CoreError::MetricNotSymmetric { i, j } => format!("Gram matrix is not symmetric at ({},{})", i + 1, j + 1),
            CoreError::AbelianBlock { index } => format!("block {} is abelian", index + 1),
            CoreError::NoComplexStructureOnBlock { index } => {
                format!("block {} admits no orthogonal bi-invariant complex structure", index + 1)
            }
            other => other.to_string(),
        }
    }
}
