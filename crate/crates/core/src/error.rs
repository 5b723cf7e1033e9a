use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure of a computation or of input validation.
///
/// [`Error::is_precondition`] separates mathematical infeasibility (the input is
/// well formed but a hypothesis fails) from malformed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("map is not a bimonoid homomorphism")]
    NotAHomomorphism,
    #[error("map is not an integral along the homomorphism")]
    NotAnIntegral,
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("structure does not restrict to the subspace: {0}")]
    StructureDoesNotRestrict(String),
    #[error("structure does not descend to the quotient: {0}")]
    StructureDoesNotDescend(String),
    #[error("{0} is not small (no normalized integral)")]
    NotSmall(String),
    #[error("{0} is not cosmall (no normalized cointegral)")]
    NotCosmall(String),
    #[error("not well-decomposable: {0}")]
    NotWellDecomposable(String),
    #[error("not weakly pre-Fredholm: {0}")]
    NotPreFredholm(String),
    #[error("not Fredholm: {0}")]
    NotFredholm(String),
    #[error("square does not commute")]
    SquareNotCommuting,
    #[error("missing integral data: {0}")]
    MissingIntegralData(String),
    #[error("sequence is not exact: {0}")]
    ChainNotExact(String),
    #[error("ill-formed abelian group homomorphism: {0}")]
    IllFormedHom(String),
    #[error("an identity predicted by the theory failed: {0}")]
    IdentityFailed(String),
}

impl Error {
    /// True for failures of mathematical hypotheses rather than of input syntax.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_)
                | Error::InvalidField(_)
                | Error::FieldMismatch(..)
                | Error::ShapeMismatch(_)
                | Error::IllFormedHom(_)
                | Error::IdentityFailed(_)
        )
    }

    /// Stable kebab-case name of the variant, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidField(_) => "invalid-field",
            Error::FieldMismatch(..) => "field-mismatch",
            Error::ShapeMismatch(_) => "shape-mismatch",
            Error::NotIdempotent => "not-idempotent",
            Error::NotAHomomorphism => "not-a-homomorphism",
            Error::NotAnIntegral => "not-an-integral",
            Error::FactorizationFailed(_) => "factorization-failed",
            Error::StructureDoesNotRestrict(_) => "structure-does-not-restrict",
            Error::StructureDoesNotDescend(_) => "structure-does-not-descend",
            Error::NotSmall(_) => "not-small",
            Error::NotCosmall(_) => "not-cosmall",
            Error::NotWellDecomposable(_) => "not-well-decomposable",
            Error::NotPreFredholm(_) => "not-pre-fredholm",
            Error::NotFredholm(_) => "not-fredholm",
            Error::SquareNotCommuting => "square-not-commuting",
            Error::MissingIntegralData(_) => "missing-integral-data",
            Error::ChainNotExact(_) => "chain-not-exact",
            Error::IllFormedHom(_) => "ill-formed-hom",
            Error::IdentityFailed(_) => "identity-failed",
        }
    }
}
