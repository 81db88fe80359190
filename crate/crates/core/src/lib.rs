//! Super vector spaces, the differentials d, ∂, P, Q of the double Koszul
//! complex, gl(m|n)-module constructions and their characters.

pub mod characters;
pub mod glrep;
pub mod koszul;
pub mod superspace;

pub use dkoszul_exact as exact;

use dkoszul_exact::ExactError;

#[derive(Debug, thiserror::Error)]
pub enum CoreError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid spot: {0}")]
    InvalidSpot(String),
    #[error("subspace is not stable under {generator}: {context}")]
    NotStable { generator: String, context: String },
    #[error("operator is not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("direct sum check failed: {0}")]
    NotDirect(String),
    #[error("dimension {dim} exceeds bound {bound}")]
    TooLarge { dim: usize, bound: usize },
    #[error("weight {0} is not typical")]
    NotTypical(String),
    #[error("weight {0} is not atypical")]
    NotAtypical(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("non-integral exponent in {0}")]
    NonIntegral(String),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
