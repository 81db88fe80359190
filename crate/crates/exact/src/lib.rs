//! Exact linear algebra over the rationals: sparse maps, subspaces, ranks,
//! kernels, characteristic polynomials and rational spectra.

mod dense;
mod echelon;
mod matrix;
mod poly;
mod scalar;
mod spectrum;
mod subspace;
mod vector;

pub use dense::DenseMatrix;
pub use echelon::{Echelon, PivotSide};
pub use matrix::{SerialMatrix, SparseMap};
pub use poly::Poly;
pub use scalar::{q, Scalar};
pub use spectrum::{Eigenvalue, Spectrum};
pub use subspace::Subspace;
pub use vector::{Accumulator, SparseVec};

#[derive(Debug, thiserror::Error)]
pub enum ExactError {
    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimensionMismatch { context: &'static str, left: usize, right: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("image of domain basis vector {index} leaves the target subspace")]
    ImageEscapes { index: usize, witness: SparseVec },
    #[error("spectrum does not split over Q: residual factor of degree {degree}: {residual}")]
    NonSplitSpectrum { degree: usize, residual: Poly },
    #[error("subspace is not contained in the outer space")]
    NotContained,
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
