use thiserror::Error;

use crate::laurent::LaurentPoly;

/// Errors raised by the algebra and the workbench.
#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("unsupported datum `{0}` (supported: A1-sc, A2-sc, C2-sc, G2-sc, GL2, GL3)")]
    UnsupportedDatum(String),

    #[error("datum mismatch: `{left}` vs `{right}`")]
    DatumMismatch { left: String, right: String },

    #[error("coweight {0} is not dominant")]
    NotDominant(String),

    #[error("coweight has {got} coordinates, datum expects {expected}")]
    Dimension { expected: usize, got: usize },

    #[error("inexact division, remainder {remainder}")]
    InexactDivision { remainder: LaurentPoly },

    #[error("odd power of v in {0}; cannot specialize at q")]
    OddExponent(LaurentPoly),

    #[error("cannot evaluate {0} at q = 0: negative powers present")]
    PoleAtZero(LaurentPoly),

    #[error("length {length} exceeds cutoff {cutoff}")]
    CutoffExceeded { length: usize, cutoff: usize },

    #[error("element is not bi-invariant: {0}")]
    NotBiInvariant(String),

    #[error("normalization convention violated: {0}")]
    Convention(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("elements lie in different Omega-components ({0} vs {1})")]
    ComponentMismatch(i32, i32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = HeckeError> = std::result::Result<T, E>;
