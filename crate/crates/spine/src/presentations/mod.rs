//! Free-group words, cyclic presentations and the presentation families.

mod extension;
mod family;
mod word;

pub use extension::{format_xt, rewrite_kernel, shift_extension, TwoGeneratorPresentation, T, X};
pub use family::{build_family, g_word, CyclicPresentation, FamilySpec};
pub use word::{Letter, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("letter sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid family parameters {0}")]
    InvalidFamily(String),
    #[error("no retraction for f = {f}: relator maps to t^{image} in Z_{n}")]
    NoRetraction { f: usize, image: usize, n: usize },
}
