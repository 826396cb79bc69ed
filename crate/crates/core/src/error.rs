use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    MixedField,
    #[error("all polynomials are zero")]
    ZeroPolynomial,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point lies on the boundary (torsion degree {torsion}): {reason}")]
    Boundary { torsion: usize, reason: String },
    #[error("point is interior (torsion degree 0); it has no gcd factorization")]
    Interior,
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    /// A theorem-level identity failed; this is a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
