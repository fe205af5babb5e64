use thiserror::Error;

use crate::artheory::MembershipCertificate;
use crate::exactlin::LinalgError;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error(
        "quiver is not interval-finite: the core contains a directed cycle through `{0}`, \
         giving infinitely many paths from `{0}` to itself"
    )]
    CyclicCore(String),

    #[error("quiver is not connected")]
    Disconnected,

    #[error("objects live over different quivers")]
    QuiverMismatch,

    #[error("objects live over different fields")]
    FieldMismatch,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error(
        "field F_{p} is too small for the trace-form radical of an algebra of dimension {dim}; \
         rerun with `--field QQ` or a larger prime"
    )]
    FieldTooSmall { p: u32, dim: usize },

    #[error("cannot certify the decomposition over QQ: {0}")]
    Undecided(String),

    #[error("object is not in C_r: {0}")]
    NotInCr(Box<MembershipCertificate>),

    #[error("object is not in C_l: {0}")]
    NotInCl(Box<MembershipCertificate>),

    #[error("IsProjective: the object is projective")]
    IsProjective,

    #[error("IsInjective: the object is injective")]
    IsInjective,

    #[error("NotIndecomposable: the object has {0} indecomposable summands")]
    NotIndecomposable(usize),

    #[error("NotFiniteDimensional: {0}")]
    NotFiniteDimensional(String),

    #[error("sequence is not exact: {0}")]
    NonExact(String),

    #[error("invalid extension coordinates: {0}")]
    InvalidCoordinates(String),

    #[error("morphism endpoints do not match: {0}")]
    EndpointMismatch(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::DuplicateName(_)
            | Error::UnknownVertex(_)
            | Error::UnknownArrow(_)
            | Error::CyclicCore(_)
            | Error::Shape(_)
            | Error::Linalg(LinalgError::BadScalar(_))
            | Error::Linalg(LinalgError::BadField(_))
            | Error::Linalg(LinalgError::NotPrime(_)) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
