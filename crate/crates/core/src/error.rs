use thiserror::Error;

use crate::complex::Face;

/// Everything that can go wrong in the workbench.
///
/// Variants split into input problems (bad files, faces outside the complex,
/// malformed degrees) and internal assertions: a violated invariant or a
/// disagreement between two routes that must agree. The latter always means
/// a bug in this crate, and [`Error::exit_code`] reports them separately.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is outside the ambient range 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} is not covered by any facet")]
    UncoveredVertex(usize),

    #[error("at most {max} ambient vertices are supported, got {n}")]
    TooManyVertices { n: usize, max: usize },

    #[error("face {0} is not in the complex")]
    NotAFace(Face),

    #[error("exhaustive enumeration is capped at {cap} vertices, asked for {n}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unknown field {0:?} (expected q, gf2, gf3, ... )")]
    UnknownField(String),

    #[error("multidegree {0:?} is not squarefree")]
    NotSquarefree(Vec<u32>),

    #[error("multidegree has {got} entries, complex has {n} vertices")]
    DegreeLength { got: usize, n: usize },

    #[error("{0} is not a subcomplex of the underlying complex")]
    NotSubcomplex(Face),

    #[error("decomposition probe refused: {reason}")]
    ProbeRefused {
        reason: String,
        face: Option<Face>,
        degree: Option<i64>,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("theorem violated: {0}")]
    TheoremViolation(String),
}

impl Error {
    /// Process exit code: 1 for input errors, 2 for internal assertions.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) | Error::TheoremViolation(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
