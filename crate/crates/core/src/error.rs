use thiserror::Error;

/// Errors raised by constructions and checks over finite groupoid models.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid groupoid presentation: {0}")]
    InvalidGroupoid(String),

    #[error("composition error: {0}")]
    Composition(String),

    #[error("not a functor: {0}")]
    NotFunctor(String),

    #[error("cospan mismatch: {0}")]
    CospanMismatch(String),

    #[error("square does not commute: {0}")]
    NonCommuting(String),

    #[error("size bound exceeded: {what} needs {required}, limit is {limit}")]
    SizeBound {
        what: String,
        required: usize,
        limit: usize,
    },

    #[error("not an isofibration: no lift of {iso} at {point}")]
    NotIsofibration { iso: String, point: String },

    #[error("path-type closure failure: no universe fiber is isomorphic to the path fiber over {over} ({size} elements)")]
    ClosureFailure { over: String, size: usize },

    #[error("not a pullback: {0}")]
    NotPullback(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("missing witness: {0}")]
    MissingWitness(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
