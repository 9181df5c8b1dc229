use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} does not belong to {term}")]
    ShapeMismatch { term: String, element: String },

    #[error("order {0} is empty")]
    EmptyOrder(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("cannot subtract {beta} from the smaller ordinal {gamma}")]
    BetaExceedsGamma { gamma: String, beta: String },

    #[error("invalid position {position} for exponent {exponent}")]
    InvalidPosition { position: String, exponent: String },

    #[error("exponentials do not share base, point and exponent")]
    IncompatibleExponentials,

    #[error("base {0} is not discrete and unbounded")]
    UnsupportedBase(String),

    #[error("exponent {0} is not a sum")]
    ExponentNotSum(String),

    #[error("exponent {0} is not a product")]
    ExponentNotProd(String),

    #[error("exponent {0} has a least element")]
    ExponentHasLeast(String),

    #[error("base {0} is a single point")]
    DegenerateBase(String),

    #[error("{0} is not discrete and unbounded")]
    NotDiscreteUnbounded(String),

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("{0} is not in the translation family")]
    UnsupportedFamily(String),

    #[error("elements are not pairwise distinct")]
    NotDistinct,

    #[error("map is not a cyclic automorphism: {0}")]
    NotAutomorphism(String),

    #[error("automorphism does not send a to b: {0}")]
    PointMismatch(String),

    #[error("membership of {element} undecided after {bound} iterations")]
    SearchBoundExceeded { element: String, bound: usize },

    #[error("{0} is too large for brute force")]
    TooLarge(u64),

    #[error("element lies on side {found} but side {expected} was requested")]
    SideMismatch { expected: u8, found: u8 },

    #[error("bad stage: {0}")]
    BadStage(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 2 for malformed input, 3 for inputs outside the
    /// supported fragment, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            Syntax { .. }
            | ShapeMismatch { .. }
            | InvalidPosition { .. }
            | EmptyOrder(_)
            | BadStage(_)
            | NotDistinct
            | PointMismatch(_)
            | SideMismatch { .. }
            | OutOfRange(_)
            | IncompatibleExponentials => 2,
            Unsupported(_)
            | UnsupportedBase(_)
            | UnsupportedFamily(_)
            | ExponentNotSum(_)
            | ExponentNotProd(_)
            | ExponentHasLeast(_)
            | DegenerateBase(_)
            | NotDiscreteUnbounded(_)
            | HypothesisFailed(_)
            | TooLarge(_)
            | SearchBoundExceeded { .. }
            | BetaExceedsGamma { .. } => 3,
            NotAutomorphism(_) | InternalInvariantViolation(_) => 1,
        }
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            position,
            message: message.into(),
        }
    }
}
