use thiserror::Error;

/// Errors raised by the engine.
///
/// Parsing errors carry a byte offset into the text that was parsed (and a
/// line number when they come from a presentation file).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{name}` has arity {expected} but was given {found} inputs")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("term is not multilinear: {0}")]
    NotMultilinear(String),
    #[error("summands have different arities ({0} and {1})")]
    MixedArity(usize, usize),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("inner series has a nonzero constant term")]
    NonzeroInnerConstant,
    #[error("series is not reversible (needs a_0 = 0 and a_1 != 0)")]
    NotReversible,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("input index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("construction failed at element {index}: {reason}")]
    ConstructionFailed { index: usize, reason: String },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Self {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }

    /// True for `BudgetExceeded`, looking through line annotations.
    pub fn is_budget(&self) -> bool {
        match self {
            Error::BudgetExceeded(_) => true,
            Error::AtLine { source, .. } => source.is_budget(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
