use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what}: {required} exceeds budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u128,
    },

    #[error("ratio undefined: no pairs between the given sets")]
    UndefinedRatio,

    #[error("empty block {0}")]
    EmptyBlock(usize),

    #[error("triple system is not linear: {0:?} and {1:?} share two vertices")]
    NotLinear([usize; 3], [usize; 3]),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn budget(what: &'static str, required: u128, budget: u128) -> Self {
        Error::BudgetExceeded {
            what,
            required,
            budget,
        }
    }
}
