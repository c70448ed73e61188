//! Error type shared by every operation in the crate.

use std::fmt;

/// Everything that can go wrong across parsing, analysis and search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed textual input, with a 1-based line number.
    Parse { line: usize, msg: String },
    /// An operation received an automaton of the wrong acceptance kind.
    WrongKind { expected: &'static str, found: &'static str },
    /// Two operands must share one alphabet and do not.
    AlphabetMismatch,
    /// A deterministic automaton was required.
    NondeterministicInput,
    /// The input is not semantically deterministic but the operation demands it.
    NotSemanticallyDeterministic,
    /// The value exists but no implemented route can compute it.
    Unsupported(String),
    /// A state-space construction outgrew the configured `max_states`.
    ResourceLimit(String),
    /// A search ran out of its candidate budget; the answer is unknown,
    /// which is deliberately distinct from `false`.
    BudgetExceeded(String),
    /// A precondition on the input data does not hold.
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::WrongKind { expected, found } => {
                write!(f, "wrong acceptance kind: expected {expected}, found {found}")
            }
            Error::AlphabetMismatch => write!(f, "operands use different alphabets"),
            Error::NondeterministicInput => write!(f, "operation requires a deterministic automaton"),
            Error::NotSemanticallyDeterministic => {
                write!(f, "input is not semantically deterministic")
            }
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::ResourceLimit(what) => write!(f, "state budget exceeded while {what}"),
            Error::BudgetExceeded(what) => write!(f, "search budget exceeded while {what}"),
            Error::InvalidInput(what) => write!(f, "invalid input: {what}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
