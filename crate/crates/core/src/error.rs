use thiserror::Error;

use crate::word::Letter;

/// Syntax errors for words and identities. Positions are byte offsets into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input (use \"1\" for the empty word)")]
    Empty,
    #[error("unexpected character {found:?} at position {position}")]
    Unexpected { position: usize, found: char },
    #[error("zero exponent at position {position}")]
    ZeroExponent { position: usize },
    #[error("missing exponent after '^' at position {position}")]
    MissingExponent { position: usize },
    #[error("identity must have the form \"<word> = <word>\"")]
    MissingEquals,
}

impl ParseError {
    pub(crate) fn shifted(self, by: usize) -> Self {
        match self {
            ParseError::Unexpected { position, found } => ParseError::Unexpected {
                position: position + by,
                found,
            },
            ParseError::ZeroExponent { position } => ParseError::ZeroExponent {
                position: position + by,
            },
            ParseError::MissingExponent { position } => ParseError::MissingExponent {
                position: position + by,
            },
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("letter {letter} has {occurrences} occurrence(s); occurrence {index} requested")]
    OccurrenceOutOfRange {
        letter: Letter,
        index: usize,
        occurrences: usize,
    },
    #[error("letter {0} does not occur in the word")]
    AbsentLetter(Letter),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("unknown identity code {0:?}")]
    UnknownIdentity(String),
    #[error("unknown variety {0:?}")]
    UnknownVariety(String),
    #[error("unknown monoid {0:?}")]
    UnknownMonoid(String),
    #[error("no exact decider for {0}")]
    NoExactDecider(String),
    #[error("identity has {letters} letters; the brute-force limit is {limit}")]
    TooManyLetters { letters: usize, limit: usize },
    #[error("{0} and {1} are not adjacent in the chain")]
    NotAdjacent(String, String),
    #[error("monoid table is invalid: {0}")]
    InvalidTable(String),
    #[error("rewrite step does not match: {0}")]
    StepMismatch(String),
    #[error("deduction file line {line}: {message}")]
    DeductionSyntax { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
