use std::fmt;

use thiserror::Error;

use crate::element::Element;
use crate::report::EnumerationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Boxed error returned by a [`Sink`](crate::report::Sink).
pub type SinkError = Box<dyn std::error::Error + Send + Sync>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} is outside the ground set 1..={size}")]
    ElementOutOfRange { element: Element, size: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no candidate: the extension set is empty")]
    NoCandidate,

    #[error("{what} has {size} elements, above the exhaustive guard of {guard}")]
    TooLarge {
        what: &'static str,
        size: usize,
        guard: usize,
    },

    #[error("system `{name}` is declared {class}, but this engine needs a commutable system")]
    NotCommutable { name: String, class: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("format error: {0}")]
    Format(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("sink failed after {} solutions: {source}", .partial.solution_count)]
    Sink {
        source: SinkError,
        partial: Box<EnumerationReport>,
    },
}

impl Error {
    pub(crate) fn precondition(msg: impl fmt::Display) -> Self {
        Error::Precondition(msg.to_string())
    }

    pub(crate) fn parse(line: usize, msg: impl fmt::Display) -> Self {
        Error::Parse {
            line,
            message: msg.to_string(),
        }
    }
}
