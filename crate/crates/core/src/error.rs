use thiserror::Error;

/// Coarse classification of [`Error`], used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Resource,
    Invariant,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range user input.
    #[error("{0}")]
    Input(String),

    /// A table cell or row could not be ingested. `row` is the 1-based line
    /// number in the source text, `column` the 1-based field index.
    #[error("row {row}{}: {message}", column.map(|c| format!(", column {c}")).unwrap_or_default())]
    Table {
        row: usize,
        column: Option<usize>,
        message: String,
    },

    /// An exhaustive computation was refused because its input is too large.
    #[error("{0}")]
    Resource(String),

    /// Two routes that must agree did not. Always an implementation bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Input(_) | Error::Table { .. } => ErrorKind::Input,
            Error::Resource(_) => ErrorKind::Resource,
            Error::Invariant(_) => ErrorKind::Invariant,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
