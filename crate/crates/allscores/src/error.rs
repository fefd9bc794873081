use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Structural` signals a broken internal invariant (an algorithm bug, not a
/// user mistake) and is kept separate from usage errors so that callers such
/// as the CLI can map them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// A position argument fell outside `0..=len`.
    #[error("position {pos} out of range 0..={max}")]
    PositionOutOfRange { pos: usize, max: usize },

    /// A symbol was not part of the alphabet the state was built over.
    #[error("symbol {0:?} not in alphabet")]
    SymbolNotInAlphabet(char),

    /// Alphabet construction was given an unusable symbol set.
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    /// An index pair fell outside the matrix encoded by a pivot set.
    #[error("query ({i},{j}) out of range for {kind} with bounds ({n},{m})")]
    QueryOutOfRange {
        kind: &'static str,
        i: usize,
        j: usize,
        n: usize,
        m: usize,
    },

    /// An internal invariant of the pivot encoding was violated.
    #[error("structural invariant violated: {0}")]
    Structural(String),

    /// The requested mutation is not supported by this encoding.
    #[error("unsupported operation: {0}")]
    Capability(String),

    /// A dump or ops file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
