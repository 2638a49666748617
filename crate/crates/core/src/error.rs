use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown codepoint U+{:04X}", u32::from(*.0))]
    UnknownCodepoint(char),

    #[error("variant pair (U+{:04X}, U+{:04X}) references a character outside the store", u32::from(*.0), u32::from(*.1))]
    UnknownVariantPair(char, char),

    #[error("unknown class id {0}")]
    UnknownClass(u32),

    #[error("{0}: empty input")]
    Empty(&'static str),

    #[error("stroke {index} has coincident endpoints")]
    DegenerateStroke { index: usize },

    #[error("graph contains a cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),

    #[error("invalid reading: {0}")]
    InvalidReading(String),

    #[error("cannot compare readings of different languages ({0} vs {1})")]
    LanguageMismatch(&'static str, &'static str),

    #[error("syllable {0:?} is not covered by the feature table")]
    UnknownSyllable(String),

    #[error("no edge has a finite phonetic distance for {0}")]
    NoFiniteDistance(&'static str),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("classification needs at least two categories")]
    SingleCategory,

    #[error("category {label:?} has {size} examples, fewer than {folds} folds")]
    CategoryTooSmall { label: String, size: usize, folds: usize },

    #[error("feature index {index} outside model dimension {dim}")]
    DimensionMismatch { index: usize, dim: usize },

    #[error("empty vocabulary: no class reaches min_count {0}")]
    EmptyVocabulary(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), line, msg: msg.into() }
    }

    /// True for failures caused by unreadable or malformed input files.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Io { .. } | Error::Parse { .. })
    }
}
