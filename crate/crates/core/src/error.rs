use std::path::PathBuf;

use crate::filters::DerivationalFlag;
use crate::word_code::TemplateKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("inventory line {line}: {message}")]
    Inventory { line: usize, message: String },

    #[error("unknown phoneme {0}")]
    UnknownPhoneme(String),

    #[error("{file} line {line}: {message}")]
    SideFile {
        file: &'static str,
        line: usize,
        message: String,
    },

    #[error("word {word:?} does not fit the {template} template: {constraint}")]
    TemplateMismatch {
        word: String,
        template: TemplateKind,
        constraint: String,
    },

    #[error("nucleus must hold 1 or 2 vowels, found {0}")]
    Nucleus(String),

    #[error("cannot compare a {0} code with a {1} code")]
    KindMismatch(TemplateKind, TemplateKind),

    #[error("need at least two codes, got {0}")]
    TooFewCodes(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("{} unresolved derivational pair(s)", .0.len())]
    UnresolvedFlags(Vec<DerivationalFlag>),

    #[error("invalid hex input: {0}")]
    Hex(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
