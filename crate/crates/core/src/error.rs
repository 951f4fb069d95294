use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("membership {value} at index {index} is outside [0, 1]")]
    MembershipOutOfRange { index: usize, value: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("operands are defined over different universes")]
    UniverseMismatch,

    #[error("invalid relation entry ({row}, {col}): {reason}")]
    InvalidRelation {
        row: usize,
        col: usize,
        reason: &'static str,
    },

    #[error("missing WordNet file: {0}")]
    MissingWordnetFile(String),

    #[error("{file}:{line}: {reason}")]
    Parse {
        file: String,
        line: usize,
        reason: String,
    },

    #[error("synsets share no common ancestor")]
    NoCommonAncestor,

    #[error("no rule fired: aggregate output has zero mass")]
    ZeroAggregate,

    #[error("unknown variable or term `{0}`")]
    UnknownVariableOrTerm(String),

    #[error("invalid FIS configuration: {0}")]
    InvalidConfig(String),

    #[error("syntax error at {line}:{column}: expected {expected}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
    },

    #[error("rule {rule} references unknown term `{name}` (line {line}, column {column})")]
    UnknownTerm {
        rule: usize,
        name: String,
        line: usize,
        column: usize,
    },

    #[error("duplicate name `{name}` (line {line}, column {column})")]
    DuplicateName {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("domain error at {line}:{column}: {reason}")]
    Domain {
        reason: String,
        line: usize,
        column: usize,
    },

    #[error("invalid structure at {line}:{column}: {reason}")]
    Structure {
        reason: String,
        line: usize,
        column: usize,
    },

    #[error("sentence has no content tokens: {0:?}")]
    EmptySentence(String),

    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("line {line}: {reason}")]
    RowError { line: usize, reason: String },

    #[error("empty input")]
    EmptyInput,

    #[error("degenerate input: all values identical")]
    DegenerateInput,

    #[error("need {needed} records, only {available} available")]
    InsufficientRecords { needed: usize, available: usize },

    #[error("grid produced no valid candidate")]
    EmptyGrid,

    #[error("invalid grid spec: {0}")]
    GridSpec(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Stable variant name, used as the `error` field of CLI JSON output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MembershipOutOfRange { .. } => "MembershipOutOfRange",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::UniverseMismatch => "UniverseMismatch",
            Error::InvalidRelation { .. } => "InvalidRelation",
            Error::MissingWordnetFile(_) => "MissingWordnetFile",
            Error::Parse { .. } => "ParseError",
            Error::NoCommonAncestor => "NoCommonAncestor",
            Error::ZeroAggregate => "ZeroAggregate",
            Error::UnknownVariableOrTerm(_) => "UnknownVariableOrTerm",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownTerm { .. } => "UnknownTerm",
            Error::DuplicateName { .. } => "DuplicateName",
            Error::Domain { .. } => "DomainError",
            Error::Structure { .. } => "StructureError",
            Error::EmptySentence(_) => "EmptySentence",
            Error::FileNotFound(_) => "FileNotFound",
            Error::MissingColumn(_) => "MissingColumn",
            Error::RowError { .. } => "RowError",
            Error::EmptyInput => "EmptyInput",
            Error::DegenerateInput => "DegenerateInput",
            Error::InsufficientRecords { .. } => "InsufficientRecords",
            Error::EmptyGrid => "EmptyGrid",
            Error::GridSpec(_) => "GridSpecError",
            Error::Io { .. } => "IoError",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        let path = path.into();
        if source.kind() == std::io::ErrorKind::NotFound {
            Error::FileNotFound(path)
        } else {
            Error::Io { path, source }
        }
    }
}
