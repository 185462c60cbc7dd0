use thiserror::Error;

#[derive(Debug, Error)]
pub enum FpresError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("file parse error at line {line}: {msg}")]
    FileParse { line: usize, msg: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("assignment missing for generator {0}")]
    MissingAssignment(String),
    #[error("coset table incomplete")]
    IncompleteTable,
    #[error("coset limit {0} exceeded")]
    Overflow(usize),
    #[error("relator {index} does not hold: {word}")]
    RelatorFailed { index: usize, word: String },
}
