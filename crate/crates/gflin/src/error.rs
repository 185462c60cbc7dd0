use thiserror::Error;

#[derive(Debug, Error)]
pub enum GflinError {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("shape mismatch: {left} vs {right} in {op}")]
    ShapeMismatch {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("entry {0} out of range for GF({1})")]
    EntryRange(u32, u32),
    #[error("exterior power k={k} out of range for dimension {dim}")]
    ExteriorRange { k: usize, dim: usize },
    #[error("generator names differ: {0} vs {1}")]
    GeneratorNames(String, String),
    #[error("duplicate generator name {0}")]
    DuplicateGenerator(String),
    #[error("meataxe inconclusive after {0} attempts")]
    MeataxeInconclusive(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
