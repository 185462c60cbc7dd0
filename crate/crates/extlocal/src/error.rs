use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExtError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dimension mismatch: module dim {0}, presentation names {1}")]
    DimensionMismatch(usize, usize),
    #[error("no affine action side satisfies the extension relators")]
    NoConsistentSide,
    #[error("conjugate of a basis element left the spanned section")]
    NormalizationViolation,
    #[error("word error: {0}")]
    Word(#[from] fpres::FpresError),
    #[error("permutation error: {0}")]
    Perm(#[from] permcore::PermError),
    #[error("matrix error: {0}")]
    Mat(#[from] gflin::GflinError),
    #[error("enumeration cap {0} exceeded")]
    CapExceeded(usize),
    #[error("unknown isomorphism tag {0}")]
    UnknownTag(String),
}
