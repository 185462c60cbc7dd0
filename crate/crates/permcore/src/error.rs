use thiserror::Error;

#[derive(Debug, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image sequence is not a bijection")]
    NotBijection,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cap {0} exceeded")]
    CapExceeded(u128),
    #[error("element is not in the group")]
    NotInGroup,
    #[error("empty generating set needs an explicit degree")]
    EmptyGenerators,
    #[error("base verification failed to stabilize after {0} rounds")]
    VerificationLoop(usize),
    #[error("rigid base violated: a residue fixing the base was not trivial")]
    RigidBaseViolation,
    #[error("matrix action error: {0}")]
    Action(String),
}
