//! Words and finitely presented groups: the relator grammar, word
//! evaluation, relator checking, Todd-Coxeter coset enumeration, and
//! coset-table-to-permutation conversion.

mod error;
mod io;
mod tc;
mod word;

pub use error::FpresError;
pub use io::{parse_presentation, print_presentation};
pub use tc::{coset_action, todd_coxeter, CosetTable, TcOptions, TcOutcome, TcStrategy};
pub use word::{evaluate, relators_hold, Alphabet, Presentation, RelatorFailure, Word};

pub type Result<T> = std::result::Result<T, FpresError>;
