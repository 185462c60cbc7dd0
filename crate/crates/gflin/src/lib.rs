//! Exact linear algebra over prime fields GF(q) and G-module machinery.
//!
//! Everything here is exact modular arithmetic; there is no floating point
//! anywhere in this workspace. GF(2) rows are bit-packed into machine words,
//! other fields store one residue per byte. Both layouts are internal and
//! never leak into file formats.

mod echelon;
mod error;
mod field;
pub mod io;
mod mat;
pub mod meataxe;
mod module;
pub mod poly;

pub use echelon::Echelon;
pub use error::GflinError;
pub use field::FieldSpec;
pub use mat::Mat;
pub use meataxe::{chop, irreducibility, module_iso, Irreducibility};
pub use module::{dual_module, exterior_power, spin, tensor, GModule};

pub type Result<T> = std::result::Result<T, GflinError>;
