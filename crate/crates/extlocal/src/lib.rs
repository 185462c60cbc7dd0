//! Split-extension presentations and affine permutation representations,
//! plus verification of local subgroup structure: orders, elementary
//! abelian and extraspecial checks, isomorphism-type tags, and conjugation
//! action matrices on elementary abelian sections.

mod affine;
mod error;
mod spec;
mod subgroup;

pub use affine::{affine_rep, split_r1, split_r2, AffineRep};
pub use error::ExtError;
pub use spec::{parse_ext, parse_sub, ExtensionSpec, SubgroupSpec};
pub use subgroup::{
    conj_action_matrices, eval_environment, verify_subgroup, CheckLine, SubgroupReport,
};

pub type Result<T> = std::result::Result<T, ExtError>;
