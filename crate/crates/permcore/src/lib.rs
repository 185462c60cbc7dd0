//! Permutations, orbits, base-and-strong-generating-set construction,
//! order and membership, normal closures, conjugacy class orbits, and
//! conversion of matrix actions to permutation actions.
//!
//! BSGS construction is randomized but every structure is deterministically
//! verified (all Schreier generators sift to the identity) before it is
//! exposed; no Monte Carlo answer escapes this crate.

mod action;
mod bsgs;
mod classorbit;
mod error;
mod perm;
mod smallgrp;

pub use action::{
    all_vectors, joint_invariant_one_spaces, normalize_projective, perms_from_matrix_action,
    projective_orbit, vector_orbit, MatrixAction,
};
pub use bsgs::{derived_subgroup, normal_closure, schreier_sims, Bsgs, BsgsOptions};
pub use classorbit::{class_orbit_elements, class_orbit_perm, ClassOrbit};
pub use error::PermError;
pub use perm::{Perm, PermIo};
pub use smallgrp::{center_small, enumerate_small, GroupElement};

pub type Result<T> = std::result::Result<T, PermError>;

/// Orbit of `start` under the generators, with a Schreier vector: for each
/// orbit position > 0 the pair (generator index, parent position).
pub fn orbit(gens: &[Perm], start: u32) -> (Vec<u32>, Vec<(u32, u32)>) {
    let degree = gens.first().map_or(start as usize + 1, |g| g.degree());
    let mut pos: Vec<i64> = vec![-1; degree];
    let mut orbit = vec![start];
    let mut sv = vec![(u32::MAX, u32::MAX)];
    pos[start as usize] = 0;
    let mut head = 0;
    while head < orbit.len() {
        let p = orbit[head];
        for (gi, g) in gens.iter().enumerate() {
            let q = g.apply(p);
            if pos[q as usize] < 0 {
                pos[q as usize] = orbit.len() as i64;
                orbit.push(q);
                sv.push((gi as u32, head as u32));
            }
        }
        head += 1;
    }
    (orbit, sv)
}

/// Reconstruct the transversal word implied by a Schreier vector: generator
/// indices mapping the orbit root to `orbit[pos]`, in application order.
pub fn transversal_word(sv: &[(u32, u32)], mut pos: usize) -> Vec<u32> {
    let mut out = Vec::new();
    while pos != 0 {
        let (g, parent) = sv[pos];
        out.push(g);
        pos = parent as usize;
    }
    out.reverse();
    out
}
