use crate::{Perm, PermError, Result};
use rustc_hash::FxHashSet;
use std::hash::Hash;

/// Minimal group-element interface shared by permutations and matrices.
pub trait GroupElement: Clone + Eq + Hash {
    fn ge_mul(&self, other: &Self) -> Self;
    fn ge_inv(&self) -> Self;
    fn ge_is_identity(&self) -> bool;
}

impl GroupElement for Perm {
    fn ge_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ge_inv(&self) -> Self {
        self.inv()
    }
    fn ge_is_identity(&self) -> bool {
        self.is_identity()
    }
}

/// Invertible matrices form a group under exact modular arithmetic; shape or
/// field mismatches and singular elements are usage errors and panic.
impl GroupElement for gflin::Mat {
    fn ge_mul(&self, other: &Self) -> Self {
        self.mul(other).expect("group elements share one shape")
    }
    fn ge_inv(&self) -> Self {
        self.inverse().expect("group elements are invertible")
    }
    fn ge_is_identity(&self) -> bool {
        self.is_identity()
    }
}

/// Full element list of a small group by product closure; errors past `cap`.
pub fn enumerate_small<E: GroupElement>(gens: &[E], cap: usize) -> Result<Vec<E>> {
    let Some(first) = gens.first() else {
        return Err(PermError::EmptyGenerators);
    };
    let id = first.ge_mul(&first.ge_inv());
    let mut seen: FxHashSet<E> = FxHashSet::default();
    let mut out = vec![id.clone()];
    seen.insert(id);
    let mut head = 0usize;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for g in gens {
            let y = x.ge_mul(g);
            if !seen.contains(&y) {
                if out.len() >= cap {
                    return Err(PermError::CapExceeded(cap as u128));
                }
                seen.insert(y.clone());
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// Elements of the enumerated group commuting with every generator.
pub fn center_small<E: GroupElement>(gens: &[E], cap: usize) -> Result<Vec<E>> {
    let all = enumerate_small(gens, cap)?;
    Ok(all
        .into_iter()
        .filter(|x| gens.iter().all(|g| x.ge_mul(g) == g.ge_mul(x)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PermIo;

    #[test]
    fn enumerate_s3() {
        let gens = vec![
            PermIo::parse("CYC 3\n(1,2)\n").unwrap(),
            PermIo::parse("CYC 3\n(1,2,3)\n").unwrap(),
        ];
        assert_eq!(enumerate_small(&gens, 100).unwrap().len(), 6);
        assert_eq!(center_small(&gens, 100).unwrap().len(), 1);
    }

    #[test]
    fn center_of_abelian_is_whole_group() {
        let gens = vec![PermIo::parse("CYC 6\n(1,2,3,4,5,6)\n").unwrap()];
        assert_eq!(center_small(&gens, 100).unwrap().len(), 6);
    }

    #[test]
    fn cap_exceeded() {
        let gens = vec![
            PermIo::parse("CYC 5\n(1,2)\n").unwrap(),
            PermIo::parse("CYC 5\n(1,2,3,4,5)\n").unwrap(),
        ];
        assert!(matches!(
            enumerate_small(&gens, 100),
            Err(PermError::CapExceeded(_))
        ));
    }
}
