//! Conjugacy class sizes by breadth-first search over generator conjugation.

use crate::{GroupElement, Perm, Result};
use rustc_hash::FxHashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassOrbit {
    Exact(usize),
    /// more than `cap` elements reached; not a failure
    CapExceeded(usize),
}

/// Exact class size for hashable elements (matrices, small-degree perms);
/// every element is stored, equality is structural.
pub fn class_orbit_elements<E: GroupElement>(gens: &[E], x: &E, cap: usize) -> ClassOrbit {
    let ginv: Vec<E> = gens.iter().map(GroupElement::ge_inv).collect();
    let mut seen: std::collections::HashSet<E> = Default::default();
    seen.insert(x.clone());
    let mut queue = vec![x.clone()];
    while let Some(cur) = queue.pop() {
        for (g, gi) in gens.iter().zip(&ginv) {
            let y = gi.ge_mul(&cur).ge_mul(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return ClassOrbit::CapExceeded(cap);
                }
                seen.insert(y.clone());
                queue.push(y);
            }
        }
    }
    ClassOrbit::Exact(seen.len())
}

/// Class size for permutations of possibly large degree.
///
/// Elements are fingerprinted by the images of the first min(8, base length)
/// base points; fingerprint collisions are resolved by full image comparison
/// with the colliding element rebuilt from its conjugating word, so the count
/// stays exact without storing full images.
pub fn class_orbit_perm(
    gens: &[Perm],
    base: &[u32],
    x: &Perm,
    cap: usize,
) -> Result<ClassOrbit> {
    let fp_points: Vec<u32> = base.iter().copied().take(8).collect();
    let ginv: Vec<Perm> = gens.iter().map(Perm::inv).collect();
    let fingerprint = |p: &Perm| -> Vec<u32> { fp_points.iter().map(|&b| p.apply(b)).collect() };

    // node i was reached from node `parent[i]` by conjugating with gens[gword[i]]
    let mut parent: Vec<u32> = vec![u32::MAX];
    let mut gword: Vec<u32> = vec![u32::MAX];
    let mut buckets: FxHashMap<Vec<u32>, Vec<u32>> = FxHashMap::default();
    buckets.insert(fingerprint(x), vec![0]);

    let rebuild = |idx: usize, parent: &[u32], gword: &[u32]| -> Perm {
        let mut path = Vec::new();
        let mut i = idx;
        while parent[i] != u32::MAX {
            path.push(gword[i] as usize);
            i = parent[i] as usize;
        }
        let mut p = x.clone();
        for &g in path.iter().rev() {
            p = p.conj(&gens[g]);
        }
        p
    };

    let mut queue: Vec<(u32, Perm)> = vec![(0, x.clone())];
    let mut count = 1usize;
    while let Some((idx, cur)) = queue.pop() {
        for (gi, (g, ginvm)) in gens.iter().zip(&ginv).enumerate() {
            let y = ginvm.mul(&cur).mul(g);
            let fp = fingerprint(&y);
            let bucket = buckets.entry(fp).or_default();
            let mut found = false;
            for &member in bucket.iter() {
                let full = rebuild(member as usize, &parent, &gword);
                if full == y {
                    found = true;
                    break;
                }
            }
            if !found {
                if count >= cap {
                    return Ok(ClassOrbit::CapExceeded(cap));
                }
                count += 1;
                let new_idx = parent.len() as u32;
                parent.push(idx);
                gword.push(gi as u32);
                bucket.push(new_idx);
                queue.push((new_idx, y));
            }
        }
    }
    Ok(ClassOrbit::Exact(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{schreier_sims, BsgsOptions, PermIo};

    #[test]
    fn identity_class_is_one() {
        let gens = vec![
            PermIo::parse("CYC 5\n(1,2)\n").unwrap(),
            PermIo::parse("CYC 5\n(1,2,3,4,5)\n").unwrap(),
        ];
        let id = Perm::identity(5);
        assert_eq!(class_orbit_elements(&gens, &id, 1000), ClassOrbit::Exact(1));
    }

    #[test]
    fn transpositions_in_s5() {
        let gens = vec![
            PermIo::parse("CYC 5\n(1,2)\n").unwrap(),
            PermIo::parse("CYC 5\n(1,2,3,4,5)\n").unwrap(),
        ];
        let t = PermIo::parse("CYC 5\n(1,2)\n").unwrap();
        assert_eq!(class_orbit_elements(&gens, &t, 1000), ClassOrbit::Exact(10));
        let b = schreier_sims(&gens, &BsgsOptions::default()).unwrap();
        assert_eq!(
            class_orbit_perm(&gens, b.base(), &t, 1000).unwrap(),
            ClassOrbit::Exact(10)
        );
    }

    #[test]
    fn cap_is_reported() {
        let gens = vec![
            PermIo::parse("CYC 7\n(1,2)\n").unwrap(),
            PermIo::parse("CYC 7\n(1,2,3,4,5,6,7)\n").unwrap(),
        ];
        let t = PermIo::parse("CYC 7\n(1,2)\n").unwrap();
        assert_eq!(
            class_orbit_elements(&gens, &t, 5),
            ClassOrbit::CapExceeded(5)
        );
    }
}
