//! Word-generated subgroup verification: orders, structure flags, tag
//! presentations, and conjugation-action matrices on elementary abelian
//! sections.

use crate::spec::SubgroupSpec;
use crate::{ExtError, Result};
use fpres::{parse_word, Alphabet, Presentation};
use gflin::Mat;
use permcore::{
    center_small, enumerate_small, schreier_sims, BsgsOptions, GroupElement, Perm,
};
use rustc_hash::FxHashMap;

#[derive(Clone, Debug)]
pub struct CheckLine {
    pub what: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct SubgroupReport {
    pub name: String,
    pub checks: Vec<CheckLine>,
}

impl SubgroupReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, what: &str, expected: impl ToString, computed: impl ToString) {
        let e = expected.to_string();
        let c = computed.to_string();
        self.checks.push(CheckLine {
            what: what.to_string(),
            pass: e == c,
            expected: e,
            computed: c,
        });
    }
}

/// Evaluate the def-chain of a spec on top of the ambient assignment and
/// return the member elements; the environment grows left to right.
pub fn eval_environment(
    spec: &SubgroupSpec,
    ambient: &[(String, Perm)],
) -> Result<Vec<Perm>> {
    let degree = ambient
        .first()
        .map(|(_, p)| p.degree())
        .ok_or(permcore::PermError::EmptyGenerators)?;
    let id = Perm::identity(degree);
    let mut names: Vec<String> = ambient.iter().map(|(n, _)| n.clone()).collect();
    let mut elements: Vec<Perm> = ambient.iter().map(|(_, p)| p.clone()).collect();
    for (name, word) in &spec.defs {
        let alphabet = Alphabet::new(names.clone());
        let w = parse_word(word, &alphabet)?;
        let value = fpres::evaluate(&w, &elements, &id);
        names.push(name.clone());
        elements.push(value);
    }
    let alphabet = Alphabet::new(names.clone());
    spec.members
        .iter()
        .map(|m| {
            let w = parse_word(m, &alphabet)?;
            Ok(fpres::evaluate(&w, &elements, &id))
        })
        .collect()
}

/// Run every check the spec's flags ask for; tag presentations come from
/// the `tags` lookup (name -> Presentation).
pub fn verify_subgroup(
    spec: &SubgroupSpec,
    ambient: &[(String, Perm)],
    tags: &dyn Fn(&str) -> Option<Presentation>,
    enumeration_cap: usize,
    seed: u64,
) -> Result<SubgroupReport> {
    let members = eval_environment(spec, ambient)?;
    let mut report = SubgroupReport {
        name: spec.name.clone(),
        checks: Vec::new(),
    };
    let bsgs = schreier_sims(
        &members,
        &BsgsOptions {
            seed,
            rigid_base: None,
        },
    )?;
    report.push("order", spec.expected_order, bsgs.order());
    for flag in &spec.flags {
        if flag == "elementary-abelian" {
            let p = smallest_prime_factor(spec.expected_order.max(2));
            let commute = members.iter().enumerate().all(|(i, a)| {
                members[i + 1..].iter().all(|b| a.mul(b) == b.mul(a))
            });
            let exponent = members.iter().all(|a| a.pow(p as i64).is_identity());
            report.push("elementary-abelian", true, commute && exponent);
        } else if flag == "extraspecial" {
            extraspecial_checks(&members, enumeration_cap, &mut report)?;
        } else if let Some(tag) = flag.strip_prefix("iso:") {
            let pres = tags(tag).ok_or_else(|| ExtError::UnknownTag(tag.to_string()))?;
            let id = Perm::identity(members[0].degree());
            let holds = fpres::relators_hold(&pres, &members, &id).is_ok();
            report.push(&format!("satisfies {tag} presentation"), true, holds);
        }
    }
    Ok(report)
}

fn smallest_prime_factor(n: u128) -> u128 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

/// |Z| = p, Z equals the derived subgroup, and Q/Z is elementary abelian of
/// square order, all by explicit enumeration.
fn extraspecial_checks(
    members: &[Perm],
    cap: usize,
    report: &mut SubgroupReport,
) -> Result<()> {
    let all = enumerate_small(members, cap)?;
    let center = center_small(members, cap)?;
    let p = smallest_prime_factor(all.len() as u128);
    report.push("extraspecial: |Z|", p, center.len());
    // derived subgroup: closure of generator commutators under conjugation;
    // inside a p-group with central commutators the commutators themselves
    // generate it
    let mut comms = Vec::new();
    for (i, a) in members.iter().enumerate() {
        for b in members.iter().skip(i + 1) {
            let c = a.commutator(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    let derived = if comms.is_empty() {
        vec![Perm::identity(members[0].degree())]
    } else {
        enumerate_small(&comms, cap)?
    };
    let center_set: std::collections::HashSet<&Perm> = center.iter().collect();
    let derived_eq_center =
        derived.len() == center.len() && derived.iter().all(|d| center_set.contains(d));
    report.push("extraspecial: Z = derived", true, derived_eq_center);
    // commutators central and squares central make Q/Z elementary abelian
    let squares_central = members
        .iter()
        .all(|m| center_set.contains(&m.mul(m)));
    let comms_central = comms.iter().all(|c| center_set.contains(c));
    report.push(
        "extraspecial: Q/Z elementary abelian",
        true,
        squares_central && comms_central,
    );
    let m = all.len() / center.len();
    let rank_even = {
        // |Q/Z| must be an even power of p
        let mut k = 0u32;
        let mut t = m as u128;
        let p = p as u128;
        while t % p == 0 {
            t /= p;
            k += 1;
        }
        t == 1 && k % 2 == 0
    };
    report.push("extraspecial: |Q| = p^(1+2m)", true, rank_even);
    Ok(())
}

/// Matrix of the conjugation action of `actor` on the section spanned by
/// `basis` modulo the subgroup generated by `center`: row i holds the
/// coordinates of actor^{-1} * b_i * actor.
pub fn conj_action_matrices(
    basis: &[Perm],
    center: &[Perm],
    actor: &Perm,
    p: u32,
    cap: usize,
) -> Result<Mat> {
    let degree = basis
        .first()
        .ok_or(permcore::PermError::EmptyGenerators)?
        .degree();
    let id = Perm::identity(degree);
    // coordinates of every element of <basis, center> over the basis mod center
    let mut coords: FxHashMap<Perm, Vec<u32>> = FxHashMap::default();
    let zero = vec![0u32; basis.len()];
    let zs = if center.is_empty() {
        vec![id.clone()]
    } else {
        enumerate_small(center, cap)?
    };
    let mut queue: Vec<Perm> = Vec::new();
    for z in zs {
        coords.insert(z.clone(), zero.clone());
        queue.push(z);
    }
    while let Some(el) = queue.pop() {
        let c = coords[&el].clone();
        for (k, b) in basis.iter().enumerate() {
            let e2 = el.ge_mul(b);
            if coords.contains_key(&e2) {
                continue;
            }
            if coords.len() >= cap {
                return Err(ExtError::CapExceeded(cap));
            }
            let mut c2 = c.clone();
            c2[k] = (c2[k] + 1) % p;
            coords.insert(e2.clone(), c2);
            queue.push(e2);
        }
    }
    let mut rows = Vec::with_capacity(basis.len());
    for b in basis {
        let conj = b.conj(actor);
        let row = coords
            .get(&conj)
            .ok_or(ExtError::NormalizationViolation)?
            .clone();
        rows.push(row);
    }
    Ok(Mat::from_rows(p, &rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use permcore::PermIo;

    #[test]
    fn identity_actor_gives_identity_matrix() {
        // Q = elementary abelian <(1 2), (3 4)> with trivial center
        let b1 = PermIo::parse("CYC 4\n(1,2)\n").unwrap();
        let b2 = PermIo::parse("CYC 4\n(3,4)\n").unwrap();
        let id = Perm::identity(4);
        let m = conj_action_matrices(&[b1, b2], &[], &id, 2, 1000).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn swap_actor_swaps_basis() {
        let b1 = PermIo::parse("CYC 4\n(1,2)\n").unwrap();
        let b2 = PermIo::parse("CYC 4\n(3,4)\n").unwrap();
        let a = PermIo::parse("CYC 4\n(1,3)(2,4)\n").unwrap();
        let m = conj_action_matrices(&[b1, b2], &[], &a, 2, 1000).unwrap();
        assert_eq!(m.get(0, 0), 0);
        assert_eq!(m.get(0, 1), 1);
        assert_eq!(m.get(1, 0), 1);
    }

    #[test]
    fn d8_is_extraspecial() {
        // dihedral of order 8 = extraspecial 2^(1+2)
        let r = PermIo::parse("CYC 4\n(1,2,3,4)\n").unwrap();
        let s = PermIo::parse("CYC 4\n(1,3)\n").unwrap();
        let spec = SubgroupSpec {
            name: "d8".into(),
            ambient: "s4".into(),
            expected_order: 8,
            flags: vec!["extraspecial".into()],
            defs: vec![],
            members: vec!["r".into(), "s".into()],
        };
        let ambient = vec![("r".to_string(), r), ("s".to_string(), s)];
        let rep = verify_subgroup(&spec, &ambient, &|_| None, 1 << 20, 1).unwrap();
        assert!(rep.pass(), "{:?}", rep.checks);
    }
}
