//! Split-extension relators and the affine permutation representation.

use crate::{ExtError, Result};
use fpres::{Alphabet, Word};
use gflin::GModule;
use permcore::{all_vectors, MatrixAction, Perm};

/// The module-internal relators: e_j^p = 1 and [e_k, e_j] = 1 for k < j.
pub fn split_r1(alphabet: &Alphabet, vnames: &[String], p: u32) -> Vec<Word> {
    let idx = |n: &str| alphabet.index_of(n).expect("module generator in alphabet");
    let mut out = Vec::new();
    for v in vnames {
        out.push(Word::gen(idx(v)).pow(p as i64));
    }
    for k in 0..vnames.len() {
        for j in k + 1..vnames.len() {
            out.push(Word::gen(idx(&vnames[k])).commutator(&Word::gen(idx(&vnames[j]))));
        }
    }
    out
}

/// The essential relators x_i e_j x_i^{-1} (tail)^{-1} = 1 where the tail
/// exponents are row j of x_i^{-1}; one relator per generator and module
/// coordinate, in that order.
pub fn split_r2(
    alphabet: &Alphabet,
    base_names: &[String],
    vnames: &[String],
    module: &GModule,
) -> Result<Vec<Word>> {
    if vnames.len() != module.dim() {
        return Err(ExtError::DimensionMismatch(module.dim(), vnames.len()));
    }
    let idx = |n: &str| {
        alphabet
            .index_of(n)
            .ok_or_else(|| ExtError::Word(fpres::FpresError::UnknownGenerator(n.into())))
    };
    let mut out = Vec::new();
    for (name, g) in base_names.iter().zip(module.gens()) {
        let gi = g.inverse()?;
        let x = idx(name)?;
        for j in 0..module.dim() {
            let mut w = Word::gen(x)
                .concat(&Word::gen(idx(&vnames[j])?))
                .concat(&Word::gen(x).inverse());
            for k in 0..module.dim() {
                let a = gi.get(j, k);
                for _ in 0..a {
                    w = w.concat(&Word::gen(idx(&vnames[k])?));
                }
            }
            out.push(w);
        }
    }
    Ok(out)
}

/// Affine permutation representation of the split extension on all q^n
/// module vectors: module generators act by translation, base generators
/// linearly. The linear side (action by g or by g^{-1}) is fixed by
/// checking the extension relators and recorded in the result.
pub struct AffineRep {
    pub action: MatrixAction,
    /// base generator permutations, aligned with the module generator order
    pub base_perms: Vec<Perm>,
    /// translation permutations for the standard basis vectors
    pub translations: Vec<Perm>,
    /// true if base generators act as v -> v*g (rather than v*g^{-1})
    pub side_plain: bool,
}

impl AffineRep {
    pub fn degree(&self) -> usize {
        self.action.degree()
    }

    /// All generator permutations: base generators first, then translations.
    pub fn all_perms(&self) -> Vec<Perm> {
        let mut out = self.base_perms.clone();
        out.extend(self.translations.iter().cloned());
        out
    }
}

pub fn affine_rep(module: &GModule, base_names: &[String], vnames: &[String]) -> Result<AffineRep> {
    let q = module.q();
    let n = module.dim();
    let points = all_vectors(q, n, true);
    let action = MatrixAction::new(q, n, points, false);
    let mut translations = Vec::with_capacity(n);
    for j in 0..n {
        let mut w = vec![0u8; n];
        w[j] = 1;
        translations.push(action.perm_of_translation(&w)?);
    }
    // the relator check below picks the side that satisfies the extension
    for side_plain in [true, false] {
        let mut base_perms = Vec::with_capacity(module.gens().len());
        for g in module.gens() {
            let m = if side_plain { g.clone() } else { g.inverse()? };
            base_perms.push(action.perm_of(&m)?);
        }
        if relators_hold_on(&base_perms, &translations, module, base_names, vnames)? {
            return Ok(AffineRep {
                action,
                base_perms,
                translations,
                side_plain,
            });
        }
    }
    Err(ExtError::NoConsistentSide)
}

fn relators_hold_on(
    base_perms: &[Perm],
    translations: &[Perm],
    module: &GModule,
    base_names: &[String],
    vnames: &[String],
) -> Result<bool> {
    let mut names = base_names.to_vec();
    names.extend(vnames.iter().cloned());
    let alphabet = Alphabet::new(names);
    let r2 = split_r2(&alphabet, base_names, vnames, module)?;
    let mut assignment = base_perms.to_vec();
    assignment.extend(translations.iter().cloned());
    let id = Perm::identity(assignment[0].degree());
    for w in &r2 {
        if !fpres::evaluate(w, &assignment, &id).is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gflin::Mat;

    #[test]
    fn trivial_base_on_gf2_line() {
        // base group {1} acting on GF(2)^1: only R1 structure remains and
        // the affine group is C2 on 2 points
        let id = Mat::identity(2, 1).unwrap();
        let m = GModule::new(vec!["x".into()], vec![id]).unwrap();
        let rep = affine_rep(&m, &["x".to_string()], &["v1".to_string()]).unwrap();
        assert_eq!(rep.degree(), 2);
        assert!(rep.base_perms[0].is_identity());
        let b = permcore::schreier_sims(&rep.all_perms(), &permcore::BsgsOptions::default())
            .unwrap();
        assert_eq!(b.order(), 2);
    }

    #[test]
    fn gl2_gf2_affine_is_s4() {
        // GF(2)^2 : GL_2(2) has order 4 * 6 = 24, acting on 4 points
        let a = Mat::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let b = Mat::from_rows(2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let m = GModule::new(vec!["a".into(), "b".into()], vec![a, b]).unwrap();
        let rep = affine_rep(
            &m,
            &["a".to_string(), "b".to_string()],
            &["v1".to_string(), "v2".to_string()],
        )
        .unwrap();
        assert_eq!(rep.degree(), 4);
        let bs =
            permcore::schreier_sims(&rep.all_perms(), &permcore::BsgsOptions::default()).unwrap();
        // exhaustive enumeration oracle agrees
        let all = permcore::enumerate_small(&rep.all_perms(), 100).unwrap();
        assert_eq!(bs.order(), 24);
        assert_eq!(all.len(), 24);
    }

    #[test]
    fn r1_shape() {
        let alphabet = Alphabet::new(vec!["v1".into(), "v2".into()]);
        let r1 = split_r1(&alphabet, &["v1".into(), "v2".into()], 2);
        assert_eq!(r1.len(), 3); // two squares and one commutator
    }
}
