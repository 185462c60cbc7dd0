//! Randomized Schreier-Sims with deterministic verification.
//!
//! Construction fills a candidate stabilizer chain from random products,
//! reduces the strong set, then verifies every Schreier generator by
//! sifting. A `rigid_base` is a base whose pointwise stabilizer inside the
//! acting group is known to be trivial by construction (a projective frame
//! for a matrix action, the zero vector plus a basis for an affine action);
//! with such a base a residue fixing every base point is the identity and
//! no quadratic identity checks are needed. Without one, residues that fix
//! the base are materialized and checked entrywise, extending the base on
//! failure. Either way nothing is reported until the sweep is clean.

use crate::{Perm, PermError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FILL_CLEAN_TARGET: usize = 24;
const FILL_CAP: usize = 20_000;
const SWEEP_CAP: usize = 500;

#[derive(Clone, Debug)]
pub struct BsgsOptions {
    pub seed: u64,
    /// Points whose pointwise stabilizer is trivial by construction.
    pub rigid_base: Option<Vec<u32>>,
}

impl Default for BsgsOptions {
    fn default() -> Self {
        BsgsOptions {
            seed: 1,
            rigid_base: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Letter {
    gen: u32,
    inv: bool,
}

struct Level {
    /// strong generator ids acting at this level
    gen_ids: Vec<usize>,
    orbit: Vec<u32>,
    /// point -> orbit position, -1 if outside
    pos: Vec<i32>,
    /// orbit position -> (gen id, parent position); root entry unused
    sv: Vec<(u32, u32)>,
}

pub struct Bsgs {
    degree: usize,
    gens: Vec<Perm>,
    strong: Vec<Perm>,
    strong_inv: Vec<Perm>,
    base: Vec<u32>,
    levels: Vec<Level>,
    rigid: bool,
    order: u128,
}

enum Sift {
    /// word fixed every base point from the start level on
    Fixed(Vec<Letter>),
    /// some base point left its fundamental orbit
    Drop { word: Vec<Letter> },
}

impl Bsgs {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn is_rigid(&self) -> bool {
        self.rigid
    }

    /// Fundamental orbit lengths along the chain.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        match self.sift_perm(p) {
            None => true,
            Some(_) => false,
        }
    }

    /// Sift an explicit permutation; None on success, the nontrivial
    /// residue otherwise.
    pub fn sift_perm(&self, p: &Perm) -> Option<Perm> {
        let mut word: Vec<Letter> = Vec::new();
        for (lvl, level) in self.levels.iter().enumerate() {
            let gamma = self.apply_prefixed(p, &word, self.base[lvl]);
            let pos = level.pos[gamma as usize];
            if pos < 0 {
                return Some(self.materialize_prefixed(p, &word));
            }
            self.append_transversal_inverse(level, pos as usize, &mut word);
        }
        if self.rigid {
            // the base is a rigid frame: fixing it all forces the identity
            return None;
        }
        let res = self.materialize_prefixed(p, &word);
        if res.is_identity() {
            None
        } else {
            Some(res)
        }
    }

    fn apply_letters(&self, mut pt: u32, word: &[Letter]) -> u32 {
        for l in word {
            pt = if l.inv {
                self.strong_inv[l.gen as usize].apply(pt)
            } else {
                self.strong[l.gen as usize].apply(pt)
            };
        }
        pt
    }

    fn apply_prefixed(&self, p: &Perm, word: &[Letter], pt: u32) -> u32 {
        self.apply_letters(p.apply(pt), word)
    }

    fn materialize_prefixed(&self, p: &Perm, word: &[Letter]) -> Perm {
        let mut img: Vec<u32> = Vec::with_capacity(self.degree);
        for pt in 0..self.degree as u32 {
            img.push(self.apply_prefixed(p, word, pt));
        }
        Perm::from_images(img).expect("letters are permutations")
    }

    /// Transversal letters carrying the level root to orbit position `pos`.
    fn transversal_letters(&self, level: &Level, mut pos: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        while pos != 0 {
            let (g, parent) = level.sv[pos];
            out.push(Letter { gen: g, inv: false });
            pos = parent as usize;
        }
        out.reverse();
        out
    }

    fn append_transversal_inverse(&self, level: &Level, pos: usize, word: &mut Vec<Letter>) {
        let path = self.transversal_letters(level, pos);
        word.extend(path.iter().rev().map(|l| Letter {
            gen: l.gen,
            inv: !l.inv,
        }));
    }

    /// Random group element via product replacement on the original
    /// generators.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Perm {
        let mut acc = Perm::identity(self.degree);
        for _ in 0..30 {
            let g = &self.gens[rng.gen_range(0..self.gens.len())];
            if rng.gen_bool(0.5) {
                acc = acc.mul(g);
            } else {
                acc = acc.mul(&g.inv());
            }
        }
        acc
    }
}

struct Builder {
    degree: usize,
    gens: Vec<Perm>,
    strong: Vec<Perm>,
    strong_inv: Vec<Perm>,
    /// fix-prefix length of each strong generator (base points fixed)
    strong_level: Vec<usize>,
    base: Vec<u32>,
    levels: Vec<Level>,
    rigid: bool,
}

impl Builder {
    fn level_gens(&self, lvl: usize) -> Vec<usize> {
        if lvl == 0 {
            // the original generators alone define the top group; keeping the
            // level-0 set this small caps the verification sweep at
            // |orbit_0| * |gens| Schreier generators
            (0..self.gens.len()).collect()
        } else {
            (0..self.strong.len())
                .filter(|&i| self.strong_level[i] >= lvl)
                .collect()
        }
    }

    fn rebuild_levels(&mut self, from: usize) {
        self.levels.truncate(from);
        for lvl in from..self.base.len() {
            let beta = self.base[lvl];
            let gen_ids = self.level_gens(lvl);
            let mut pos = vec![-1i32; self.degree];
            let mut orbit = vec![beta];
            let mut sv = vec![(u32::MAX, u32::MAX)];
            pos[beta as usize] = 0;
            let mut head = 0usize;
            while head < orbit.len() {
                let p = orbit[head];
                for &gi in &gen_ids {
                    let q = self.strong[gi].apply(p);
                    if pos[q as usize] < 0 {
                        pos[q as usize] = orbit.len() as i32;
                        orbit.push(q);
                        sv.push((gi as u32, head as u32));
                    }
                }
                head += 1;
            }
            self.levels.push(Level {
                gen_ids,
                orbit,
                pos,
                sv,
            });
        }
    }

    fn fix_prefix(&self, p: &Perm) -> usize {
        fix_prefix_of(&self.base, p)
    }

    /// Add a strong generator; returns the shallowest level whose orbit may
    /// change. Extends the base first if the element fixes all of it.
    fn add_strong(&mut self, p: Perm) -> Result<usize> {
        if self.fix_prefix(&p) == self.base.len() {
            if self.rigid {
                return Err(PermError::RigidBaseViolation);
            }
            let moved = (0..self.degree as u32)
                .find(|&x| p.apply(x) != x)
                .ok_or(PermError::NotBijection)?;
            self.base.push(moved);
        }
        let fp = self.fix_prefix(&p);
        self.strong_inv.push(p.inv());
        self.strong.push(p);
        self.strong_level.push(fp);
        Ok(fp)
    }

    fn into_bsgs(self) -> Bsgs {
        let order = self.levels.iter().map(|l| l.orbit.len() as u128).product();
        Bsgs {
            degree: self.degree,
            gens: self.gens,
            strong: self.strong,
            strong_inv: self.strong_inv,
            base: self.base,
            levels: self.levels,
            rigid: self.rigid,
            order,
        }
    }
}

/// Build and verify a BSGS for the group generated by `gens`.
pub fn schreier_sims(gens: &[Perm], opts: &BsgsOptions) -> Result<Bsgs> {
    let degree = gens.first().ok_or(PermError::EmptyGenerators)?.degree();
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch(g.degree(), degree));
        }
    }
    let rigid = opts.rigid_base.is_some();
    let mut base: Vec<u32> = opts.rigid_base.clone().unwrap_or_default();
    if !rigid {
        for g in gens {
            if (0..base.len()).all(|i| g.apply(base[i]) == base[i]) {
                if let Some(m) = (0..degree as u32).find(|&x| g.apply(x) != x) {
                    base.push(m);
                }
            }
        }
    }
    let nontrivial: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    if nontrivial.is_empty() {
        return Ok(Bsgs {
            degree,
            gens: gens.to_vec(),
            strong: Vec::new(),
            strong_inv: Vec::new(),
            base: Vec::new(),
            levels: Vec::new(),
            rigid,
            order: 1,
        });
    }
    let mut b = Builder {
        degree,
        gens: nontrivial.clone(),
        strong: nontrivial.clone(),
        strong_inv: nontrivial.iter().map(Perm::inv).collect(),
        strong_level: Vec::new(),
        base,
        levels: Vec::new(),
    rigid,
    };
    for g in &nontrivial {
        let fp = b.fix_prefix(g);
        b.strong_level.push(fp);
    }
    b.rebuild_levels(0);

    // randomized fill
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut prs = ProductReplacement::new(&nontrivial, &mut rng);
    fill(&mut b, &mut prs, &mut rng, FILL_CLEAN_TARGET)?;
    reduce_strong_set(&mut b)?;
    // reduction can drop load-bearing deep generators; refill cheaply so the
    // verification sweep only has to certify, not repair
    fill(&mut b, &mut prs, &mut rng, 8)?;

    // deterministic verification sweep
    let mut rounds = 0usize;
    'sweep: loop {
        rounds += 1;
        if rounds > SWEEP_CAP {
            return Err(PermError::VerificationLoop(rounds));
        }
        for lvl in (0..b.levels.len()).rev() {
            if let Some(residue) = verify_level(&b, lvl)? {
                let at = b.add_strong(residue)?;
                b.rebuild_levels(at);
                continue 'sweep;
            }
        }
        break;
    }
    Ok(b.into_bsgs())
}

fn fill(
    b: &mut Builder,
    prs: &mut ProductReplacement,
    rng: &mut ChaCha8Rng,
    target: usize,
) -> Result<()> {
    let mut clean = 0usize;
    let mut steps = 0usize;
    while clean < target && steps < FILL_CAP {
        steps += 1;
        let x = prs.next(rng);
        match sift_explicit(b, &x) {
            None => clean += 1,
            Some(residue) => {
                clean = 0;
                let lvl = b.add_strong(residue)?;
                b.rebuild_levels(lvl);
            }
        }
    }
    Ok(())
}

/// Sift an explicit permutation against the builder chain; returns the
/// nontrivial residue if the element is not yet covered.
fn sift_explicit(b: &Builder, p: &Perm) -> Option<Perm> {
    let mut word: Vec<Letter> = Vec::new();
    let apply = |word: &[Letter], pt: u32| -> u32 {
        let mut x = p.apply(pt);
        for l in word {
            x = if l.inv {
                b.strong_inv[l.gen as usize].apply(x)
            } else {
                b.strong[l.gen as usize].apply(x)
            };
        }
        x
    };
    for (lvl, level) in b.levels.iter().enumerate() {
        let gamma = apply(&word, b.base[lvl]);
        let pos = level.pos[gamma as usize];
        if pos < 0 {
            return Some(materialize(b, Some(p), &word));
        }
        let mut pos = pos as usize;
        let mut path = Vec::new();
        while pos != 0 {
            let (g, parent) = level.sv[pos];
            path.push(Letter { gen: g, inv: true });
            pos = parent as usize;
        }
        word.extend(path);
    }
    if b.rigid {
        return None;
    }
    let res = materialize(b, Some(p), &word);
    if res.is_identity() {
        None
    } else {
        Some(res)
    }
}

fn materialize(b: &Builder, pre: Option<&Perm>, word: &[Letter]) -> Perm {
    let mut img: Vec<u32> = Vec::with_capacity(b.degree);
    for pt in 0..b.degree as u32 {
        let mut x = match pre {
            Some(p) => p.apply(pt),
            None => pt,
        };
        for l in word {
            x = if l.inv {
                b.strong_inv[l.gen as usize].apply(x)
            } else {
                b.strong[l.gen as usize].apply(x)
            };
        }
        img.push(x);
    }
    Perm::from_images(img).expect("letters are permutations")
}

/// Drop strong generators that already sift to the identity against the
/// chain built from the survivors; keeps per-level generator sets small so
/// the verification sweep stays near-linear.
fn reduce_strong_set(b: &mut Builder) -> Result<()> {
    let old_strong = std::mem::take(&mut b.strong);
    let _ = std::mem::take(&mut b.strong_inv);
    let _ = std::mem::take(&mut b.strong_level);
    let keep_first = b.gens.len();
    b.strong = old_strong[..keep_first].to_vec();
    b.strong_inv = b.strong.iter().map(Perm::inv).collect();
    let prefixes: Vec<usize> = b.strong.iter().map(|g| fix_prefix_of(&b.base, g)).collect();
    b.strong_level = prefixes;
    b.rebuild_levels(0);
    for g in old_strong.into_iter().skip(keep_first) {
        if sift_explicit(b, &g).is_some() {
            let lvl = b.add_strong(g)?;
            b.rebuild_levels(lvl);
        }
    }
    Ok(())
}

/// Check every Schreier generator of one level; returns a residue to adopt
/// as a new strong generator if verification fails somewhere.
fn verify_level(b: &Builder, lvl: usize) -> Result<Option<Perm>> {
    let level = &b.levels[lvl];
    for posn in 0..level.orbit.len() {
        let r = level.orbit[posn];
        for &gid in &level.gen_ids {
            let r2 = b.strong[gid].apply(r);
            let pos2 = level.pos[r2 as usize];
            debug_assert!(pos2 >= 0, "orbit must be closed");
            let pos2 = pos2 as usize;
            if level.sv[pos2] == (gid as u32, posn as u32) {
                continue; // tree edge, trivial by construction
            }
            // u_r * g * u_{r2}^{-1}
            let mut word = transversal_letters_of(level, posn);
            word.push(Letter {
                gen: gid as u32,
                inv: false,
            });
            let path2 = transversal_letters_of(level, pos2);
            word.extend(path2.iter().rev().map(|l| Letter {
                gen: l.gen,
                inv: true,
            }));
            match sift_word_builder(b, word, lvl + 1) {
                Sift::Drop { word } => {
                    return Ok(Some(materialize(b, None, &word)));
                }
                Sift::Fixed(word) => {
                    if b.rigid {
                        continue; // base is a rigid frame: residue is trivial
                    }
                    let res = materialize(b, None, &word);
                    if !res.is_identity() {
                        return Ok(Some(res));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn fix_prefix_of(base: &[u32], p: &Perm) -> usize {
    let mut k = 0;
    while k < base.len() && p.apply(base[k]) == base[k] {
        k += 1;
    }
    k
}

fn transversal_letters_of(level: &Level, mut pos: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    while pos != 0 {
        let (g, parent) = level.sv[pos];
        out.push(Letter { gen: g, inv: false });
        pos = parent as usize;
    }
    out.reverse();
    out
}

fn sift_word_builder(b: &Builder, mut word: Vec<Letter>, from_level: usize) -> Sift {
    for lvl in from_level..b.levels.len() {
        let level = &b.levels[lvl];
        let mut gamma = b.base[lvl];
        for l in &word {
            gamma = if l.inv {
                b.strong_inv[l.gen as usize].apply(gamma)
            } else {
                b.strong[l.gen as usize].apply(gamma)
            };
        }
        let pos = level.pos[gamma as usize];
        if pos < 0 {
            return Sift::Drop { word };
        }
        let path = transversal_letters_of(level, pos as usize);
        word.extend(path.iter().rev().map(|l| Letter {
            gen: l.gen,
            inv: true,
        }));
    }
    Sift::Fixed(word)
}

struct ProductReplacement {
    slots: Vec<Perm>,
    acc: Perm,
}

impl ProductReplacement {
    fn new(gens: &[Perm], rng: &mut ChaCha8Rng) -> ProductReplacement {
        let degree = gens[0].degree();
        let mut slots: Vec<Perm> = (0..10.max(gens.len()))
            .map(|i| gens[i % gens.len()].clone())
            .collect();
        let mut pr = ProductReplacement {
            acc: Perm::identity(degree),
            slots: Vec::new(),
        };
        std::mem::swap(&mut pr.slots, &mut slots);
        for _ in 0..60 {
            pr.next(rng);
        }
        pr
    }

    fn next(&mut self, rng: &mut ChaCha8Rng) -> Perm {
        let n = self.slots.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let t = if rng.gen_bool(0.5) {
            self.slots[i].mul(&self.slots[j])
        } else {
            self.slots[i].mul(&self.slots[j].inv())
        };
        self.slots[i] = t;
        self.acc = self.acc.mul(&self.slots[i]);
        self.acc.clone()
    }
}

/// Normal closure of the subgroup generated by `seeds` under conjugation by
/// the ambient generators; every conjugate of every closure generator is
/// confirmed a member before returning.
pub fn normal_closure(ambient: &[Perm], seeds: &[Perm], opts: &BsgsOptions) -> Result<Bsgs> {
    let degree = ambient.first().ok_or(PermError::EmptyGenerators)?.degree();
    let mut closure_gens: Vec<Perm> = seeds
        .iter()
        .filter(|s| !s.is_identity())
        .cloned()
        .collect();
    if closure_gens.is_empty() {
        closure_gens.push(Perm::identity(degree));
        return schreier_sims(&closure_gens, opts);
    }
    let mut bsgs = schreier_sims(&closure_gens, opts)?;
    let mut queue: Vec<Perm> = closure_gens.clone();
    while let Some(x) = queue.pop() {
        for g in ambient {
            let c = x.conj(g);
            if !bsgs.contains(&c) {
                closure_gens.push(c.clone());
                queue.push(c);
                bsgs = schreier_sims(&closure_gens, opts)?;
            }
        }
    }
    // closure check: conjugates of all generators are members
    for x in &closure_gens {
        for g in ambient {
            if !bsgs.contains(&x.conj(g)) {
                return Err(PermError::VerificationLoop(0));
            }
        }
    }
    Ok(bsgs)
}

/// Derived subgroup: normal closure of the commutators of generator pairs.
pub fn derived_subgroup(gens: &[Perm], opts: &BsgsOptions) -> Result<Bsgs> {
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in gens.iter().skip(i + 1) {
            let c = a.commutator(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(gens, &comms, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PermIo;

    fn s5() -> Vec<Perm> {
        vec![
            PermIo::parse("CYC 5\n(1,2)\n").unwrap(),
            PermIo::parse("CYC 5\n(1,2,3,4,5)\n").unwrap(),
        ]
    }

    #[test]
    fn s5_order_120() {
        let b = schreier_sims(&s5(), &BsgsOptions::default()).unwrap();
        assert_eq!(b.order(), 120);
        // exhaustive enumeration oracle
        let all = crate::enumerate_small(&s5(), 1 << 20).unwrap();
        assert_eq!(all.len(), 120);
    }

    #[test]
    fn membership() {
        let b = schreier_sims(&s5(), &BsgsOptions::default()).unwrap();
        let x = PermIo::parse("CYC 5\n(2,4)(3,5)\n").unwrap();
        assert!(b.contains(&x));
        let a4_odd = PermIo::parse("CYC 6\n(1,2)\n").unwrap();
        assert!(!b.contains(&a4_odd)); // degree mismatch is not membership
    }

    #[test]
    fn a5_derived() {
        let b = derived_subgroup(&s5(), &BsgsOptions::default()).unwrap();
        assert_eq!(b.order(), 60);
        let abelian = vec![PermIo::parse("CYC 6\n(1,2,3)(4,5)\n").unwrap()];
        let d = derived_subgroup(&abelian, &BsgsOptions::default()).unwrap();
        assert_eq!(d.order(), 1);
    }

    #[test]
    fn orbit_stabilizer_product() {
        let b = schreier_sims(&s5(), &BsgsOptions::default()).unwrap();
        let lens = b.orbit_lengths();
        let prod: u128 = lens.iter().map(|&x| x as u128).product();
        assert_eq!(prod, b.order());
    }

    #[test]
    fn deterministic_across_runs() {
        let b1 = schreier_sims(&s5(), &BsgsOptions::default()).unwrap();
        let b2 = schreier_sims(&s5(), &BsgsOptions::default()).unwrap();
        assert_eq!(b1.base(), b2.base());
        assert_eq!(b1.orbit_lengths(), b2.orbit_lengths());
    }
}
