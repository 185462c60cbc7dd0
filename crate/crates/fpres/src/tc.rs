//! Todd-Coxeter coset enumeration: HLT with lookahead and full coincidence
//! processing, with a Felsch-style definition order behind a flag. Complete
//! tables are always re-scanned in full before being returned.

use crate::word::{Presentation, Word};
use crate::Result;
use permcore::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcStrategy {
    Hlt,
    Felsch,
}

#[derive(Clone, Debug)]
pub struct TcOptions {
    pub max_cosets: usize,
    pub strategy: TcStrategy,
}

impl Default for TcOptions {
    fn default() -> Self {
        TcOptions {
            max_cosets: 4_000_000,
            strategy: TcStrategy::Hlt,
        }
    }
}

const UNDEF: u32 = u32::MAX;

/// Complete coset table over the live cosets, renumbered contiguously.
pub struct CosetTable {
    ngens: usize,
    index: usize,
    /// row-major: index rows by 2*ngens columns (gen g, then g^-1)
    table: Vec<u32>,
}

pub enum TcOutcome {
    Complete(CosetTable),
    /// resource exhaustion, distinguishable from nontermination only by the
    /// caller raising the cap
    Overflow { live: usize, defined: usize },
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn apply(&self, coset: u32, gen: usize, inverse: bool) -> u32 {
        self.table[coset as usize * 2 * self.ngens + 2 * gen + usize::from(inverse)]
    }

    /// Trace a word from a coset through the completed table.
    pub fn trace(&self, start: u32, word: &Word) -> u32 {
        let mut c = start;
        for &(g, s) in &word.letters {
            c = self.apply(c, g as usize, s < 0);
        }
        c
    }
}

/// Permutations of the coset space, one per generator; the original relators
/// hold on these images.
pub fn coset_action(t: &CosetTable) -> Vec<Perm> {
    (0..t.ngens)
        .map(|g| {
            let img: Vec<u32> = (0..t.index as u32).map(|c| t.apply(c, g, false)).collect();
            Perm::from_images(img).expect("complete table columns are bijections")
        })
        .collect()
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    nrows: usize,
    /// union-find for coincidences; p[i] <= i for merged cosets
    p: Vec<u32>,
    live: usize,
    max_cosets: usize,
    deductions: Vec<(u32, usize)>,
}

impl Enumerator {
    fn new(ngens: usize, max_cosets: usize) -> Enumerator {
        let cols = 2 * ngens;
        Enumerator {
            cols,
            table: vec![UNDEF; cols],
            nrows: 1,
            p: vec![0],
            live: 1,
            max_cosets,
            deductions: Vec::new(),
        }
    }

    #[inline]
    fn entry(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.cols + col]
    }

    #[inline]
    fn set_entry(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.cols + col] = v;
    }

    #[inline]
    fn col_of(g: u16, s: i8) -> usize {
        2 * g as usize + usize::from(s < 0)
    }

    #[inline]
    fn inv_col(col: usize) -> usize {
        col ^ 1
    }

    fn is_live(&self, c: u32) -> bool {
        self.p[c as usize] == c
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        while self.p[c as usize] != c {
            c = self.p[c as usize];
        }
        c
    }

    fn define(&mut self, from: u32, col: usize) -> Option<u32> {
        if self.live >= self.max_cosets {
            return None;
        }
        let new = self.nrows as u32;
        self.nrows += 1;
        self.live += 1;
        self.table.extend(std::iter::repeat(UNDEF).take(self.cols));
        self.p.push(new);
        self.set_entry(from, col, new);
        self.set_entry(new, Self::inv_col(col), from);
        self.deductions.push((from, col));
        Some(new)
    }

    /// Set both directions of an edge, queueing coincidences on conflicts.
    fn force_edge(&mut self, a: u32, col: usize, b: u32) {
        let cur = self.entry(a, col);
        if cur == UNDEF {
            self.set_entry(a, col, b);
            self.deductions.push((a, col));
            let icol = Self::inv_col(col);
            let back = self.entry(b, icol);
            if back == UNDEF {
                self.set_entry(b, icol, a);
                self.deductions.push((b, icol));
            } else if self.rep(back) != self.rep(a) {
                let (x, y) = (self.rep(back), self.rep(a));
                self.coincide(x, y);
            }
        } else if self.rep(cur) != self.rep(b) {
            let (x, y) = (self.rep(cur), self.rep(b));
            self.coincide(x, y);
        }
    }

    /// Full coincidence processing with a merge queue.
    fn coincide(&mut self, a: u32, b: u32) {
        let mut queue: Vec<(u32, u32)> = vec![(a, b)];
        while let Some((x, y)) = queue.pop() {
            let (x, y) = (self.rep(x), self.rep(y));
            if x == y {
                continue;
            }
            let (keep, drop) = if x < y { (x, y) } else { (y, x) };
            self.p[drop as usize] = keep;
            self.live -= 1;
            for col in 0..self.cols {
                let target = self.entry(drop, col);
                if target == UNDEF {
                    continue;
                }
                let target = self.rep(target);
                // drop's outgoing edge migrates to keep
                let cur = self.entry(keep, col);
                if cur == UNDEF {
                    self.set_entry(keep, col, target);
                    self.deductions.push((keep, col));
                } else if self.rep(cur) != target {
                    queue.push((self.rep(cur), target));
                }
                // the reverse edge of target must come back to keep
                let icol = Self::inv_col(col);
                let back = self.entry(target, icol);
                if back == UNDEF {
                    self.set_entry(target, icol, keep);
                    self.deductions.push((target, icol));
                } else if self.rep(back) != keep {
                    queue.push((self.rep(back), keep));
                }
            }
        }
    }

    /// Trace `word` from `start`, defining new cosets at gaps (HLT style).
    /// Returns false on coset exhaustion.
    fn hlt_trace(&mut self, start: u32, cols: &[usize]) -> bool {
        let mut f = self.rep(start);
        let mut i = 0usize;
        let n = cols.len();
        loop {
            // forward scan
            while i < n {
                let next = self.entry(f, cols[i]);
                if next == UNDEF {
                    break;
                }
                f = self.rep(next);
                i += 1;
            }
            if i == n {
                let s = self.rep(start);
                if f != s {
                    self.coincide(f, s);
                }
                return true;
            }
            // backward scan
            let mut b = self.rep(start);
            let mut j = n;
            while j > i + 1 {
                let prev = self.entry(b, Self::inv_col(cols[j - 1]));
                if prev == UNDEF {
                    break;
                }
                b = self.rep(prev);
                j -= 1;
            }
            if j == i + 1 {
                // single gap: close it
                self.force_edge(f, cols[i], b);
                return true;
            }
            match self.define(f, cols[i]) {
                Some(new) => {
                    f = new;
                    i += 1;
                }
                None => return false,
            }
        }
    }

    /// Scan without defining; single gaps close, larger gaps are skipped.
    fn lookahead_trace(&mut self, start: u32, cols: &[usize]) {
        let mut f = self.rep(start);
        let mut i = 0usize;
        let n = cols.len();
        while i < n {
            let next = self.entry(f, cols[i]);
            if next == UNDEF {
                break;
            }
            f = self.rep(next);
            i += 1;
        }
        if i == n {
            let s = self.rep(start);
            if f != s {
                self.coincide(f, s);
            }
            return;
        }
        let mut b = self.rep(start);
        let mut j = n;
        while j > i + 1 {
            let prev = self.entry(b, Self::inv_col(cols[j - 1]));
            if prev == UNDEF {
                return;
            }
            b = self.rep(prev);
            j -= 1;
        }
        self.force_edge(f, cols[i], b);
    }

    /// Renumber live cosets contiguously, preserving order.
    fn compact(&mut self) -> Vec<u32> {
        // resolve all entries to representatives first
        for c in 0..self.nrows as u32 {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.cols {
                let v = self.entry(c, col);
                if v != UNDEF {
                    let r = self.rep(v);
                    self.set_entry(c, col, r);
                }
            }
        }
        let mut map = vec![UNDEF; self.nrows];
        let mut new_table = Vec::with_capacity(self.live * self.cols);
        let mut next = 0u32;
        for c in 0..self.nrows as u32 {
            if self.is_live(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        for c in 0..self.nrows as u32 {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.cols {
                let v = self.entry(c, col);
                new_table.push(if v == UNDEF { UNDEF } else { map[v as usize] });
            }
        }
        self.table = new_table;
        self.nrows = self.live;
        self.p = (0..self.live as u32).collect();
        self.deductions.clear();
        map
    }
}

fn word_cols(w: &Word) -> Vec<usize> {
    w.letters
        .iter()
        .map(|&(g, s)| Enumerator::col_of(g, s))
        .collect()
}

/// Enumerate the cosets of the subgroup generated by `subgroup` words.
pub fn todd_coxeter(
    pres: &Presentation,
    subgroup: &[Word],
    opts: &TcOptions,
) -> Result<TcOutcome> {
    let ngens = pres.alphabet.len();
    let relators: Vec<Vec<usize>> = pres.relators.iter().map(word_cols).collect();
    let subwords: Vec<Vec<usize>> = subgroup.iter().map(word_cols).collect();
    match opts.strategy {
        TcStrategy::Hlt => hlt(ngens, &relators, &subwords, opts),
        TcStrategy::Felsch => felsch(ngens, &relators, &subwords, opts),
    }
    .map(|outcome| {
        if let TcOutcome::Complete(t) = &outcome {
            verify_table(t, &relators, &subwords);
        }
        outcome
    })
}

/// Complete-table invariant: closed columns, every relator traces back to
/// its coset of origin from every coset, subgroup generators fix coset 0.
fn verify_table(t: &CosetTable, relators: &[Vec<usize>], subwords: &[Vec<usize>]) {
    for c in 0..t.index as u32 {
        for col in 0..2 * t.ngens {
            let v = t.table[c as usize * 2 * t.ngens + col];
            assert!(v != UNDEF, "incomplete column in a complete table");
            assert_eq!(
                t.table[v as usize * 2 * t.ngens + (col ^ 1)],
                c,
                "asymmetric edge"
            );
        }
    }
    for r in relators {
        for c in 0..t.index as u32 {
            let mut f = c;
            for &col in r {
                f = t.table[f as usize * 2 * t.ngens + col];
            }
            assert_eq!(f, c, "relator does not close");
        }
    }
    for w in subwords {
        let mut f = 0u32;
        for &col in w {
            f = t.table[f as usize * 2 * t.ngens + col];
        }
        assert_eq!(f, 0, "subgroup generator moves coset 0");
    }
}

fn finish(e: &mut Enumerator, ngens: usize) -> CosetTable {
    e.compact();
    CosetTable {
        ngens,
        index: e.live,
        table: std::mem::take(&mut e.table),
    }
}

fn hlt(
    ngens: usize,
    relators: &[Vec<usize>],
    subwords: &[Vec<usize>],
    opts: &TcOptions,
) -> Result<TcOutcome> {
    let mut e = Enumerator::new(ngens, opts.max_cosets);
    for w in subwords {
        if !e.hlt_trace(0, w) {
            return Ok(TcOutcome::Overflow {
                live: e.live,
                defined: e.nrows,
            });
        }
    }
    loop {
        let mut alpha = 0u32;
        let mut progressed = false;
        while (alpha as usize) < e.nrows {
            if !e.is_live(alpha) {
                alpha += 1;
                continue;
            }
            let before_rows = e.nrows;
            let before_live = e.live;
            for r in relators {
                if !e.hlt_trace(alpha, r) {
                    // out of space: lookahead pass then compact
                    for c in 0..e.nrows as u32 {
                        if e.is_live(c) {
                            for r2 in relators {
                                e.lookahead_trace(c, r2);
                            }
                        }
                    }
                    e.compact();
                    if e.live * 10 >= opts.max_cosets * 9 {
                        return Ok(TcOutcome::Overflow {
                            live: e.live,
                            defined: e.nrows,
                        });
                    }
                    // restart the sweep over the compacted table
                    alpha = 0;
                    progressed = true;
                    break;
                }
            }
            if e.is_live(alpha) {
                // every column of a scanned live coset must be defined
                for col in 0..e.cols {
                    if e.entry(alpha, col) == UNDEF && e.define(alpha, col).is_none() {
                        return Ok(TcOutcome::Overflow {
                            live: e.live,
                            defined: e.nrows,
                        });
                    }
                }
            }
            if e.nrows != before_rows || e.live != before_live {
                progressed = true;
            }
            alpha += 1;
        }
        if !progressed {
            break;
        }
        // a clean confirmation sweep follows any sweep that changed the table
    }
    Ok(TcOutcome::Complete(finish(&mut e, ngens)))
}

fn felsch(
    ngens: usize,
    relators: &[Vec<usize>],
    subwords: &[Vec<usize>],
    opts: &TcOptions,
) -> Result<TcOutcome> {
    let mut e = Enumerator::new(ngens, opts.max_cosets);
    // occurrences[col] = (relator id, offset) pairs where the relator uses col
    let mut occurrences: Vec<Vec<(u32, u32)>> = vec![Vec::new(); 2 * ngens];
    for (ri, r) in relators.iter().enumerate() {
        for (off, &col) in r.iter().enumerate() {
            occurrences[col].push((ri as u32, off as u32));
        }
    }
    for w in subwords {
        if !e.hlt_trace(0, w) {
            return Ok(TcOutcome::Overflow {
                live: e.live,
                defined: e.nrows,
            });
        }
    }
    process_deductions(&mut e, relators, &occurrences);
    loop {
        // find the first undefined entry of the first live coset
        let mut target = None;
        'scan: for c in 0..e.nrows as u32 {
            if !e.is_live(c) {
                continue;
            }
            for col in 0..e.cols {
                if e.entry(c, col) == UNDEF {
                    target = Some((c, col));
                    break 'scan;
                }
            }
        }
        let Some((c, col)) = target else { break };
        if e.define(c, col).is_none() {
            return Ok(TcOutcome::Overflow {
                live: e.live,
                defined: e.nrows,
            });
        }
        process_deductions(&mut e, relators, &occurrences);
    }
    Ok(TcOutcome::Complete(finish(&mut e, ngens)))
}

fn process_deductions(
    e: &mut Enumerator,
    relators: &[Vec<usize>],
    occurrences: &[Vec<(u32, u32)>],
) {
    while let Some((c, col)) = e.deductions.pop() {
        if !e.is_live(c) {
            continue;
        }
        for &(ri, off) in &occurrences[col] {
            // anchor the relator so its `off`-th letter is the new edge
            let r = &relators[ri as usize];
            let n = r.len();
            let rot: Vec<usize> = (0..n).map(|k| r[(off as usize + k) % n]).collect();
            e.lookahead_trace(c, &rot);
            if !e.is_live(c) {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{parse_word, Alphabet};

    fn pres(gen_names: &[&str], rels: &[&str]) -> Presentation {
        let alphabet = Alphabet::new(gen_names.iter().map(|s| s.to_string()).collect());
        let relators = rels
            .iter()
            .map(|r| parse_word(r, &alphabet).unwrap())
            .collect();
        Presentation::new(alphabet, relators)
    }

    #[test]
    fn a5_over_cyclic_subgroup() {
        // <a,b | a^2, b^3, (ab)^5> is A5; index of <b> is 20
        let p = pres(&["a", "b"], &["a^2", "b^3", "(ab)^5"]);
        let sub = vec![parse_word("b", &p.alphabet).unwrap()];
        for strategy in [TcStrategy::Hlt, TcStrategy::Felsch] {
            let opts = TcOptions {
                max_cosets: 10_000,
                strategy,
            };
            match todd_coxeter(&p, &sub, &opts).unwrap() {
                TcOutcome::Complete(t) => assert_eq!(t.index(), 20),
                TcOutcome::Overflow { .. } => panic!("overflow"),
            }
        }
    }

    #[test]
    fn trivial_subgroup_gives_group_order() {
        let p = pres(&["a", "b"], &["a^2", "b^3", "(ab)^5"]);
        match todd_coxeter(&p, &[], &TcOptions::default()).unwrap() {
            TcOutcome::Complete(t) => {
                assert_eq!(t.index(), 60);
                let perms = coset_action(&t);
                let b = permcore::schreier_sims(&perms, &permcore::BsgsOptions::default()).unwrap();
                assert_eq!(b.order(), 60);
            }
            TcOutcome::Overflow { .. } => panic!("overflow"),
        }
    }

    #[test]
    fn whole_group_table_is_degree_one() {
        let p = pres(&["a"], &["a^4"]);
        let sub = vec![parse_word("a", &p.alphabet).unwrap()];
        match todd_coxeter(&p, &sub, &TcOptions::default()).unwrap() {
            TcOutcome::Complete(t) => assert_eq!(t.index(), 1),
            TcOutcome::Overflow { .. } => panic!("overflow"),
        }
    }

    #[test]
    fn overflow_is_reported() {
        let p = pres(&["a", "b"], &["a^2", "b^3", "(ab)^7"]); // infinite (2,3,7) group
        let opts = TcOptions {
            max_cosets: 500,
            strategy: TcStrategy::Hlt,
        };
        match todd_coxeter(&p, &[], &opts).unwrap() {
            TcOutcome::Complete(t) => panic!("unexpected completion at {}", t.index()),
            TcOutcome::Overflow { live, .. } => assert!(live > 0),
        }
    }

    #[test]
    fn strategies_agree_on_s6() {
        let p = pres(
            &["s1", "s2", "s3"],
            &[
                "s1^4",
                "s2^5",
                "s3^3",
                "(s2s1)^2",
                "s1s3s2^-1s1^-1s3^-1s2",
                "(s2s3)^3",
                "s2^2s3s1s2^-1s1s3",
                "s2^-1s1s3^-1s2^-1s1s3^-1s2s3",
            ],
        );
        let mut indices = Vec::new();
        for strategy in [TcStrategy::Hlt, TcStrategy::Felsch] {
            let opts = TcOptions {
                max_cosets: 100_000,
                strategy,
            };
            match todd_coxeter(&p, &[], &opts).unwrap() {
                TcOutcome::Complete(t) => indices.push(t.index()),
                TcOutcome::Overflow { .. } => panic!("overflow"),
            }
        }
        assert_eq!(indices, vec![720, 720]);
    }
}

impl std::fmt::Debug for TcOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TcOutcome::Complete(t) => write!(f, "Complete(index={})", t.index()),
            TcOutcome::Overflow { live, defined } => {
                write!(f, "Overflow {{ live: {live}, defined: {defined} }}")
            }
        }
    }
}
