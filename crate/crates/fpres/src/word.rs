//! The relator grammar: juxtaposition, `^n` integer exponents (negative
//! allowed), parenthesized subwords, conjugation `x^g` = g^-1 x g, and
//! left-normed commutators `[x,y,z]` = [[x,y],z].

use crate::{FpresError, Result};
use permcore::GroupElement;

/// Generator alphabet; tokenization is longest-match over the names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Alphabet {
        Alphabet { names }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }
}

/// Flat sequence of (generator index, exponent sign) letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    pub letters: Vec<(u16, i8)>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn gen(idx: u16) -> Word {
        Word {
            letters: vec![(idx, 1)],
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(g, s)| (g, -s))
                .collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    pub fn conj(&self, by: &Word) -> Word {
        by.inverse().concat(self).concat(by)
    }

    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse()
            .concat(&other.inverse())
            .concat(self)
            .concat(other)
    }

    pub fn is_identity_word(&self) -> bool {
        self.letters.is_empty()
    }

    /// Canonical printing: consecutive powers of one generator collapse to
    /// `g^k`; printing then re-parsing is a fixed point.
    pub fn print(&self, alphabet: &Alphabet) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let (g, s) = self.letters[i];
            let mut k: i64 = s as i64;
            let mut j = i + 1;
            while j < self.letters.len()
                && self.letters[j].0 == g
                && (self.letters[j].1 as i64) * k > 0
            {
                k += self.letters[j].1 as i64;
                j += 1;
            }
            out.push_str(&alphabet.names()[g as usize]);
            if k != 1 {
                out.push('^');
                out.push_str(&k.to_string());
            }
            i = j;
        }
        out
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    // name indices sorted by descending length for longest-match
    by_len: Vec<u16>,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, alphabet: &'a Alphabet) -> Parser<'a> {
        let mut by_len: Vec<u16> = (0..alphabet.len() as u16).collect();
        by_len.sort_by_key(|&i| std::cmp::Reverse(alphabet.names()[i as usize].len()));
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
            by_len,
            alphabet,
        }
    }

    fn err(&self, msg: impl Into<String>) -> FpresError {
        FpresError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && self.bytes[start] == b'-') {
            return Err(self.err("expected integer exponent"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.err("malformed exponent"))
    }

    fn parse_gen(&mut self) -> Result<u16> {
        self.skip_ws();
        for &idx in &self.by_len {
            let name = &self.alphabet.names()[idx as usize];
            if self.text[self.pos..].starts_with(name.as_str()) {
                self.pos += name.len();
                return Ok(idx);
            }
        }
        let rest: String = self.text[self.pos..].chars().take(8).collect();
        Err(self.err(format!("unknown generator at {rest:?}")))
    }

    /// factor := gen | '(' word ')' | '[' word (',' word)+ ']' | '1'
    fn parse_factor(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.parse_word()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut acc = self.parse_word()?;
                let mut args = 0;
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    let rhs = self.parse_word()?;
                    acc = acc.commutator(&rhs);
                    args += 1;
                }
                if args == 0 {
                    return Err(self.err("commutator needs at least two arguments"));
                }
                if self.peek() != Some(b']') {
                    return Err(self.err("expected `]`"));
                }
                self.pos += 1;
                Ok(acc)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(_) => Ok(Word::gen(self.parse_gen()?)),
            None => Err(self.err("unexpected end of word")),
        }
    }

    /// word := (factor ('^' (int | factor))?)*
    fn parse_word(&mut self) -> Result<Word> {
        let mut acc = Word::identity();
        loop {
            match self.peek() {
                None | Some(b')') | Some(b']') | Some(b',') => return Ok(acc),
                Some(b'*') => {
                    self.pos += 1;
                    continue;
                }
                _ => {}
            }
            let mut f = self.parse_factor()?;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                match self.peek() {
                    Some(b) if b == b'-' || b.is_ascii_digit() => {
                        let e = self.parse_int()?;
                        f = f.pow(e);
                    }
                    _ => {
                        let g = self.parse_factor()?;
                        f = f.conj(&g);
                    }
                }
            }
            acc = acc.concat(&f);
        }
    }
}

/// Parse a word in the grammar; zero exponents are erased by construction.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word> {
    let mut p = Parser::new(text, alphabet);
    let w = p.parse_word()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(w)
}

/// Generator names, relators, and optional named subgroup word lists.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relators: Vec<Word>,
    pub subgroups: Vec<(String, Vec<Word>)>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Presentation {
        Presentation {
            alphabet,
            relators,
            subgroups: Vec::new(),
        }
    }

    pub fn subgroup(&self, name: &str) -> Option<&[Word]> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, ws)| ws.as_slice())
    }
}

/// Evaluate a word under a full assignment of group elements.
pub fn evaluate<E: GroupElement>(word: &Word, assignment: &[E], identity: &E) -> E {
    let mut acc = identity.clone();
    let mut i = 0;
    while i < word.letters.len() {
        let (g, s) = word.letters[i];
        // batch runs of the same letter to cut repeated inversions
        let mut k = 1usize;
        while i + k < word.letters.len() && word.letters[i + k] == (g, s) {
            k += 1;
        }
        let base = if s > 0 {
            assignment[g as usize].clone()
        } else {
            assignment[g as usize].ge_inv()
        };
        for _ in 0..k {
            acc = acc.ge_mul(&base);
        }
        i += k;
    }
    acc
}

#[derive(Debug)]
pub struct RelatorFailure {
    pub index: usize,
    pub word: String,
}

/// True iff every relator evaluates to the identity; the first failure is
/// reported otherwise.
pub fn relators_hold<E: GroupElement>(
    p: &Presentation,
    assignment: &[E],
    identity: &E,
) -> std::result::Result<(), RelatorFailure> {
    for (i, r) in p.relators.iter().enumerate() {
        if !evaluate(r, assignment, identity).ge_is_identity() {
            return Err(RelatorFailure {
                index: i,
                word: r.print(&p.alphabet),
            });
        }
    }
    Ok(())
}

/// Build the assignment vector from a name -> element map.
pub fn assignment_from<E: GroupElement>(
    alphabet: &Alphabet,
    lookup: impl Fn(&str) -> Option<E>,
) -> Result<Vec<E>> {
    alphabet
        .names()
        .iter()
        .map(|n| lookup(n).ok_or_else(|| FpresError::MissingAssignment(n.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(vec!["p".into(), "q".into(), "v1".into(), "v10".into()])
    }

    #[test]
    fn empty_is_identity() {
        let w = parse_word("", &ab()).unwrap();
        assert!(w.is_identity_word());
        let one = parse_word("1", &ab()).unwrap();
        assert!(one.is_identity_word());
    }

    #[test]
    fn paper_word_pq2v1_pow5() {
        let w = parse_word("(pq^2v1)^5", &ab()).unwrap();
        assert_eq!(w.letters.len(), 20);
        let expected: Vec<(u16, i8)> = (0..5)
            .flat_map(|_| vec![(0, 1), (1, 1), (1, 1), (2, 1)])
            .collect();
        assert_eq!(w.letters, expected);
    }

    #[test]
    fn longest_match_tokenization() {
        let w = parse_word("v10v1", &ab()).unwrap();
        assert_eq!(w.letters, vec![(3, 1), (2, 1)]);
    }

    #[test]
    fn conjugation_and_commutator() {
        let a = ab();
        let conj = parse_word("p^q", &a).unwrap();
        assert_eq!(conj.letters, vec![(1, -1), (0, 1), (1, 1)]);
        // left-normed double commutator
        let c = parse_word("[p,q^-1,p]", &a).unwrap();
        let inner = Word::gen(0).commutator(&Word::gen(1).inverse());
        assert_eq!(c, inner.commutator(&Word::gen(0)));
    }

    #[test]
    fn print_parse_fixed_point() {
        let a = ab();
        for text in ["(pq^2v1)^5", "p^-2q", "[p,q]", "v10^3v1^-1", "q^p"] {
            let w = parse_word(text, &a).unwrap();
            let printed = w.print(&a);
            let back = parse_word(&printed, &a).unwrap();
            assert_eq!(w, back, "fixed point failed for {text}");
            assert_eq!(printed, back.print(&a));
        }
    }

    #[test]
    fn unknown_generator_is_an_error() {
        let e = parse_word("pz", &ab()).unwrap_err();
        assert!(matches!(e, FpresError::Parse { .. }));
    }

    #[test]
    fn evaluate_in_perms() {
        use permcore::PermIo;
        let a = Alphabet::new(vec!["s".into(), "t".into()]);
        let s = PermIo::parse("CYC 3\n(1,2)\n").unwrap();
        let t = PermIo::parse("CYC 3\n(1,2,3)\n").unwrap();
        let id = permcore::Perm::identity(3);
        let w = parse_word("[s,t]", &a).unwrap();
        let v = evaluate(&w, &[s.clone(), t.clone()], &id);
        assert_eq!(v, s.inv().mul(&t.inv()).mul(&s).mul(&t));
    }
}
