//! Presentation file format: `FP` header, `gen a b c ...`, `rel <word>`
//! lines, `sub <name> <word> <word> ...` lines, comments starting with `#`.
//! Words round-trip bit-exactly through the grammar's canonical printing.

use crate::word::{parse_word, Alphabet, Presentation};
use crate::{FpresError, Result};

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut alphabet: Option<Alphabet> = None;
    let mut relators = Vec::new();
    let mut subgroups: Vec<(String, Vec<crate::Word>)> = Vec::new();
    let mut saw_header = false;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = ln + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| FpresError::FileParse {
            line: lineno,
            msg: msg.into(),
        };
        if !saw_header {
            if line != "FP" {
                return Err(err("expected `FP` header"));
            }
            saw_header = true;
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "gen" => {
                if alphabet.is_some() {
                    return Err(err("duplicate gen line"));
                }
                let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(err("gen line needs at least one name"));
                }
                alphabet = Some(Alphabet::new(names));
            }
            "rel" => {
                let a = alphabet.as_ref().ok_or_else(|| err("rel before gen"))?;
                relators.push(parse_word(rest.trim(), a)?);
            }
            "sub" => {
                let a = alphabet.as_ref().ok_or_else(|| err("sub before gen"))?;
                let mut parts = rest.split_whitespace();
                let name = parts.next().ok_or_else(|| err("sub needs a name"))?;
                let words = parts
                    .map(|w| parse_word(w, a))
                    .collect::<Result<Vec<_>>>()?;
                subgroups.push((name.to_string(), words));
            }
            other => return Err(err(&format!("unknown keyword {other:?}"))),
        }
    }
    let alphabet = alphabet.ok_or(FpresError::FileParse {
        line: 0,
        msg: "missing gen line".into(),
    })?;
    Ok(Presentation {
        alphabet,
        relators,
        subgroups,
    })
}

pub fn print_presentation(p: &Presentation) -> String {
    let mut out = String::from("FP\n");
    out.push_str(&format!("gen {}\n", p.alphabet.names().join(" ")));
    for r in &p.relators {
        out.push_str(&format!("rel {}\n", r.print(&p.alphabet)));
    }
    for (name, words) in &p.subgroups {
        let ws: Vec<String> = words.iter().map(|w| w.print(&p.alphabet)).collect();
        out.push_str(&format!("sub {name} {}\n", ws.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let text = "FP\ngen a b\nrel a^2\nrel b^3\nrel (ab)^5\nsub cyc b\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relators.len(), 3);
        let printed = print_presentation(&p);
        let again = parse_presentation(&printed).unwrap();
        assert_eq!(p.relators, again.relators);
        assert_eq!(p.subgroups.len(), again.subgroups.len());
        assert_eq!(printed, print_presentation(&again));
    }

    #[test]
    fn comments_and_errors() {
        assert!(parse_presentation("# nothing\nFP\ngen a\nrel a^2\n").is_ok());
        assert!(parse_presentation("gen a\n").is_err());
        assert!(parse_presentation("FP\nrel a\n").is_err());
        assert!(parse_presentation("FP\ngen a\nrel b\n").is_err());
    }
}
