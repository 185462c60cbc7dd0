use crate::{ExtError, Result};

/// One extension of a base group by a module, as recorded in an EXT file:
/// `EXT base=<id> module=<id> split=<0|1> h2=<int> [pres=<file>]`.
/// The cohomology dimension is carried verbatim as metadata and surfaced in
/// reports as asserted, not recomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpec {
    pub base: String,
    pub module: String,
    pub split: bool,
    pub h2_dim: u32,
    pub pres_file: Option<String>,
}

pub fn parse_ext(text: &str) -> Result<ExtensionSpec> {
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .ok_or(ExtError::Parse {
            line: 1,
            msg: "empty extension file".into(),
        })?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some("EXT") {
        return Err(ExtError::Parse {
            line: 1,
            msg: "expected `EXT` header".into(),
        });
    }
    let mut base = None;
    let mut module = None;
    let mut split = None;
    let mut h2 = None;
    let mut pres = None;
    for kv in parts {
        let (k, v) = kv.split_once('=').ok_or(ExtError::Parse {
            line: 1,
            msg: format!("expected key=value, found {kv:?}"),
        })?;
        match k {
            "base" => base = Some(v.to_string()),
            "module" => module = Some(v.to_string()),
            "split" => split = Some(v == "1"),
            "h2" => {
                h2 = Some(v.parse().map_err(|_| ExtError::Parse {
                    line: 1,
                    msg: "bad h2".into(),
                })?)
            }
            "pres" => pres = Some(v.to_string()),
            other => {
                return Err(ExtError::Parse {
                    line: 1,
                    msg: format!("unknown key {other:?}"),
                })
            }
        }
    }
    let spec = ExtensionSpec {
        base: base.ok_or(ExtError::Parse {
            line: 1,
            msg: "missing base".into(),
        })?,
        module: module.ok_or(ExtError::Parse {
            line: 1,
            msg: "missing module".into(),
        })?,
        split: split.unwrap_or(true),
        h2_dim: h2.unwrap_or(0),
        pres_file: pres,
    };
    if !spec.split && spec.pres_file.is_none() {
        return Err(ExtError::Parse {
            line: 1,
            msg: "non-split extension needs an explicit presentation".into(),
        });
    }
    Ok(spec)
}

/// A named subgroup given by member words inside an ambient group:
/// `SUB <name> ambient=<id> order=<int> flags=<csv>` followed by
/// `def <name> <word>` definition lines and `mem <word>` member lines.
#[derive(Clone, Debug)]
pub struct SubgroupSpec {
    pub name: String,
    pub ambient: String,
    pub expected_order: u128,
    pub flags: Vec<String>,
    pub defs: Vec<(String, String)>,
    pub members: Vec<String>,
}

pub fn parse_sub(text: &str) -> Result<SubgroupSpec> {
    let mut header: Option<SubgroupSpec> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = ln + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| ExtError::Parse { line: lineno, msg };
        if header.is_none() {
            let mut parts = line.split_whitespace();
            if parts.next() != Some("SUB") {
                return Err(err("expected `SUB` header".into()));
            }
            let name = parts.next().ok_or_else(|| err("missing name".into()))?;
            let mut spec = SubgroupSpec {
                name: name.to_string(),
                ambient: String::new(),
                expected_order: 0,
                flags: Vec::new(),
                defs: Vec::new(),
                members: Vec::new(),
            };
            for kv in parts {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected key=value, found {kv:?}")))?;
                match k {
                    "ambient" => spec.ambient = v.to_string(),
                    "order" => {
                        spec.expected_order =
                            v.parse().map_err(|_| err("bad order".into()))?
                    }
                    "flags" => {
                        spec.flags = v
                            .split(',')
                            .filter(|s| !s.is_empty())
                            .map(String::from)
                            .collect()
                    }
                    other => return Err(err(format!("unknown key {other:?}"))),
                }
            }
            header = Some(spec);
            continue;
        }
        let spec = header.as_mut().expect("header parsed");
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "def" => {
                let (name, word) = rest
                    .trim()
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err("def needs a name and a word".into()))?;
                spec.defs.push((name.to_string(), word.trim().to_string()));
            }
            "mem" => spec.members.push(rest.trim().to_string()),
            other => return Err(err(format!("unknown keyword {other:?}"))),
        }
    }
    header.ok_or(ExtError::Parse {
        line: 0,
        msg: "missing SUB header".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_roundtrip() {
        let e = parse_ext("EXT base=a22 module=v3 split=1 h2=1\n").unwrap();
        assert_eq!(e.base, "a22");
        assert!(e.split);
        assert!(parse_ext("EXT base=a module=v split=0 h2=1\n").is_err());
    }

    #[test]
    fn sub_parse() {
        let s = parse_sub("SUB q ambient=e3 order=512 flags=extraspecial\ndef n5 (pqpv1qp)^3\nmem n5\n")
            .unwrap();
        assert_eq!(s.expected_order, 512);
        assert_eq!(s.defs.len(), 1);
        assert_eq!(s.members, vec!["n5"]);
    }
}
