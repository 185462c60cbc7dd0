//! Bit-exact matrix and module file formats.
//!
//! Matrix file: line 1 `MAT q rows cols`, then `rows` lines of `cols`
//! whitespace-separated tokens, each a digit string or `.` for 0.
//! Module file: `MOD q dim k`, then k blocks `GEN <name>` followed by
//! `dim` rows in the matrix body format.

use crate::{GflinError, GModule, Mat, Result};

fn perr(line: usize, msg: impl Into<String>) -> GflinError {
    GflinError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_token(tok: &str, q: u32, line: usize) -> Result<u32> {
    if tok == "." {
        return Ok(0);
    }
    let v: u32 = tok
        .parse()
        .map_err(|_| perr(line, format!("bad entry {tok:?}")))?;
    if v >= q {
        return Err(GflinError::EntryRange(v, q));
    }
    Ok(v)
}

fn parse_row(line_text: &str, q: u32, cols: usize, lineno: usize) -> Result<Vec<u32>> {
    let toks: Vec<&str> = line_text.split_whitespace().collect();
    if toks.len() != cols {
        return Err(perr(
            lineno,
            format!("expected {cols} entries, found {}", toks.len()),
        ));
    }
    toks.iter().map(|t| parse_token(t, q, lineno)).collect()
}

pub fn parse_mat(text: &str) -> Result<Mat> {
    let mut lines = text.lines().enumerate();
    let (n0, header) = lines
        .next()
        .ok_or_else(|| perr(1, "empty matrix file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "MAT" {
        return Err(perr(n0 + 1, "expected header `MAT q rows cols`"));
    }
    let q: u32 = parts[1].parse().map_err(|_| perr(n0 + 1, "bad q"))?;
    let rows: usize = parts[2].parse().map_err(|_| perr(n0 + 1, "bad rows"))?;
    let cols: usize = parts[3].parse().map_err(|_| perr(n0 + 1, "bad cols"))?;
    let mut data = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (ln, text) = lines
            .next()
            .ok_or_else(|| perr(0, "unexpected end of matrix body"))?;
        data.push(parse_row(text, q, cols, ln + 1)?);
    }
    Mat::from_rows(q, &data)
}

pub fn print_mat(m: &Mat) -> String {
    let mut out = format!("MAT {} {} {}\n", m.q(), m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|c| match m.get(r, c) {
                0 => ".".to_string(),
                v => v.to_string(),
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_module(text: &str) -> Result<GModule> {
    let mut lines = text.lines().enumerate().peekable();
    let (n0, header) = lines
        .next()
        .ok_or_else(|| perr(1, "empty module file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "MOD" {
        return Err(perr(n0 + 1, "expected header `MOD q dim k`"));
    }
    let q: u32 = parts[1].parse().map_err(|_| perr(n0 + 1, "bad q"))?;
    let dim: usize = parts[2].parse().map_err(|_| perr(n0 + 1, "bad dim"))?;
    let k: usize = parts[3].parse().map_err(|_| perr(n0 + 1, "bad k"))?;
    let mut names = Vec::with_capacity(k);
    let mut gens = Vec::with_capacity(k);
    for _ in 0..k {
        let (ln, text) = lines
            .next()
            .ok_or_else(|| perr(0, "missing GEN block"))?;
        let parts: Vec<&str> = text.split_whitespace().collect();
        if parts.len() != 2 || parts[0] != "GEN" {
            return Err(perr(ln + 1, "expected `GEN <name>`"));
        }
        names.push(parts[1].to_string());
        let mut data = Vec::with_capacity(dim);
        for _ in 0..dim {
            let (ln, text) = lines
                .next()
                .ok_or_else(|| perr(0, "unexpected end of generator body"))?;
            data.push(parse_row(text, q, dim, ln + 1)?);
        }
        gens.push(Mat::from_rows(q, &data)?);
    }
    GModule::new(names, gens)
}

pub fn print_module(m: &GModule) -> String {
    let mut out = format!("MOD {} {} {}\n", m.q(), m.dim(), m.gens().len());
    for (name, g) in m.names().iter().zip(m.gens()) {
        out.push_str(&format!("GEN {name}\n"));
        for r in 0..g.rows() {
            let row: Vec<String> = (0..g.cols())
                .map(|c| match g.get(r, c) {
                    0 => ".".to_string(),
                    v => v.to_string(),
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mat_roundtrip() {
        let m = Mat::from_rows(13, &[vec![0, 12, 1], vec![5, 0, 0]]).unwrap();
        let s = print_mat(&m);
        assert_eq!(parse_mat(&s).unwrap(), m);
        assert!(s.contains('.'));
    }

    #[test]
    fn module_roundtrip() {
        let a = Mat::from_rows(2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = Mat::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let m = GModule::new(vec!["a".into(), "b".into()], vec![a, b]).unwrap();
        let s = print_module(&m);
        let back = parse_module(&s).unwrap();
        assert_eq!(back.names(), m.names());
        assert_eq!(back.gens(), m.gens());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(parse_mat("MAT 2 1 2\n1 2\n").is_err());
        assert!(parse_mat("MAT 4 1 1\n1\n").is_err());
    }
}
