use crate::{PermError, Result};

/// Permutation of {0..n-1} stored as an image table. All file input and
/// output is 1-based; internal indexing is 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    img: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            img: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(img: Vec<u32>) -> Result<Perm> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            if x as usize >= n || seen[x as usize] {
                return Err(PermError::NotBijection);
            }
            seen[x as usize] = true;
        }
        Ok(Perm { img })
    }

    /// Build from disjoint cycles over 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        for cyc in cycles {
            for (i, &p) in cyc.iter().enumerate() {
                if p as usize >= degree {
                    return Err(PermError::DegreeMismatch(p as usize + 1, degree));
                }
                img[p as usize] = cyc[(i + 1) % cyc.len()];
            }
        }
        Perm::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.img[p as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Apply `self` first, then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            img: self.img.iter().map(|&x| other.img[x as usize]).collect(),
        }
    }

    pub fn inv(&self) -> Perm {
        let mut img = vec![0u32; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u32;
        }
        Perm { img }
    }

    /// g^-1 * self * g
    pub fn conj(&self, g: &Perm) -> Perm {
        let mut img = vec![0u32; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[g.img[i] as usize] = g.img[x as usize];
        }
        Perm { img }
    }

    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inv().mul(&other.inv()).mul(self).mul(other)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] || self.img[start as usize] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start as usize] = true;
            let mut p = self.img[start as usize];
            while p != start {
                seen[p as usize] = true;
                cyc.push(p);
                p = self.img[p as usize];
            }
            out.push(cyc);
        }
        out
    }

    /// Sorted (length, count) pairs including fixed points.
    pub fn cycle_type(&self) -> Vec<(usize, usize)> {
        let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
        let mut moved = 0usize;
        for c in self.cycles() {
            *counts.entry(c.len()).or_insert(0) += 1;
            moved += c.len();
        }
        let fixed = self.degree() - moved;
        if fixed > 0 {
            *counts.entry(1).or_insert(0) += fixed;
        }
        counts.into_iter().collect()
    }

    pub fn order(&self) -> u128 {
        self.cycles()
            .iter()
            .fold(1u128, |acc, c| lcm(acc, c.len() as u128))
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", PermIo::print_cycles(self))
    }
}

/// 1-based permutation file formats:
/// `PERM n` with one line of n images, or `CYC n` with disjoint cycles.
pub struct PermIo;

impl PermIo {
    pub fn parse(text: &str) -> Result<Perm> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(PermError::Parse {
            line: 1,
            msg: "empty permutation file".into(),
        })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let bad = |msg: &str| PermError::Parse {
            line: 1,
            msg: msg.into(),
        };
        if parts.len() != 2 {
            return Err(bad("expected `PERM n` or `CYC n`"));
        }
        let n: usize = parts[1].parse().map_err(|_| bad("bad degree"))?;
        let body: String = lines.collect::<Vec<_>>().join(" ");
        match parts[0] {
            "PERM" => {
                let img: Vec<u32> = body
                    .split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| bad("bad image")))
                    .collect::<Result<_>>()?;
                if img.len() != n {
                    return Err(bad("image count differs from degree"));
                }
                Perm::from_images(img.into_iter().map(|x| x - 1).collect())
            }
            "CYC" => {
                let mut cycles = Vec::new();
                for chunk in body.split(')') {
                    let chunk = chunk.trim().trim_start_matches('(').trim();
                    if chunk.is_empty() {
                        continue;
                    }
                    let cyc: Vec<u32> = chunk
                        .split(',')
                        .map(|t| t.trim().parse::<u32>().map_err(|_| bad("bad point")))
                        .collect::<Result<_>>()?;
                    cycles.push(cyc.into_iter().map(|x| x - 1).collect());
                }
                Perm::from_cycles(n, &cycles)
            }
            other => Err(bad(&format!("unknown header {other:?}"))),
        }
    }

    pub fn print_images(p: &Perm) -> String {
        let imgs: Vec<String> = p.images().iter().map(|&x| (x + 1).to_string()).collect();
        format!("PERM {}\n{}\n", p.degree(), imgs.join(" "))
    }

    pub fn print_cycles(p: &Perm) -> String {
        let cycles = p.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|&x| (x + 1).to_string()).collect();
                format!("({})", pts.join(","))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_roundtrip() {
        let p = PermIo::parse("CYC 5\n(1,2,3)(4,5)\n").unwrap();
        assert_eq!(p.order(), 6);
        let printed = PermIo::print_cycles(&p);
        let again = PermIo::parse(&format!("CYC 5\n{printed}\n")).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn conj_matches_definition() {
        let x = PermIo::parse("CYC 4\n(1,2)\n").unwrap();
        let g = PermIo::parse("CYC 4\n(1,3,2)\n").unwrap();
        assert_eq!(x.conj(&g), g.inv().mul(&x).mul(&g));
    }

    #[test]
    fn not_bijection_rejected() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }
}
