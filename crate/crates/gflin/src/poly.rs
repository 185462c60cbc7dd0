//! Dense univariate polynomials over GF(q): arithmetic, gcd, and
//! distinct-degree / equal-degree factorization (deterministic given seed).

use crate::FieldSpec;
use rand::Rng;

/// Coefficients low to high, normalized (no trailing zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub field: FieldSpec,
    pub coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<u32>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Poly {
        Poly::new(field, vec![])
    }

    pub fn one(field: FieldSpec) -> Poly {
        Poly::new(field, vec![1])
    }

    pub fn x(field: FieldSpec) -> Poly {
        Poly::new(field, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u32 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.lead() == 1 {
            return self.clone();
        }
        let inv = self.field.inv(self.lead());
        Poly::new(
            self.field,
            self.coeffs.iter().map(|&c| self.field.mul(c, inv)).collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u32; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = self.field.add(a, b);
        }
        Poly::new(self.field, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u32; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = self.field.sub(a, b);
        }
        Poly::new(self.field, out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let q = self.field.q() as u64;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % q;
            }
        }
        Poly::new(self.field, out.into_iter().map(|c| c as u32).collect())
    }

    /// (quotient, remainder) by a nonzero divisor.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero());
        if self.degree() < div.degree() || self.is_zero() {
            return (Poly::zero(self.field), self.clone());
        }
        let f = self.field;
        let mut rem = self.coeffs.clone();
        let dlead_inv = f.inv(div.lead());
        let dd = div.degree();
        let mut quo = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, dlead_inv);
            quo[i - dd] = factor;
            for (j, &dc) in div.coeffs.iter().enumerate() {
                let sub = f.mul(factor, dc);
                rem[i - dd + j] = f.sub(rem[i - dd + j], sub);
            }
        }
        (Poly::new(f, quo), Poly::new(f, rem))
    }

    pub fn rem(&self, div: &Poly) -> Poly {
        self.divrem(div).1
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field);
        }
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| self.field.mul(c, ((i + 1) as u64 % self.field.q() as u64) as u32))
            .collect();
        Poly::new(self.field, out)
    }

    /// self^e mod m
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

/// One (factor, multiplicity) pair of a full factorization.
pub type Factor = (Poly, usize);

/// Full factorization into monic irreducibles with multiplicity.
/// Randomized equal-degree splitting, deterministic for a fixed rng.
pub fn factor(f: &Poly, rng: &mut impl Rng) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::new();
    let mut stack: Vec<(Poly, usize)> = vec![(f.monic(), 1)];
    while let Some((g, mult)) = stack.pop() {
        if g.degree() == 0 {
            continue;
        }
        // square-free split
        let d = g.derivative();
        if d.is_zero() {
            // g = h(x^q); over GF(q) this is h(x)^q
            let q = g.field.q() as usize;
            let coeffs: Vec<u32> = g.coeffs.iter().step_by(q).copied().collect();
            stack.push((Poly::new(g.field, coeffs), mult * q));
            continue;
        }
        let sf = g.gcd(&d);
        if sf.degree() > 0 {
            let (quo, _) = g.divrem(&sf);
            stack.push((quo, mult));
            stack.push((sf, mult));
            continue;
        }
        // g square-free: distinct-degree then equal-degree
        for (h, deg) in distinct_degree(&g) {
            for irr in equal_degree(&h, deg, rng) {
                merge(&mut out, irr, mult);
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
    out
}

fn merge(out: &mut Vec<Factor>, p: Poly, mult: usize) {
    for f in out.iter_mut() {
        if f.0 == p {
            f.1 += mult;
            return;
        }
    }
    out.push((p, mult));
}

/// Split a square-free monic f into products of irreducibles of equal degree.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field;
    let q = field.q() as u64;
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = Poly::x(field);
    let mut d = 0usize;
    while g.degree() >= 1 {
        d += 1;
        if 2 * d > g.degree() {
            out.push((g.clone(), g.degree()));
            break;
        }
        h = h.pow_mod(q, &g);
        let diff = h.sub(&Poly::x(field));
        let gd = g.gcd(&diff);
        if gd.degree() > 0 {
            out.push((gd.clone(), d));
            let (quo, _) = g.divrem(&gd);
            g = quo;
            h = h.rem(&g);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting of a product of degree-d irreducibles.
fn equal_degree(f: &Poly, d: usize, rng: &mut impl Rng) -> Vec<Poly> {
    let field = f.field;
    if f.degree() == d {
        return vec![f.monic()];
    }
    let q = field.q() as u64;
    loop {
        let deg = f.degree();
        let coeffs: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..field.q())).collect();
        let r = Poly::new(field, coeffs);
        if r.degree() == 0 || r.is_zero() {
            continue;
        }
        let split = if q == 2 {
            // trace map T(r) = r + r^2 + r^4 + ... + r^(2^(d-1))
            let mut t = r.clone();
            let mut cur = r.clone();
            for _ in 1..d {
                cur = cur.mul(&cur).rem(f);
                t = t.add(&cur);
            }
            f.gcd(&t)
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            let p = r.pow_mod(e, f);
            f.gcd(&p.sub(&Poly::one(field)))
        };
        if split.degree() > 0 && split.degree() < f.degree() {
            let (quo, _) = f.divrem(&split);
            let mut out = equal_degree(&split, d, rng);
            out.extend(equal_degree(&quo, d, rng));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f13() -> FieldSpec {
        FieldSpec::new(13).unwrap()
    }

    #[test]
    fn divrem_roundtrip() {
        let f = f13();
        let a = Poly::new(f, vec![1, 0, 2, 5, 1]);
        let b = Poly::new(f, vec![3, 1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn factor_known_product() {
        let f = f13();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // (x+1)^2 (x^2+1) over GF(13): x^2+1 = (x-5)(x+5) since 5^2 = -1 mod 13
        let p = Poly::new(f, vec![1, 1]);
        let prod = p.mul(&p).mul(&Poly::new(f, vec![1, 0, 1]));
        let factors = factor(&prod, &mut rng);
        let total: usize = factors.iter().map(|(g, m)| g.degree() * m).sum();
        assert_eq!(total, prod.degree());
        assert!(factors.iter().any(|(g, m)| *m == 2 && g.coeffs == vec![1, 1]));
        for (g, _) in &factors {
            assert_eq!(g.degree(), 1);
        }
    }

    #[test]
    fn factor_gf2() {
        let f = FieldSpec::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^4 + x + 1 is irreducible over GF(2)
        let p = Poly::new(f, vec![1, 1, 0, 0, 1]);
        let fs = factor(&p, &mut rng);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0, p);
        // x^6+x^5+x^4+x^3+x^2+x = x(x+1)(x^2+x+1)^2
        let p2 = Poly::new(f, vec![0, 1, 1, 1, 1, 1, 1]);
        let fs2 = factor(&p2, &mut rng);
        let total: usize = fs2.iter().map(|(g, m)| g.degree() * m).sum();
        assert_eq!(total, 6);
    }
}
