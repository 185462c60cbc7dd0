use crate::{GflinError, Result};

/// A prime field GF(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    q: u32,
}

impl FieldSpec {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(GflinError::NotPrime(q));
        }
        Ok(FieldSpec { q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.q - b % self.q) % self.q
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.q - a % self.q) % self.q
    }

    /// Multiplicative inverse by Fermat, valid for nonzero residues.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a % self.q != 0);
        self.pow(a, self.q as u64 - 2)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.q;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(13).is_ok());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(12).is_err());
    }

    #[test]
    fn gf13_inverse() {
        let f = FieldSpec::new(13).unwrap();
        assert_eq!(f.inv(2), 7);
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
