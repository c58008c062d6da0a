use std::fmt;

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Largest modulus accepted. Four residues must pack into a `u64` key, so
/// p⁴ has to fit in 64 bits.
pub const MAX_PRIME: u32 = 65_521;

/// The nine primes used by the published orbit tables.
pub const TABLE_PRIMES: [u32; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];

/// A prime modulus, checked on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if p > u64::from(MAX_PRIME) {
            return Err(AlgebraError::PrimeTooLarge(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of vectors in (Z/pZ)⁴.
    pub fn space_size(self) -> u64 {
        u64::from(self.0).pow(4)
    }
}

impl TryFrom<u32> for Prime {
    type Error = AlgebraError;

    fn try_from(p: u32) -> Result<Self, Self::Error> {
        Prime::new(u64::from(p))
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Deterministic trial division; moduli here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut i = 5u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) || n.is_multiple_of(i + 2) {
            return false;
        }
        i += 6;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve() {
        let n = 2000usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..n {
            if sieve[i] {
                for j in (i * i..n).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &s) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), s, "{i}");
        }
    }

    #[test]
    fn rejects_composites_and_huge() {
        assert!(matches!(Prime::new(4), Err(AlgebraError::NotPrime(4))));
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(0).is_err());
        assert_eq!(Prime::new(23).unwrap().get(), 23);
        assert!(Prime::new(u64::from(MAX_PRIME)).is_ok());
        assert!(matches!(Prime::new(65_537), Err(AlgebraError::PrimeTooLarge(_))));
    }

    #[test]
    fn table_primes_are_prime() {
        for p in TABLE_PRIMES {
            assert!(Prime::new(p.into()).is_ok());
        }
    }
}
