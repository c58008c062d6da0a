//! Vectors and matrices over Z/pZ in the least-nonnegative residue system.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{AlgebraError, IntMat4, IntVec4, Prime};

fn reduce(x: &BigInt, p: Prime) -> u32 {
    x.mod_floor(&BigInt::from(p.get()))
        .to_u32()
        .expect("residue below p fits u32")
}

/// A row vector in (Z/pZ)⁴ with entries in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ResidueVec4 {
    prime: Prime,
    entries: [u32; 4],
}

/// A 4×4 matrix over Z/pZ with entries in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ResidueMat4 {
    prime: Prime,
    entries: [[u32; 4]; 4],
}

impl ResidueVec4 {
    /// Reduces arbitrary integers into `[0, p)`.
    pub fn new(prime: Prime, entries: [i64; 4]) -> Self {
        let p = i64::from(prime.get());
        ResidueVec4 {
            prime,
            entries: entries.map(|x| x.rem_euclid(p) as u32),
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn entries(&self) -> [u32; 4] {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries == [0; 4]
    }

    /// Packs the vector as n1 + n2·p + n3·p² + n4·p³.
    #[inline]
    pub fn pack(&self) -> u64 {
        let p = u64::from(self.prime.get());
        self.entries
            .iter()
            .rev()
            .fold(0u64, |acc, &x| acc * p + u64::from(x))
    }

    /// Inverse of [`pack`](Self::pack).
    #[inline]
    pub fn unpack(prime: Prime, mut key: u64) -> Self {
        let p = u64::from(prime.get());
        let entries = std::array::from_fn(|_| {
            let r = (key % p) as u32;
            key /= p;
            r
        });
        ResidueVec4 { prime, entries }
    }

    /// Right action `v·a` reduced mod p.
    pub fn mul_mat(&self, a: &ResidueMat4) -> Result<Self, AlgebraError> {
        if self.prime != a.prime {
            return Err(AlgebraError::ModulusMismatch(self.prime.get(), a.prime.get()));
        }
        Ok(self.mul_mat_unchecked(a))
    }

    #[inline]
    pub(crate) fn mul_mat_unchecked(&self, a: &ResidueMat4) -> Self {
        let p = u64::from(self.prime.get());
        let entries = std::array::from_fn(|j| {
            let s: u64 = (0..4)
                .map(|i| u64::from(self.entries[i]) * u64::from(a.entries[i][j]))
                .sum();
            (s % p) as u32
        });
        ResidueVec4 { prime: self.prime, entries }
    }

    pub fn to_int(&self) -> IntVec4 {
        IntVec4::new(self.entries.map(BigInt::from))
    }
}

/// Lexicographic on (n1, n2, n3, n4); vectors of different moduli order by modulus first.
impl Ord for ResidueVec4 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.prime, self.entries).cmp(&(other.prime, other.entries))
    }
}

impl PartialOrd for ResidueVec4 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ResidueVec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "({a} {b} {c} {d})")
    }
}

impl ResidueMat4 {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn entries(&self) -> &[[u32; 4]; 4] {
        &self.entries
    }

    pub fn identity(prime: Prime) -> Self {
        ResidueMat4 {
            prime,
            entries: std::array::from_fn(|i| std::array::from_fn(|j| u32::from(i == j))),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.prime)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.prime != rhs.prime {
            return Err(AlgebraError::ModulusMismatch(self.prime.get(), rhs.prime.get()));
        }
        let p = u64::from(self.prime.get());
        let entries = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let s: u64 = (0..4)
                    .map(|l| u64::from(self.entries[i][l]) * u64::from(rhs.entries[l][j]))
                    .sum();
                (s % p) as u32
            })
        });
        Ok(ResidueMat4 { prime: self.prime, entries })
    }

    pub fn pow(&self, mut m: u64) -> Self {
        let mut acc = Self::identity(self.prime);
        let mut base = *self;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base).expect("same modulus");
            }
            m >>= 1;
            base = base.mul(&base).expect("same modulus");
        }
        acc
    }

    pub fn det(&self) -> u32 {
        let lifted = IntMat4::from_rows(self.entries.map(|r| r.map(BigInt::from)));
        reduce(&lifted.det(), self.prime)
    }
}

/// Entrywise least-nonnegative reduction of an integer matrix.
pub fn reduce_mat(a: &IntMat4, prime: Prime) -> ResidueMat4 {
    ResidueMat4 {
        prime,
        entries: std::array::from_fn(|i| std::array::from_fn(|j| reduce(a.get(i, j), prime))),
    }
}

/// Entrywise least-nonnegative reduction of an integer vector.
pub fn reduce_vec(v: &IntVec4, prime: Prime) -> ResidueVec4 {
    ResidueVec4 {
        prime,
        entries: v.components().each_ref().map(|x| reduce(x, prime)),
    }
}
