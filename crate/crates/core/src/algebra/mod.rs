//! Exact linear algebra over Z, Q and Z/pZ.

mod mat4;
mod prime;
mod residue;
mod skew;

pub use mat4::{Mat4, Vec4};
pub use prime::{is_prime, Prime, MAX_PRIME, TABLE_PRIMES};
pub use residue::{reduce_mat, reduce_vec, ResidueMat4, ResidueVec4};
pub use skew::{solve_invariant_skew_form, SkewForm};

use crate::{IntMat4, IntVec4};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported maximum {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not invertible over its ring (det = {0})")]
    NotInvertible(String),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
}
