//! Monodromy of one-parameter mirror Calabi-Yau threefold families.
//!
//! The fourteen hypergeometric families share the transvection `M1` and a
//! maximally unipotent `M0` determined by two integers `(d, k)`. This crate
//! builds those matrices exactly, checks the identities relating them to other
//! bases in use, computes orbits of homology classes modulo primes, screens
//! integer classes against the mod-2/mod-5 torus and sphere lists, and
//! integrates the Picard-Fuchs operator numerically to cross-check the integer
//! matrices through conjugation invariants.
//!
//! Matrix and vector code is generic over the scalar ([`Mat4`], [`Vec4`]);
//! the aliases below fix the scalars used throughout.

pub mod algebra;
pub mod catalog;
pub mod conjecture;
pub mod orbit;
pub mod pf;
pub mod scalar;
pub mod tables;
pub mod verify;
pub mod word;

pub use algebra::{Mat4, Prime, ResidueMat4, ResidueVec4, SkewForm, Vec4};
pub use catalog::FamilyParams;
pub use scalar::{Real, Scalar};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;

/// Exact integer matrix.
pub type IntMat4 = Mat4<BigInt>;
/// Exact integer row vector.
pub type IntVec4 = Vec4<BigInt>;
/// Exact rational matrix.
pub type RatMat4 = Mat4<BigRational>;
/// Complex double-precision matrix, as produced by the Picard-Fuchs integrator.
pub type ComplexMat4 = Mat4<Complex<f64>>;
/// Double-precision monodromy estimate.
pub type ComplexMat4Estimate = pf::MonodromyEstimate<f64>;
