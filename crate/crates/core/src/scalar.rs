//! Scalar traits the generic matrix and integrator code is written against.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// Exact or approximate ring element usable as a `Mat4` entry.
///
/// Implemented for every `Clone + Num` type, so `BigInt`, `BigRational`,
/// the machine integers and `Complex<f64>` all qualify.
pub trait Scalar: Clone + PartialEq + Debug + Num {}

impl<T: Clone + PartialEq + Debug + Num> Scalar for T {}

/// Floating point: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + nalgebra::RealField + Copy + Send + Sync + Debug
{
    fn from_f64_lossy(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64 converts")
    }
}

impl Real for f32 {}
impl Real for f64 {}
