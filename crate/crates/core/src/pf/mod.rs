//! Numerical monodromy of the Picard-Fuchs operator.
//!
//! The numeric basis is unrelated to the integer basis, so the integer
//! matrices are compared only through conjugation invariants.

mod compare;
mod integrate;
pub mod linalg;
mod path;
mod system;

pub use compare::{compare_invariants, integer_loop_matrix, LoopReport, MatchedVariant, PfConfig};
pub use integrate::{transport, MonodromyEstimate, MIN_TOLERANCE};
pub use path::{LoopCenter, Orientation, PathSpec, Segment, SINGULARITY_MARGIN};
pub use system::{theta_frame_system, OdeParams};

use crate::scalar::Real;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PfError {
    #[error("exponent {0} outside (0, 1)")]
    Exponent(String),
    #[error("evaluation at singular point {0}")]
    SingularPoint(String),
    #[error("tolerance {0} below the supported minimum {MIN_TOLERANCE}")]
    Tolerance(f64),
    #[error("path passes within {distance} of singular point {point}")]
    PathTooClose { point: String, distance: f64 },
    #[error("invalid path: {0}")]
    BadPath(String),
    #[error("step size collapsed near {0}")]
    StepCollapse(String),
    #[error("non-finite values near {0}")]
    NonFinite(String),
    #[error("more than {0} steps")]
    TooManySteps(usize),
}

/// Monodromy of the loop described by `path`, in the frame of solutions
/// normalised to the identity at the base point.
pub fn integrate_path<F: Real>(params: &OdeParams, path: &PathSpec<F>, tol: F) -> Result<MonodromyEstimate<F>, PfError> {
    let segments = path.segments()?;
    transport(params, path.base, &segments, tol, path.min_samples)
}
