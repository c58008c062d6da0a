use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Float, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::integrate::MonodromyEstimate;
use super::linalg::numeric_rank;
use super::path::{LoopCenter, PathSpec};
use super::system::OdeParams;
use super::{integrate_path, PfError};
use crate::catalog::{m0, m1, m_infinity, FamilyParams};
use crate::scalar::Real;
use crate::{IntMat4, Mat4};

/// Loop geometry and tolerances for [`compare_invariants`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PfConfig<F> {
    pub base: Complex<F>,
    pub radius: F,
    /// Local tolerance of the integrator.
    pub ode_tol: F,
    pub min_samples: usize,
    /// Largest accepted charpoly coefficient deviation.
    pub tol: F,
    /// Relative singular-value threshold for the numeric rank of `R − Id`.
    pub rank_rel: F,
}

impl Default for PfConfig<f64> {
    fn default() -> Self {
        PfConfig {
            base: Complex::new(0.5, 0.25),
            radius: 0.45,
            ode_tol: 1e-10,
            min_samples: 2000,
            tol: 1e-4,
            rank_rel: 1e-4,
        }
    }
}

/// Whether the numeric matrix or its inverse matched the integer charpoly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchedVariant {
    Direct,
    Inverse,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LoopReport {
    pub family: [u32; 2],
    #[serde(rename = "loop")]
    pub loop_center: LoopCenter,
    /// `[re, im]` pairs, highest degree first.
    pub charpoly_numeric: Vec<[f64; 2]>,
    pub charpoly_integer: Vec<i64>,
    pub max_dev: f64,
    pub err: f64,
    pub pass: bool,
    pub matched: MatchedVariant,
    /// Numeric rank of `R − Id`.
    pub rank: usize,
    pub steps: usize,
}

/// The integer generator a loop is compared with.
pub fn integer_loop_matrix(f: &FamilyParams, center: LoopCenter) -> IntMat4 {
    match center {
        LoopCenter::Zero => m0(f),
        LoopCenter::One => m1(),
        LoopCenter::Infinity => m_infinity(f),
    }
}

fn to_f64<F: Real>(z: Complex<F>) -> [f64; 2] {
    [z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN)]
}

fn deviation<F: Real>(numeric: &[Complex<F>; 5], integer: &[BigInt; 5]) -> F {
    numeric.iter().zip(integer).fold(F::zero(), |acc, (z, n)| {
        let n = F::from_f64_lossy(n.to_f64().expect("small integer coefficient"));
        Float::max(acc, (*z - Complex::new(n, F::zero())).norm())
    })
}

fn report<F: Real>(f: &FamilyParams, center: LoopCenter, est: &MonodromyEstimate<F>, cfg: &PfConfig<F>) -> LoopReport {
    let integer = integer_loop_matrix(f, center).charpoly();
    let direct = est.matrix.charpoly();
    let dev_direct = deviation(&direct, &integer);
    let (numeric, dev, matched) = match est.matrix.inverse_in_field() {
        Ok(inv) => {
            let inverse = inv.charpoly();
            let dev_inverse = deviation(&inverse, &integer);
            if dev_inverse < dev_direct {
                (inverse, dev_inverse, MatchedVariant::Inverse)
            } else {
                (direct, dev_direct, MatchedVariant::Direct)
            }
        }
        Err(_) => (direct, dev_direct, MatchedVariant::Direct),
    };
    let shifted = &est.matrix - &Mat4::identity();
    LoopReport {
        family: [f.d, f.k],
        loop_center: center,
        charpoly_numeric: numeric.iter().map(|z| to_f64(*z)).collect(),
        charpoly_integer: integer.iter().map(|n| n.to_i64().expect("small coefficient")).collect(),
        max_dev: dev.to_f64().unwrap_or(f64::NAN),
        err: est.err.to_f64().unwrap_or(f64::NAN),
        pass: dev <= cfg.tol,
        matched,
        rank: numeric_rank(&shifted, cfg.rank_rel),
        steps: est.steps,
    }
}

/// Integrates the loops about 0, 1 and ∞ for one family and compares their
/// characteristic polynomials with those of `M0`, `M1` and `(M0·M1)⁻¹`.
/// The three loops are integrated concurrently.
pub fn compare_invariants<F: Real>(f: &FamilyParams, cfg: &PfConfig<F>) -> Result<Vec<LoopReport>, PfError> {
    let params = OdeParams::of(f);
    [LoopCenter::Zero, LoopCenter::One, LoopCenter::Infinity]
        .par_iter()
        .map(|&center| {
            let path = PathSpec::new(cfg.base, center, cfg.radius).with_min_samples(cfg.min_samples);
            let est = integrate_path(&params, &path, cfg.ode_tol)?;
            Ok(report(f, center, &est, cfg))
        })
        .collect()
}
