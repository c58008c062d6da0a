//! Transport of a fundamental matrix along a path by adaptive
//! Dormand–Prince 5(4), with a step-doubling error estimate.
//!
//! Along a segment `φ(s)`, `s ∈ [0, 1]`, the propagator `U` solves
//! `dU/ds = φ'(s)·φ(s)⁻¹·N(φ(s))·U`, `U(0) = Id`. Every accepted step is
//! replayed as two half steps on a second trajectory; the final discrepancy
//! between the two (spectral norm) plus an accumulated rounding term is the
//! reported error. The half-step trajectory is the returned estimate.

use num_complex::Complex;
use num_traits::Float;

use super::linalg::{frobenius_norm, spectral_norm};
use super::path::Segment;
use super::system::{theta_frame_unchecked, OdeParams};
use super::PfError;
use crate::scalar::Real;
use crate::Mat4;

pub const MIN_TOLERANCE: f64 = 1e-13;
const MAX_STEPS: usize = 2_000_000;
const MIN_STEP: f64 = 1e-14;

/// Numerically computed monodromy (connection) matrix with its error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyEstimate<F: Real> {
    pub matrix: Mat4<Complex<F>>,
    /// Step-doubling discrepancy plus rounding, operator norm.
    pub err: F,
    /// Accepted steps over the whole path.
    pub steps: usize,
    /// Largest deviation of `det U(φ)·((1−φ)/(1−φ₀))²` from 1 along the path.
    pub det_drift: F,
}

impl<F: Real> MonodromyEstimate<F> {
    pub fn identity() -> Self {
        MonodromyEstimate { matrix: Mat4::identity(), err: F::zero(), steps: 0, det_drift: F::zero() }
    }
}

struct Tableau<F> {
    c: [F; 7],
    a: [[F; 6]; 7],
    b: [F; 7],
    e: [F; 7],
}

impl<F: Real> Tableau<F> {
    fn dormand_prince() -> Self {
        let f = F::from_f64_lossy;
        let r = |n: f64, d: f64| f(n / d);
        let z = F::zero();
        Tableau {
            c: [z, r(1., 5.), r(3., 10.), r(4., 5.), r(8., 9.), f(1.), f(1.)],
            a: [
                [z; 6],
                [r(1., 5.), z, z, z, z, z],
                [r(3., 40.), r(9., 40.), z, z, z, z],
                [r(44., 45.), r(-56., 15.), r(32., 9.), z, z, z],
                [r(19372., 6561.), r(-25360., 2187.), r(64448., 6561.), r(-212., 729.), z, z],
                [r(9017., 3168.), r(-355., 33.), r(46732., 5247.), r(49., 176.), r(-5103., 18656.), z],
                [r(35., 384.), z, r(500., 1113.), r(125., 192.), r(-2187., 6784.), r(11., 84.)],
            ],
            b: [r(35., 384.), z, r(500., 1113.), r(125., 192.), r(-2187., 6784.), r(11., 84.), z],
            // fifth-order minus embedded fourth-order weights
            e: [
                r(71., 57600.),
                z,
                r(-71., 16695.),
                r(71., 1920.),
                r(-17253., 339200.),
                r(22., 525.),
                r(-1., 40.),
            ],
        }
    }
}

type CMat<F> = Mat4<Complex<F>>;

struct Stepper<'a, F: Real> {
    row: [F; 4],
    seg: &'a Segment<F>,
    tab: &'a Tableau<F>,
}

impl<F: Real> Stepper<'_, F> {
    fn generator(&self, s: F) -> CMat<F> {
        let phi = self.seg.point(s);
        let w = self.seg.velocity(s) / phi;
        theta_frame_unchecked(&self.row, phi).scale(&w)
    }

    /// One Dormand–Prince step; returns the fifth-order solution and the
    /// embedded error matrix.
    fn step(&self, s: F, h: F, u: &CMat<F>) -> (CMat<F>, CMat<F>) {
        let hc = Complex::new(h, F::zero());
        let mut k: Vec<CMat<F>> = Vec::with_capacity(7);
        for i in 0..7 {
            let mut y = u.clone();
            for (j, kj) in k.iter().enumerate() {
                let a = self.tab.a[i][j];
                if a != F::zero() {
                    y = &y + &kj.scale(&(hc * a));
                }
            }
            let gen = self.generator(s + self.tab.c[i] * h);
            k.push(&gen * &y);
        }
        let mut next = u.clone();
        let mut err = CMat::<F>::zero();
        for i in 0..7 {
            if self.tab.b[i] != F::zero() {
                next = &next + &k[i].scale(&(hc * self.tab.b[i]));
            }
            if self.tab.e[i] != F::zero() {
                err = &err + &k[i].scale(&(hc * self.tab.e[i]));
            }
        }
        (next, err)
    }
}

fn scaled_error<F: Real>(u: &CMat<F>, next: &CMat<F>, err: &CMat<F>, tol: F) -> F {
    let mut acc = F::zero();
    for i in 0..4 {
        for j in 0..4 {
            let scale = tol * (F::one() + Float::max(u.get(i, j).norm(), next.get(i, j).norm()));
            let r = err.get(i, j).norm() / scale;
            acc += r * r;
        }
    }
    Float::sqrt(acc / F::from_f64_lossy(16.0))
}

fn all_finite<F: Real>(m: &CMat<F>) -> bool {
    m.rows().iter().flatten().all(|z| Float::is_finite(z.re) && Float::is_finite(z.im))
}

/// Transports the identity along consecutive segments starting at `base`.
///
/// `min_samples` caps the step length at `total length / min_samples`.
pub fn transport<F: Real>(
    params: &OdeParams,
    base: Complex<F>,
    segments: &[Segment<F>],
    tol: F,
    min_samples: usize,
) -> Result<MonodromyEstimate<F>, PfError> {
    if Float::is_nan(tol) || tol < F::from_f64_lossy(MIN_TOLERANCE) {
        return Err(PfError::Tolerance(tol.to_f64().unwrap_or(f64::NAN)));
    }
    if segments.is_empty() {
        return Ok(MonodromyEstimate::identity());
    }
    let tab = Tableau::<F>::dormand_prince();
    let row = params.last_row_float::<F>();
    let total: F = segments.iter().fold(F::zero(), |acc, s| acc + s.length());
    let max_len = total / F::from_usize(min_samples.max(1)).expect("sample count fits");
    let one = Complex::new(F::one(), F::zero());
    let base_factor = one - base;
    let half = F::from_f64_lossy(0.5);
    let eps = F::epsilon();

    let mut full = CMat::<F>::identity();
    let mut halved = CMat::<F>::identity();
    let mut steps = 0usize;
    let mut max_norm = F::one();
    let mut det_drift = F::zero();

    for seg in segments {
        let len = seg.length();
        if len == F::zero() {
            continue;
        }
        let stepper = Stepper { row, seg, tab: &tab };
        let h_max = Float::min(max_len / len, F::one());
        let mut h = h_max;
        let mut s = F::zero();
        while s < F::one() {
            if steps >= MAX_STEPS {
                return Err(PfError::TooManySteps(MAX_STEPS));
            }
            let h_try = Float::min(h, F::one() - s);
            let (next, err) = stepper.step(s, h_try, &full);
            let en = scaled_error(&full, &next, &err, tol);
            if !Float::is_finite(en) || !all_finite(&next) {
                return Err(PfError::NonFinite(format!("{}", seg.point(s))));
            }
            if en <= F::one() {
                let (mid, _) = stepper.step(s, h_try * half, &halved);
                let (hv, _) = stepper.step(s + h_try * half, h_try * half, &mid);
                full = next;
                halved = hv;
                s = if h_try >= F::one() - s { F::one() } else { s + h_try };
                steps += 1;
                max_norm = Float::max(max_norm, frobenius_norm(&halved));
                let rel = (one - seg.point(s)) / base_factor;
                let drift = (halved.det() * rel * rel - one).norm();
                det_drift = Float::max(det_drift, drift);
            }
            let grow = if en == F::zero() {
                F::from_f64_lossy(5.0)
            } else {
                let g = F::from_f64_lossy(0.9) * Float::powf(en, F::from_f64_lossy(-0.2));
                Float::max(Float::min(g, F::from_f64_lossy(5.0)), F::from_f64_lossy(0.2))
            };
            h = Float::min(h_try * grow, h_max);
            if h < F::from_f64_lossy(MIN_STEP) {
                return Err(PfError::StepCollapse(format!("{}", seg.point(s))));
            }
        }
    }
    let discrepancy = spectral_norm(&(&full - &halved));
    let rounding = F::from_usize(steps).expect("step count fits") * eps * max_norm;
    Ok(MonodromyEstimate { matrix: halved, err: discrepancy + rounding, steps, det_drift })
}
