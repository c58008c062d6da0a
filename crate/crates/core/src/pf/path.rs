//! Closed loops in the φ-plane based at a common point.

use std::fmt;

use num_complex::Complex;
use num_traits::Float;
use serde::Serialize;

use super::PfError;
use crate::scalar::Real;

/// Minimum distance between a path and any singular point it must avoid.
pub const SINGULARITY_MARGIN: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LoopCenter {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "infinity")]
    Infinity,
}

impl fmt::Display for LoopCenter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LoopCenter::Zero => "0",
            LoopCenter::One => "1",
            LoopCenter::Infinity => "infinity",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Orientation {
    Counterclockwise,
    Clockwise,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Counterclockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::Counterclockwise,
        }
    }
}

/// A piece of path parametrised by `s ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Segment<F> {
    Line { from: Complex<F>, to: Complex<F> },
    Arc { center: Complex<F>, radius: F, start: F, sweep: F },
}

impl<F: Real> Segment<F> {
    pub fn point(&self, s: F) -> Complex<F> {
        match *self {
            Segment::Line { from, to } => from + (to - from) * s,
            Segment::Arc { center, radius, start, sweep } => center + Complex::from_polar(radius, start + sweep * s),
        }
    }

    /// dφ/ds
    pub fn velocity(&self, s: F) -> Complex<F> {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc { radius, start, sweep, .. } => {
                Complex::from_polar(radius, start + sweep * s) * Complex::new(F::zero(), sweep)
            }
        }
    }

    pub fn length(&self) -> F {
        match *self {
            Segment::Line { from, to } => (to - from).norm(),
            Segment::Arc { radius, sweep, .. } => radius * Float::abs(sweep),
        }
    }

    /// Euclidean distance from `z` to the segment.
    pub fn distance_to(&self, z: Complex<F>) -> F {
        match *self {
            Segment::Line { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                if len2 == F::zero() {
                    return (z - from).norm();
                }
                let t = ((z - from) * d.conj()).re / len2;
                let t = Float::min(Float::max(t, F::zero()), F::one());
                (z - (from + d * t)).norm()
            }
            Segment::Arc { center, radius, start, sweep } => {
                let full = F::from_f64_lossy(2.0) * F::PI();
                if Float::abs(sweep) >= full {
                    return Float::abs((z - center).norm() - radius);
                }
                // radial distance if z's angle falls inside the sweep, else nearest endpoint
                let ang = (z - center).arg();
                let raw = (ang - start) * Float::signum(sweep);
                let rel = raw - full * Float::floor(raw / full);
                let radial = if rel <= Float::abs(sweep) {
                    Float::abs((z - center).norm() - radius)
                } else {
                    F::infinity()
                };
                let ends = Float::min((z - self.point(F::zero())).norm(), (z - self.point(F::one())).norm());
                Float::min(radial, ends)
            }
        }
    }
}

/// A loop based at `base` around one of the singular points.
///
/// Loops around 0 and 1 run radially from the base point to a circle of
/// `radius` about the centre, once around the circle, and back. The loop
/// around ∞ is the composite (loop about 0, then loop about 1) traversed
/// backwards. A zero radius is the constant loop at `base`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathSpec<F> {
    pub base: Complex<F>,
    pub center: LoopCenter,
    pub radius: F,
    pub min_samples: usize,
    pub orientation: Orientation,
}

impl<F: Real> PathSpec<F> {
    pub fn new(base: Complex<F>, center: LoopCenter, radius: F) -> Self {
        PathSpec { base, center, radius, min_samples: 2000, orientation: Orientation::Counterclockwise }
    }

    pub fn with_orientation(mut self, o: Orientation) -> Self {
        self.orientation = o;
        self
    }

    pub fn with_min_samples(mut self, n: usize) -> Self {
        self.min_samples = n;
        self
    }

    /// The loop as a list of segments, checked against the singularity margin.
    pub fn segments(&self) -> Result<Vec<Segment<F>>, PfError> {
        if self.radius < F::zero() || !Float::is_finite(self.radius) {
            return Err(PfError::BadPath(format!("radius {:?}", self.radius)));
        }
        if self.radius == F::zero() {
            return Ok(Vec::new());
        }
        let zero = Complex::new(F::zero(), F::zero());
        let one = Complex::new(F::one(), F::zero());
        let segs = match self.center {
            LoopCenter::Zero => self.simple_loop(zero, one, self.orientation)?,
            LoopCenter::One => self.simple_loop(one, zero, self.orientation)?,
            LoopCenter::Infinity => {
                // Counterclockwise about infinity is (loop₀ then loop₁) traversed
                // backwards; the clockwise variant is that composite forwards.
                let back = self.orientation.reversed();
                let (first, second) = match self.orientation {
                    Orientation::Counterclockwise => ((one, zero), (zero, one)),
                    Orientation::Clockwise => ((zero, one), (one, zero)),
                };
                let mut s = self.simple_loop(first.0, first.1, back)?;
                s.extend(self.simple_loop(second.0, second.1, back)?);
                s
            }
        };
        let margin = F::from_f64_lossy(SINGULARITY_MARGIN);
        for seg in &segs {
            for z in [zero, one] {
                let dist = seg.distance_to(z);
                if dist < margin {
                    return Err(PfError::PathTooClose { point: format!("{z}"), distance: dist.to_f64().unwrap_or(f64::NAN) });
                }
            }
        }
        Ok(segs)
    }

    fn simple_loop(&self, center: Complex<F>, other: Complex<F>, o: Orientation) -> Result<Vec<Segment<F>>, PfError> {
        let offset = self.base - center;
        if offset.norm() == F::zero() {
            return Err(PfError::BadPath("base point coincides with loop centre".into()));
        }
        if (other - center).norm() <= self.radius {
            return Err(PfError::BadPath(format!("circle about {center} also encloses {other}")));
        }
        let start = offset.arg();
        let attach = center + Complex::from_polar(self.radius, start);
        let two_pi = F::from_f64_lossy(2.0) * F::PI();
        let sweep = match o {
            Orientation::Counterclockwise => two_pi,
            Orientation::Clockwise => -two_pi,
        };
        Ok(vec![
            Segment::Line { from: self.base, to: attach },
            Segment::Arc { center, radius: self.radius, start, sweep },
            Segment::Line { from: attach, to: self.base },
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn loops_close_up() {
        for center in [LoopCenter::Zero, LoopCenter::One, LoopCenter::Infinity] {
            let spec = PathSpec::new(c(0.5, 0.25), center, 0.45);
            let segs = spec.segments().unwrap();
            assert!((segs[0].point(0.0) - spec.base).norm() < 1e-15);
            assert!((segs.last().unwrap().point(1.0) - spec.base).norm() < 1e-15);
            for w in segs.windows(2) {
                assert!((w[0].point(1.0) - w[1].point(0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn velocity_matches_finite_difference() {
        let arc = Segment::Arc { center: c(1.0, 0.0), radius: 0.45, start: 0.3, sweep: -6.0 };
        let line = Segment::Line { from: c(0.5, 0.25), to: c(0.1, -0.2) };
        for seg in [arc, line] {
            for s in [0.1, 0.5, 0.9] {
                let h = 1e-6;
                let fd = (seg.point(s + h) - seg.point(s - h)) / (2.0 * h);
                assert!((fd - seg.velocity(s)).norm() < 1e-6);
            }
        }
        assert!((arc.length() - 2.7).abs() < 1e-12);
    }

    #[test]
    fn margin_enforced() {
        // circle of radius 0.95 about 0 passes within 0.05 of 1
        let spec = PathSpec::new(c(0.5, 0.25), LoopCenter::Zero, 0.95);
        assert!(matches!(spec.segments(), Err(PfError::PathTooClose { .. })));
        // circle of radius 1.2 about 0 encloses 1
        let spec = PathSpec::new(c(0.5, 0.25), LoopCenter::Zero, 1.2);
        assert!(matches!(spec.segments(), Err(PfError::BadPath(_))));
        // tiny circle about 0 comes within 0.05 of 0
        let spec = PathSpec::new(c(0.5, 0.25), LoopCenter::Zero, 0.05);
        assert!(spec.segments().is_err());
        // base on the real axis between the points: radial legs pass near neither
        assert!(PathSpec::new(c(0.5, 0.0), LoopCenter::One, 0.45).segments().is_ok());
    }

    #[test]
    fn degenerate_loop_has_no_segments() {
        let spec = PathSpec::new(c(0.5, 0.25), LoopCenter::Zero, 0.0);
        assert!(spec.segments().unwrap().is_empty());
    }

    #[test]
    fn distance_to_line_and_circle() {
        let line = Segment::Line { from: c(0.0, 1.0), to: c(2.0, 1.0) };
        assert!((line.distance_to(c(1.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((line.distance_to(c(3.0, 1.0)) - 1.0).abs() < 1e-15);
        let circle = Segment::Arc { center: c(0.0, 0.0), radius: 0.45, start: 0.0, sweep: 2.0 * std::f64::consts::PI };
        assert!((circle.distance_to(c(1.0, 0.0)) - 0.55).abs() < 1e-15);
    }
}
