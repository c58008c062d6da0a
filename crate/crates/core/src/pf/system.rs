//! The Picard-Fuchs operator `θ⁴ − φ(θ+A)(θ+1−A)(θ+B)(θ+1−B)` as a
//! first-order system in the θ-frame.
//!
//! With `a = A(1−A)` and `b = B(1−B)`,
//! `(θ+A)(θ+1−A)(θ+B)(θ+1−B) = (θ²+θ+a)(θ²+θ+b)
//!  = θ⁴ + 2θ³ + (1+a+b)θ² + (a+b)θ + ab`,
//! so for `Y = (y, θy, θ²y, θ³y)` the equation reads `θY = N(φ)·Y` where `N`
//! is the shift matrix plus a last row `φ/(1−φ)·[ab, a+b, 1+a+b, 2]`.

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use super::PfError;
use crate::catalog::FamilyParams;
use crate::scalar::Real;
use crate::Mat4;

/// Exponents of the operator with the derived quadratic coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OdeParams {
    pub big_a: Rational64,
    pub big_b: Rational64,
    /// `A(1−A)`
    pub a: Rational64,
    /// `B(1−B)`
    pub b: Rational64,
}

impl OdeParams {
    pub fn new(big_a: Rational64, big_b: Rational64) -> Result<Self, PfError> {
        let zero = Rational64::zero();
        let one = Rational64::from(1);
        for x in [big_a, big_b] {
            if x <= zero || x >= one {
                return Err(PfError::Exponent(x.to_string()));
            }
        }
        Ok(OdeParams {
            big_a,
            big_b,
            a: big_a * (one - big_a),
            b: big_b * (one - big_b),
        })
    }

    pub fn of(f: &FamilyParams) -> Self {
        OdeParams::new(f.a, f.b).expect("catalog exponents lie in (0, 1)")
    }

    /// `[ab, a+b, 1+a+b, 2]`, the last-row coefficients before the φ/(1−φ) factor.
    pub fn last_row(&self) -> [Rational64; 4] {
        [self.a * self.b, self.a + self.b, Rational64::from(1) + self.a + self.b, Rational64::from(2)]
    }

    pub(crate) fn last_row_float<F: Real>(&self) -> [F; 4] {
        self.last_row().map(|r| F::from_f64_lossy(r.to_f64().expect("small rational")))
    }
}

/// `N(φ)` with `θY = N(φ)·Y`. Singular at φ = 1; at φ = 0 it is the
/// nilpotent shift, which is where the `φ⁻¹` of `dY/dφ = φ⁻¹N Y` blows up.
pub fn theta_frame_system<F: Real>(params: &OdeParams, phi: Complex<F>) -> Result<Mat4<Complex<F>>, PfError> {
    let one = Complex::new(F::one(), F::zero());
    if (one - phi).norm() == F::zero() {
        return Err(PfError::SingularPoint(format!("{phi}")));
    }
    Ok(theta_frame_unchecked(&params.last_row_float(), phi))
}

#[inline]
pub(crate) fn theta_frame_unchecked<F: Real>(row: &[F; 4], phi: Complex<F>) -> Mat4<Complex<F>> {
    let zero = Complex::new(F::zero(), F::zero());
    let one = Complex::new(F::one(), F::zero());
    let factor = phi / (one - phi);
    let mut n = Mat4::from_rows([[zero; 4]; 4]);
    for i in 0..3 {
        n.set(i, i + 1, one);
    }
    for (j, &c) in row.iter().enumerate() {
        n.set(3, j, factor * c);
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quintic() -> OdeParams {
        OdeParams::new(Rational64::new(1, 5), Rational64::new(2, 5)).unwrap()
    }

    #[test]
    fn quadratic_coefficients() {
        let p = quintic();
        assert_eq!(p.a, Rational64::new(4, 25));
        assert_eq!(p.b, Rational64::new(6, 25));
        assert_eq!(
            p.last_row(),
            [Rational64::new(24, 625), Rational64::new(2, 5), Rational64::new(7, 5), Rational64::from(2)]
        );
    }

    #[test]
    fn expansion_matches_product_of_linear_factors() {
        // evaluate both sides of the θ-polynomial identity at several points
        let p = quintic();
        let (big_a, big_b) = (p.big_a, p.big_b);
        let one = Rational64::from(1);
        let row = p.last_row();
        for t in [-3i64, -1, 0, 2, 5, 11] {
            let t = Rational64::from(t);
            let lhs = (t + big_a) * (t + one - big_a) * (t + big_b) * (t + one - big_b);
            let rhs = t * t * t * t + row[3] * t * t * t + row[2] * t * t + row[1] * t + row[0];
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn half_point_row() {
        let n = theta_frame_system::<f64>(&quintic(), Complex::new(0.5, 0.0)).unwrap();
        let expect = [24.0 / 625.0, 0.4, 1.4, 2.0];
        for j in 0..4 {
            assert!((n.get(3, j) - Complex::new(expect[j], 0.0)).norm() < 1e-15);
        }
        assert_eq!(*n.get(0, 1), Complex::new(1.0, 0.0));
        assert_eq!(*n.get(0, 0), Complex::new(0.0, 0.0));
    }

    #[test]
    fn nilpotent_at_origin() {
        let n = theta_frame_system::<f64>(&quintic(), Complex::new(0.0, 0.0)).unwrap();
        for j in 0..4 {
            assert_eq!(n.get(3, j).norm(), 0.0);
        }
        let n4 = n.pow(4);
        assert!(n4.rows().iter().flatten().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn rejects_singular_point_and_bad_exponents() {
        assert!(theta_frame_system::<f64>(&quintic(), Complex::new(1.0, 0.0)).is_err());
        assert!(OdeParams::new(Rational64::from(0), Rational64::new(1, 2)).is_err());
        assert!(OdeParams::new(Rational64::new(1, 2), Rational64::from(1)).is_err());
    }
}
