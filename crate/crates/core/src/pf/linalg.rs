//! Small numeric helpers on complex 4×4 matrices, backed by nalgebra.

use nalgebra::Matrix4;
use num_complex::Complex;

use num_traits::Float;

use crate::scalar::Real;
use crate::Mat4;

pub fn to_nalgebra<F: Real>(m: &Mat4<Complex<F>>) -> Matrix4<Complex<F>> {
    Matrix4::from_fn(|i, j| *m.get(i, j))
}

/// Singular values, largest first.
pub fn singular_values<F: Real>(m: &Mat4<Complex<F>>) -> [F; 4] {
    let sv = to_nalgebra(m).singular_values();
    let mut out = [sv[0], sv[1], sv[2], sv[3]];
    out.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    out
}

pub fn spectral_norm<F: Real>(m: &Mat4<Complex<F>>) -> F {
    singular_values(m)[0]
}

pub fn frobenius_norm<F: Real>(m: &Mat4<Complex<F>>) -> F {
    Float::sqrt(m.rows().iter().flatten().fold(F::zero(), |acc, z| acc + z.norm_sqr()))
}

/// Rank with singular values below `rel · σ_max` treated as zero.
pub fn numeric_rank<F: Real>(m: &Mat4<Complex<F>>, rel: F) -> usize {
    let sv = singular_values(m);
    if sv[0] == F::zero() {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel * sv[0]).count()
}

/// Eigenvalues from the complex Schur form.
pub fn eigenvalues<F: Real>(m: &Mat4<Complex<F>>) -> Vec<Complex<F>> {
    let schur = to_nalgebra(m).schur();
    let t = schur.unpack().1;
    (0..4).map(|i| t[(i, i)]).collect()
}
