//! Skew-symmetric bilinear forms preserved by a set of integer matrices.
//!
//! A form Ω is preserved by G when `G·Ω·Gᵀ = Ω`. Skewness is built into the
//! parametrisation: Ω is written in the basis `E(i,j) − E(j,i)`, i < j.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, IntMat4};

/// Upper-triangle positions, in the order used for the coordinates.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// An integer skew-symmetric 4×4 matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewForm(IntMat4);

impl SkewForm {
    pub fn new(omega: IntMat4) -> Result<Self, AlgebraError> {
        if omega.transpose() != -&omega {
            return Err(AlgebraError::NotSkew);
        }
        Ok(SkewForm(omega))
    }

    /// Builds Ω from its upper-triangle entries (Ω12, Ω13, Ω14, Ω23, Ω24, Ω34).
    pub fn from_upper(coords: [BigInt; 6]) -> Self {
        let mut m = IntMat4::zero();
        for ((i, j), c) in PAIRS.into_iter().zip(coords) {
            m.set(j, i, -c.clone());
            m.set(i, j, c);
        }
        SkewForm(m)
    }

    pub fn matrix(&self) -> &IntMat4 {
        &self.0
    }

    /// Pf(Ω) = Ω12·Ω34 − Ω13·Ω24 + Ω14·Ω23; det(Ω) = Pf(Ω)².
    pub fn pfaffian(&self) -> BigInt {
        let w = |i, j| self.0.get(i, j).clone();
        w(0, 1) * w(2, 3) - w(0, 2) * w(1, 3) + w(0, 3) * w(1, 2)
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.pfaffian().is_zero()
    }

    pub fn is_preserved_by(&self, g: &IntMat4) -> bool {
        &(g * &self.0) * &g.transpose() == self.0
    }
}

/// Basis of `{Ω skew : G·Ω·Gᵀ = Ω for every G in gens}`.
///
/// Solved over the rationals; each basis element is scaled to a primitive
/// integer matrix whose first nonzero upper-triangle entry is positive.
pub fn solve_invariant_skew_form(gens: &[IntMat4]) -> Vec<SkewForm> {
    // Column k holds the image of the k-th basis form under Ω ↦ G·Ω·Gᵀ − Ω.
    let mut rows: Vec<[BigRational; 6]> = Vec::new();
    for g in gens {
        let gt = g.transpose();
        let images: Vec<IntMat4> = PAIRS
            .iter()
            .map(|&(i, j)| {
                let e = &IntMat4::unit(i, j) - &IntMat4::unit(j, i);
                &(&(g * &e) * &gt) - &e
            })
            .collect();
        for r in 0..4 {
            for c in 0..4 {
                rows.push(std::array::from_fn(|k| {
                    BigRational::from_integer(images[k].get(r, c).clone())
                }));
            }
        }
    }
    nullspace(rows)
        .into_iter()
        .map(|v| SkewForm::from_upper(primitive(&v)))
        .collect()
}

fn nullspace(mut rows: Vec<[BigRational; 6]>) -> Vec<[BigRational; 6]> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..6 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in 0..6 {
                    let v = rows[i][c].clone() - f.clone() * rows[r][c].clone();
                    rows[i][c] = v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..6)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v: [BigRational; 6] = std::array::from_fn(|_| BigRational::zero());
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][free].clone();
            }
            v
        })
        .collect()
}

fn primitive(v: &[BigRational; 6]) -> [BigInt; 6] {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    std::array::from_fn(|k| &ints[k] / &gcd * &sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m0(d: i64, k: i64) -> IntMat4 {
        IntMat4::from_i64([[1, 1, 0, 0], [0, 1, 0, 0], [d, d, 1, 0], [0, -k, -1, 1]])
    }

    fn m1() -> IntMat4 {
        &IntMat4::identity() + &IntMat4::unit(1, 3)
    }

    #[test]
    fn identity_preserves_every_skew_form() {
        let basis = solve_invariant_skew_form(&[IntMat4::identity()]);
        assert_eq!(basis.len(), 6);
        for f in &basis {
            assert_eq!(f.matrix().transpose(), -f.matrix());
        }
    }

    #[test]
    fn quintic_generators_fix_a_line_of_forms() {
        let basis = solve_invariant_skew_form(&[m0(5, 5), m1()]);
        assert_eq!(basis.len(), 1);
        let omega = &basis[0];
        assert!(omega.is_nondegenerate());
        assert!(omega.is_preserved_by(&m0(5, 5)));
        assert!(omega.is_preserved_by(&m1()));
        assert_eq!(omega.matrix().det(), omega.pfaffian() * omega.pfaffian());
    }

    #[test]
    fn new_rejects_non_skew() {
        assert!(matches!(SkewForm::new(IntMat4::identity()), Err(AlgebraError::NotSkew)));
        assert!(SkewForm::new(&IntMat4::unit(0, 1) - &IntMat4::unit(1, 0)).is_ok());
    }

    #[test]
    fn primitive_normalisation() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let v = [r(0, 1), r(-2, 3), r(4, 3), r(0, 1), r(0, 1), r(2, 1)];
        let p = primitive(&v);
        let want: [BigInt; 6] = [0, 1, -2, 0, 0, -3].map(BigInt::from);
        assert_eq!(p, want);
    }
}
