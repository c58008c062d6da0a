//! Dense 4×4 matrices and 4-vectors over a generic scalar ring.
//!
//! Indices are zero-based. Vectors are rows and act on the right: `v·A`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

use super::AlgebraError;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat4<T>([[T; 4]; 4]);

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Vec4<T>([T; 4]);

impl<T: Scalar> Mat4<T> {
    pub fn from_rows(rows: [[T; 4]; 4]) -> Self {
        Mat4(rows)
    }

    /// Builds a matrix from small integer literals.
    pub fn from_i64(rows: [[i64; 4]; 4]) -> Self
    where
        T: FromPrimitive,
    {
        Mat4(rows.map(|r| r.map(|x| T::from_i64(x).expect("i64 literal fits scalar"))))
    }

    pub fn zero() -> Self {
        Mat4(std::array::from_fn(|_| std::array::from_fn(|_| T::zero())))
    }

    pub fn identity() -> Self {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { T::one() } else { T::zero() })
        }))
    }

    /// The elementary matrix with a single one at `(i, j)`.
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.0[i][j] = T::one();
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.0[i][j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.0[i][j] = value;
    }

    pub fn rows(&self) -> &[[T; 4]; 4] {
        &self.0
    }

    pub fn row(&self, i: usize) -> Vec4<T> {
        Vec4(self.0[i].clone())
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, mut f: F) -> Mat4<U> {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| f(&self.0[i][j]))))
    }

    pub fn transpose(&self) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn trace(&self) -> T {
        (0..4).fold(T::zero(), |acc, i| acc + self.0[i][i].clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `self^m` by binary exponentiation; `self^0` is the identity.
    pub fn pow(&self, mut m: u64) -> Self {
        let mut acc = Self::identity();
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = &acc * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Determinant of the 3×3 submatrix obtained by deleting row `r` and column `c`.
    fn minor(&self, r: usize, c: usize) -> T {
        let rows: Vec<usize> = (0..4).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..4).filter(|&j| j != c).collect();
        let e = |i: usize, j: usize| self.0[rows[i]][cols[j]].clone();
        e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
            - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
    }

    fn cofactor(&self, r: usize, c: usize) -> T {
        let m = self.minor(r, c);
        if (r + c).is_multiple_of(2) {
            m
        } else {
            T::zero() - m
        }
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> T {
        (0..4).fold(T::zero(), |acc, j| acc + self.0[0][j].clone() * self.cofactor(0, j))
    }

    /// Classical adjugate: `a · adj(a) = det(a) · Id`.
    pub fn adjugate(&self) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| self.cofactor(j, i))))
    }

    /// Inverse in the scalar ring, via the adjugate.
    ///
    /// Over the integers this succeeds exactly when `det = ±1`.
    pub fn try_inverse(&self) -> Result<Self, AlgebraError> {
        let det = self.det();
        if det.is_zero() {
            return Err(AlgebraError::Singular);
        }
        let adj = self.adjugate();
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let a = &adj.0[i][j];
                let q = a.clone() / det.clone();
                if q.clone() * det.clone() != *a {
                    return Err(AlgebraError::NotInvertible(format!("{det:?}")));
                }
                out.0[i][j] = q;
            }
        }
        Ok(out)
    }

    /// Inverse over a field: adjugate scaled by `1/det`, no exactness check.
    /// Use this for rational and floating scalars.
    pub fn inverse_in_field(&self) -> Result<Self, AlgebraError> {
        let det = self.det();
        if det.is_zero() {
            return Err(AlgebraError::Singular);
        }
        let inv = T::one() / det;
        Ok(self.adjugate().scale(&inv))
    }

    /// Characteristic polynomial det(x·Id − a) by the Faddeev–LeVerrier
    /// recurrence, returned as `[1, c3, c2, c1, c0]` (highest degree first).
    ///
    /// The divisions by k = 1..4 are exact for integer matrices.
    pub fn charpoly(&self) -> [T; 5]
    where
        T: FromPrimitive,
    {
        let mut coeffs: [T; 5] = std::array::from_fn(|_| T::zero());
        coeffs[0] = T::one();
        let id = Self::identity();
        let mut aux = Self::zero();
        for k in 1..=4usize {
            aux = &(self * &aux) + &id.scale(&coeffs[k - 1]);
            let tr = (self * &aux).trace();
            let kk = T::from_usize(k).expect("small integer fits scalar");
            coeffs[k] = T::zero() - tr / kk;
        }
        coeffs
    }

    /// Rank by fraction-free (Bareiss) elimination. Exact for integer and
    /// rational scalars; for floating scalars use a singular-value test instead.
    pub fn rank(&self) -> usize {
        let mut m = self.0.clone();
        let mut prev = T::one();
        let mut rank = 0usize;
        for col in 0..4 {
            let Some(pivot) = (rank..4).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            for r in (rank + 1)..4 {
                for c in (col + 1)..4 {
                    let v = m[rank][col].clone() * m[r][c].clone()
                        - m[r][col].clone() * m[rank][c].clone();
                    m[r][c] = v / prev.clone();
                }
                m[r][col] = T::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
            if rank == 4 {
                break;
            }
        }
        rank
    }
}

impl<'a, T: Scalar> Mul<&'a Mat4<T>> for &'a Mat4<T> {
    type Output = Mat4<T>;

    fn mul(self, rhs: &'a Mat4<T>) -> Mat4<T> {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..4).fold(T::zero(), |acc, l| acc + self.0[i][l].clone() * rhs.0[l][j].clone())
            })
        }))
    }
}

impl<T: Scalar> Mul for Mat4<T> {
    type Output = Mat4<T>;

    fn mul(self, rhs: Mat4<T>) -> Mat4<T> {
        &self * &rhs
    }
}

impl<'a, T: Scalar> Add<&'a Mat4<T>> for &'a Mat4<T> {
    type Output = Mat4<T>;

    fn add(self, rhs: &'a Mat4<T>) -> Mat4<T> {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j].clone() + rhs.0[i][j].clone())
        }))
    }
}

impl<'a, T: Scalar> Sub<&'a Mat4<T>> for &'a Mat4<T> {
    type Output = Mat4<T>;

    fn sub(self, rhs: &'a Mat4<T>) -> Mat4<T> {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j].clone() - rhs.0[i][j].clone())
        }))
    }
}

impl<T: Scalar> Neg for &Mat4<T> {
    type Output = Mat4<T>;

    fn neg(self) -> Mat4<T> {
        self.map(|x| T::zero() - x.clone())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Mat4<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: Scalar> Vec4<T> {
    pub fn new(components: [T; 4]) -> Self {
        Vec4(components)
    }

    pub fn from_i64(components: [i64; 4]) -> Self
    where
        T: FromPrimitive,
    {
        Vec4(components.map(|x| T::from_i64(x).expect("i64 literal fits scalar")))
    }

    pub fn zero() -> Self {
        Vec4(std::array::from_fn(|_| T::zero()))
    }

    /// The i-th standard basis row vector (zero-based).
    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = T::one();
        v
    }

    pub fn components(&self) -> &[T; 4] {
        &self.0
    }

    pub fn into_components(self) -> [T; 4] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Right action `v·a`.
    pub fn mul_mat(&self, a: &Mat4<T>) -> Self {
        Vec4(std::array::from_fn(|j| {
            (0..4).fold(T::zero(), |acc, i| acc + self.0[i].clone() * a.0[i][j].clone())
        }))
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Vec4<U> {
        Vec4(self.0.each_ref().map(f))
    }
}

impl<T: Scalar> Add for &Vec4<T> {
    type Output = Vec4<T>;

    fn add(self, rhs: &Vec4<T>) -> Vec4<T> {
        Vec4(std::array::from_fn(|i| self.0[i].clone() + rhs.0[i].clone()))
    }
}

/// Parenthesised and space-separated: `(n1 n2 n3 n4)`.
impl<T: fmt::Display> fmt::Display for Vec4<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "({a} {b} {c} {d})")
    }
}

impl<T: Scalar> One for Mat4<T> {
    fn one() -> Self {
        Self::identity()
    }
}
