//! The fourteen hypergeometric families and their monodromy matrices.
//!
//! Each family is a pair `(d, k)` fixing the generator at φ = 0,
//!
//! ```text
//!       [ 1   1   0  0 ]
//! M0 =  [ 0   1   0  0 ]
//!       [ d   d   1  0 ]
//!       [ 0  -k  -1  1 ]
//! ```
//!
//! together with the exponents `(A, B)` of the operator
//! `θ⁴ − φ(θ+A)(θ+1−A)(θ+B)(θ+1−B)`. The generator at φ = 1 is the
//! transvection `M1 = Id + E(2,4)` for every family.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::algebra::{reduce_mat, Prime};
use crate::{IntMat4, IntVec4};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub d: u32,
    pub k: u32,
    /// Smaller exponent, in (0, 1/2].
    pub a: Rational64,
    /// Larger exponent, `a <= b < 1`.
    pub b: Rational64,
    /// The A-model complete intersection.
    pub label: &'static str,
}

const fn row(d: u32, k: u32, an: i64, ad: i64, bn: i64, bd: i64, label: &'static str) -> RawRow {
    RawRow { d, k, a: (an, ad), b: (bn, bd), label }
}

struct RawRow {
    d: u32,
    k: u32,
    a: (i64, i64),
    b: (i64, i64),
    label: &'static str,
}

const RAW: [RawRow; 14] = [
    row(5, 5, 1, 5, 2, 5, "X(5) ⊂ P^4"),
    row(2, 4, 1, 8, 3, 8, "X(8) ⊂ P^4(1,1,1,1,4)"),
    row(1, 4, 1, 12, 5, 12, "X(2,12) ⊂ P^5(1,1,1,1,4,6)"),
    row(16, 8, 1, 2, 1, 2, "X(2,2,2,2) ⊂ P^7"),
    row(12, 7, 1, 3, 1, 2, "X(2,2,3) ⊂ P^6"),
    row(8, 6, 1, 4, 1, 2, "X(2,4) ⊂ P^5"),
    row(4, 5, 1, 6, 1, 2, "X(2,6) ⊂ P^5(1,1,1,1,1,3)"),
    row(2, 3, 1, 4, 1, 3, "X(4,6) ⊂ P^5(1,1,1,2,2,3)"),
    row(1, 2, 1, 6, 1, 6, "X(6,6) ⊂ P^5(1,1,2,2,3,3)"),
    row(6, 5, 1, 6, 1, 4, "X(3,4) ⊂ P^5(1,1,1,1,1,2)"),
    row(3, 4, 1, 6, 1, 3, "X(6) ⊂ P^4(1,1,1,1,2)"),
    row(1, 3, 1, 10, 3, 10, "X(5) ⊂ P^4(1,1,1,2,5)"),
    row(4, 4, 1, 4, 1, 4, "X(4,4) ⊂ P^5(1,1,1,1,2,2)"),
    row(9, 6, 1, 3, 1, 3, "X(3,3) ⊂ P^5"),
];

/// All fourteen families, in table order.
pub fn catalog() -> Vec<FamilyParams> {
    RAW.iter()
        .map(|r| {
            FamilyParams::new(
                r.d,
                r.k,
                Rational64::new(r.a.0, r.a.1),
                Rational64::new(r.b.0, r.b.1),
                r.label,
            )
        })
        .collect()
}

/// Looks up a catalog family by `(d, k)`.
pub fn family(d: u32, k: u32) -> Option<FamilyParams> {
    catalog().into_iter().find(|f| f.d == d && f.k == k)
}

/// The mirror quintic, `(d, k) = (5, 5)`.
pub fn quintic() -> FamilyParams {
    family(5, 5).expect("quintic is in the catalog")
}

impl FamilyParams {
    /// Stores the exponents with `a <= b`.
    pub fn new(d: u32, k: u32, a: Rational64, b: Rational64, label: &'static str) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        FamilyParams { d, k, a, b, label }
    }

    pub fn m0(&self) -> IntMat4 {
        m0(self)
    }

    pub fn m_infinity(&self) -> IntMat4 {
        m_infinity(self)
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d, self.k)
    }
}

impl Serialize for FamilyParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[allow(non_snake_case)]
        struct Dump<'a> {
            d: u32,
            k: u32,
            A: String,
            B: String,
            label: &'a str,
        }
        Dump {
            d: self.d,
            k: self.k,
            A: self.a.to_string(),
            B: self.b.to_string(),
            label: self.label,
        }
        .serialize(s)
    }
}

pub fn m0(f: &FamilyParams) -> IntMat4 {
    let d = i64::from(f.d);
    let k = i64::from(f.k);
    IntMat4::from_i64([[1, 1, 0, 0], [0, 1, 0, 0], [d, d, 1, 0], [0, -k, -1, 1]])
}

pub fn m1() -> IntMat4 {
    &IntMat4::identity() + &IntMat4::unit(1, 3)
}

/// `(M0·M1)⁻¹`, so that `M0·M1·M∞ = Id`.
pub fn m_infinity(f: &FamilyParams) -> IntMat4 {
    (&m0(f) * &m1())
        .try_inverse()
        .expect("M0·M1 is unimodular")
}

/// Closed form of `M0^m`:
///
/// ```text
/// [ 1    m    0   0 ]
/// [ 0    1    0   0 ]
/// [ dm   a_m  1   0 ]
/// [ b_m  c_m  -m  1 ]
/// ```
///
/// with `a_m = d·m(m+1)/2`, `b_m = d·m(1−m)/2`, `c_m = d·m(1−m²)/6 − k·m`.
pub fn m0_power_closed_form(f: &FamilyParams, m: u64) -> IntMat4 {
    let d = BigInt::from(f.d);
    let k = BigInt::from(f.k);
    let m = BigInt::from(m);
    let one = BigInt::from(1);
    let zero = BigInt::from(0);
    // each quotient is taken before multiplying by d, so it is exact
    let a_m = &d * (&m * (&m + &one) / 2);
    let b_m = &d * (&m * (&one - &m) / 2);
    let c_m = &d * (&m * (&one - &m * &m) / 6) - &k * &m;
    IntMat4::from_rows([
        [one.clone(), m.clone(), zero.clone(), zero.clone()],
        [zero.clone(), one.clone(), zero.clone(), zero.clone()],
        [&d * &m, a_m, one.clone(), zero.clone()],
        [b_m, c_m, -m, one],
    ])
}

/// Other bases for the quintic monodromy, with the change-of-basis matrices
/// relating them to `M0(5,5)` and `M1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuinticBases {
    pub t0: IntMat4,
    pub t1: IntMat4,
    pub p: IntMat4,
    pub s1: IntMat4,
    pub s_inf: IntMat4,
    pub m: IntMat4,
}

pub fn quintic_bases() -> QuinticBases {
    QuinticBases {
        t0: IntMat4::from_i64([[1, 1, 0, 0], [0, 1, 5, 0], [0, 0, 1, 1], [0, 0, 0, 1]]),
        t1: IntMat4::from_i64([[1, 0, 0, 0], [-5, 1, 0, 0], [-1, 0, 1, 0], [-1, 0, 0, 1]]),
        p: IntMat4::from_i64([[0, 0, 0, -1], [0, 5, 1, 0], [1, 1, 0, 0], [0, 1, 0, 0]]),
        s_inf: IntMat4::from_i64([
            [51, 90, -25, 0],
            [0, 1, 0, 0],
            [100, 175, -49, 0],
            [-75, -125, 35, 1],
        ]),
        s1: IntMat4::from_i64([[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]]),
        m: IntMat4::from_i64([[3, 0, 1, 0], [0, 1, 0, 0], [5, 0, 2, 0], [0, 0, 0, 1]]),
    }
}

/// A single named pass/fail outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}", self.name)
    }
}

/// Conjugation checks between the quintic bases, against the standard
/// `M0(5,5)` and `M1`.
pub fn verify_identities() -> Vec<Check> {
    verify_identities_with(&quintic_bases(), &m0(&quintic()), &m1())
}

/// Same checks against caller-supplied matrices. Never panics: a singular
/// change of basis simply fails its checks.
pub fn verify_identities_with(bases: &QuinticBases, m0: &IntMat4, m1: &IntMat4) -> Vec<Check> {
    let conj = |c: &IntMat4, x: &IntMat4| c.try_inverse().ok().map(|ci| &(&ci * x) * c);
    let same = |lhs: Option<IntMat4>, rhs: &IntMat4| lhs.as_ref() == Some(rhs);
    let d2 = IntVec4::basis(1);
    let d4 = IntVec4::basis(3);
    vec![
        Check::new("P^-1 T0 P = M0", same(conj(&bases.p, &bases.t0), m0)),
        Check::new("P^-1 T1 P = M1", same(conj(&bases.p, &bases.t1), m1)),
        Check::new("M^-1 S1 M = M1", same(conj(&bases.m, &bases.s1), m1)),
        Check::new("M^-1 Sinf M = M0^5", same(conj(&bases.m, &bases.s_inf), &m0.pow(5))),
        Check::new("delta2 M = delta2", d2.mul_mat(&bases.m) == d2),
        Check::new("delta4 M = delta4", d4.mul_mat(&bases.m) == d4),
    ]
}

/// Exponent e with `M0^e ≡ Id (mod p)`: 4 for p = 2, 9 for p = 3, p otherwise.
pub fn lemma_exponent(p: Prime) -> u64 {
    match p.get() {
        2 => 4,
        3 => 9,
        q => u64::from(q),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub family: (u32, u32),
    pub prime: u32,
    pub exponent: u64,
    pub m0_identity: bool,
    pub m1_identity: bool,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.m0_identity && self.m1_identity
    }
}

pub fn verify_power_lemma(f: &FamilyParams, p: Prime) -> LemmaReport {
    verify_power_lemma_with(f, p, &m0(f), &m1())
}

pub fn verify_power_lemma_with(
    f: &FamilyParams,
    p: Prime,
    m0: &IntMat4,
    m1: &IntMat4,
) -> LemmaReport {
    let e = lemma_exponent(p);
    LemmaReport {
        family: (f.d, f.k),
        prime: p.get(),
        exponent: e,
        m0_identity: reduce_mat(&m0.pow(e), p).is_identity(),
        m1_identity: reduce_mat(&m1.pow(u64::from(p.get())), p).is_identity(),
    }
}
