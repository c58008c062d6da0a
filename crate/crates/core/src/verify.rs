//! The full exact verification suite run by `cymono verify`.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One};

use crate::algebra::{solve_invariant_skew_form, Prime, TABLE_PRIMES};
use crate::catalog::{
    catalog, m0, m0_power_closed_form, m1, quintic, quintic_bases, verify_identities_with,
    verify_power_lemma_with, Check,
};
use crate::IntMat4;

/// Largest power checked against the closed form of `M0^m`.
pub const CLOSED_FORM_MAX_POWER: u64 = 50;

/// Deliberate corruptions, for exercising the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to the (1,1) entry of `M1`.
    PerturbM1,
}

fn generator_m1(fault: Option<Fault>) -> IntMat4 {
    let mut g = m1();
    if fault == Some(Fault::PerturbM1) {
        let v = g.get(0, 0) + BigInt::one();
        g.set(0, 0, v);
    }
    g
}

pub fn run_verification(fault: Option<Fault>) -> Vec<Check> {
    let g1 = generator_m1(fault);
    let mut checks = verify_identities_with(&quintic_bases(), &m0(&quintic()), &g1);
    let unipotent: [BigInt; 5] = [1, -4, 6, -4, 1].map(|x| BigInt::from_i64(x).unwrap());

    for f in catalog() {
        let g0 = m0(&f);
        for p in TABLE_PRIMES {
            let prime = Prime::new(p.into()).expect("table primes are prime");
            let r = verify_power_lemma_with(&f, prime, &g0, &g1);
            checks.push(Check::new(
                format!("power lemma {f} p={p}: M0^{} = M1^{p} = Id mod {p}", r.exponent),
                r.passed(),
            ));
        }

        let mut power = IntMat4::identity();
        let mut closed_ok = true;
        for m in 1..=CLOSED_FORM_MAX_POWER {
            power = &power * &g0;
            closed_ok &= m0_power_closed_form(&f, m) == power;
        }
        checks.push(Check::new(
            format!("closed form {f}: M0^m for m = 1..{CLOSED_FORM_MAX_POWER}"),
            closed_ok,
        ));

        let id = IntMat4::identity();
        checks.push(Check::new(
            format!("unipotent {f}: charpoly (x-1)^4, rank(M0-Id) = 3, rank(M1-Id) = 1"),
            g0.charpoly() == unipotent
                && g1.charpoly() == unipotent
                && (&g0 - &id).rank() == 3
                && (&g1 - &id).rank() == 1,
        ));

        let basis = solve_invariant_skew_form(&[g0.clone(), g1.clone()]);
        let m_inf = (&g0 * &g1).try_inverse().ok();
        let skew_ok = basis.iter().any(|w| w.is_nondegenerate())
            && basis.iter().all(|w| {
                w.is_preserved_by(&g0)
                    && w.is_preserved_by(&g1)
                    && m_inf.as_ref().is_some_and(|mi| w.is_preserved_by(mi))
            });
        checks.push(Check::new(
            format!("invariant skew form {f}: nondegenerate, preserved by M0, M1, Minf"),
            skew_ok,
        ));
    }
    checks
}
