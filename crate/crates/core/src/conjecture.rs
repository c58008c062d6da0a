//! Screening of integer classes against the mod-2 / mod-5 torus and sphere
//! lists of the mirror quintic.
//!
//! A primitive class is a torus candidate when its reduction mod 2 lies in
//! `orb_2(δ2)` and its reduction mod 5 lies in `orb_5(δ2)`; a sphere
//! candidate when the same holds for `δ4`. The four lists are regenerated
//! from [`orbit_mod_p`] and checked against the published copies before use.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{reduce_vec, Prime, ResidueVec4};
use crate::catalog::quintic;
use crate::orbit::{orbit_mod_p, OrbitSet, Seed};
use crate::IntVec4;

const TORUS_MOD_2: [[u32; 4]; 5] = [[0, 0, 1, 1], [0, 1, 0, 0], [0, 1, 0, 1], [1, 0, 0, 1], [1, 0, 1, 1]];

const SPHERE_MOD_2: [[u32; 4]; 10] = [
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, 1, 1, 0],
    [0, 1, 1, 1],
    [1, 0, 0, 0],
    [1, 0, 1, 0],
    [1, 1, 0, 0],
    [1, 1, 0, 1],
    [1, 1, 1, 0],
    [1, 1, 1, 1],
];

const SPHERE_MOD_5: [[u32; 4]; 5] = [[0, 0, 0, 1], [0, 0, 1, 1], [0, 0, 2, 1], [0, 0, 3, 1], [0, 0, 4, 1]];

/// The 25 torus classes mod 5 are exactly `(0 1 x y)`.
fn torus_mod_5() -> Vec<[u32; 4]> {
    (0..5).flat_map(|x| (0..5).map(move |y| [0, 1, x, y])).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ConjectureVerdict {
    TorusCandidate,
    SphereCandidate,
    Neither,
    NotPrimitive,
    Zero,
}

impl fmt::Display for ConjectureVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("regenerated list {name} disagrees with the published copy")]
pub struct ListMismatch {
    pub name: &'static str,
}

/// The four reference lists, as orbits of the quintic.
#[derive(Clone, Debug)]
pub struct TheoremLists {
    pub torus_mod_2: OrbitSet,
    pub torus_mod_5: OrbitSet,
    pub sphere_mod_2: OrbitSet,
    pub sphere_mod_5: OrbitSet,
}

impl TheoremLists {
    /// Recomputes the lists and compares them with the published copies.
    pub fn regenerate() -> Result<Self, ListMismatch> {
        let q = quintic();
        let two = Prime::new(2).expect("2 is prime");
        let five = Prime::new(5).expect("5 is prime");
        let lists = TheoremLists {
            torus_mod_2: orbit_mod_p(&Seed::Delta2.vector(), two, &q),
            torus_mod_5: orbit_mod_p(&Seed::Delta2.vector(), five, &q),
            sphere_mod_2: orbit_mod_p(&Seed::Delta4.vector(), two, &q),
            sphere_mod_5: orbit_mod_p(&Seed::Delta4.vector(), five, &q),
        };
        let check = |name, o: &OrbitSet, golden: &[[u32; 4]]| {
            let got: Vec<[u32; 4]> = o.members().iter().map(ResidueVec4::entries).collect();
            if got == golden {
                Ok(())
            } else {
                Err(ListMismatch { name })
            }
        };
        check("torus mod 2", &lists.torus_mod_2, &TORUS_MOD_2)?;
        check("torus mod 5", &lists.torus_mod_5, &torus_mod_5())?;
        check("sphere mod 2", &lists.sphere_mod_2, &SPHERE_MOD_2)?;
        check("sphere mod 5", &lists.sphere_mod_5, &SPHERE_MOD_5)?;
        Ok(lists)
    }

    /// Process-wide lists, regenerated on first use.
    ///
    /// # Panics
    ///
    /// If regeneration disagrees with the published copies; every verdict
    /// would be meaningless in that case.
    pub fn shared() -> &'static TheoremLists {
        static LISTS: OnceLock<TheoremLists> = OnceLock::new();
        LISTS.get_or_init(|| TheoremLists::regenerate().expect("theorem lists regenerate"))
    }

    /// Membership of `v mod 2` in the torus and sphere lists, in that order.
    /// The two lists partition the nonzero residues, so exactly one holds
    /// for any `v` that is nonzero mod 2.
    pub fn mod_two_sides(&self, v: &IntVec4) -> (bool, bool) {
        let r2 = reduce_vec(v, self.torus_mod_2.prime);
        (self.torus_mod_2.contains(&r2), self.sphere_mod_2.contains(&r2))
    }

    pub fn screen(&self, v: &IntVec4) -> ConjectureVerdict {
        if v.is_zero() {
            return ConjectureVerdict::Zero;
        }
        if !primitive(v) {
            return ConjectureVerdict::NotPrimitive;
        }
        let r2 = reduce_vec(v, self.torus_mod_2.prime);
        let r5 = reduce_vec(v, self.torus_mod_5.prime);
        if self.torus_mod_2.contains(&r2) && self.torus_mod_5.contains(&r5) {
            ConjectureVerdict::TorusCandidate
        } else if self.sphere_mod_2.contains(&r2) && self.sphere_mod_5.contains(&r5) {
            ConjectureVerdict::SphereCandidate
        } else {
            ConjectureVerdict::Neither
        }
    }
}

/// gcd of the absolute values of the components is 1.
pub fn primitive(v: &IntVec4) -> bool {
    v.components()
        .iter()
        .fold(BigInt::zero(), |g, x| g.gcd(x))
        .is_one()
}

/// Screens `v` with the shared lists.
pub fn conjecture_screen(v: &IntVec4) -> ConjectureVerdict {
    TheoremLists::shared().screen(v)
}
