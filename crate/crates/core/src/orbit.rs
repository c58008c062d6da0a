//! Orbits of (Z/pZ)⁴ under the group generated by `M0` and `M1` mod p.
//!
//! Both generators are invertible mod p, so they permute the finite set
//! (Z/pZ)⁴. The smallest set containing the seed and stable under the two
//! generators is therefore already stable under their inverses, and equals
//! the full group orbit.

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::{reduce_mat, reduce_vec, Prime, ResidueMat4, ResidueVec4};
use crate::catalog::{m0, m1, FamilyParams};
use crate::IntVec4;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OrbitError {
    #[error("orbits belong to different primes ({0} vs {1})")]
    PrimeMismatch(u32, u32),
    #[error("orbits belong to different families ({0} vs {1})")]
    FamilyMismatch(String, String),
}

/// `orb_p(seed)` with its provenance. Members are sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSet {
    pub family: FamilyParams,
    pub prime: Prime,
    pub seed: IntVec4,
    members: Vec<ResidueVec4>,
}

impl OrbitSet {
    pub fn members(&self) -> &[ResidueVec4] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &ResidueVec4) -> bool {
        v.prime() == self.prime && self.members.binary_search(v).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        is_complete(self)
    }
}

/// True iff the orbit is all of (Z/pZ)⁴ minus the zero vector.
pub fn is_complete(o: &OrbitSet) -> bool {
    o.members.len() as u64 == o.prime.space_size() - 1 && !o.members.iter().any(ResidueVec4::is_zero)
}

/// The generators `M0`, `M1` of a family, reduced mod p.
pub fn generators_mod_p(f: &FamilyParams, p: Prime) -> [ResidueMat4; 2] {
    [reduce_mat(&m0(f), p), reduce_mat(&m1(), p)]
}

enum Visited {
    Bits(Vec<u64>),
    Hashed(HashSet<u64>),
}

impl Visited {
    // 2^27 bits = 16 MiB
    const BITSET_LIMIT: u64 = 1 << 27;

    fn new(p: Prime) -> Self {
        let n = p.space_size();
        if n <= Self::BITSET_LIMIT {
            Visited::Bits(vec![0; n.div_ceil(64) as usize])
        } else {
            Visited::Hashed(HashSet::new())
        }
    }

    /// Returns true if `key` was not present.
    fn insert(&mut self, key: u64) -> bool {
        match self {
            Visited::Bits(bits) => {
                let (w, b) = ((key / 64) as usize, key % 64);
                let fresh = bits[w] & (1 << b) == 0;
                bits[w] |= 1 << b;
                fresh
            }
            Visited::Hashed(set) => set.insert(key),
        }
    }
}

/// Smallest set containing `seed` and closed under right multiplication by
/// each generator. Sorted lexicographically.
pub fn closure(seed: ResidueVec4, gens: &[ResidueMat4]) -> Vec<ResidueVec4> {
    let p = seed.prime();
    assert!(gens.iter().all(|g| g.prime() == p), "generator modulus differs from seed");
    let mut visited = Visited::new(p);
    visited.insert(seed.pack());
    let mut members = vec![seed];
    let mut frontier = vec![seed];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = v.mul_mat_unchecked(g);
            if visited.insert(w.pack()) {
                members.push(w);
                frontier.push(w);
            }
        }
    }
    members.sort_unstable();
    members
}

/// `orb_p(seed)` for a family, by worklist closure under `M0`, `M1` mod p.
pub fn orbit_mod_p(seed: &IntVec4, p: Prime, f: &FamilyParams) -> OrbitSet {
    let members = closure(reduce_vec(seed, p), &generators_mod_p(f, p));
    OrbitSet { family: *f, prime: p, seed: seed.clone(), members }
}

/// The fixpoint iteration exactly as originally described: every known
/// vector `w` is mapped by `M1^j·M0^i` for all `0 <= i, j <= p`, new images
/// are appended, and passes repeat until one adds nothing.
///
/// Kept as a reference for [`orbit_mod_p`]; quadratic in p per vector.
pub fn orbit_mod_p_literal(seed: &IntVec4, p: Prime, f: &FamilyParams) -> OrbitSet {
    let [g0, g1] = generators_mod_p(f, p);
    let q = u64::from(p.get());
    let words: Vec<ResidueMat4> = (0..=q)
        .flat_map(|j| {
            let left = g1.pow(j);
            (0..=q).map(move |i| left.mul(&g0.pow(i)).expect("same modulus"))
        })
        .collect();
    let mut orb = vec![reduce_vec(seed, p)];
    let mut seen: HashSet<ResidueVec4> = orb.iter().copied().collect();
    loop {
        let snapshot_len = orb.len();
        for l in 0..snapshot_len {
            let w = orb[l];
            for word in &words {
                let v = w.mul_mat_unchecked(word);
                if seen.insert(v) {
                    orb.push(v);
                }
            }
        }
        if orb.len() == snapshot_len {
            break;
        }
    }
    orb.sort_unstable();
    OrbitSet { family: *f, prime: p, seed: seed.clone(), members: orb }
}

/// Sorted union of two orbits of the same family and prime.
pub fn orbit_union(a: &OrbitSet, b: &OrbitSet) -> Result<Vec<ResidueVec4>, OrbitError> {
    if a.prime != b.prime {
        return Err(OrbitError::PrimeMismatch(a.prime.get(), b.prime.get()));
    }
    if (a.family.d, a.family.k) != (b.family.d, b.family.k) {
        return Err(OrbitError::FamilyMismatch(a.family.to_string(), b.family.to_string()));
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.members.len() && j < b.members.len() {
        match a.members[i].cmp(&b.members[j]) {
            std::cmp::Ordering::Less => {
                out.push(a.members[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b.members[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a.members[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a.members[i..]);
    out.extend_from_slice(&b.members[j..]);
    Ok(out)
}

/// Seed tags used in the orbit tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Seed {
    Delta2,
    Delta4,
}

impl Seed {
    pub fn vector(self) -> IntVec4 {
        match self {
            Seed::Delta2 => IntVec4::basis(1),
            Seed::Delta4 => IntVec4::basis(3),
        }
    }
}
