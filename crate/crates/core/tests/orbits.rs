use std::collections::{BTreeSet, VecDeque};

use cymono::algebra::TABLE_PRIMES;
use cymono::catalog::{catalog, family, m0, m1, quintic};
use cymono::conjecture::{conjecture_screen, ConjectureVerdict, TheoremLists};
use cymono::orbit::{orbit_mod_p, orbit_mod_p_literal, orbit_union, Seed};
use cymono::tables::{diff_rows, generate_tables, golden, SeedTag, Status, Table};
use cymono::word::word_search;
use cymono::{FamilyParams, IntMat4, IntVec4, Prime};
use num_traits::ToPrimitive;

fn prime(p: u32) -> Prime {
    Prime::new(p.into()).unwrap()
}

fn small(m: &IntMat4) -> [[i64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| m.get(i, j).to_i64().unwrap()))
}

/// Breadth-first orbit of `seed` under v ↦ v·M0, v ↦ v·M1 on plain residues.
fn oracle_orbit(f: &FamilyParams, p: u32, seed: [i64; 4]) -> BTreeSet<[i64; 4]> {
    let p = i64::from(p);
    let gens = [small(&m0(f)), small(&m1())];
    let start = seed.map(|x| x.rem_euclid(p));
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let w: [i64; 4] = std::array::from_fn(|j| (0..4).map(|i| v[i] * g[i][j]).sum::<i64>().rem_euclid(p));
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

fn as_set(members: &[cymono::ResidueVec4]) -> BTreeSet<[i64; 4]> {
    members.iter().map(|v| v.entries().map(i64::from)).collect()
}

#[test]
fn quintic_orbits_match_an_independent_search() {
    let f = quintic();
    for p in [2, 3, 5, 7] {
        for seed in [Seed::Delta2, Seed::Delta4] {
            let o = orbit_mod_p(&seed.vector(), prime(p), &f);
            let e = if seed == Seed::Delta2 { [0, 1, 0, 0] } else { [0, 0, 0, 1] };
            assert_eq!(as_set(o.members()), oracle_orbit(&f, p, e), "p={p} {seed:?}");
        }
    }
}

#[test]
fn all_families_match_an_independent_search_mod_small_primes() {
    for f in catalog() {
        for p in [2, 3, 5] {
            for e in [[0, 1, 0, 0], [0, 0, 0, 1], [1, 2, 0, 1]] {
                let o = orbit_mod_p(&IntVec4::from_i64(e), prime(p), &f);
                assert_eq!(as_set(o.members()), oracle_orbit(&f, p, e), "{f:?} p={p}");
            }
        }
    }
}

#[test]
fn quintic_small_orbits() {
    let f = quintic();
    let sizes: Vec<usize> = [(2, Seed::Delta2), (2, Seed::Delta4), (5, Seed::Delta2), (5, Seed::Delta4)]
        .iter()
        .map(|&(p, s)| orbit_mod_p(&s.vector(), prime(p), &f).len())
        .collect();
    assert_eq!(sizes, [5, 10, 25, 5]);
    let torus5 = orbit_mod_p(&Seed::Delta2.vector(), prime(5), &f);
    assert!(torus5.members().iter().all(|v| v.entries()[0] == 0 && v.entries()[1] == 1));
}

#[test]
fn literal_fixpoint_agrees_with_worklist() {
    for f in catalog() {
        for p in [2, 3, 5, 7] {
            for seed in [Seed::Delta2, Seed::Delta4] {
                let fast = orbit_mod_p(&seed.vector(), prime(p), &f);
                let slow = orbit_mod_p_literal(&seed.vector(), prime(p), &f);
                assert_eq!(fast.members(), slow.members(), "{f:?} p={p} {seed:?}");
            }
        }
    }
}

#[test]
fn mod_two_screen_splits_five_and_ten() {
    let lists = TheoremLists::regenerate().unwrap();
    let mut torus = 0;
    let mut sphere = 0;
    for bits in 1u8..16 {
        let v = IntVec4::from_i64(std::array::from_fn(|i| i64::from((bits >> (3 - i)) & 1)));
        match lists.mod_two_sides(&v) {
            (true, false) => torus += 1,
            (false, true) => sphere += 1,
            sides => panic!("{v} has mod-2 sides {sides:?}"),
        }
    }
    assert_eq!((torus, sphere), (5, 10));
    assert_eq!(conjecture_screen(&IntVec4::from_i64([0, 1, 0, 1])), ConjectureVerdict::TorusCandidate);
    assert_eq!(conjecture_screen(&IntVec4::from_i64([1, 1, 1, 1])), ConjectureVerdict::Neither);
}

#[test]
fn search_witnesses_reach_their_targets() {
    let f = quintic();
    for target in [[0, 1, 0, 1], [1, 1, 0, 0], [0, 0, 0, 1], [-1, 1, 0, 0]] {
        let target = IntVec4::from_i64(target);
        for seed in [Seed::Delta2, Seed::Delta4] {
            if let Some(w) = word_search(&seed.vector(), &target, &f, 6, 1_000) {
                assert_eq!(w.apply(&seed.vector(), &f), target);
            }
        }
    }
    let w = word_search(&Seed::Delta2.vector(), &IntVec4::from_i64([0, 1, 0, 1]), &f, 6, 1_000).unwrap();
    assert_eq!(w.to_string(), "[M1]");
}

#[test]
fn generated_tables_match_the_reference_data() {
    let primes: Vec<Prime> = TABLE_PRIMES.iter().map(|&p| prime(p)).collect();
    let tables = generate_tables(&primes);
    for t in [Table::Union, Table::Delta2, Table::Delta4] {
        let mismatches = diff_rows(tables.get(t), &golden(t));
        assert!(mismatches.is_empty(), "{t:?}: {mismatches:?}");
    }

    // The union table is the union of the two seeded tables, row by row.
    for (u, (a, b)) in tables.union.iter().zip(tables.delta2.iter().zip(&tables.delta4)) {
        assert_eq!((u.d, u.k, u.p), (a.d, a.k, a.p));
        assert_eq!((u.d, u.k, u.p), (b.d, b.k, b.p));
        let f = family(u.d, u.k).unwrap();
        let oa = orbit_mod_p(&Seed::Delta2.vector(), prime(u.p), &f);
        let ob = orbit_mod_p(&Seed::Delta4.vector(), prime(u.p), &f);
        let union = orbit_union(&oa, &ob).unwrap();
        match u.status {
            Status::Complete => assert_eq!(union.len() as u64, prime(u.p).space_size() - 1),
            Status::Listed => assert_eq!(u.vectors, union),
        }
    }

    // A complete row is exactly an orbit holding every nonzero residue vector.
    for row in tables.delta2.iter().chain(&tables.delta4) {
        let f = family(row.d, row.k).unwrap();
        let seed = if row.seed_tag == SeedTag::Delta2 { Seed::Delta2 } else { Seed::Delta4 };
        let o = orbit_mod_p(&seed.vector(), prime(row.p), &f);
        assert_eq!(row.status == Status::Complete, o.len() as u64 == prime(row.p).space_size() - 1);
    }
}
