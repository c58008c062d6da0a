//! Bounded breadth-first search for words in `M0^{±1}`, `M1^{±1}` carrying
//! one integer class to another.
//!
//! Entries of images grow roughly geometrically with word length, so the
//! search is bounded both by word length and by entry magnitude. Failing to
//! find a word says nothing about whether one exists.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{m0, m1, FamilyParams};
use crate::{IntMat4, IntVec4};

pub const DEFAULT_MAX_LEN: usize = 12;
pub const DEFAULT_MAX_ABS_ENTRY: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Letter {
    M0,
    M1,
}

/// A freely reduced word, stored as runs `letter^exponent` with nonzero
/// exponents and no two adjacent runs on the same letter. Read left to right
/// as a product acting on row vectors: `v·W = v·w1·w2·…`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Word {
    runs: Vec<(Letter, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word from single steps, merging runs and cancelling.
    pub fn from_steps<I: IntoIterator<Item = (Letter, i64)>>(steps: I) -> Self {
        let mut w = Word::empty();
        for (l, e) in steps {
            w.push(l, e);
        }
        w
    }

    pub fn push(&mut self, letter: Letter, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((l, e)) if *l == letter => {
                *e += exp;
                if *e == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push((letter, exp)),
        }
    }

    pub fn runs(&self) -> &[(Letter, i64)] {
        &self.runs
    }

    /// Number of generator letters, counting multiplicity.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn matrix(&self, f: &FamilyParams) -> IntMat4 {
        let gens = Generators::new(f);
        self.runs.iter().fold(IntMat4::identity(), |acc, &(l, e)| {
            let g = gens.get(l, e.signum());
            &acc * &g.pow(e.unsigned_abs())
        })
    }

    pub fn apply(&self, v: &IntVec4, f: &FamilyParams) -> IntVec4 {
        let gens = Generators::new(f);
        let mut out = v.clone();
        for &(l, e) in &self.runs {
            let g = gens.get(l, e.signum());
            for _ in 0..e.unsigned_abs() {
                out = out.mul_mat(g);
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (l, e)) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l:?}")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        write!(f, "]")
    }
}

struct Generators {
    m0: IntMat4,
    m0_inv: IntMat4,
    m1: IntMat4,
    m1_inv: IntMat4,
}

impl Generators {
    fn new(f: &FamilyParams) -> Self {
        let g0 = m0(f);
        let g1 = m1();
        Generators {
            m0_inv: g0.try_inverse().expect("M0 is unimodular"),
            m1_inv: g1.try_inverse().expect("M1 is unimodular"),
            m0: g0,
            m1: g1,
        }
    }

    fn get(&self, l: Letter, sign: i64) -> &IntMat4 {
        match (l, sign > 0) {
            (Letter::M0, true) => &self.m0,
            (Letter::M0, false) => &self.m0_inv,
            (Letter::M1, true) => &self.m1,
            (Letter::M1, false) => &self.m1_inv,
        }
    }
}

const STEPS: [(Letter, i64); 4] = [(Letter::M0, 1), (Letter::M0, -1), (Letter::M1, 1), (Letter::M1, -1)];

struct Node {
    parent: usize,
    step: (Letter, i64),
}

/// Shortest word `W` with `seed·W = target`, searching words of length at
/// most `max_len` whose intermediate images keep every entry within
/// `max_abs_entry` in absolute value.
///
/// Each level is expanded in parallel; the result does not depend on the
/// schedule.
pub fn word_search(
    seed: &IntVec4,
    target: &IntVec4,
    f: &FamilyParams,
    max_len: usize,
    max_abs_entry: u64,
) -> Option<Word> {
    if seed == target {
        return Some(Word::empty());
    }
    let gens = &Generators::new(f);
    let bound = BigInt::from(max_abs_entry);
    let within = |v: &IntVec4| v.components().iter().all(|x| x.abs() <= bound);

    let mut nodes = vec![Node { parent: usize::MAX, step: (Letter::M0, 0) }];
    let mut seen: HashMap<IntVec4, usize> = HashMap::from([(seed.clone(), 0)]);
    let mut level: Vec<(usize, IntVec4)> = vec![(0, seed.clone())];

    for _ in 0..max_len {
        let nodes_ref = &nodes;
        let children: Vec<(usize, (Letter, i64), IntVec4)> = level
            .par_iter()
            .flat_map_iter(|(idx, v)| {
                let back = nodes_ref[*idx].step;
                STEPS
                    .iter()
                    .filter(move |&&(l, e)| !(l == back.0 && e == -back.1))
                    .map(move |&(l, e)| (*idx, (l, e), v.mul_mat(gens.get(l, e))))
            })
            .filter(|(_, _, w)| within(w))
            .collect();

        let mut next = Vec::new();
        for (parent, step, w) in children {
            if seen.contains_key(&w) {
                continue;
            }
            nodes.push(Node { parent, step });
            let id = nodes.len() - 1;
            if w == *target {
                return Some(reconstruct(&nodes, id));
            }
            seen.insert(w.clone(), id);
            next.push((id, w));
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    None
}

fn reconstruct(nodes: &[Node], mut id: usize) -> Word {
    let mut steps = Vec::new();
    while id != 0 {
        steps.push(nodes[id].step);
        id = nodes[id].parent;
    }
    steps.reverse();
    Word::from_steps(steps)
}
