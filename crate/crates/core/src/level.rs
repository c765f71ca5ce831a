//! Permutations induced on whole levels of the tree.
//!
//! Generator tables are built bottom-up: on level `n` a generator `x` sends
//! the vertex of rank `ε·d^(n-1) + r` to `σ_x(ε)·d^(n-1) + x_ε(r)`, where
//! `x_ε(r)` is read off the level `n-1` tables. A word then acts by composing
//! the tables of its letters.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::system::RecursionSystem;
use crate::tree::{unrank, Alphabet, VertexWord};
use crate::word::{GroupWord, Letter};

/// Default cap on `n · d^n` work units.
pub const DEFAULT_WORK_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub work_units: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            work_units: DEFAULT_WORK_BUDGET,
        }
    }
}

impl Budget {
    pub fn new(work_units: u64) -> Self {
        Self { work_units }
    }

    /// Fails unless `n · d^n` fits the budget.
    pub fn check_level(&self, alphabet: Alphabet, n: usize) -> Result<usize> {
        let size = (alphabet.degree() as u128).checked_pow(n as u32);
        let needed = size.map(|s| s.saturating_mul(n.max(1) as u128));
        match (size, needed) {
            (Some(size), Some(needed))
                if needed <= self.work_units as u128 && size <= u32::MAX as u128 =>
            {
                Ok(size as usize)
            }
            (_, needed) => Err(Error::BudgetExceeded {
                needed: needed.unwrap_or(u128::MAX),
                budget: self.work_units,
            }),
        }
    }
}

/// The permutation induced on the `d^n` vertices of level `n`, indexed by
/// rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelPermutation {
    level: usize,
    images: Vec<u32>,
}

impl LevelPermutation {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, rank: usize) -> usize {
        self.images[rank] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_structure(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lengths = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Cycle-length multiset as `length -> count`.
    pub fn cycle_type(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for l in self.cycle_structure() {
            *out.entry(l).or_insert(0) += 1;
        }
        out
    }

    /// Order as the lcm of the cycle lengths. Saturates at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.cycle_type()
            .keys()
            .fold(1u128, |acc, &l| lcm(acc, l as u128))
    }

    /// True when the permutation is a single cycle through every vertex.
    pub fn is_full_cycle(&self) -> bool {
        if self.images.is_empty() {
            return false;
        }
        let mut len = 1;
        let mut x = self.images[0] as usize;
        while x != 0 {
            len += 1;
            x = self.images[x] as usize;
        }
        len == self.images.len()
    }

    pub fn inverse(&self) -> LevelPermutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        LevelPermutation {
            level: self.level,
            images,
        }
    }

    /// Vertex-word form of the permutation, for display.
    pub fn vertex_images(&self, alphabet: Alphabet) -> Vec<(VertexWord, VertexWord)> {
        (0..self.images.len())
            .map(|r| {
                (
                    unrank(alphabet, r, self.level),
                    unrank(alphabet, self.apply(r), self.level),
                )
            })
            .collect()
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)).saturating_mul(b)
}

/// Level tables of every generator of a system, built up to some level.
#[derive(Debug, Clone)]
pub struct LevelTables<'a> {
    sys: &'a RecursionSystem,
    // tables[n][gen] and its inverse, images of ranks on level n.
    forward: Vec<Vec<Vec<u32>>>,
    backward: Vec<Vec<Vec<u32>>>,
}

impl<'a> LevelTables<'a> {
    /// Builds tables for levels `0..=n` after checking the budget.
    pub fn build(sys: &'a RecursionSystem, n: usize, budget: Budget) -> Result<Self> {
        budget.check_level(sys.alphabet(), n)?;
        let gens = sys.generator_count();
        let mut tables = Self {
            sys,
            forward: vec![vec![vec![0u32]; gens]],
            backward: vec![vec![vec![0u32]; gens]],
        };
        for _ in 0..n {
            tables.extend();
        }
        Ok(tables)
    }

    pub fn system(&self) -> &'a RecursionSystem {
        self.sys
    }

    pub fn max_level(&self) -> usize {
        self.forward.len() - 1
    }

    fn extend(&mut self) {
        let sys = self.sys;
        let d = sys.degree();
        let below = self.forward.len() - 1;
        let block = d.pow(below as u32);
        let mut fwd = Vec::with_capacity(sys.generator_count());
        for gen in sys.generators() {
            let def = sys.definition(gen);
            let mut table = vec![0u32; block * d];
            for e in 0..d {
                let sub = self.word_images(&def.sections[e], below);
                let target = def.root.apply(e) * block;
                for (r, &img) in sub.iter().enumerate() {
                    table[e * block + r] = (target + img as usize) as u32;
                }
            }
            fwd.push(table);
        }
        let bwd = fwd.iter().map(|t| invert(t)).collect();
        self.forward.push(fwd);
        self.backward.push(bwd);
    }

    fn letter_table(&self, l: Letter, level: usize) -> &[u32] {
        if l.inverse {
            &self.backward[level][l.gen.index()]
        } else {
            &self.forward[level][l.gen.index()]
        }
    }

    fn word_images(&self, u: &GroupWord, level: usize) -> Vec<u32> {
        let size = self.sys.degree().pow(level as u32);
        let mut images: Vec<u32> = (0..size as u32).collect();
        for &l in u.letters() {
            let table = self.letter_table(l, level);
            for img in images.iter_mut() {
                *img = table[*img as usize];
            }
        }
        images
    }

    /// Permutation of `u` on level `n ≤ max_level()`.
    pub fn permutation(&self, u: &GroupWord, n: usize) -> LevelPermutation {
        assert!(n <= self.max_level(), "level {n} beyond built tables");
        LevelPermutation {
            level: n,
            images: self.word_images(u, n),
        }
    }
}

fn invert(table: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; table.len()];
    for (i, &j) in table.iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    inv
}
