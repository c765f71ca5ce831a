//! Permutations of the alphabet and their cycle notation.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, .., d-1}`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::NotABijection);
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation of `degree` letters from disjoint cycles.
    pub fn from_cycle_list(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &l in cycle {
                if l >= degree {
                    return Err(Error::LetterOutOfRange { letter: l, degree });
                }
                if used[l] {
                    return Err(Error::RepeatedLetter(l));
                }
                used[l] = true;
            }
            for (i, &l) in cycle.iter().enumerate() {
                images[l] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// Parses cycle notation such as `(0,1)(2 3)`. Separators inside a cycle
    /// are commas or whitespace; the empty string is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::BadCycles(format!("expected `(` in `{text}`")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::BadCycles(format!("unclosed cycle in `{text}`")));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(Error::BadCycles(format!("nested `(` in `{text}`")));
            }
            let mut cycle = Vec::new();
            for tok in inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
            {
                let l: usize = tok
                    .parse()
                    .map_err(|_| Error::BadCycles(format!("bad letter `{tok}`")))?;
                cycle.push(l);
            }
            if cycle.is_empty() {
                return Err(Error::BadCycles(format!("empty cycle in `{text}`")));
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycle_list(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, letter: usize) -> usize {
        self.images[letter]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// Apply `self` first, then `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        next.compose(self)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Non-trivial cycles, each starting at its smallest letter, ordered by
    /// that letter.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// The cycle through `letter`, starting at `letter`.
    pub fn orbit(&self, letter: usize) -> Vec<usize> {
        let mut orbit = vec![letter];
        let mut x = self.images[letter];
        while x != letter {
            orbit.push(x);
            x = self.images[x];
        }
        orbit
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, j)| i == *j)
            .map(|(i, _)| i)
    }
}

/// Canonical cycle notation: `(0 1)(2 3)`, empty for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            let parts: Vec<String> = cycle.iter().map(|l| l.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}
