//! The regular rooted tree: alphabets, vertex words and the canonical
//! ranking of each level.
//!
//! Ranks are leftmost-significant: the first letter of a vertex word is the
//! one nearest the root and carries the weight `d^(n-1)`. With this choice the
//! children of the vertex of rank `r` on level `n` are exactly the ranks
//! `r*d .. r*d + d` on level `n + 1`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported alphabet size.
pub const MAX_DEGREE: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    degree: usize,
}

impl Alphabet {
    pub fn new(degree: usize) -> Result<Self> {
        if !(2..=MAX_DEGREE).contains(&degree) {
            return Err(Error::InvalidDegree(degree));
        }
        Ok(Self { degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn letters(&self) -> std::ops::Range<usize> {
        0..self.degree
    }

    pub fn check_letter(&self, letter: usize) -> Result<()> {
        if letter < self.degree {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                letter,
                degree: self.degree,
            })
        }
    }

    /// Number of vertices on level `n`, or `None` on overflow.
    pub fn level_size(&self, n: usize) -> Option<usize> {
        self.degree.checked_pow(u32::try_from(n).ok()?)
    }
}

/// A vertex of the tree, written as the path of letters from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexWord {
    letters: Vec<usize>,
}

impl VertexWord {
    pub fn root() -> Self {
        Self::default()
    }

    pub fn new(alphabet: Alphabet, letters: Vec<usize>) -> Result<Self> {
        for &l in &letters {
            alphabet.check_letter(l)?;
        }
        Ok(Self { letters })
    }

    /// Parses a bare digit string such as `0120`. Only letters below 10 can be
    /// written this way.
    pub fn parse_digits(alphabet: Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut letters = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let digit = ch
                .to_digit(10)
                .ok_or_else(|| Error::BadVertexWord(text.to_string()))?;
            letters.push(digit as usize);
        }
        Self::new(alphabet, letters)
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<usize>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: usize) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &VertexWord) -> VertexWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        VertexWord { letters }
    }
}

impl fmt::Display for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|&l| l < 10) {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

/// Rank of `w` among the `d^n` vertices of level `n`.
pub fn rank(alphabet: Alphabet, w: &VertexWord, n: usize) -> Result<usize> {
    if w.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: w.len(),
        });
    }
    let d = alphabet.degree();
    let mut r = 0usize;
    for &l in w.letters() {
        alphabet.check_letter(l)?;
        r = r
            .checked_mul(d)
            .and_then(|r| r.checked_add(l))
            .ok_or(Error::BudgetExceeded {
                needed: u128::MAX,
                budget: u64::MAX,
            })?;
    }
    Ok(r)
}

/// Inverse of [`rank`]. `r` must be below `d^n`.
pub fn unrank(alphabet: Alphabet, mut r: usize, n: usize) -> VertexWord {
    let d = alphabet.degree();
    let mut letters = vec![0; n];
    for slot in letters.iter_mut().rev() {
        *slot = r % d;
        r /= d;
    }
    VertexWord { letters }
}
