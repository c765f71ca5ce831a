//! Freely reduced group words over the generators of a recursion system.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a generator inside its [`RecursionSystem`](crate::RecursionSystem).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A generator or the inverse of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: GenId,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: GenId) -> Self {
        Self {
            gen,
            inverse: false,
        }
    }

    pub fn neg(gen: GenId) -> Self {
        Self { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Self {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word; the empty word is the identity.
///
/// Words compose left to right: in `u.v` the automorphism `u` acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn generator(gen: GenId) -> Self {
        Self {
            letters: vec![Letter::pos(gen)],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends one letter, cancelling against the last one when they are
    /// mutually inverse.
    pub fn push(&mut self, letter: Letter) {
        if self.letters.last() == Some(&letter.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn append(&mut self, other: &GroupWord) {
        for &l in &other.letters {
            self.push(l);
        }
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, exp: i64) -> GroupWord {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut w = GroupWord::identity();
        for _ in 0..exp.unsigned_abs() {
            w.append(&base);
        }
        w
    }

    /// `c.self.c⁻¹`.
    pub fn conjugate_by(&self, c: &GroupWord) -> GroupWord {
        c.concat(self).concat(&c.inverse())
    }

    /// Re-reduces a letter sequence that may not be freely reduced.
    pub fn reduce(letters: &[Letter]) -> GroupWord {
        Self::from_letters(letters.iter().copied())
    }

    pub fn generators(&self) -> impl Iterator<Item = GenId> + '_ {
        self.letters.iter().map(|l| l.gen)
    }
}

/// One `name^exp` factor of an unresolved word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawFactor {
    pub name: String,
    pub exp: i64,
    /// Byte offset of the factor inside the parsed text.
    pub offset: usize,
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the word grammar `1 | factor (('*' | '.') factor)*` where
/// `factor := name ['^' signed-int]`. Whitespace is ignored.
pub fn parse_raw_word(text: &str) -> Result<Vec<RawFactor>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(Error::BadWord(
            "empty word (write `1` for the identity)".into(),
        ));
    }
    if bytes[pos] == b'1' {
        let mut end = pos + 1;
        skip_ws(&mut end);
        if end == bytes.len() {
            return Ok(Vec::new());
        }
    }
    let mut factors = Vec::new();
    loop {
        skip_ws(&mut pos);
        let start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
            pos += 1;
        }
        let name = &text[start..pos];
        if name == "1" {
            // explicit identity factor
        } else if !is_valid_name(name) {
            return Err(Error::BadWord(format!(
                "expected generator name at offset {start} in `{text}`"
            )));
        }
        skip_ws(&mut pos);
        let mut exp = 1i64;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            skip_ws(&mut pos);
            let num_start = pos;
            if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                pos += 1;
            }
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            exp = text[num_start..pos].parse().map_err(|_| {
                Error::BadWord(format!("bad exponent at offset {num_start} in `{text}`"))
            })?;
            skip_ws(&mut pos);
        }
        if name != "1" && exp != 0 {
            factors.push(RawFactor {
                name: name.to_string(),
                exp,
                offset: start,
            });
        }
        if pos == bytes.len() {
            break;
        }
        match bytes[pos] {
            b'*' | b'.' => pos += 1,
            _ => {
                return Err(Error::BadWord(format!(
                    "unexpected `{}` at offset {pos} in `{text}`",
                    text[pos..].chars().next().unwrap_or(' ')
                )))
            }
        }
    }
    Ok(factors)
}

/// Writes a word with `*` between factors, runs of one letter collapsed to
/// `x^k`, and `1` for the identity.
pub(crate) fn fmt_word(
    f: &mut fmt::Formatter<'_>,
    word: &GroupWord,
    name: impl Fn(GenId) -> String,
) -> fmt::Result {
    if word.is_identity() {
        return write!(f, "1");
    }
    let letters = word.letters();
    let mut i = 0;
    let mut first = true;
    while i < letters.len() {
        let mut j = i + 1;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let exp = (j - i) as i64 * letters[i].sign();
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if exp == 1 {
            write!(f, "{}", name(letters[i].gen))?;
        } else {
            write!(f, "{}^{}", name(letters[i].gen), exp)?;
        }
        i = j;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const A: GenId = GenId(0);
    const B: GenId = GenId(1);
    const C: GenId = GenId(2);

    fn w(ls: &[(GenId, bool)]) -> GroupWord {
        GroupWord::from_letters(ls.iter().map(|&(g, i)| Letter { gen: g, inverse: i }))
    }

    #[test]
    fn reduce_cancels() {
        assert!(w(&[(A, false), (A, true)]).is_identity());
        let long = [
            Letter::pos(A),
            Letter::pos(B),
            Letter::neg(B),
            Letter::neg(A),
            Letter::pos(C),
        ];
        assert_eq!(GroupWord::reduce(&long), GroupWord::generator(C));
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let u = w(&[(B, false), (C, false), (A, false)]);
        assert_eq!(u.inverse(), w(&[(A, true), (C, true), (B, true)]));
    }

    #[test]
    fn concat_reduces() {
        let ab = w(&[(A, false), (B, false)]);
        let binv = w(&[(B, true)]);
        assert_eq!(ab.concat(&binv), GroupWord::generator(A));
    }

    #[test]
    fn pow_and_conjugate() {
        let a = GroupWord::generator(A);
        assert_eq!(a.pow(3).len(), 3);
        assert_eq!(a.pow(-2), w(&[(A, true), (A, true)]));
        assert!(a.pow(0).is_identity());
        let b = GroupWord::generator(B);
        assert_eq!(a.conjugate_by(&b), w(&[(B, false), (A, false), (B, true)]));
        assert_eq!(a.conjugate_by(&a), a);
    }

    #[test]
    fn raw_word_grammar() {
        let f = parse_raw_word("b.c*a^-2 . b^3").unwrap();
        let got: Vec<(&str, i64)> = f.iter().map(|x| (x.name.as_str(), x.exp)).collect();
        assert_eq!(got, vec![("b", 1), ("c", 1), ("a", -2), ("b", 3)]);
        assert!(parse_raw_word("1").unwrap().is_empty());
        assert!(parse_raw_word(" 1 ").unwrap().is_empty());
        assert!(parse_raw_word("a^0").unwrap().is_empty());
        assert!(parse_raw_word("").is_err());
        assert!(parse_raw_word("a**b").is_err());
        assert!(parse_raw_word("a^").is_err());
        assert!(parse_raw_word("2a").is_err());
        assert!(parse_raw_word("a b").is_err());
    }

    fn letter() -> impl Strategy<Value = Letter> {
        (0u32..3, any::<bool>()).prop_map(|(g, inverse)| Letter {
            gen: GenId(g),
            inverse,
        })
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(ls in prop::collection::vec(letter(), 0..30)) {
            let once = GroupWord::reduce(&ls);
            let twice = GroupWord::reduce(once.letters());
            prop_assert_eq!(&once, &twice);
            for pair in once.letters().windows(2) {
                prop_assert_ne!(pair[0], pair[1].inv());
            }
        }

        #[test]
        fn inverse_cancels(ls in prop::collection::vec(letter(), 0..30)) {
            let u = GroupWord::reduce(&ls);
            prop_assert!(u.concat(&u.inverse()).is_identity());
            prop_assert!(u.inverse().concat(&u).is_identity());
        }
    }
}
