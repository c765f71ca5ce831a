//! Wreath recursion systems and the three basic operations on them:
//! expansion of a word into root permutation plus sections, the action on
//! vertex words, and sections at arbitrary vertices.
//!
//! A generator `x = σ[x_0, .., x_{d-1}]` acts by
//! `x(εw) = σ(ε) x_ε(w)`. Words compose left to right, so for `u = g.h` the
//! root permutation is `σ_h ∘ σ_g` and the section at `ε` is
//! `g_ε . h_{σ_g(ε)}`. Definitions may refer to any generator of the system,
//! including themselves; nothing is unfolded eagerly, and every step of the
//! recursion consumes one letter of the vertex word.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tree::{Alphabet, VertexWord};
use crate::word::{fmt_word, is_valid_name, parse_raw_word, GenId, GroupWord, Letter, RawFactor};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub root: Permutation,
    pub sections: Vec<GroupWord>,
}

/// Root permutation and sections of an arbitrary word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathDecomposition {
    pub root: Permutation,
    pub sections: Vec<GroupWord>,
}

#[derive(Debug, Clone)]
pub struct RecursionSystem {
    alphabet: Alphabet,
    names: Vec<String>,
    index: HashMap<String, GenId>,
    defs: Vec<Definition>,
    relators: Vec<GroupWord>,
    // Per generator: σ⁻¹ and the sections of the inverse, x⁻¹_ε = (x_{σ⁻¹(ε)})⁻¹.
    inverse_defs: Vec<Definition>,
}

impl PartialEq for RecursionSystem {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.names == other.names
            && self.defs == other.defs
            && self.relators == other.relators
    }
}

impl Eq for RecursionSystem {}

impl RecursionSystem {
    /// Assembles a system from resolved definitions, checking every structural
    /// invariant.
    pub fn new(
        alphabet: Alphabet,
        generators: Vec<(String, Definition)>,
        relators: Vec<GroupWord>,
    ) -> Result<Self> {
        let d = alphabet.degree();
        let count = generators.len();
        let mut names = Vec::with_capacity(count);
        let mut index = HashMap::with_capacity(count);
        let mut defs = Vec::with_capacity(count);
        for (i, (name, def)) in generators.into_iter().enumerate() {
            if !is_valid_name(&name) {
                return Err(Error::InvalidName(name));
            }
            if index.insert(name.clone(), GenId(i as u32)).is_some() {
                return Err(Error::DuplicateGenerator(name));
            }
            if def.root.degree() != d {
                return Err(Error::DegreeMismatch {
                    expected: d,
                    actual: def.root.degree(),
                });
            }
            if def.sections.len() != d {
                return Err(Error::SectionCount {
                    name,
                    expected: d,
                    actual: def.sections.len(),
                });
            }
            names.push(name);
            defs.push(def);
        }
        for w in defs.iter().flat_map(|d| d.sections.iter()).chain(&relators) {
            if let Some(g) = w.generators().find(|g| g.index() >= count) {
                return Err(Error::UndefinedSymbol(format!("generator #{}", g.0)));
            }
        }
        let inverse_defs = defs
            .iter()
            .map(|def| {
                let root = def.root.inverse();
                let sections = (0..d)
                    .map(|e| def.sections[root.apply(e)].inverse())
                    .collect();
                Definition { root, sections }
            })
            .collect();
        Ok(Self {
            alphabet,
            names,
            index,
            defs,
            relators,
            inverse_defs,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.alphabet.degree()
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = GenId> {
        (0..self.names.len() as u32).map(GenId)
    }

    pub fn name(&self, gen: GenId) -> &str {
        &self.names[gen.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn definition(&self, gen: GenId) -> &Definition {
        &self.defs[gen.index()]
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    fn letter_def(&self, letter: Letter) -> &Definition {
        if letter.inverse {
            &self.inverse_defs[letter.gen.index()]
        } else {
            &self.defs[letter.gen.index()]
        }
    }

    /// Resolves factors against this system's generator names.
    pub fn resolve(&self, factors: &[RawFactor]) -> Result<GroupWord> {
        let mut w = GroupWord::identity();
        for f in factors {
            let gen = self
                .lookup(&f.name)
                .ok_or_else(|| Error::UndefinedSymbol(f.name.clone()))?;
            let letter = if f.exp < 0 {
                Letter::neg(gen)
            } else {
                Letter::pos(gen)
            };
            for _ in 0..f.exp.unsigned_abs() {
                w.push(letter);
            }
        }
        Ok(w)
    }

    /// Parses a word such as `b.c.a^-1` or `b*c*a^-1` over this system.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        self.resolve(&parse_raw_word(text)?)
    }

    pub fn parse_vertex(&self, text: &str) -> Result<VertexWord> {
        VertexWord::parse_digits(self.alphabet, text)
    }

    pub fn display<'a>(&'a self, word: &'a GroupWord) -> WordDisplay<'a> {
        WordDisplay { sys: self, word }
    }

    pub fn display_decomposition<'a>(
        &'a self,
        dec: &'a WreathDecomposition,
    ) -> DecompositionDisplay<'a> {
        DecompositionDisplay { sys: self, dec }
    }

    /// Image of `letter` under `u` together with the section `u_letter`.
    pub fn step(&self, u: &GroupWord, letter: usize) -> (usize, GroupWord) {
        let mut current = letter;
        let mut section = GroupWord::identity();
        for &l in u.letters() {
            let def = self.letter_def(l);
            section.append(&def.sections[current]);
            current = def.root.apply(current);
        }
        (current, section)
    }

    /// Root permutation of `u`.
    pub fn root_permutation(&self, u: &GroupWord) -> Permutation {
        let mut root = Permutation::identity(self.degree());
        for &l in u.letters() {
            root = root.then(&self.letter_def(l).root);
        }
        root
    }

    /// The wreath recursion `u = σ_u[u_0, .., u_{d-1}]` of an arbitrary word.
    pub fn expand(&self, u: &GroupWord) -> WreathDecomposition {
        let d = self.degree();
        let mut images: Vec<usize> = (0..d).collect();
        let mut sections = vec![GroupWord::identity(); d];
        for &l in u.letters() {
            let def = self.letter_def(l);
            for e in 0..d {
                sections[e].append(&def.sections[images[e]]);
                images[e] = def.root.apply(images[e]);
            }
        }
        let root = Permutation::from_images(images).expect("composition of bijections");
        WreathDecomposition { root, sections }
    }

    /// Image of the vertex `w` under `u`.
    pub fn act(&self, u: &GroupWord, w: &VertexWord) -> Result<VertexWord> {
        let mut out = Vec::with_capacity(w.len());
        let mut current = u.clone();
        for &e in w.letters() {
            self.alphabet.check_letter(e)?;
            if current.is_identity() {
                out.push(e);
                continue;
            }
            let (image, section) = self.step(&current, e);
            out.push(image);
            current = section;
        }
        Ok(VertexWord::from_letters_unchecked(out))
    }

    /// The section (renormalization) of `u` at the vertex `v`.
    pub fn section(&self, u: &GroupWord, v: &VertexWord) -> Result<GroupWord> {
        let mut current = u.clone();
        for &e in v.letters() {
            self.alphabet.check_letter(e)?;
            if current.is_identity() {
                break;
            }
            current = self.step(&current, e).1;
        }
        Ok(current)
    }
}

pub struct WordDisplay<'a> {
    sys: &'a RecursionSystem,
    word: &'a GroupWord,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(f, self.word, |g| self.sys.name(g).to_string())
    }
}

/// `(0 1) [c*b, a, b*a]`; the permutation is omitted when trivial.
pub struct DecompositionDisplay<'a> {
    sys: &'a RecursionSystem,
    dec: &'a WreathDecomposition,
}

impl fmt::Display for DecompositionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_decomposition(f, self.sys, &self.dec.root, &self.dec.sections)
    }
}

pub(crate) fn fmt_decomposition(
    f: &mut fmt::Formatter<'_>,
    sys: &RecursionSystem,
    root: &Permutation,
    sections: &[GroupWord],
) -> fmt::Result {
    if !root.is_identity() {
        write!(f, "{root} ")?;
    }
    write!(f, "[")?;
    for (i, s) in sections.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{}", sys.display(s))?;
    }
    write!(f, "]")
}

/// Programmatic construction with forward references, mostly for tests and
/// embedding.
#[derive(Debug, Clone)]
pub struct SystemBuilder {
    degree: usize,
    generators: Vec<(String, String, Vec<String>)>,
    relators: Vec<String>,
}

impl SystemBuilder {
    pub fn new(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    /// Adds `name = cycles [sections..]`, e.g. `("a", "(0 1)", &["b", "1"])`.
    pub fn generator(mut self, name: &str, cycles: &str, sections: &[&str]) -> Self {
        self.generators.push((
            name.to_string(),
            cycles.to_string(),
            sections.iter().map(|s| s.to_string()).collect(),
        ));
        self
    }

    pub fn relator(mut self, word: &str) -> Self {
        self.relators.push(word.to_string());
        self
    }

    pub fn build(self) -> Result<RecursionSystem> {
        let alphabet = Alphabet::new(self.degree)?;
        let mut index = HashMap::new();
        for (i, (name, _, _)) in self.generators.iter().enumerate() {
            if index.insert(name.clone(), GenId(i as u32)).is_some() {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
        }
        let resolve = |text: &str| -> Result<GroupWord> {
            let factors = parse_raw_word(text)?;
            let mut w = GroupWord::identity();
            for f in factors {
                let gen = *index
                    .get(&f.name)
                    .ok_or_else(|| Error::UndefinedSymbol(f.name.clone()))?;
                let l = if f.exp < 0 {
                    Letter::neg(gen)
                } else {
                    Letter::pos(gen)
                };
                for _ in 0..f.exp.unsigned_abs() {
                    w.push(l);
                }
            }
            Ok(w)
        };
        let mut gens = Vec::with_capacity(self.generators.len());
        for (name, cycles, sections) in &self.generators {
            let root = Permutation::parse_cycles(self.degree, cycles)?;
            let sections = sections
                .iter()
                .map(|s| resolve(s))
                .collect::<Result<Vec<_>>>()?;
            gens.push((name.clone(), Definition { root, sections }));
        }
        let relators = self
            .relators
            .iter()
            .map(|r| resolve(r))
            .collect::<Result<Vec<_>>>()?;
        RecursionSystem::new(alphabet, gens, relators)
    }
}
