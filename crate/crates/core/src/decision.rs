//! Deciding whether words act trivially: by checking whole levels, or by
//! building a finite section-closed set of words with trivial root
//! permutations (which then all act as the identity on the whole tree).

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::Result;
use crate::level::{Budget, LevelPermutation, LevelTables};
use crate::system::RecursionSystem;
use crate::tree::VertexWord;
use crate::word::GroupWord;

/// Limits for [`prove_identity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureBudget {
    pub max_members: usize,
    pub max_word_len: usize,
}

impl Default for ClosureBudget {
    fn default() -> Self {
        Self {
            max_members: 10_000,
            max_word_len: 512,
        }
    }
}

/// A finite set of words, closed under sections, whose root permutations are
/// all trivial. Every member is the identity automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCertificate {
    /// Members in discovery order; the first is the queried word.
    pub members: Vec<GroupWord>,
}

impl IdentityCertificate {
    /// Re-checks the certificate from scratch against `sys`.
    pub fn verify(&self, sys: &RecursionSystem, queried: &GroupWord) -> bool {
        let set: HashSet<&GroupWord> = self.members.iter().collect();
        if !set.contains(queried) {
            return false;
        }
        self.members.iter().all(|m| {
            let dec = sys.expand(m);
            dec.root.is_identity()
                && dec
                    .sections
                    .iter()
                    .all(|s| s.is_identity() || set.contains(s))
        })
    }
}

/// A vertex fixed by the queried word at which the section's root
/// permutation moves `letter`; the word therefore moves `vertex·letter`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonIdentityWitness {
    pub vertex: VertexWord,
    pub letter: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityVerdict {
    Identity(IdentityCertificate),
    NotIdentity(NonIdentityWitness),
    Inconclusive { explored: usize },
}

/// Breadth-first closure of sections starting at `u`.
///
/// Vertices are visited level by level and, within a level, in
/// lexicographic order, so the reported witness is a shortest one with the
/// smallest letter.
pub fn prove_identity(
    sys: &RecursionSystem,
    u: &GroupWord,
    budget: ClosureBudget,
) -> IdentityVerdict {
    let mut members: Vec<GroupWord> = vec![u.clone()];
    let mut index: HashMap<GroupWord, usize> = HashMap::new();
    index.insert(u.clone(), 0);
    let mut queue: VecDeque<(usize, VertexWord)> = VecDeque::new();
    queue.push_back((0, VertexWord::root()));
    let mut exhausted = false;

    while let Some((i, vertex)) = queue.pop_front() {
        let dec = sys.expand(&members[i]);
        if let Some(letter) = (0..sys.degree()).find(|&e| dec.root.apply(e) != e) {
            return IdentityVerdict::NotIdentity(NonIdentityWitness { vertex, letter });
        }
        for (e, s) in dec.sections.into_iter().enumerate() {
            if s.is_identity() || index.contains_key(&s) {
                continue;
            }
            if s.len() > budget.max_word_len || members.len() >= budget.max_members {
                exhausted = true;
                continue;
            }
            let mut child = vertex.clone();
            child.push(e);
            index.insert(s.clone(), members.len());
            queue.push_back((members.len(), child));
            members.push(s);
        }
    }
    if exhausted {
        IdentityVerdict::Inconclusive {
            explored: members.len(),
        }
    } else {
        IdentityVerdict::Identity(IdentityCertificate { members })
    }
}

/// Permutation of `u` on level `n`.
pub fn level_permutation(
    sys: &RecursionSystem,
    u: &GroupWord,
    n: usize,
    budget: Budget,
) -> Result<LevelPermutation> {
    let tables = LevelTables::build(sys, n, budget)?;
    Ok(tables.permutation(u, n))
}

/// Whether `u` fixes every vertex of length at most `n`.
pub fn trivial_up_to_level(
    sys: &RecursionSystem,
    u: &GroupWord,
    n: usize,
    budget: Budget,
) -> Result<bool> {
    if u.is_identity() {
        return Ok(true);
    }
    // Fixing level n fixes every level above it.
    Ok(level_permutation(sys, u, n, budget)?.is_identity())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityMode {
    Level(usize),
    Prove(ClosureBudget),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equality {
    /// Agreement on every level up to `n`.
    EqualUpToLevel(usize),
    /// Disagreement at or above level `n`.
    DifferUpToLevel(usize),
    Proved(IdentityCertificate),
    Refuted(NonIdentityWitness),
    Inconclusive,
}

impl Equality {
    /// `Some(true)` / `Some(false)` for a definite answer in either mode.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Equality::EqualUpToLevel(_) | Equality::Proved(_) => Some(true),
            Equality::DifferUpToLevel(_) | Equality::Refuted(_) => Some(false),
            Equality::Inconclusive => None,
        }
    }
}

/// Compares `u` and `v` through `u.v⁻¹`.
pub fn equal(
    sys: &RecursionSystem,
    u: &GroupWord,
    v: &GroupWord,
    mode: EqualityMode,
    budget: Budget,
) -> Result<Equality> {
    let quotient = u.concat(&v.inverse());
    Ok(match mode {
        EqualityMode::Level(n) => {
            if trivial_up_to_level(sys, &quotient, n, budget)? {
                Equality::EqualUpToLevel(n)
            } else {
                Equality::DifferUpToLevel(n)
            }
        }
        EqualityMode::Prove(closure) => match prove_identity(sys, &quotient, closure) {
            IdentityVerdict::Identity(c) => Equality::Proved(c),
            IdentityVerdict::NotIdentity(w) => Equality::Refuted(w),
            IdentityVerdict::Inconclusive { .. } => Equality::Inconclusive,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::SystemBuilder;

    fn basilica() -> RecursionSystem {
        SystemBuilder::new(2)
            .generator("a", "(0 1)", &["b", "1"])
            .generator("b", "", &["a", "1"])
            .build()
            .unwrap()
    }

    fn chebyshev3() -> RecursionSystem {
        SystemBuilder::new(3)
            .generator("a", "(0 1)", &["1", "1", "a"])
            .generator("b", "(1 2)", &["b", "1", "1"])
            .build()
            .unwrap()
    }

    #[test]
    fn basilica_relator_certified() {
        let sys = basilica();
        let r = sys.parse_word("b^-1.a^-1.b^-1.a.b.a^-1.b.a").unwrap();
        match prove_identity(&sys, &r, ClosureBudget::default()) {
            IdentityVerdict::Identity(cert) => {
                assert!(cert.verify(&sys, &r));
                assert_eq!(cert.members, vec![r.clone()]);
            }
            other => panic!("expected certificate, got {other:?}"),
        }
        assert!(trivial_up_to_level(&sys, &r, 10, Budget::default()).unwrap());
    }

    #[test]
    fn basilica_a_witness() {
        let sys = basilica();
        let a = sys.parse_word("a").unwrap();
        assert_eq!(
            prove_identity(&sys, &a, ClosureBudget::default()),
            IdentityVerdict::NotIdentity(NonIdentityWitness {
                vertex: VertexWord::root(),
                letter: 0
            })
        );
        assert!(!trivial_up_to_level(&sys, &a, 1, Budget::default()).unwrap());
    }

    #[test]
    fn deeper_witness_is_shortest() {
        // a^2 = [b, b]; b moves nothing at the root, b = [a, 1], so the first
        // moved vertex is 00 -> 01.
        let sys = basilica();
        let a2 = sys.parse_word("a^2").unwrap();
        let IdentityVerdict::NotIdentity(w) = prove_identity(&sys, &a2, ClosureBudget::default())
        else {
            panic!("a^2 is not the identity");
        };
        assert_eq!(w.vertex.to_string(), "00");
        assert_eq!(w.letter, 0);
        assert!(trivial_up_to_level(&sys, &a2, 2, Budget::default()).unwrap());
        assert!(!trivial_up_to_level(&sys, &a2, 3, Budget::default()).unwrap());
    }

    #[test]
    fn chebyshev_involutions() {
        let sys = chebyshev3();
        for w in ["a^2", "b^2"] {
            let u = sys.parse_word(w).unwrap();
            let IdentityVerdict::Identity(cert) =
                prove_identity(&sys, &u, ClosureBudget::default())
            else {
                panic!("{w} should be certified");
            };
            assert!(cert.verify(&sys, &u));
        }
    }

    #[test]
    fn empty_word_is_trivial() {
        let sys = basilica();
        let e = GroupWord::identity();
        assert!(trivial_up_to_level(&sys, &e, 12, Budget::default()).unwrap());
        let IdentityVerdict::Identity(cert) = prove_identity(&sys, &e, ClosureBudget::default())
        else {
            panic!()
        };
        assert!(cert.verify(&sys, &e));
        let p = level_permutation(&sys, &e, 3, Budget::default()).unwrap();
        assert!(p.is_identity());
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        // g = [g*g, g] is the identity, but its sections grow without bound.
        let sys = SystemBuilder::new(2)
            .generator("g", "", &["g*g", "g"])
            .build()
            .unwrap();
        let g = sys.parse_word("g").unwrap();
        let verdict = prove_identity(
            &sys,
            &g,
            ClosureBudget {
                max_members: 50,
                max_word_len: 16,
            },
        );
        assert!(matches!(verdict, IdentityVerdict::Inconclusive { .. }));
    }

    #[test]
    fn forged_certificate_fails_verification() {
        let sys = basilica();
        let a = sys.parse_word("a").unwrap();
        let forged = IdentityCertificate {
            members: vec![a.clone()],
        };
        assert!(!forged.verify(&sys, &a));
        let b = sys.parse_word("b").unwrap();
        let forged = IdentityCertificate {
            members: vec![b.clone()],
        };
        // b = [a, 1]: trivial root, but the section a is not a member.
        assert!(!forged.verify(&sys, &b));
    }

    #[test]
    fn equal_modes() {
        let sys = chebyshev3();
        let ab = sys.parse_word("a.b").unwrap();
        let ba_inv = sys.parse_word("b.a").unwrap().inverse();
        let eq = equal(
            &sys,
            &ab,
            &ba_inv,
            EqualityMode::Level(8),
            Budget::default(),
        )
        .unwrap();
        assert_eq!(eq, Equality::EqualUpToLevel(8));
        let eq = equal(
            &sys,
            &ab,
            &ab,
            EqualityMode::Prove(ClosureBudget::default()),
            Budget::default(),
        )
        .unwrap();
        assert_eq!(eq.as_bool(), Some(true));
        let a = sys.parse_word("a").unwrap();
        let eq = equal(&sys, &a, &ab, EqualityMode::Level(3), Budget::default()).unwrap();
        assert_eq!(eq, Equality::DifferUpToLevel(3));
    }
}
