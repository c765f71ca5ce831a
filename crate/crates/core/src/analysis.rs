//! Higher-level checks built on the calculus: the odometer criterion,
//! exponent sums, lifting loops along cycles of the root permutation, the
//! algebraic shadow of Levy cycles, and shortest paths in Schreier graphs.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::decision::trivial_up_to_level;
use crate::error::{Error, Result};
use crate::level::{Budget, LevelTables};
use crate::system::RecursionSystem;
use crate::tree::{rank, VertexWord};
use crate::word::{GenId, GroupWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdometerReport {
    /// `levels[n-1]` is true when `u` is a single `d^n`-cycle on level `n`.
    pub levels: Vec<bool>,
}

impl OdometerReport {
    pub fn all_cyclic(&self) -> bool {
        self.levels.iter().all(|&b| b)
    }
}

/// Checks levels `1..=n_max` for a single cycle through every vertex.
pub fn odometer_check(
    sys: &RecursionSystem,
    u: &GroupWord,
    n_max: usize,
    budget: Budget,
) -> Result<OdometerReport> {
    if n_max == 0 {
        return Err(Error::ZeroLevel);
    }
    let tables = LevelTables::build(sys, n_max, budget)?;
    let levels = (1..=n_max)
        .map(|n| tables.permutation(u, n).is_full_cycle())
        .collect();
    Ok(OdometerReport { levels })
}

/// Signed exponent sums per generator; zero entries are omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExponentVector {
    pub counts: BTreeMap<GenId, i64>,
}

impl ExponentVector {
    pub fn get(&self, gen: GenId) -> i64 {
        self.counts.get(&gen).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    fn add_scaled(&mut self, other: &ExponentVector, factor: i64) {
        for (&g, &c) in &other.counts {
            let e = self.counts.entry(g).or_insert(0);
            *e += c * factor;
            if *e == 0 {
                self.counts.remove(&g);
            }
        }
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn display(&self, sys: &RecursionSystem) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.counts
            .iter()
            .map(|(&g, c)| format!("{}={}", sys.name(g), c))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Exponent sums of `u` after replacing every substituted generator by its
/// word, repeatedly, until none remains.
pub fn exponent_vector(
    sys: &RecursionSystem,
    u: &GroupWord,
    substitutions: &HashMap<GenId, GroupWord>,
) -> Result<ExponentVector> {
    // Exponent sums are additive, so each substituted generator can be
    // replaced by the vector of its image once.
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    fn resolve(
        sys: &RecursionSystem,
        gen: GenId,
        subs: &HashMap<GenId, GroupWord>,
        memo: &mut HashMap<GenId, (Mark, ExponentVector)>,
    ) -> Result<ExponentVector> {
        match memo.get(&gen) {
            Some((Mark::Done, v)) => return Ok(v.clone()),
            Some((Mark::Active, _)) => {
                return Err(Error::CyclicSubstitution(sys.name(gen).to_string()))
            }
            None => {}
        }
        let Some(image) = subs.get(&gen) else {
            let mut v = ExponentVector::default();
            v.counts.insert(gen, 1);
            return Ok(v);
        };
        memo.insert(gen, (Mark::Active, ExponentVector::default()));
        let mut v = ExponentVector::default();
        for &l in image.letters() {
            let inner = resolve(sys, l.gen, subs, memo)?;
            v.add_scaled(&inner, l.sign());
        }
        memo.insert(gen, (Mark::Done, v.clone()));
        Ok(v)
    }

    let mut memo = HashMap::new();
    let mut out = ExponentVector::default();
    for &l in u.letters() {
        let v = resolve(sys, l.gen, substitutions, &mut memo)?;
        out.add_scaled(&v, l.sign());
    }
    Ok(out)
}

/// Product of the sections of `u` along the cycle of its root permutation
/// through `start`: `u_{c_0}.u_{c_1}...u_{c_{k-1}}` with `c_{i+1} = σ_u(c_i)`.
pub fn cycle_section_product(
    sys: &RecursionSystem,
    u: &GroupWord,
    start: usize,
) -> Result<GroupWord> {
    sys.alphabet().check_letter(start)?;
    let dec = sys.expand(u);
    let mut product = GroupWord::identity();
    for c in dec.root.orbit(start) {
        product.append(&dec.sections[c]);
    }
    Ok(product)
}

/// `k`-fold [`cycle_section_product`], requiring at every step that the root
/// permutation cycles `start` through the whole alphabet.
pub fn iterate_lift(
    sys: &RecursionSystem,
    u: &GroupWord,
    start: usize,
    k: usize,
) -> Result<GroupWord> {
    sys.alphabet().check_letter(start)?;
    let mut current = u.clone();
    for step in 0..k {
        let root = sys.root_permutation(&current);
        if root.orbit(start).len() != sys.degree() {
            return Err(Error::NotFullCycle {
                step,
                start,
                perm: if root.is_identity() {
                    "()".to_string()
                } else {
                    root.to_string()
                },
            });
        }
        current = cycle_section_product(sys, &current, start)?;
    }
    Ok(current)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevyCurveReport {
    /// Fixed letter whose section matches the predecessor curve, if any.
    pub matching_letter: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevyReport {
    pub level: usize,
    pub curves: Vec<LevyCurveReport>,
}

impl LevyReport {
    /// True when every curve has a fixed letter whose section agrees with the
    /// previous curve up to the tested level. This is only a necessary
    /// condition for a Levy cycle.
    pub fn condition_holds(&self) -> bool {
        self.curves.iter().all(|c| c.matching_letter.is_some())
    }

    pub fn verdict(&self) -> String {
        if self.condition_holds() {
            format!(
                "necessary condition holds up to level {} (not sufficient for a Levy cycle)",
                self.level
            )
        } else {
            "no Levy cycle of this multicurve representable by these exact words".to_string()
        }
    }
}

/// For each curve `γ_k` (indices mod `m`) looks for a letter `ε` fixed by the
/// root permutation of `γ_k` such that the section of `γ_k` at `ε` equals
/// `γ_{k-1}` on every level up to `level`.
pub fn levy_necessary_condition(
    sys: &RecursionSystem,
    curves: &[GroupWord],
    level: usize,
    budget: Budget,
) -> Result<LevyReport> {
    if curves.is_empty() {
        return Err(Error::EmptyCurveList);
    }
    if level == 0 {
        return Err(Error::ZeroLevel);
    }
    let m = curves.len();
    let mut reports = Vec::with_capacity(m);
    for k in 0..m {
        let curve = &curves[k];
        let previous = &curves[(k + m - 1) % m];
        let dec = sys.expand(curve);
        let mut matching_letter = None;
        for e in dec.root.fixed_points() {
            let quotient = dec.sections[e].concat(&previous.inverse());
            if trivial_up_to_level(sys, &quotient, level, budget)? {
                matching_letter = Some(e);
                break;
            }
        }
        reports.push(LevyCurveReport { matching_letter });
    }
    Ok(LevyReport {
        level,
        curves: reports,
    })
}

/// One edge of a Schreier path: generator index and direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchreierStep {
    pub generator: usize,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchreierOutcome {
    Path {
        word: GroupWord,
        steps: Vec<SchreierStep>,
    },
    NotReachable {
        orbit_size: usize,
    },
}

/// Shortest word over `gens` (and their inverses) sending `from` to `to`,
/// found by breadth-first search on level `n`. Edges are tried in generator
/// order, positive before inverse; an inverse edge is dropped when it acts
/// like the generator itself on that level.
pub fn schreier_path(
    sys: &RecursionSystem,
    gens: &[GroupWord],
    from: &VertexWord,
    to: &VertexWord,
    budget: Budget,
) -> Result<SchreierOutcome> {
    let n = from.len();
    let alphabet = sys.alphabet();
    let start = rank(alphabet, from, n)?;
    let goal = rank(alphabet, to, n)?;
    let tables = LevelTables::build(sys, n, budget)?;
    let mut edges: Vec<(SchreierStep, Vec<u32>)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let p = tables.permutation(g, n);
        let inv = p.inverse();
        let involutive = inv == p;
        edges.push((
            SchreierStep {
                generator: i,
                inverse: false,
            },
            p.images().to_vec(),
        ));
        if !involutive {
            edges.push((
                SchreierStep {
                    generator: i,
                    inverse: true,
                },
                inv.images().to_vec(),
            ));
        }
    }
    let size = alphabet.level_size(n).expect("checked by budget");
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; size];
    let mut visited = vec![false; size];
    visited[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut orbit_size = 1;
    while let Some(x) = queue.pop_front() {
        if x == goal {
            break;
        }
        for (ei, (_, table)) in edges.iter().enumerate() {
            let y = table[x] as usize;
            if !visited[y] {
                visited[y] = true;
                orbit_size += 1;
                parent[y] = Some((x, ei));
                queue.push_back(y);
            }
        }
    }
    if !visited[goal] {
        return Ok(SchreierOutcome::NotReachable { orbit_size });
    }
    let mut steps = Vec::new();
    let mut x = goal;
    while let Some((prev, ei)) = parent[x] {
        steps.push(edges[ei].0);
        x = prev;
    }
    steps.reverse();
    let mut word = GroupWord::identity();
    for s in &steps {
        let g = &gens[s.generator];
        if s.inverse {
            word.append(&g.inverse());
        } else {
            word.append(g);
        }
    }
    Ok(SchreierOutcome::Path { word, steps })
}

/// Sorted orders of the level-`level` permutations of every freely reduced
/// word of length at most `max_len` over `gens` and their inverses.
pub fn order_profile(
    sys: &RecursionSystem,
    gens: &[GroupWord],
    max_len: usize,
    level: usize,
    budget: Budget,
) -> Result<Vec<u128>> {
    let tables = LevelTables::build(sys, level, budget)?;
    let mut letters = Vec::new();
    for g in gens {
        letters.push(g.clone());
        letters.push(g.inverse());
    }
    // Words are tracked as sequences of letter indices; index i and i^1 are
    // mutually inverse.
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    let mut orders = Vec::new();
    for len in 0..=max_len {
        for w in &layer {
            let mut word = GroupWord::identity();
            for &i in w {
                word.append(&letters[i]);
            }
            orders.push(tables.permutation(&word, level).order());
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..letters.len() {
                if w.last().is_some_and(|&j| j ^ 1 == i) {
                    continue;
                }
                let mut ext = w.clone();
                ext.push(i);
                next.push(ext);
            }
        }
        layer = next;
    }
    orders.sort_unstable();
    Ok(orders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::system::SystemBuilder;

    fn sys(name: &str) -> RecursionSystem {
        catalog::get(name).unwrap().system
    }

    #[test]
    fn odometer_examples() {
        let s = sys("adding_machine_2");
        let g = s.parse_word("g").unwrap();
        assert!(odometer_check(&s, &g, 8, Budget::default())
            .unwrap()
            .all_cyclic());

        let s = sys("basilica");
        let a = s.parse_word("a").unwrap();
        let r = odometer_check(&s, &a, 2, Budget::default()).unwrap();
        assert_eq!(r.levels, vec![true, false]);
        assert!(odometer_check(&s, &a, 0, Budget::default()).is_err());
    }

    #[test]
    fn exponent_examples() {
        let s = sys("wittner");
        let u = s.parse_word("b2.b1.b0").unwrap();
        let v = exponent_vector(&s, &u, &HashMap::new()).unwrap();
        assert_eq!(v.display(&s), "b0=1 b1=1 b2=1");

        let a3 = s.lookup("a3").unwrap();
        let subs = HashMap::from([(a3, s.parse_word("b2.a0.a2.b1.a1.b0").unwrap().inverse())]);
        let v = exponent_vector(&s, &s.parse_word("a3").unwrap(), &subs).unwrap();
        for name in ["a0", "a1", "a2", "b0", "b1", "b2"] {
            assert_eq!(v.get(s.lookup(name).unwrap()), -1, "{name}");
        }
        assert_eq!(v.get(a3), 0);
        assert!(exponent_vector(&s, &GroupWord::identity(), &subs)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn cyclic_substitution_rejected() {
        let s = sys("basilica");
        let a = s.lookup("a").unwrap();
        let b = s.lookup("b").unwrap();
        let subs = HashMap::from([
            (a, s.parse_word("b").unwrap()),
            (b, s.parse_word("a^-1").unwrap()),
        ]);
        assert!(matches!(
            exponent_vector(&s, &s.parse_word("a").unwrap(), &subs),
            Err(Error::CyclicSubstitution(_))
        ));
    }

    #[test]
    fn cycle_products() {
        let s = sys("wittner");
        let u = s.parse_word("b2.b1.b0").unwrap();
        let p = cycle_section_product(&s, &u, 0).unwrap();
        assert_eq!(p, s.parse_word("a3^-1.b1.b0.a3.b2").unwrap());

        let s = sys("adding_machine_3");
        let g = s.parse_word("g").unwrap();
        assert_eq!(cycle_section_product(&s, &g, 0).unwrap(), g);

        let s = sys("basilica");
        let a = s.parse_word("a").unwrap();
        assert_eq!(
            cycle_section_product(&s, &a, 0).unwrap(),
            s.parse_word("b").unwrap()
        );
        assert!(cycle_section_product(&s, &a, 2).is_err());
    }

    #[test]
    fn lift_requires_full_cycles() {
        let s = sys("basilica");
        let a = s.parse_word("a").unwrap();
        assert_eq!(iterate_lift(&s, &a, 0, 0).unwrap(), a);
        // a lifts to b, whose root permutation is trivial.
        assert_eq!(
            iterate_lift(&s, &a, 0, 2),
            Err(Error::NotFullCycle {
                step: 1,
                start: 0,
                perm: "()".into()
            })
        );
    }

    #[test]
    fn levy_examples() {
        let toy = SystemBuilder::new(2)
            .generator("c", "", &["c", "1"])
            .build()
            .unwrap();
        let c = toy.parse_word("c").unwrap();
        let r = levy_necessary_condition(&toy, &[c], 6, Budget::default()).unwrap();
        assert_eq!(r.curves[0].matching_letter, Some(0));
        assert!(r.condition_holds());

        let s = sys("basilica");
        let b = s.parse_word("b").unwrap();
        let a = s.parse_word("a").unwrap();
        let r = levy_necessary_condition(&s, &[b], 6, Budget::default()).unwrap();
        assert!(!r.condition_holds());
        assert_eq!(
            r.verdict(),
            "no Levy cycle of this multicurve representable by these exact words"
        );
        let r = levy_necessary_condition(&s, &[a], 6, Budget::default()).unwrap();
        assert!(!r.condition_holds());
        assert_eq!(
            levy_necessary_condition(&s, &[], 6, Budget::default()),
            Err(Error::EmptyCurveList)
        );
    }

    #[test]
    fn schreier_examples() {
        let s = sys("hanoi");
        let gens: Vec<GroupWord> = ["a", "b", "c"]
            .iter()
            .map(|g| s.parse_word(g).unwrap())
            .collect();
        let v = |t: &str| s.parse_vertex(t).unwrap();
        match schreier_path(&s, &gens, &v("0"), &v("1"), Budget::default()).unwrap() {
            SchreierOutcome::Path { word, .. } => assert_eq!(word, s.parse_word("b").unwrap()),
            other => panic!("{other:?}"),
        }
        match schreier_path(&s, &gens, &v("000"), &v("111"), Budget::default()).unwrap() {
            SchreierOutcome::Path { word, steps } => {
                assert_eq!(steps.len(), 7);
                assert_eq!(word.len(), 7);
                assert_eq!(s.act(&word, &v("000")).unwrap(), v("111"));
            }
            other => panic!("{other:?}"),
        }
        match schreier_path(&s, &gens, &v("0120"), &v("0120"), Budget::default()).unwrap() {
            SchreierOutcome::Path { word, .. } => assert!(word.is_identity()),
            other => panic!("{other:?}"),
        }
        assert!(schreier_path(&s, &gens, &v("00"), &v("111"), Budget::default()).is_err());
    }

    #[test]
    fn schreier_unreachable() {
        let s = sys("hanoi");
        let gens = vec![s.parse_word("a").unwrap()];
        let v = |t: &str| s.parse_vertex(t).unwrap();
        assert_eq!(
            schreier_path(&s, &gens, &v("00"), &v("11"), Budget::default()).unwrap(),
            SchreierOutcome::NotReachable { orbit_size: 1 }
        );
    }

    #[test]
    fn profile_counts_reduced_words() {
        let s = sys("basilica");
        let gens = vec![s.parse_word("a").unwrap(), s.parse_word("b").unwrap()];
        // 1 + 4 + 4*3 reduced words of length <= 2.
        assert_eq!(
            order_profile(&s, &gens, 2, 3, Budget::default())
                .unwrap()
                .len(),
            17
        );
    }
}
