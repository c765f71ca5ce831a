#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wreath_core::{GenId, GroupWord, Letter, RecursionSystem, VertexWord};

pub fn random_word(rng: &mut ChaCha8Rng, gens: &[GenId], max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    GroupWord::from_letters((0..len).map(|_| Letter {
        gen: gens[rng.gen_range(0..gens.len())],
        inverse: rng.gen_bool(0.5),
    }))
}

pub fn random_vertex(rng: &mut ChaCha8Rng, sys: &RecursionSystem, max_len: usize) -> VertexWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| rng.gen_range(0..sys.degree())).collect();
    VertexWord::new(sys.alphabet(), letters).unwrap()
}

pub fn all_gens(sys: &RecursionSystem) -> Vec<GenId> {
    sys.generators().collect()
}

/// Every vertex word of length exactly `n`, in rank order.
pub fn level_words(sys: &RecursionSystem, n: usize) -> Vec<VertexWord> {
    let size = sys.alphabet().level_size(n).unwrap();
    (0..size)
        .map(|r| wreath_core::unrank(sys.alphabet(), r, n))
        .collect()
}

/// Brute-force triviality check through `act` on every word of length `n`.
pub fn acts_trivially_by_act(sys: &RecursionSystem, u: &GroupWord, n: usize) -> bool {
    level_words(sys, n)
        .iter()
        .all(|w| &sys.act(u, w).unwrap() == w)
}

/// A random valid system: degree 2..=4, 1..=4 generators, random roots and
/// sections of length up to 3, and up to two relators.
pub fn random_system(rng: &mut ChaCha8Rng) -> RecursionSystem {
    use rand::seq::SliceRandom;
    use wreath_core::{Alphabet, Definition, Permutation};

    let d = rng.gen_range(2..=4);
    let count = rng.gen_range(1..=4);
    let ids: Vec<GenId> = (0..count as u32).map(GenId).collect();
    let names = ["x", "y_1", "Zeta", "w2"];
    let mut gens = Vec::new();
    for name in names.iter().take(count) {
        let mut images: Vec<usize> = (0..d).collect();
        images.shuffle(rng);
        let root = Permutation::from_images(images).unwrap();
        let sections = (0..d).map(|_| random_word(rng, &ids, 3)).collect();
        gens.push((name.to_string(), Definition { root, sections }));
    }
    let relators = (0..rng.gen_range(0..=2))
        .map(|_| random_word(rng, &ids, 6))
        .collect();
    RecursionSystem::new(Alphabet::new(d).unwrap(), gens, relators).unwrap()
}
