//! Computations with self-similar groups given by wreath recursions on the
//! `d`-regular rooted tree.
//!
//! Words compose left to right: in `g.h` the automorphism `g` acts first.

pub mod analysis;
pub mod catalog;
pub mod decision;
pub mod dsl;
pub mod error;
pub mod level;
pub mod perm;
pub mod system;
pub mod tree;
pub mod word;

pub use decision::{
    equal, level_permutation, prove_identity, trivial_up_to_level, ClosureBudget, Equality,
    EqualityMode, IdentityCertificate, IdentityVerdict, NonIdentityWitness,
};
pub use error::{Error, Result};
pub use level::{Budget, LevelPermutation, LevelTables};
pub use perm::Permutation;
pub use system::{Definition, RecursionSystem, SystemBuilder, WreathDecomposition};
pub use tree::{rank, unrank, Alphabet, VertexWord};
pub use word::{GenId, GroupWord, Letter};
