//! Exact character theory for pi-separable permutation groups: character
//! tables, pi-special characters, B_pi characters through the nucleus
//! descent, Fong characters, and executable checks of degree theorems.

pub mod chain;
pub mod chartab;
pub mod classes;
pub mod corpus;
pub mod cyclotomic;
pub mod dixon;
pub mod error;
pub mod group;
pub mod par;
pub mod perm;
pub mod pichar;
pub mod primes;
pub mod theorems;

pub use chartab::{character_table, Character, CharacterTable};
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
pub use primes::PrimeSet;
