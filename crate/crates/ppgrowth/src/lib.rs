//! Automata, exact spectral growth rates, and decision procedures for
//! potentially positive words in free groups.
//!
//! A word in the free group `F_r` is *positive* if it uses only the
//! generators (no inverses), and *potentially positive* if some automorphism
//! of `F_r` carries it to a positive word. This crate provides:
//!
//! - a free-group word kernel ([`words`]): reduction, cyclic words, subword
//!   search, enumeration, and automorphism application;
//! - node-labeled automata ([`machines`]) whose closed paths spell
//!   cyclically reduced words, with property checks (reduced / mixing /
//!   one-to-constant), closed-path counting, and constructors for the
//!   machines that bound the growth of potentially positive words;
//! - exact spectral tools ([`spectral`]): big-integer characteristic
//!   polynomials and certified dominant-root isolation;
//! - the rank-2 decision procedure and rank-r positivization schedules with
//!   machine-verifiable automorphism witnesses, plus the language encodings
//!   ([`potpos`]);
//! - growth counting, tables, densities, and seeded sampling ([`growthlab`]).

pub mod growthlab;
pub mod machines;
pub mod potpos;
pub mod spectral;
pub mod words;

pub use machines::Automaton;
pub use spectral::{IntMatrix, IntPolynomial, RootApproximation};
pub use words::{Automorphism, CyclicWord, ElementaryMove, Letter, Word};
