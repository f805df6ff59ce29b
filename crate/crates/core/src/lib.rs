//! Reversible deterministic finite automata.
//!
//! The crate decides whether a regular language is accepted by a
//! reversible DFA (one where no state is entered twice on the same letter),
//! converts minimum DFAs into minimal reversible ones, and analyses the
//! family of reversible automata of a language: copy counts, minimality,
//! uniqueness of the minimal automaton, reducedness, and generators for
//! alternative minimal and arbitrarily large reduced automata.
//!
//! ```
//! use revkit::{regex::regex_to_dfa, conversion::to_minimal_revdfa};
//!
//! let m = regex_to_dfa("(aa)*+a*ba*").unwrap();
//! let (rev, _, _) = to_minimal_revdfa(&m).unwrap();
//! assert!(rev.is_reversible());
//! assert_eq!(rev.num_states(), 4);
//! ```

pub mod analysis;
pub mod automaton;
pub mod conversion;
pub mod corpus;
pub mod dot;
pub mod equivalence;
pub mod error;
pub mod format;
pub mod generation;
pub mod minimize;
pub mod morphism;
pub mod regex;
pub mod reversibility;
pub mod scc;
mod unionfind;

pub use automaton::{Dfa, DfaBuilder, StateId, Word};
pub use error::{Error, Result};
pub use morphism::Morphism;
pub use scc::SccDecomposition;
