//! Symbolic large-number terms built from Knuth up-arrows, the fast-growing
//! hierarchy and the Aurellion sequence.
//!
//! The crate is organised bottom-up:
//!
//! * [`terms`] and [`ordinals`] define the immutable value types,
//! * [`notation`] parses and prints the ASCII surface syntax and the JSON AST,
//! * [`engine`] rewrites terms one rule at a time and evaluates them exactly
//!   under a [`Budget`](engine::Budget),
//! * [`dominance`] decides order relations and emits checkable certificates,
//! * [`hierarchies`] builds the named families,
//! * [`cli`] is the command-line front end used by the `aurellion` binary.

pub mod cli;
pub mod dominance;
pub mod engine;
pub mod hierarchies;
pub mod notation;
pub mod ordinals;
mod stack;
pub mod terms;

pub use dominance::{check_certificate, compare, lemma1_certificate, Certificate, Verdict};
pub use engine::{eval, step, trace, Budget, EvalOutcome};
pub use notation::{parse_ordinal, parse_term, print_term, ParseError};
pub use ordinals::Ordinal;
pub use terms::{Nat, Term};
