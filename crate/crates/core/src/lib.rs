//! Non-interference model checking for sequential circuits.
//!
//! A design is duplicated into a self-composition whose outputs must agree,
//! optionally augmented with word-level inequivalence predicates, and then
//! checked by an IC3 engine that can learn mirrored lemmas across the two
//! copies and rewrite lemmas in terms of the predicates.

pub mod circuit;
pub mod encode;
pub mod ic3;
pub mod oracle;
pub mod replacement;
pub mod sat;
pub mod selfcomp;
pub mod symmetry;

pub use circuit::{Circuit, Latch, Lit, SymmetryMap};
