//! Model checking and bounded decision procedures for the intermediate
//! propositional logics that generalize the weak law of the excluded middle
//! `~p1 | ~~p1`.
//!
//! The crate provides:
//!
//! - [`formula`]: the connective language `& | -> ~`, a parser and printer,
//!   substitution, and generators for the testability schema family and
//!   Smorynski's topwidth schema family;
//! - [`kripke`]: finite rooted frames and models, the forcing relation,
//!   frame validity with reproducible countermodels, enumeration of frames
//!   up to isomorphism, and extraction of powerset antichains from refuted
//!   schemas;
//! - [`brouwer`]: finite Brouwer algebras (bounded distributive lattices
//!   with a residual), validated on construction, with dual-truth
//!   evaluation;
//! - [`duality`]: the open-set algebra of a frame and the prime-ideal frame
//!   of an algebra, which preserve validity in both directions;
//! - [`sperner`]: powerset antichains and the binomial correspondence
//!   between schema index and minimal topwidth;
//! - [`decide`]: bounded membership and equivalidity checks over the
//!   enumerated frame population;
//! - [`json`]: the file formats used by the `wlem` command-line tool.

pub mod brouwer;
pub mod budget;
pub mod corpus;
pub mod decide;
pub mod duality;
pub mod error;
mod eval;
pub mod formula;
pub mod json;
pub mod kripke;
pub mod poset;
pub mod sperner;

pub use budget::Budget;
pub use error::{Error, Result};
pub use formula::Formula;
