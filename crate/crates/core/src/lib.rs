//! Intuitionistic conditional logic on finite frames.
//!
//! The crate covers the object languages and their parser, finite conditional
//! Kripke frames and general frames, validity checking, finite conditional
//! Heyting algebras with their prime-filter duals, fill-in constructions that
//! extend general frames to full ones, a catalogue of axioms with their frame
//! correspondents, and translations into a bimodal language.

pub mod algebra;
pub mod catalog;
pub mod enumerate;
pub mod fillins;
pub mod frames;
pub mod gen;
pub mod io;
pub mod order;
pub mod par;
pub mod semantics;
pub mod syntax;
pub mod translate;

pub use frames::{ConditionalFrame, GeneralFrame, ModalFrame, Relation};
pub use order::{FinitePreorder, Upset, WorldSet};
pub use semantics::{Valuation, Verdict};
pub use syntax::{parse, Formula, Language, Node};
