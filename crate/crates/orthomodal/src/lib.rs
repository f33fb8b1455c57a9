//! Finite ortholattices, compatibility frames, and the proof theory of
//! epistemic modal and conditional reasoning in logics without the
//! distributive law.
//!
//! The crate is organized around three interlocking views of the same
//! subject matter:
//!
//! * **Algebra** ([`lattice`]): finite ortholattices with optional modal,
//!   Boolean-subalgebra, and conditional structure, with equational
//!   validation, property probes, and isomorphism checking.
//! * **State spaces** ([`frame`], [`semantics`], [`probability`]):
//!   compatibility frames whose regular sets form ortholattices, forcing
//!   semantics over them, and comparative probability via sets of
//!   finitely additive measures.
//! * **Proofs and search** ([`proof`], [`search`]): sequent-style
//!   derivation checking, bounded forward proof search, and exhaustive
//!   countermodel search over small frames.
//!
//! Everything here is `no_std` + `alloc`: the heavy lifting is finite
//! combinatorics on bitmasks and exact rational arithmetic. IO, file
//! formats, and the command-line surface live in the companion crate
//! `orthomodal-tools`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod fixtures;
pub mod formula;
pub mod frame;
pub mod iso;
pub mod lattice;
pub mod probability;
pub mod proof;
pub mod search;
pub mod semantics;

pub use formula::{Formula, FragmentTag, ParseError};
pub use frame::{CompatibilityFrame, FrameCondition};
pub use lattice::{FiniteOrtholattice, LatticeError, LatticeProperty};
pub use probability::{OrthoMeasure, ProbCondition, ProbabilityAssignment};
pub use proof::{Consecution, Derivation, LogicBase, LogicProfile, RuleId};
pub use search::{FrameClass, SearchBudget, SearchResult, SearchSpec};
pub use semantics::{PossibilityModel, PrincipleId};
