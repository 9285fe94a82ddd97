//! Symbolic machinery for finitely presented groups and semigroups:
//! noncommutative Groebner-Shirshov completion over the integers, left Fox
//! differential calculus, presentations whose relator derivatives share a
//! common right divisor, and zero-divisor certificates in the resulting
//! integral group rings.
//!
//! Everything is deterministic: term maps are ordered, completion processes
//! pending compositions in deg-lex order of their ambiguity words, and the
//! `parallel` feature (on by default) only swaps purely functional maps onto
//! a rayon thread pool, so outputs are byte-identical with or without it.

pub mod family;
pub mod fox;
pub mod groupring;
pub mod gsbasis;
pub mod ncpoly;
pub mod witness;
pub mod words;

pub use family::{CaseTag, FactorizationReport, FamilySpec, Violation};
pub use fox::{fox_derivative, fox_of_relator, fox_power};
pub use groupring::{ChainComplex, ChainVector, GroupRing, GroupRingElement, Presentation, PresentationKind};
pub use gsbasis::{CompletionLimits, CompletionStatus, RewriteSystem};
pub use ncpoly::{parse_polynomial, LeadingTerm, Polynomial};
pub use witness::WitnessReport;
pub use words::{Alphabet, Letter, Word};
