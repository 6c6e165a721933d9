//! A finite-lattice laboratory: exact fixed points, abstract domains and
//! their soundness/completeness laws, companions, DFA language equivalence
//! by coinduction, and an integer-predicate toy analysis.
//!
//! The crate is organised around four pillars:
//!
//! * [`lattice`] — explicit finite complete lattices, monotone maps,
//!   fixed points, closures, adjoints.
//! * [`checker`] — the soundness/completeness law reports, companions,
//!   f-companions, and the second-order B operator.
//! * [`automata`] — DFA language equivalence: the Naive and Hopcroft-Karp
//!   algorithms, relation transformers, partition refinement.
//! * [`pred`] — exact integer predicates, the eight-element sign domain,
//!   and flow-equation solving (concrete and sign).
//!
//! [`fixtures`] holds the worked structures shared by the test suites and
//! [`gallery`] replays every claim about them as a pass/fail report.

pub mod automata;
pub mod checker;
pub mod fixtures;
pub mod gallery;
pub mod lattice;
pub mod pred;
