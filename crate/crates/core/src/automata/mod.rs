//! Deterministic automata and language equivalence by coinduction.
//!
//! Language equivalence of two states is the greatest fixed point of the
//! bisimulation transformer `b` on the lattice of relations over states.
//! This module provides the transformer together with its decomposition
//! `b = bsub ⊓ f` and the left adjoint `bstar` of `bsub`, the equivalence
//! closure as a union-find, and three ways to decide equivalence: the
//! Naive algorithm (plain and up to equivalence), Hopcroft-Karp, and a
//! product-automaton search used as the independent oracle.

mod algo;
mod format;
mod relation;
mod transform;

pub use algo::{
    abstract_lfp, lang_equiv_oracle, lang_query, partition_refine, run_hk, run_naive, Algo,
    EquivRunTrace, UpTo,
};
pub use format::parse_dfa_file;
pub use relation::{equiv_close, Partition, Relation};
pub use transform::{dfa_rel_maps, rel_transform, relation_lattice, RelKind, RelLattice};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DfaError {
    #[error("automaton must have at least one state and one symbol")]
    Empty,
    #[error("state {0} out of range")]
    BadState(usize),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("transition table must be total: state {state} has {got} entries, want {want}")]
    PartialTransitions {
        state: usize,
        got: usize,
        want: usize,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A complete deterministic automaton `(X, o, t)`: `out[x]` says whether x
/// is final, `trans[x][a]` is the a-successor of x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    out: Vec<bool>,
    trans: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn new(
        alphabet: Vec<String>,
        out: Vec<bool>,
        trans: Vec<Vec<usize>>,
    ) -> Result<Self, DfaError> {
        let n = out.len();
        if n == 0 || alphabet.is_empty() {
            return Err(DfaError::Empty);
        }
        if trans.len() != n {
            return Err(DfaError::PartialTransitions {
                state: trans.len().min(n),
                got: trans.len(),
                want: n,
            });
        }
        for (state, row) in trans.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(DfaError::PartialTransitions {
                    state,
                    got: row.len(),
                    want: alphabet.len(),
                });
            }
            if let Some(&bad) = row.iter().find(|&&s| s >= n) {
                return Err(DfaError::BadState(bad));
            }
        }
        Ok(Dfa {
            alphabet,
            out,
            trans,
        })
    }

    pub fn states(&self) -> usize {
        self.out.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn symbols(&self) -> std::ops::Range<usize> {
        0..self.alphabet.len()
    }

    pub fn symbol_index(&self, sym: &str) -> Result<usize, DfaError> {
        self.alphabet
            .iter()
            .position(|s| s == sym)
            .ok_or_else(|| DfaError::UnknownSymbol(sym.to_string()))
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.out[state]
    }

    pub fn step(&self, state: usize, symbol: usize) -> usize {
        self.trans[state][symbol]
    }

    pub fn check_state(&self, state: usize) -> Result<(), DfaError> {
        if state < self.states() {
            Ok(())
        } else {
            Err(DfaError::BadState(state))
        }
    }
}
