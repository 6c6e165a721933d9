//! Finite complete lattices, represented explicitly.
//!
//! Elements are dense indices `0..n`. The order relation is stored as an
//! n×n boolean matrix and binary join/meet tables are precomputed at build
//! time, so every lattice operation afterwards is a table lookup. This is
//! exact and fast at desk scale (n ≤ ~512), which is all we need.
//!
//! A lattice can be built from a covering relation ([`FiniteLattice::from_covers`]),
//! from a full order matrix ([`FiniteLattice::from_leq`]), or as a powerset
//! ([`FiniteLattice::powerset`]).

mod closure;
mod format;
mod map;
pub mod sample;

pub use closure::{AdjointPair, ClosureOperator};
pub use format::{parse_lattice_file, LatticeFile};
pub use map::{classify_table, FixKind, FixMethod, MapReport, MonotoneMap};

use std::sync::Arc;

use thiserror::Error;

/// A lattice element, as a dense index into its [`FiniteLattice`].
pub type Elem = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("not a partial order: `{0}` and `{1}` are in a cycle")]
    NotAPartialOrder(String, String),
    #[error("not a lattice: `{0}` and `{1}` have no unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("map table has {got} entries, lattice has {want} elements")]
    BadTableLength { got: usize, want: usize },
    #[error("map table entry {0} out of range")]
    TableOutOfRange(usize),
    #[error("map is not monotone: {0} ⊑ {1} but images are not ordered")]
    NotMonotone(String, String),
    #[error("map is not an up-closure: {0}")]
    NotAClosure(String),
    #[error("sublattice is missing ⊤")]
    MissingTop,
    #[error("sublattice not meet-closed: witness pair ({0}, {1})")]
    NotMeetClosed(String, String),
    #[error("map has no {side} adjoint: join/meet preservation fails on {{{witness}}}")]
    NoAdjoint { side: &'static str, witness: String },
    #[error("operands live on different lattices")]
    DomainMismatch,
    #[error("lattice too large for monotone-map enumeration: {0} elements (cap 7)")]
    LatticeTooLarge(usize),
}

/// An explicit finite complete lattice.
///
/// Stores the full order relation plus binary join and meet tables. Since
/// the lattice is finite and every pair has a join and a meet, arbitrary
/// joins and meets exist (fold the tables), so the lattice is complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    top: Elem,
    bot: Elem,
}

impl FiniteLattice {
    /// Builds a lattice from element names and a covering relation `lo < hi`.
    ///
    /// The reflexive-transitive closure of the covers is computed first;
    /// the result must be antisymmetric and every pair of elements must
    /// have a unique least upper bound and greatest lower bound.
    pub fn from_covers<S: AsRef<str>>(
        names: &[S],
        covers: &[(S, S)],
    ) -> Result<Arc<Self>, LatticeError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(LatticeError::DuplicateName(a.clone()));
            }
        }
        let index = |s: &str| -> Result<usize, LatticeError> {
            names
                .iter()
                .position(|t| t == s)
                .ok_or_else(|| LatticeError::UnknownElement(s.to_string()))
        };
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for (lo, hi) in covers {
            let lo = index(lo.as_ref())?;
            let hi = index(hi.as_ref())?;
            leq[lo * n + hi] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for x in 0..n {
                if leq[x * n + k] {
                    for y in 0..n {
                        if leq[k * n + y] {
                            leq[x * n + y] = true;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && leq[x * n + y] && leq[y * n + x] {
                    return Err(LatticeError::NotAPartialOrder(
                        names[x].clone(),
                        names[y].clone(),
                    ));
                }
            }
        }
        Self::from_parts(names, leq)
    }

    /// Builds a lattice from a full order matrix (row-major, `leq[x*n+y]` = x ⊑ y).
    pub fn from_leq(names: Vec<String>, leq: Vec<bool>) -> Result<Arc<Self>, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        assert_eq!(leq.len(), n * n, "order matrix must be n×n");
        for x in 0..n {
            if !leq[x * n + x] {
                return Err(LatticeError::NotAPartialOrder(
                    names[x].clone(),
                    names[x].clone(),
                ));
            }
            for y in 0..n {
                if x != y && leq[x * n + y] && leq[y * n + x] {
                    return Err(LatticeError::NotAPartialOrder(
                        names[x].clone(),
                        names[y].clone(),
                    ));
                }
                for z in 0..n {
                    if leq[x * n + y] && leq[y * n + z] && !leq[x * n + z] {
                        return Err(LatticeError::NotAPartialOrder(
                            names[x].clone(),
                            names[z].clone(),
                        ));
                    }
                }
            }
        }
        Self::from_parts(names, leq)
    }

    fn from_parts(names: Vec<String>, leq: Vec<bool>) -> Result<Arc<Self>, LatticeError> {
        let n = names.len();
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                join[x * n + y] = bound_of(&names, &leq, n, x, y, true)?;
                meet[x * n + y] = bound_of(&names, &leq, n, x, y, false)?;
            }
        }
        // With all pairwise bounds present, ⊤ and ⊥ are the fold over everything.
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        let bot = (0..n).fold(0, |acc, x| meet[acc * n + x]);
        Ok(Arc::new(FiniteLattice {
            names,
            leq,
            join,
            meet,
            top,
            bot,
        }))
    }

    /// The powerset of `bits` atoms as a lattice of bitmasks, ordered by inclusion.
    ///
    /// Element `m` is the mask `m`; names are rendered through `label`.
    pub fn powerset(bits: usize, label: impl Fn(usize) -> String) -> Arc<Self> {
        assert!(bits <= 9, "powerset lattice capped at 2^9 elements");
        let n = 1usize << bits;
        let names: Vec<String> = (0..n).map(label).collect();
        let mut leq = vec![false; n * n];
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = x & y == x;
                join[x * n + y] = x | y;
                meet[x * n + y] = x & y;
            }
        }
        Arc::new(FiniteLattice {
            names,
            leq,
            join,
            meet,
            top: n - 1,
            bot: 0,
        })
    }

    /// A total order `names[0] < names[1] < …`.
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Arc<Self> {
        let covers: Vec<(&str, &str)> = names
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        let names: Vec<&str> = names.iter().map(|s| s.as_ref()).collect();
        Self::from_covers(&names, &covers).expect("a chain is a lattice")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.len() + y]
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.len() + y]
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bot(&self) -> Elem {
        self.bot
    }

    /// ⨆S, the least upper bound of a set of elements; ⊥ for the empty set.
    pub fn join_all(&self, set: impl IntoIterator<Item = Elem>) -> Elem {
        set.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    /// ⨅S, the greatest lower bound of a set of elements; ⊤ for the empty set.
    pub fn meet_all(&self, set: impl IntoIterator<Item = Elem>) -> Elem {
        set.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// (⨆S, ⨅S) in one call.
    pub fn big_bounds(&self, set: &[Elem]) -> (Elem, Elem) {
        (
            self.join_all(set.iter().copied()),
            self.meet_all(set.iter().copied()),
        )
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Result<Elem, LatticeError> {
        self.names
            .iter()
            .position(|t| t == name)
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    /// Renders a set of elements as `{a, b, c}` in index order.
    pub fn render_set(&self, set: &[Elem]) -> String {
        let mut parts: Vec<&str> = set.iter().map(|&x| self.name(x)).collect();
        parts.sort_unstable();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Unique least upper bound (`upper = true`) or greatest lower bound of x, y.
fn bound_of(
    names: &[String],
    leq: &[bool],
    n: usize,
    x: usize,
    y: usize,
    upper: bool,
) -> Result<usize, LatticeError> {
    let le = |a: usize, b: usize| leq[a * n + b];
    let candidates: Vec<usize> = (0..n)
        .filter(|&z| {
            if upper {
                le(x, z) && le(y, z)
            } else {
                le(z, x) && le(z, y)
            }
        })
        .collect();
    // The bound is the candidate below (resp. above) all other candidates.
    let mut best = None;
    'outer: for &z in &candidates {
        for &w in &candidates {
            let ok = if upper { le(z, w) } else { le(w, z) };
            if !ok {
                continue 'outer;
            }
        }
        best = Some(z);
        break;
    }
    best.ok_or_else(|| {
        LatticeError::NotALattice(
            names[x].clone(),
            names[y].clone(),
            if upper {
                "least upper bound"
            } else {
                "greatest lower bound"
            },
        )
    })
}
