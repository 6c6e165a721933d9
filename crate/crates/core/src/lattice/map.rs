//! Monotone maps as total function tables, and their fixed points.

use std::sync::Arc;

use super::{Elem, FiniteLattice, LatticeError};

/// A monotone self-map on a [`FiniteLattice`], stored as a table.
///
/// Monotonicity is checked at construction; values are immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    lattice: Arc<FiniteLattice>,
    table: Vec<Elem>,
}

/// Which fixed point to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixKind {
    Least,
    Greatest,
}

/// How to compute it: iteration from ⊥/⊤, or the bound over pre/post-fixed points.
///
/// On a finite lattice the two always agree, which the tests use as a
/// mutual oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixMethod {
    Kleene,
    Tarski,
}

impl MonotoneMap {
    pub fn new(lattice: Arc<FiniteLattice>, table: Vec<Elem>) -> Result<Self, LatticeError> {
        let n = lattice.len();
        if table.len() != n {
            return Err(LatticeError::BadTableLength {
                got: table.len(),
                want: n,
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return Err(LatticeError::TableOutOfRange(bad));
        }
        for x in 0..n {
            for y in 0..n {
                if lattice.leq(x, y) && !lattice.leq(table[x], table[y]) {
                    return Err(LatticeError::NotMonotone(
                        lattice.name(x).to_string(),
                        lattice.name(y).to_string(),
                    ));
                }
            }
        }
        Ok(MonotoneMap { lattice, table })
    }

    pub fn from_fn(
        lattice: Arc<FiniteLattice>,
        f: impl Fn(Elem) -> Elem,
    ) -> Result<Self, LatticeError> {
        let table = lattice.elements().map(f).collect();
        Self::new(lattice, table)
    }

    pub fn identity(lattice: Arc<FiniteLattice>) -> Self {
        let table = lattice.elements().collect();
        MonotoneMap { lattice, table }
    }

    pub fn constant(lattice: Arc<FiniteLattice>, value: Elem) -> Self {
        assert!(value < lattice.len());
        let table = vec![value; lattice.len()];
        MonotoneMap { lattice, table }
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    pub fn same_lattice(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice
    }

    /// `outer ∘ inner`, i.e. `x ↦ outer(inner(x))`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, LatticeError> {
        if !outer.same_lattice(inner) {
            return Err(LatticeError::DomainMismatch);
        }
        let table = inner.table.iter().map(|&x| outer.table[x]).collect();
        Ok(MonotoneMap {
            lattice: outer.lattice.clone(),
            table,
        })
    }

    /// Pointwise join `x ↦ f(x) ⊔ g(x)`.
    pub fn join(f: &Self, g: &Self) -> Result<Self, LatticeError> {
        if !f.same_lattice(g) {
            return Err(LatticeError::DomainMismatch);
        }
        let l = &f.lattice;
        let table = l
            .elements()
            .map(|x| l.join(f.table[x], g.table[x]))
            .collect();
        Ok(MonotoneMap {
            lattice: f.lattice.clone(),
            table,
        })
    }

    /// Pointwise meet `x ↦ f(x) ⊓ g(x)`.
    pub fn meet(f: &Self, g: &Self) -> Result<Self, LatticeError> {
        if !f.same_lattice(g) {
            return Err(LatticeError::DomainMismatch);
        }
        let l = &f.lattice;
        let table = l
            .elements()
            .map(|x| l.meet(f.table[x], g.table[x]))
            .collect();
        Ok(MonotoneMap {
            lattice: f.lattice.clone(),
            table,
        })
    }

    /// `f ⊑ g` in the function lattice (pointwise).
    pub fn pointwise_leq(&self, other: &Self) -> bool {
        self.lattice
            .elements()
            .all(|x| self.lattice.leq(self.table[x], other.table[x]))
    }

    /// The iteration chain from ⊥ (least) or ⊤ (greatest), including the
    /// first repeated element, e.g. `[⊥, f(⊥), …, μf, μf]`.
    pub fn kleene_chain(&self, kind: FixKind) -> Vec<Elem> {
        let mut x = match kind {
            FixKind::Least => self.lattice.bot(),
            FixKind::Greatest => self.lattice.top(),
        };
        let mut chain = vec![x];
        loop {
            let next = self.apply(x);
            chain.push(next);
            if next == x {
                return chain;
            }
            x = next;
        }
    }

    pub fn fixpoint(&self, kind: FixKind, method: FixMethod) -> Elem {
        match method {
            FixMethod::Kleene => *self.kleene_chain(kind).last().unwrap(),
            FixMethod::Tarski => {
                let l = &self.lattice;
                match kind {
                    // μf = ⨅{x | f(x) ⊑ x}
                    FixKind::Least => l.meet_all(l.elements().filter(|&x| l.leq(self.table[x], x))),
                    // νf = ⨆{x | x ⊑ f(x)}
                    FixKind::Greatest => {
                        l.join_all(l.elements().filter(|&x| l.leq(x, self.table[x])))
                    }
                }
            }
        }
    }

    pub fn mu(&self) -> Elem {
        self.fixpoint(FixKind::Least, FixMethod::Kleene)
    }

    pub fn nu(&self) -> Elem {
        self.fixpoint(FixKind::Greatest, FixMethod::Kleene)
    }

    /// `(f^↑, f^↓)`: the least up-closure above f and the greatest
    /// down-closure below f.
    ///
    /// `f^↑(x)` is computed per element as the limit of the increasing
    /// iteration `x, x ⊔ f(x), …` (at most n steps on a lattice with n
    /// elements), rather than by iterating f in the function lattice —
    /// same result, no blowup. Dually for `f^↓`.
    pub fn power_closures(&self) -> (Self, Self) {
        let l = &self.lattice;
        let up = |mut x: Elem| loop {
            let next = l.join(x, self.table[x]);
            if next == x {
                return x;
            }
            x = next;
        };
        let down = |mut x: Elem| loop {
            let next = l.meet(x, self.table[x]);
            if next == x {
                return x;
            }
            x = next;
        };
        let up = MonotoneMap {
            lattice: self.lattice.clone(),
            table: l.elements().map(up).collect(),
        };
        let down = MonotoneMap {
            lattice: self.lattice.clone(),
            table: l.elements().map(down).collect(),
        };
        debug_assert!(classify_table(l, up.table()).up_closure);
        debug_assert!(classify_table(l, down.table()).down_closure);
        (up, down)
    }

    pub fn classify(&self) -> MapReport {
        classify_table(&self.lattice, &self.table)
    }
}

/// Exhaustive classification of a raw function table.
///
/// Non-monotone tables are reported, not rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapReport {
    pub monotone: bool,
    pub up_closure: bool,
    pub down_closure: bool,
    pub preserves_joins: bool,
    pub preserves_meets: bool,
}

pub fn classify_table(lattice: &FiniteLattice, table: &[Elem]) -> MapReport {
    let n = lattice.len();
    assert_eq!(table.len(), n, "table must be total");
    let mut monotone = true;
    let mut extensive = true;
    let mut reductive = true;
    let mut up_idem = true;
    let mut down_idem = true;
    // Join/meet preservation includes the empty bound (⊥ ↦ ⊥, ⊤ ↦ ⊤), so a
    // `preserves_joins` map is exactly one with a right adjoint.
    let mut preserves_joins = table[lattice.bot()] == lattice.bot();
    let mut preserves_meets = table[lattice.top()] == lattice.top();
    for x in 0..n {
        extensive &= lattice.leq(x, table[x]);
        reductive &= lattice.leq(table[x], x);
        up_idem &= lattice.leq(table[table[x]], table[x]);
        down_idem &= lattice.leq(table[x], table[table[x]]);
        for y in 0..n {
            if lattice.leq(x, y) && !lattice.leq(table[x], table[y]) {
                monotone = false;
            }
            preserves_joins &= table[lattice.join(x, y)] == lattice.join(table[x], table[y]);
            preserves_meets &= table[lattice.meet(x, y)] == lattice.meet(table[x], table[y]);
        }
    }
    MapReport {
        monotone,
        up_closure: monotone && extensive && up_idem,
        down_closure: monotone && reductive && down_idem,
        preserves_joins,
        preserves_meets,
    }
}
