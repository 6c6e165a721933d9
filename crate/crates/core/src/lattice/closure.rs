//! Closure operators, abstract sublattices, and adjoint pairs.
//!
//! An up-closure a : C → C and the Galois insertion (α, γ) between C and
//! A = Pre(a) are two presentations of the same thing; [`ClosureOperator`]
//! keeps both: the carrier map, the pre-fixed set, and the sublattice A as
//! a lattice in its own right.

use std::sync::Arc;

use super::{Elem, FiniteLattice, LatticeError, MonotoneMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureOperator {
    carrier: MonotoneMap,
    pre_fixed: Vec<Elem>,
    alpha: Vec<usize>,
    abstract_lattice: Arc<FiniteLattice>,
}

impl ClosureOperator {
    /// Builds the closure `a(x) = ⨅{y ∈ A | x ⊑ y}` from a sublattice A.
    ///
    /// A must contain ⊤ and be closed under binary meets; both are checked.
    pub fn from_sublattice(
        lattice: &Arc<FiniteLattice>,
        sublattice: &[Elem],
    ) -> Result<Self, LatticeError> {
        let mut set: Vec<Elem> = sublattice.to_vec();
        set.sort_unstable();
        set.dedup();
        if !set.contains(&lattice.top()) {
            return Err(LatticeError::MissingTop);
        }
        for &x in &set {
            for &y in &set {
                if !set.contains(&lattice.meet(x, y)) {
                    return Err(LatticeError::NotMeetClosed(
                        lattice.name(x).to_string(),
                        lattice.name(y).to_string(),
                    ));
                }
            }
        }
        let table: Vec<Elem> = lattice
            .elements()
            .map(|x| lattice.meet_all(set.iter().copied().filter(|&y| lattice.leq(x, y))))
            .collect();
        let carrier = MonotoneMap::new(lattice.clone(), table)?;
        Self::assemble(carrier, set)
    }

    /// Wraps an existing map after checking the up-closure laws;
    /// Pre(a) is derived from the map.
    pub fn from_map(carrier: MonotoneMap) -> Result<Self, LatticeError> {
        let report = carrier.classify();
        if !report.up_closure {
            let l = carrier.lattice();
            let witness = l
                .elements()
                .find(|&x| {
                    !l.leq(x, carrier.apply(x))
                        || !l.leq(carrier.apply(carrier.apply(x)), carrier.apply(x))
                })
                .map(|x| l.name(x).to_string())
                .unwrap_or_else(|| "not monotone".to_string());
            return Err(LatticeError::NotAClosure(witness));
        }
        let pre_fixed: Vec<Elem> = carrier
            .lattice()
            .elements()
            .filter(|&x| carrier.lattice().leq(carrier.apply(x), x))
            .collect();
        Self::assemble(carrier, pre_fixed)
    }

    fn assemble(carrier: MonotoneMap, pre_fixed: Vec<Elem>) -> Result<Self, LatticeError> {
        let lattice = carrier.lattice().clone();
        let m = pre_fixed.len();
        let mut alpha = vec![usize::MAX; lattice.len()];
        for (pos, &y) in pre_fixed.iter().enumerate() {
            alpha[y] = pos;
        }
        for x in lattice.elements() {
            if alpha[x] == usize::MAX {
                alpha[x] = pre_fixed
                    .iter()
                    .position(|&y| y == carrier.apply(x))
                    .expect("closure image lies in the pre-fixed set");
            }
        }
        // A inherits the order from C; its meet is C's meet (A is
        // meet-closed) and its join is the closure of C's join.
        let names: Vec<String> = pre_fixed
            .iter()
            .map(|&y| lattice.name(y).to_string())
            .collect();
        let mut leq = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[i * m + j] = lattice.leq(pre_fixed[i], pre_fixed[j]);
            }
        }
        let abstract_lattice = FiniteLattice::from_leq(names, leq)?;
        let op = ClosureOperator {
            carrier,
            pre_fixed,
            alpha,
            abstract_lattice,
        };
        // Galois insertion laws, by construction: γ∘α = a and α∘γ = id on A.
        debug_assert!(op
            .lattice()
            .elements()
            .all(|x| op.gamma(op.alpha(x)) == op.apply(x)));
        debug_assert!((0..m).all(|p| op.alpha(op.gamma(p)) == p));
        Ok(op)
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        self.carrier.lattice()
    }

    pub fn carrier(&self) -> &MonotoneMap {
        &self.carrier
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.carrier.apply(x)
    }

    /// A = Pre(a), as sorted indices of the concrete lattice.
    pub fn pre_fixed(&self) -> &[Elem] {
        &self.pre_fixed
    }

    /// α : C → A, returning the position of a(x) inside A.
    pub fn alpha(&self, x: Elem) -> usize {
        self.alpha[x]
    }

    /// γ : A → C, the inclusion.
    pub fn gamma(&self, pos: usize) -> Elem {
        self.pre_fixed[pos]
    }

    /// A as a lattice in its own right (elements ordered as in `pre_fixed`).
    pub fn abstract_lattice(&self) -> &Arc<FiniteLattice> {
        &self.abstract_lattice
    }

    /// a₁ ⊑ a₂ pointwise; equivalently Pre(a₂) ⊆ Pre(a₁).
    pub fn pointwise_leq(&self, other: &Self) -> bool {
        self.carrier.pointwise_leq(&other.carrier)
    }
}

/// A validated adjoint pair `l ⊣ r`: `l(x) ⊑ y iff x ⊑ r(y)` for all x, y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointPair {
    left: MonotoneMap,
    right: MonotoneMap,
}

impl AdjointPair {
    pub fn new(left: MonotoneMap, right: MonotoneMap) -> Result<Self, LatticeError> {
        if !left.same_lattice(&right) {
            return Err(LatticeError::DomainMismatch);
        }
        let l = left.lattice().clone();
        for x in l.elements() {
            for y in l.elements() {
                if l.leq(left.apply(x), y) != l.leq(x, right.apply(y)) {
                    return Err(LatticeError::NoAdjoint {
                        side: "matching",
                        witness: format!("{}, {}", l.name(x), l.name(y)),
                    });
                }
            }
        }
        // Adjoints preserve the bounds on their side, including empty ones.
        debug_assert!(left.classify().preserves_joins);
        debug_assert!(right.classify().preserves_meets);
        Ok(AdjointPair { left, right })
    }

    /// Computes `r(y) = ⨆{x | m(x) ⊑ y}` and validates the adjunction;
    /// fails with the witnessing subset if m does not preserve joins.
    pub fn right_adjoint_of(m: &MonotoneMap) -> Result<Self, LatticeError> {
        let l = m.lattice().clone();
        let right = MonotoneMap::from_fn(l.clone(), |y| {
            l.join_all(l.elements().filter(|&x| l.leq(m.apply(x), y)))
        })?;
        for y in l.elements() {
            // r(y) is the largest candidate by construction, so the
            // adjunction can only fail by m(r(y)) ⋢ y.
            if !l.leq(m.apply(right.apply(y)), y) {
                let witness: Vec<Elem> = l.elements().filter(|&x| l.leq(m.apply(x), y)).collect();
                return Err(LatticeError::NoAdjoint {
                    side: "right",
                    witness: l.render_set(&witness),
                });
            }
        }
        Ok(AdjointPair {
            left: m.clone(),
            right,
        })
    }

    /// Computes `l(x) = ⨅{y | x ⊑ m(y)}` and validates the adjunction;
    /// fails with the witnessing subset if m does not preserve meets.
    pub fn left_adjoint_of(m: &MonotoneMap) -> Result<Self, LatticeError> {
        let l = m.lattice().clone();
        let left = MonotoneMap::from_fn(l.clone(), |x| {
            l.meet_all(l.elements().filter(|&y| l.leq(x, m.apply(y))))
        })?;
        for x in l.elements() {
            if !l.leq(x, m.apply(left.apply(x))) {
                let witness: Vec<Elem> = l.elements().filter(|&y| l.leq(x, m.apply(y))).collect();
                return Err(LatticeError::NoAdjoint {
                    side: "left",
                    witness: l.render_set(&witness),
                });
            }
        }
        Ok(AdjointPair {
            left,
            right: m.clone(),
        })
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        self.left.lattice()
    }

    pub fn left(&self) -> &MonotoneMap {
        &self.left
    }

    pub fn right(&self) -> &MonotoneMap {
        &self.right
    }

    /// r∘l, an up-closure.
    pub fn unit(&self) -> MonotoneMap {
        MonotoneMap::compose(&self.right, &self.left).unwrap()
    }

    /// l∘r, a down-closure.
    pub fn counit(&self) -> MonotoneMap {
        MonotoneMap::compose(&self.left, &self.right).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn counterexample_closures() {
        let fx = fixtures::counterexample_chain();
        assert_eq!(
            fx.closure_a.pre_fixed(),
            &[fx.two, fx.three, fx.four, fx.lattice.top()]
        );
        assert_eq!(fx.closure_a.apply(fx.lattice.bot()), fx.two);
        assert_eq!(fx.closure_a.apply(fx.one), fx.two);
        assert_eq!(fx.closure_a.apply(fx.three), fx.three);
        assert_eq!(
            fx.closure_a_prime.pre_fixed(),
            &[fx.three, fx.four, fx.lattice.top()]
        );
        // a ⊑ a′ pointwise iff Pre(a′) ⊆ Pre(a).
        assert!(fx.closure_a.pointwise_leq(&fx.closure_a_prime));
        assert!(!fx.closure_a_prime.pointwise_leq(&fx.closure_a));
    }

    #[test]
    fn full_sublattice_gives_identity() {
        let fx = fixtures::counterexample_chain();
        let all: Vec<Elem> = fx.lattice.elements().collect();
        let a = ClosureOperator::from_sublattice(&fx.lattice, &all).unwrap();
        assert_eq!(a.carrier(), &MonotoneMap::identity(fx.lattice.clone()));
    }

    #[test]
    fn meet_closure_violations_are_reported() {
        let l = crate::lattice::tests::diamond();
        let a = l.index_of("a").unwrap();
        let b = l.index_of("b").unwrap();
        let err = ClosureOperator::from_sublattice(&l, &[a, b, l.top()]).unwrap_err();
        assert_eq!(err, LatticeError::NotMeetClosed("a".into(), "b".into()));
        let err = ClosureOperator::from_sublattice(&l, &[a]).unwrap_err();
        assert_eq!(err, LatticeError::MissingTop);
    }

    #[test]
    fn dashed_map_has_the_dotted_right_adjoint() {
        let fx = fixtures::counterexample_chain();
        let pair = AdjointPair::right_adjoint_of(&fx.bstar).unwrap();
        assert_eq!(pair.right(), &fx.bsub);
        let same = AdjointPair::new(fx.bstar.clone(), fx.bsub.clone()).unwrap();
        assert_eq!(same.right(), pair.right());
    }

    #[test]
    fn identity_is_self_adjoint() {
        let l = crate::lattice::tests::diamond();
        let id = MonotoneMap::identity(l);
        let pair = AdjointPair::right_adjoint_of(&id).unwrap();
        assert_eq!(pair.right(), &id);
    }

    #[test]
    fn constant_bottom_has_constant_top_right_adjoint() {
        let l = crate::lattice::tests::diamond();
        let m = MonotoneMap::constant(l.clone(), l.bot());
        let pair = AdjointPair::right_adjoint_of(&m).unwrap();
        assert_eq!(pair.right(), &MonotoneMap::constant(l.clone(), l.top()));
    }

    #[test]
    fn pointwise_order_mirrors_domain_inclusion() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let l = crate::lattice::sample::random_lattice(&mut rng);
            let a1 = crate::lattice::sample::random_closure(&l, &mut rng);
            let a2 = crate::lattice::sample::random_closure(&l, &mut rng);
            let inclusion = a2.pre_fixed().iter().all(|x| a1.pre_fixed().contains(x));
            assert_eq!(a1.pointwise_leq(&a2), inclusion);
        }
    }

    #[test]
    fn non_join_preserving_map_has_no_right_adjoint() {
        // On the diamond, the closure onto {⊤} ∪ {a}… a(b) = ⊤, a(a) = a:
        // a(a ⊔ b) = ⊤ but a(a) ⊔ a(b) = ⊤ — pick a sharper witness: the
        // map sending everything to ⊤ except ⊥ ↦ a breaks ⊥-preservation.
        let l = crate::lattice::tests::diamond();
        let a = l.index_of("a").unwrap();
        let m =
            MonotoneMap::from_fn(l.clone(), |x| if x == l.bot() { a } else { l.top() }).unwrap();
        assert!(matches!(
            AdjointPair::right_adjoint_of(&m),
            Err(LatticeError::NoAdjoint { .. })
        ));
    }
}
