//! Soundness and completeness laws for a closure a and a transformer b on
//! the same lattice, decided exhaustively.
//!
//! The six flags of a [`LawReport`] are tied together by theorems that the
//! implementation asserts on every call: the two composition laws
//! (a∘b ⊑ b∘a and b∘a ⊑ a∘b) are each equivalent to the existence of a
//! lifted/extended transformer on the sublattice, the first entails
//! soundness of a as an up-to technique (ν(b∘a) ⊑ νb) and the second
//! entails completeness of a as an abstract domain (a(μb) = μ(a∘b)).

mod companion;
mod report;

pub use companion::{
    b_gfp, companion, enumerate_monotone_maps, f_companion, BGfpResult, CompanionResult,
    FCompanionResult,
};
pub use report::{check_report, CheckReport};

use thiserror::Error;

use crate::lattice::{
    AdjointPair, ClosureOperator, Elem, FixKind, FixMethod, LatticeError, MonotoneMap,
};

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
    #[error("map is not a right adjoint: {0}")]
    NotARightAdjoint(String),
}

/// The laws of one (closure, transformer) configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawReport {
    /// a∘b ⊑ b∘a.
    pub compatible: bool,
    /// b∘a ⊑ a∘b.
    pub fully_complete: bool,
    /// ν(b∘a) ⊑ νb: witnesses up to a prove the original property.
    pub sound: bool,
    /// a(μb) = μ(a∘b): the abstract least fixed point loses nothing.
    pub complete: bool,
    /// Pre(a) is closed under b, so b restricts to the sublattice.
    pub em_lifting_exists: bool,
    /// a∘b = a∘b∘a, so b extends along α.
    pub kl_extension_exists: bool,
}

pub fn law_report(a: &ClosureOperator, b: &MonotoneMap) -> Result<LawReport, LatticeError> {
    law_report_with(a, b, FixMethod::Kleene)
}

pub fn law_report_with(
    a: &ClosureOperator,
    b: &MonotoneMap,
    method: FixMethod,
) -> Result<LawReport, LatticeError> {
    if !a.carrier().same_lattice(b) {
        return Err(LatticeError::DomainMismatch);
    }
    let l = a.lattice();
    let ab = MonotoneMap::compose(a.carrier(), b)?;
    let ba = MonotoneMap::compose(b, a.carrier())?;
    let aba = MonotoneMap::compose(&ab, a.carrier())?;

    let compatible = ab.pointwise_leq(&ba);
    let fully_complete = ba.pointwise_leq(&ab);
    let sound = l.leq(
        ba.fixpoint(FixKind::Greatest, method),
        b.fixpoint(FixKind::Greatest, method),
    );
    let complete =
        a.apply(b.fixpoint(FixKind::Least, method)) == ab.fixpoint(FixKind::Least, method);
    let em_lifting_exists = a
        .pre_fixed()
        .iter()
        .all(|&x| a.pre_fixed().contains(&b.apply(x)));
    let kl_extension_exists = ab == aba;

    // The pairwise equivalences and the two entailments are theorems;
    // fail loudly if the computation ever contradicts them.
    assert_eq!(compatible, em_lifting_exists);
    assert_eq!(compatible, ba == aba);
    assert_eq!(fully_complete, kl_extension_exists);
    assert!(!compatible || sound);
    assert!(!fully_complete || complete);

    Ok(LawReport {
        compatible,
        fully_complete,
        sound,
        complete,
        em_lifting_exists,
        kl_extension_exists,
    })
}

/// The best sound approximation of b on the sublattice of a: α∘b∘γ, as a
/// map on [`ClosureOperator::abstract_lattice`].
///
/// Soundness (α∘b ⊑ b̄∘α) holds by construction and is asserted.
pub fn best_abstraction(a: &ClosureOperator, b: &MonotoneMap) -> Result<MonotoneMap, LatticeError> {
    if !a.carrier().same_lattice(b) {
        return Err(LatticeError::DomainMismatch);
    }
    let abs = a.abstract_lattice().clone();
    let table: Vec<Elem> = (0..abs.len())
        .map(|pos| a.alpha(b.apply(a.gamma(pos))))
        .collect();
    let best = MonotoneMap::new(abs.clone(), table)?;
    for x in a.lattice().elements() {
        assert!(abs.leq(a.alpha(b.apply(x)), best.apply(a.alpha(x))));
    }
    Ok(best)
}

/// (b,f)-completeness: a(f) ⊑ f and the abstract and concrete least fixed
/// points agree below f.
pub fn local_completeness(
    a: &ClosureOperator,
    b: &MonotoneMap,
    f: Elem,
) -> Result<bool, LatticeError> {
    if !a.carrier().same_lattice(b) {
        return Err(LatticeError::DomainMismatch);
    }
    let l = a.lattice();
    let ab = MonotoneMap::compose(a.carrier(), b)?;
    let in_domain = l.leq(a.apply(f), f);
    Ok(in_domain && (l.leq(ab.mu(), f) == l.leq(b.mu(), f)))
}

/// (b,f)-compatibility of an arbitrary monotone map: a(f) ⊑ f and
/// a∘b ⊑ b∘a.
///
/// When the answer is yes, a is an up-closure, and b is a right adjoint
/// with left adjoint l, it follows that a is a complete abstract domain
/// for i ⊔ l whatever the constant i is; that consequence is asserted
/// before returning.
pub fn bf_compatibility(a: &MonotoneMap, b: &MonotoneMap, f: Elem) -> Result<bool, LatticeError> {
    if !a.same_lattice(b) {
        return Err(LatticeError::DomainMismatch);
    }
    let l = a.lattice().clone();
    let ab = MonotoneMap::compose(a, b)?;
    let ba = MonotoneMap::compose(b, a)?;
    let holds = l.leq(a.apply(f), f) && ab.pointwise_leq(&ba);
    if holds && a.classify().up_closure && b.classify().preserves_meets {
        let left = AdjointPair::left_adjoint_of(b)?;
        for i in l.elements() {
            let forward =
                MonotoneMap::join(&MonotoneMap::constant(l.clone(), i), left.left())?;
            let composed = MonotoneMap::compose(a, &forward)?;
            assert_eq!(a.apply(forward.mu()), composed.mu());
        }
    }
    Ok(holds)
}

/// The two sides of the hinge identity for an adjoint pair (l, r) and a
/// closure a: `l∘a ⊑ a∘l` iff `a∘r ⊑ r∘a`. Both are computed
/// independently; the biconditional is asserted and both flags returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BridgeReport {
    /// l∘a ⊑ a∘l: a is fully complete for the left adjoint.
    pub forward: bool,
    /// a∘r ⊑ r∘a: a is compatible with the right adjoint.
    pub backward: bool,
}

pub fn bridge_check(pair: &AdjointPair, a: &ClosureOperator) -> Result<BridgeReport, LatticeError> {
    if !pair.left().same_lattice(a.carrier()) {
        return Err(LatticeError::DomainMismatch);
    }
    let la = MonotoneMap::compose(pair.left(), a.carrier())?;
    let al = MonotoneMap::compose(a.carrier(), pair.left())?;
    let ar = MonotoneMap::compose(a.carrier(), pair.right())?;
    let ra = MonotoneMap::compose(pair.right(), a.carrier())?;
    let forward = la.pointwise_leq(&al);
    let backward = ar.pointwise_leq(&ra);
    assert_eq!(forward, backward, "the bridge biconditional is a theorem");
    Ok(BridgeReport { forward, backward })
}

/// For a closure fully complete w.r.t. the left adjoint and with
/// a(f) ⊑ f, every iterate of (r ⊓ f) from ⊤ stays inside the domain of a:
/// `a((r⊓f)^k(⊤)) ⊑ (r⊓f)^k(⊤)` for all k ≤ k_max (or until the chain
/// stabilises). The preconditions are checked first and failures name the
/// broken premise.
pub fn duality_check(
    pair: &AdjointPair,
    a: &ClosureOperator,
    f: Elem,
    k_max: usize,
) -> Result<bool, CheckError> {
    if !pair.left().same_lattice(a.carrier()) {
        return Err(CheckError::Lattice(LatticeError::DomainMismatch));
    }
    let l = a.lattice().clone();
    let bridge = bridge_check(pair, a)?;
    if !bridge.forward {
        return Err(CheckError::PreconditionFailed(
            "closure is not fully complete w.r.t. the left adjoint",
        ));
    }
    if !l.leq(a.apply(f), f) {
        return Err(CheckError::PreconditionFailed("a(f) ⋢ f"));
    }
    let fmap = MonotoneMap::constant(l.clone(), f);
    let step = MonotoneMap::meet(pair.right(), &fmap)?;
    let mut x = l.top();
    for _ in 0..=k_max {
        if !l.leq(a.apply(x), x) {
            return Ok(false);
        }
        let next = step.apply(x);
        if next == x {
            break;
        }
        x = next;
    }
    Ok(true)
}
