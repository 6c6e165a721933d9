//! The eight-element sign domain over the integers.
//!
//! Each element denotes a predicate; the abstraction maps a predicate to
//! the least element whose denotation contains it, and `s = γ∘α` is the
//! associated up-closure on predicates.

use std::fmt;
use std::sync::Arc;

use super::IntPred;
use crate::lattice::FiniteLattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignElem {
    Empty,
    Zero,
    Neg,
    Pos,
    NonPos,
    NonNeg,
    NonZero,
    Int,
}

impl SignElem {
    pub const ALL: [SignElem; 8] = [
        SignElem::Empty,
        SignElem::Zero,
        SignElem::Neg,
        SignElem::Pos,
        SignElem::NonPos,
        SignElem::NonNeg,
        SignElem::NonZero,
        SignElem::Int,
    ];

    /// γ, the denotation of the element.
    pub fn concretize(self) -> IntPred {
        match self {
            SignElem::Empty => IntPred::empty(),
            SignElem::Zero => IntPred::singleton(0),
            SignElem::Neg => IntPred::range(None, Some(-1)),
            SignElem::Pos => IntPred::range(Some(1), None),
            SignElem::NonPos => IntPred::range(None, Some(0)),
            SignElem::NonNeg => IntPred::range(Some(0), None),
            SignElem::NonZero => {
                IntPred::range(None, Some(-1)).union(&IntPred::range(Some(1), None))
            }
            SignElem::Int => IntPred::all(),
        }
    }

    /// α, the best abstraction: the least element containing `p`.
    ///
    /// The containing elements form a filter closed under meets, so their
    /// meet is the unique least one.
    pub fn abstract_pred(p: &IntPred) -> SignElem {
        SignElem::ALL
            .into_iter()
            .filter(|s| p.leq(&s.concretize()))
            .fold(SignElem::Int, |acc, s| acc.meet(s))
    }

    pub fn leq(self, other: SignElem) -> bool {
        self.concretize().leq(&other.concretize())
    }

    pub fn join(self, other: SignElem) -> SignElem {
        SignElem::abstract_pred(&self.concretize().union(&other.concretize()))
    }

    /// Meets are exact: the denotations are closed under intersection, so
    /// the meet is the unique element denoting the intersection.
    pub fn meet(self, other: SignElem) -> SignElem {
        let exact = self.concretize().intersect(&other.concretize());
        SignElem::ALL
            .into_iter()
            .find(|s| s.concretize() == exact)
            .expect("sign denotations are closed under intersection")
    }

    pub fn bottom() -> SignElem {
        SignElem::Empty
    }

    pub fn top() -> SignElem {
        SignElem::Int
    }
}

/// s = γ∘α, the sign closure on predicates.
pub fn sign_closure(p: &IntPred) -> IntPred {
    SignElem::abstract_pred(p).concretize()
}

impl fmt::Display for SignElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.concretize())
    }
}

/// The sign domain as an explicit eight-element lattice, for the
/// lattice-level machinery; element order follows [`SignElem::ALL`].
pub fn sign_lattice() -> Arc<FiniteLattice> {
    let names: Vec<String> = SignElem::ALL.iter().map(|s| s.to_string()).collect();
    let n = names.len();
    let mut leq = vec![false; n * n];
    for (i, a) in SignElem::ALL.iter().enumerate() {
        for (j, b) in SignElem::ALL.iter().enumerate() {
            leq[i * n + j] = a.leq(*b);
        }
    }
    FiniteLattice::from_leq(names, leq).expect("the sign diagram is a lattice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn abstraction_examples() {
        assert_eq!(
            SignElem::abstract_pred(&IntPred::from_values(&[5, 6])),
            SignElem::Pos
        );
        assert_eq!(SignElem::abstract_pred(&IntPred::empty()), SignElem::Empty);
        assert_eq!(
            SignElem::abstract_pred(&IntPred::from_values(&[-2, 3])),
            SignElem::NonZero
        );
    }

    #[test]
    fn insertion_laws() {
        for s in SignElem::ALL {
            assert_eq!(SignElem::abstract_pred(&s.concretize()), s);
        }
    }

    #[test]
    fn hasse_diagram_shape() {
        use SignElem::*;
        assert_eq!(Neg.join(Zero), NonPos);
        assert_eq!(Zero.join(Pos), NonNeg);
        assert_eq!(Neg.join(Pos), NonZero);
        assert_eq!(NonPos.meet(NonNeg), Zero);
        assert_eq!(NonPos.meet(NonZero), Neg);
        assert_eq!(NonNeg.meet(NonZero), Pos);
        assert_eq!(Neg.join(NonNeg), Int);
        let l = sign_lattice();
        assert_eq!(l.len(), 8);
        assert_eq!(l.name(l.top()), "(-inf,inf)");
        assert_eq!(l.name(l.bot()), "{}");
    }

    fn pred_strategy() -> impl Strategy<Value = IntPred> {
        proptest::collection::vec(
            (
                prop_oneof![Just(None), (-30i64..30).prop_map(Some)],
                prop_oneof![Just(None), (-30i64..30).prop_map(Some)],
            ),
            0..4,
        )
        .prop_map(|spans| {
            spans.into_iter().fold(IntPred::empty(), |acc, (lo, hi)| {
                acc.union(&IntPred::range(lo, hi))
            })
        })
    }

    proptest! {
        #[test]
        fn sign_closure_is_an_up_closure(p in pred_strategy()) {
            let s = sign_closure(&p);
            prop_assert!(p.leq(&s));
            prop_assert_eq!(sign_closure(&s.clone()), s);
        }

        #[test]
        fn abstraction_is_the_least_containing_element(p in pred_strategy()) {
            let a = SignElem::abstract_pred(&p);
            prop_assert!(p.leq(&a.concretize()));
            for s in SignElem::ALL {
                if p.leq(&s.concretize()) {
                    prop_assert!(a.leq(s));
                }
            }
        }
    }
}
