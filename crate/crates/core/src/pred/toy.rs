//! The transformers of the loop-counting program on exact predicates, and
//! the sign-domain report that replays every claim about them.
//!
//! The loop body is guarded by x > 0 and decrements x, starting from 5:
//!
//! * `i(P) = {5}` — the initial condition;
//! * `bstar(P) = (P ∩ [1,∞)) ⊖ 1` — strongest postcondition of one iteration;
//! * `b = i ⊔ bstar` — the forward transformer, μb = [0,5];
//! * `bsub(P) = ((-∞,0] ∪ P) ⊕ 1` — the backward transformer;
//! * `f = [0,∞)` — the property to establish.

use super::sign::sign_closure;
use super::IntPred;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToyMap {
    I,
    BStar,
    B,
    BSub,
}

/// The query element f = [0,∞).
pub fn toy_f() -> IntPred {
    IntPred::range(Some(0), None)
}

pub fn toy_transform(which: ToyMap, p: &IntPred) -> IntPred {
    match which {
        ToyMap::I => IntPred::singleton(5),
        ToyMap::BStar => p.intersect(&IntPred::range(Some(1), None)).shift(-1),
        ToyMap::B => {
            let composed = toy_transform(ToyMap::I, p).union(&toy_transform(ToyMap::BStar, p));
            debug_assert_eq!(
                composed,
                IntPred::singleton(5).union(&p.intersect(&IntPred::range(Some(1), None)).shift(-1))
            );
            composed
        }
        ToyMap::BSub => IntPred::range(None, Some(0)).union(p).shift(1),
    }
}

/// The exact right adjoint of `bstar`: `(-∞,0] ∪ (P ⊕ 1)`.
///
/// `bsub` as defined above is this joined with the constant {1} — the two
/// agree except at the point 1 when 0 ∉ P, and only the exact form
/// satisfies the adjunction `bstar(P) ⊆ Q iff P ⊆ wp(Q)`.
pub fn toy_wp_exact(p: &IntPred) -> IntPred {
    IntPred::range(None, Some(0)).union(&p.shift(1))
}

/// `bsub ⊓ f`, the transformer whose greatest fixed point is [0,∞).
pub fn toy_bsub_meet_f(p: &IntPred) -> IntPred {
    toy_transform(ToyMap::BSub, p).intersect(&toy_f())
}

/// The increasing chain ∅, b(∅), b²(∅), … including the first repeat.
pub fn toy_mu_chain() -> Vec<IntPred> {
    let mut chain = vec![IntPred::empty()];
    loop {
        let next = toy_transform(ToyMap::B, chain.last().unwrap());
        let stable = next == *chain.last().unwrap();
        chain.push(next);
        if stable {
            return chain;
        }
    }
}

/// The decreasing chain ℤ, (bsub ⊓ f)(ℤ), … including the first repeat.
pub fn toy_nu_chain() -> Vec<IntPred> {
    let mut chain = vec![IntPred::all()];
    loop {
        let next = toy_bsub_meet_f(chain.last().unwrap());
        let stable = next == *chain.last().unwrap();
        chain.push(next);
        if stable {
            return chain;
        }
    }
}

/// The chain ∅, s(b(∅)), s(b(s(b(∅)))), … of the sign-abstracted forward
/// transformer, including the first repeat.
pub fn toy_abstract_mu_chain() -> Vec<IntPred> {
    let mut chain = vec![IntPred::empty()];
    loop {
        let next = sign_closure(&toy_transform(ToyMap::B, chain.last().unwrap()));
        let stable = next == *chain.last().unwrap();
        chain.push(next);
        if stable {
            return chain;
        }
    }
}

/// The domain of the greatest transformation that fixes f and commutes
/// with `bsub`: the meet-closure of {⊤, f, bsub(f), bsub²(f), …}.
/// Here bsub(f) = ℤ already, so the domain is just {ℤ, [0,∞)}.
pub fn toy_f_companion_domain() -> Vec<IntPred> {
    let mut generators = vec![IntPred::all()];
    let mut current = toy_f();
    for _ in 0..16 {
        if generators.contains(&current) {
            break;
        }
        generators.push(current.clone());
        current = toy_transform(ToyMap::BSub, &current);
    }
    // meet-closure; meets of predicates are intersections
    loop {
        let mut added = false;
        let snapshot = generators.clone();
        for a in &snapshot {
            for b in &snapshot {
                let m = a.intersect(b);
                if !generators.contains(&m) {
                    generators.push(m);
                    added = true;
                }
            }
        }
        if !added {
            return generators;
        }
    }
}

/// One checked claim of the sign report.
#[derive(Debug, Clone)]
pub struct ReportItem {
    pub label: &'static str,
    pub detail: String,
    pub pass: bool,
}

/// Replays the five sign-domain facts about the toy transformers:
///
/// 1. the sign domain is complete for b: s(μb) = μ(s∘b);
/// 2. it is not fully complete for bstar, witnessed at {3};
/// 3. it does not commute with bsub ⊓ f, witnessed at {-3};
/// 4. {5} is a (bsub ⊓ f)-simulation up to s;
/// 5. the (bsub, f)-companion domain {ℤ, [0,∞)} lies inside the sign
///    domain, so the up-to-s proof of 4 is sound.
pub fn sign_report() -> Vec<ReportItem> {
    let mut items = Vec::new();

    // (1) completeness via the fixed-point characterisation
    let mu_b = toy_mu_chain().last().unwrap().clone();
    let s_mu = sign_closure(&mu_b);
    let mu_sb = toy_abstract_mu_chain().last().unwrap().clone();
    items.push(ReportItem {
        label: "complete-for-b",
        detail: format!("s(mu b) = {s_mu} = mu(s.b) = {mu_sb}"),
        pass: s_mu == mu_sb && s_mu == toy_f(),
    });

    // (2) full completeness fails for bstar at x = {3}
    let x = IntPred::singleton(3);
    let lhs = toy_transform(ToyMap::BStar, &sign_closure(&x));
    let rhs = sign_closure(&toy_transform(ToyMap::BStar, &x));
    items.push(ReportItem {
        label: "not-fully-complete",
        detail: format!("bstar(s({{3}})) = {lhs} vs s(bstar({{3}})) = {rhs}"),
        pass: !lhs.leq(&rhs)
            && lhs == IntPred::range(Some(0), None)
            && rhs == IntPred::range(Some(1), None),
    });

    // (3) s does not commute with bsub ⊓ f, witnessed at x = {-3}
    let x = IntPred::singleton(-3);
    let lhs = sign_closure(&toy_bsub_meet_f(&x));
    let rhs = toy_bsub_meet_f(&sign_closure(&x));
    items.push(ReportItem {
        label: "not-compatible",
        detail: format!("s((bsub^f)({{-3}})) = {lhs} vs (bsub^f)(s({{-3}})) = {rhs}"),
        pass: !lhs.leq(&rhs),
    });

    // (4) {5} ⊆ (bsub ⊓ f)(s({5})) = [0,∞)
    let five = IntPred::singleton(5);
    let step = toy_bsub_meet_f(&sign_closure(&five));
    items.push(ReportItem {
        label: "up-to-s-simulation",
        detail: format!("(bsub^f)(s({{5}})) = {step}"),
        pass: five.leq(&step) && step == toy_f(),
    });

    // (5) the companion domain lies inside the sign domain
    let domain = toy_f_companion_domain();
    let inside = domain.iter().all(|p| sign_closure(p) == *p);
    let rendered: Vec<String> = domain.iter().map(|p| p.to_string()).collect();
    items.push(ReportItem {
        label: "companion-within-signs",
        detail: format!("domain = {{{}}}", rendered.join(", ")),
        pass: inside
            && domain.len() == 2
            && domain.contains(&IntPred::all())
            && domain.contains(&toy_f()),
    });

    items
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn transformer_values_on_the_worked_points() {
        assert_eq!(
            toy_transform(ToyMap::BStar, &IntPred::singleton(3)),
            IntPred::singleton(2)
        );
        assert_eq!(
            toy_transform(ToyMap::BSub, &IntPred::range(Some(3), Some(5))),
            IntPred::parse("(-inf,1] u [4,6]").unwrap()
        );
        assert_eq!(
            toy_transform(ToyMap::B, &IntPred::empty()),
            IntPred::singleton(5)
        );
    }

    #[test]
    fn mu_chain_is_the_six_step_descent_to_zero() {
        let chain = toy_mu_chain();
        let expected = [
            "{}", "{5}", "[4,5]", "[3,5]", "[2,5]", "[1,5]", "[0,5]", "[0,5]",
        ];
        let rendered: Vec<String> = chain.iter().map(|p| p.to_string()).collect();
        assert_eq!(rendered, expected);
    }

    #[test]
    fn nu_chain_stabilises_at_the_property() {
        let chain = toy_nu_chain();
        let rendered: Vec<String> = chain.iter().map(|p| p.to_string()).collect();
        assert_eq!(rendered, ["(-inf,inf)", "[0,inf)", "[0,inf)"]);
    }

    #[test]
    fn abstract_mu_chain_overshoots_by_one_level() {
        let chain = toy_abstract_mu_chain();
        let rendered: Vec<String> = chain.iter().map(|p| p.to_string()).collect();
        assert_eq!(rendered, ["{}", "[1,inf)", "[0,inf)", "[0,inf)"]);
    }

    #[test]
    fn the_report_passes_everywhere() {
        let items = sign_report();
        assert_eq!(items.len(), 5);
        for item in &items {
            assert!(item.pass, "{}: {}", item.label, item.detail);
        }
    }

    #[test]
    fn bsub_is_wp_plus_the_point_one() {
        let one = IntPred::singleton(1);
        for p in [
            IntPred::empty(),
            IntPred::singleton(0),
            IntPred::singleton(3),
            IntPred::range(Some(3), Some(5)),
            IntPred::range(None, Some(-1)),
        ] {
            let wp = toy_wp_exact(&p);
            assert_eq!(toy_transform(ToyMap::BSub, &p), wp.union(&one));
        }
    }

    fn pred_strategy() -> impl Strategy<Value = IntPred> {
        proptest::collection::vec(
            (
                prop_oneof![Just(None), (-20i64..20).prop_map(Some)],
                prop_oneof![Just(None), (-20i64..20).prop_map(Some)],
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
        /// bstar ⊣ wp: the adjunction holds for the exact form on samples.
        #[test]
        fn bstar_wp_adjunction(p in pred_strategy(), q in pred_strategy()) {
            let lhs = toy_transform(ToyMap::BStar, &p).leq(&q);
            let rhs = p.leq(&toy_wp_exact(&q));
            prop_assert_eq!(lhs, rhs);
        }

        /// The loose direction that does hold for bsub itself.
        #[test]
        fn bstar_bsub_half_adjunction(p in pred_strategy(), q in pred_strategy()) {
            if toy_transform(ToyMap::BStar, &p).leq(&q) {
                prop_assert!(p.leq(&toy_transform(ToyMap::BSub, &q)));
            }
        }
    }
}
