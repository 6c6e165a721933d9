//! Companions: the greatest compatible transformation for b, its variant
//! relative to a query f, and the second-order operator whose greatest
//! fixed point coincides with the latter.

use super::CheckError;
use crate::lattice::{sample, ClosureOperator, Elem, FixKind, LatticeError, MonotoneMap};

/// The greatest b-compatible transformation, as a closure whose domain is
/// the descending chain ⊤ ⊒ b(⊤) ⊒ … ⊒ νb.
#[derive(Debug, Clone)]
pub struct CompanionResult {
    /// The distinct chain elements, descending from ⊤ to νb.
    pub chain: Vec<Elem>,
    pub closure: ClosureOperator,
}

pub fn companion(b: &MonotoneMap) -> CompanionResult {
    let mut chain = b.kleene_chain(FixKind::Greatest);
    chain.pop(); // drop the repeated stabiliser
                 // A chain is already meet-closed, but close anyway so the construction
                 // is uniform with the f-relative variant.
    let mut domain = chain.clone();
    sample::meet_close(b.lattice(), &mut domain);
    let closure =
        ClosureOperator::from_sublattice(b.lattice(), &domain).expect("chains are meet-closed");
    let cb = MonotoneMap::compose(closure.carrier(), b).unwrap();
    let bc = MonotoneMap::compose(b, closure.carrier()).unwrap();
    assert!(cb.pointwise_leq(&bc), "the companion is compatible");
    CompanionResult { chain, closure }
}

/// The greatest (b,f)-compatible transformation for a right adjoint b:
/// its domain is the meet-closure of the orbit ⊤, f, b(f), b²(f), ….
#[derive(Debug, Clone)]
pub struct FCompanionResult {
    /// ⊤ followed by the orbit of f, without repeats.
    pub generators: Vec<Elem>,
    /// The meet-closure of the generators.
    pub sublattice: Vec<Elem>,
    pub closure: ClosureOperator,
}

pub fn f_companion(bsub: &MonotoneMap, f: Elem) -> Result<FCompanionResult, CheckError> {
    let report = bsub.classify();
    if !report.preserves_meets {
        let l = bsub.lattice();
        let witness = l
            .elements()
            .flat_map(|x| l.elements().map(move |y| (x, y)))
            .find(|&(x, y)| bsub.apply(l.meet(x, y)) != l.meet(bsub.apply(x), bsub.apply(y)))
            .map(|(x, y)| format!("meet of {} and {}", l.name(x), l.name(y)))
            .unwrap_or_else(|| "⊤".to_string());
        return Err(CheckError::NotARightAdjoint(witness));
    }
    let l = bsub.lattice().clone();
    let mut generators = vec![l.top()];
    let mut current = f;
    while !generators.contains(&current) {
        generators.push(current);
        current = bsub.apply(current);
    }
    let mut sublattice = generators.clone();
    sample::meet_close(&l, &mut sublattice);
    let closure = ClosureOperator::from_sublattice(&l, &sublattice)?;

    // The four defining properties of the construction.
    let cb = MonotoneMap::compose(closure.carrier(), bsub).unwrap();
    let bc = MonotoneMap::compose(bsub, closure.carrier()).unwrap();
    assert!(cb.pointwise_leq(&bc));
    assert!(l.leq(closure.apply(f), f));
    assert!(closure.carrier().classify().up_closure);

    Ok(FCompanionResult {
        generators,
        sublattice,
        closure,
    })
}

/// All monotone self-maps of the lattice, by depth-first assignment along
/// a linear extension of the order: the value at x must dominate the join
/// of the values already assigned below x.
pub fn enumerate_monotone_maps(
    lattice: &std::sync::Arc<crate::lattice::FiniteLattice>,
) -> Vec<Vec<Elem>> {
    let n = lattice.len();
    let mut order: Vec<Elem> = lattice.elements().collect();
    order.sort_by_key(|&x| lattice.elements().filter(|&y| lattice.leq(y, x)).count());
    let mut maps = Vec::new();
    let mut table = vec![0usize; n];
    fn assign(
        lattice: &crate::lattice::FiniteLattice,
        order: &[Elem],
        pos: usize,
        table: &mut Vec<Elem>,
        maps: &mut Vec<Vec<Elem>>,
    ) {
        if pos == order.len() {
            maps.push(table.clone());
            return;
        }
        let x = order[pos];
        let floor = lattice.join_all(
            order[..pos]
                .iter()
                .filter(|&&y| lattice.leq(y, x))
                .map(|&y| table[y]),
        );
        for v in lattice.elements() {
            if lattice.leq(floor, v) {
                table[x] = v;
                assign(lattice, order, pos + 1, table, maps);
            }
        }
    }
    assign(lattice, &order, 0, &mut table, &mut maps);
    maps
}

#[derive(Debug, Clone)]
pub struct BGfpResult {
    pub closure: ClosureOperator,
    /// How many monotone self-maps the lattice admits.
    pub map_count: usize,
}

/// The greatest fixed point of the second-order operator
/// `B(a) = ⨆{c | c∘b ⊑ b∘a, c(f) ⊑ f}` on the lattice of monotone maps,
/// by Kleene iteration from the constant-⊤ map over the full enumeration.
/// Capped at 7 elements, since the number of monotone maps grows
/// super-exponentially.
pub fn b_gfp(b: &MonotoneMap, f: Elem) -> Result<BGfpResult, CheckError> {
    let l = b.lattice().clone();
    if l.len() > 7 {
        return Err(CheckError::Lattice(LatticeError::LatticeTooLarge(l.len())));
    }
    let maps = enumerate_monotone_maps(&l);
    let below = |s: &[Elem], t: &[Elem]| l.elements().all(|x| l.leq(s[x], t[x]));
    let step = |a: &[Elem]| -> Vec<Elem> {
        let b_after_a: Vec<Elem> = l.elements().map(|x| b.apply(a[x])).collect();
        let mut joined = vec![l.bot(); l.len()];
        for c in &maps {
            let cb: Vec<Elem> = l.elements().map(|x| c[b.apply(x)]).collect();
            if below(&cb, &b_after_a) && l.leq(c[f], f) {
                for x in l.elements() {
                    joined[x] = l.join(joined[x], c[x]);
                }
            }
        }
        joined
    };

    let mut current = vec![l.top(); l.len()];
    loop {
        let next = step(&current);
        if next == current {
            break;
        }
        current = next;
    }
    let carrier = MonotoneMap::new(l, current)?;
    let closure = ClosureOperator::from_map(carrier)?;
    Ok(BGfpResult {
        closure,
        map_count: maps.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::FiniteLattice;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn companion_of_the_backward_transformer() {
        let fx = fixtures::counterexample_chain();
        let result = companion(&fx.bsub_meet_f());
        assert_eq!(result.chain, vec![fx.lattice.top(), fx.four]);
        assert_eq!(result.closure.pre_fixed(), &[fx.four, fx.lattice.top()]);
        // a (Pre = {⊤,4,3,2}) is below the companion, hence sound.
        assert!(fx.closure_a.pointwise_leq(&result.closure));
    }

    #[test]
    fn companion_of_identity_is_constant_top() {
        let l = FiniteLattice::chain(&["bot", "mid", "top"]);
        let id = MonotoneMap::identity(l.clone());
        let result = companion(&id);
        assert_eq!(result.chain, vec![l.top()]);
        assert_eq!(result.closure.pre_fixed(), &[l.top()]);
        assert!(l.elements().all(|x| result.closure.apply(x) == l.top()));
    }

    #[test]
    fn f_companion_on_the_chain() {
        let fx = fixtures::counterexample_chain();
        let result = f_companion(&fx.bsub, fx.four).unwrap();
        assert_eq!(result.generators, vec![fx.lattice.top(), fx.four]);
        assert_eq!(result.sublattice, vec![fx.four, fx.lattice.top()]);
        let top = f_companion(&fx.bsub, fx.lattice.top()).unwrap();
        assert_eq!(top.sublattice, vec![fx.lattice.top()]);
    }

    #[test]
    fn f_companion_requires_a_right_adjoint() {
        // every monotone map on a chain preserves binary meets, so the
        // rejection needs a wider lattice: collapse two atoms of M₃
        let l = crate::lattice::sample::m3();
        let p = l.index_of("p").unwrap();
        let collapse = MonotoneMap::from_fn(l.clone(), |x| {
            if x == l.bot() {
                l.bot()
            } else if x == p {
                p
            } else {
                l.top()
            }
        })
        .unwrap();
        assert!(matches!(
            f_companion(&collapse, p),
            Err(CheckError::NotARightAdjoint(_))
        ));
    }

    #[test]
    fn domains_containing_the_chain_are_sound() {
        // any closure whose domain contains every iterate of b from ⊤ is
        // b-sound, because it sits below the companion
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let l = crate::lattice::sample::random_lattice(&mut rng);
            let b = crate::lattice::sample::random_monotone_map(&l, &mut rng);
            let chain = companion(&b).chain;
            let mut domain = chain.clone();
            for x in l.elements() {
                if rng.random_bool(0.4) {
                    domain.push(x);
                }
            }
            crate::lattice::sample::meet_close(&l, &mut domain);
            let a = ClosureOperator::from_sublattice(&l, &domain).unwrap();
            assert!(chain.iter().all(|x| a.pre_fixed().contains(x)));
            let ba = MonotoneMap::compose(&b, a.carrier()).unwrap();
            assert!(l.leq(ba.nu(), b.nu()));
        }
    }

    #[test]
    fn up_closures_are_complete_as_up_to_techniques() {
        // whenever i ⊑ νb, the greatest fixed point itself is a witness:
        // i ⊑ νb ⊑ b(a(νb)) for any up-closure a
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let l = crate::lattice::sample::random_lattice(&mut rng);
            let b = crate::lattice::sample::random_monotone_map(&l, &mut rng);
            let a = crate::lattice::sample::random_closure(&l, &mut rng);
            let nu = b.nu();
            assert!(l.leq(nu, b.apply(a.apply(nu))));
        }
    }

    #[test]
    fn six_chain_has_462_monotone_maps() {
        let fx = fixtures::counterexample_chain();
        let maps = enumerate_monotone_maps(&fx.lattice);
        assert_eq!(maps.len(), 462);
    }

    #[test]
    fn bgfp_matches_the_generator_construction() {
        let fx = fixtures::counterexample_chain();
        for f in [fx.lattice.top(), fx.four, fx.three] {
            let via_b = b_gfp(&fx.bsub, f).unwrap();
            let via_generators = f_companion(&fx.bsub, f).unwrap();
            assert_eq!(via_b.closure, via_generators.closure);
            assert_eq!(via_b.map_count, 462);
        }
    }

    #[test]
    fn bgfp_with_identity_transformer() {
        // With b = id, compatibility is free and only a(f) ⊑ f constrains:
        // the domain of the result is the meet-closure of {⊤, f}.
        let l = crate::lattice::sample::m3();
        let p = l.index_of("p").unwrap();
        let id = MonotoneMap::identity(l.clone());
        let result = b_gfp(&id, p).unwrap();
        assert_eq!(result.closure.pre_fixed(), &[p, l.top()]);
    }

    #[test]
    fn bgfp_with_top_query_is_the_plain_companion() {
        let fx = fixtures::counterexample_chain();
        let result = b_gfp(&fx.bsub, fx.lattice.top()).unwrap();
        assert_eq!(result.closure.pre_fixed(), &[fx.lattice.top()]);
    }

    #[test]
    fn bgfp_rejects_large_lattices() {
        let l = FiniteLattice::powerset(3, |m| format!("m{m}"));
        let id = MonotoneMap::identity(l.clone());
        assert!(matches!(
            b_gfp(&id, l.top()),
            Err(CheckError::Lattice(LatticeError::LatticeTooLarge(8)))
        ));
    }

    #[test]
    fn second_order_membership_lemma_on_samples() {
        // a′ ⊑ B(a) iff a′∘b ⊑ b∘a and a′(f) ⊑ f, sampled over map pairs.
        let l = FiniteLattice::chain(&["bot", "1", "2", "top"]);
        let maps = enumerate_monotone_maps(&l);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let b = crate::lattice::sample::random_monotone_map(&l, &mut rng);
        let f = 2;
        let below = |s: &[Elem], t: &[Elem]| l.elements().all(|x| l.leq(s[x], t[x]));
        let step_b = |a: &[Elem]| -> Vec<Elem> {
            let b_after_a: Vec<Elem> = l.elements().map(|x| b.apply(a[x])).collect();
            let mut joined = vec![l.bot(); l.len()];
            for c in &maps {
                let cb: Vec<Elem> = l.elements().map(|x| c[b.apply(x)]).collect();
                if below(&cb, &b_after_a) && l.leq(c[f], f) {
                    for x in l.elements() {
                        joined[x] = l.join(joined[x], c[x]);
                    }
                }
            }
            joined
        };
        for _ in 0..200 {
            let a = &maps[rng.random_range(0..maps.len())];
            let a_prime = &maps[rng.random_range(0..maps.len())];
            let lhs = below(a_prime, &step_b(a));
            let apb: Vec<Elem> = l.elements().map(|x| a_prime[b.apply(x)]).collect();
            let bap: Vec<Elem> = l.elements().map(|x| b.apply(a[x])).collect();
            let rhs = below(&apb, &bap) && l.leq(a_prime[f], f);
            assert_eq!(lhs, rhs);
        }
    }
}
