//! Language queries and the equivalence algorithms.

use std::collections::VecDeque;

use super::{equiv_close, rel_transform, Dfa, DfaError, Partition, RelKind, Relation};

/// Which algorithm produced a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Naive,
    NaiveUpTo,
    Hk,
    Oracle,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Naive => "naive",
            Algo::NaiveUpTo => "naive-upto",
            Algo::Hk => "hk",
            Algo::Oracle => "oracle",
        }
    }
}

/// Up-to mode for the Naive algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpTo {
    None,
    Equivalence,
}

/// What a run did: the verdict, the witness relation it built, and how much
/// work it performed. `visited` counts the pairs that were actually
/// processed (inserted into R); for Hopcroft-Karp this equals the number
/// of union operations.
#[derive(Debug, Clone)]
pub struct EquivRunTrace {
    pub algorithm: Algo,
    pub verdict: bool,
    pub visited: usize,
    pub relation: Relation,
    pub partition: Option<Partition>,
    pub unions: usize,
    /// One entry per loop head when invariant checking was requested.
    pub invariant_checks: Option<Vec<bool>>,
}

/// Does state `x` accept the word `w`? Recursive on the word:
/// the empty word is accepted iff x is final, `aw` iff the a-successor
/// accepts `w`.
pub fn lang_query(dfa: &Dfa, x: usize, w: &[&str]) -> Result<bool, DfaError> {
    dfa.check_state(x)?;
    let mut state = x;
    for sym in w {
        state = dfa.step(state, dfa.symbol_index(sym)?);
    }
    Ok(dfa.is_final(state))
}

/// Ground-truth language equivalence: breadth-first search of the product
/// automaton from (x, y). The two states are equivalent iff no reachable
/// product pair disagrees on output — complete because only |X|² pairs
/// exist. Independent of the coinductive algorithms it validates.
pub fn lang_equiv_oracle(dfa: &Dfa, x: usize, y: usize) -> Result<bool, DfaError> {
    dfa.check_state(x)?;
    dfa.check_state(y)?;
    let n = dfa.states();
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::from([(x, y)]);
    seen[x * n + y] = true;
    while let Some((p, q)) = queue.pop_front() {
        if dfa.is_final(p) != dfa.is_final(q) {
            return Ok(false);
        }
        for a in dfa.symbols() {
            let (p2, q2) = (dfa.step(p, a), dfa.step(q, a));
            if !seen[p2 * n + q2] {
                seen[p2 * n + q2] = true;
                queue.push_back((p2, q2));
            }
        }
    }
    Ok(true)
}

/// The Naive algorithm: grow a candidate relation R until it is a
/// b-simulation containing the query pair, failing on the first output
/// disagreement. `todo` is a FIFO queue, so traces are deterministic and
/// witness relations breadth-first.
///
/// With `UpTo::Equivalence`, pairs already in the equivalence closure of R
/// are skipped, which can only shrink the stored relation; membership in
/// e(R) is tracked by a union-find grown alongside R.
pub fn run_naive(dfa: &Dfa, x1: usize, x2: usize, upto: UpTo) -> Result<EquivRunTrace, DfaError> {
    dfa.check_state(x1)?;
    dfa.check_state(x2)?;
    let mut rel = Relation::new();
    let mut closure = Partition::identity(dfa.states());
    let mut todo: VecDeque<(usize, usize)> = VecDeque::from([(x1, x2)]);
    let mut visited = 0;
    while let Some((p, q)) = todo.pop_front() {
        let skip = match upto {
            UpTo::None => rel.contains(p, q),
            UpTo::Equivalence => closure.same(p, q),
        };
        if skip {
            continue;
        }
        if dfa.is_final(p) != dfa.is_final(q) {
            return Ok(EquivRunTrace {
                algorithm: if upto == UpTo::None {
                    Algo::Naive
                } else {
                    Algo::NaiveUpTo
                },
                verdict: false,
                visited,
                relation: rel,
                partition: None,
                unions: 0,
                invariant_checks: None,
            });
        }
        for a in dfa.symbols() {
            todo.push_back((dfa.step(p, a), dfa.step(q, a)));
        }
        rel.insert(p, q);
        closure.union(p, q);
        visited += 1;
    }
    Ok(EquivRunTrace {
        algorithm: if upto == UpTo::None {
            Algo::Naive
        } else {
            Algo::NaiveUpTo
        },
        verdict: true,
        visited,
        relation: rel,
        partition: None,
        unions: 0,
        invariant_checks: None,
    })
}

/// Hopcroft-Karp: like Naive, but R is kept closed as an equivalence
/// (one union per inserted pair) and the output test is performed only at
/// the very end, as R ⊆ f. The loop therefore never exits early.
///
/// With `check_invariant`, the equality e(bstar(R) ∪ i) = e(R ∪ todo) is
/// checked at every loop head, where i is the query pair.
pub fn run_hk(
    dfa: &Dfa,
    x1: usize,
    x2: usize,
    check_invariant: bool,
) -> Result<EquivRunTrace, DfaError> {
    dfa.check_state(x1)?;
    dfa.check_state(x2)?;
    let n = dfa.states();
    let query = Relation::from_pairs([(x1, x2)]);
    let mut partition = Partition::identity(n);
    let mut inserted = Relation::new();
    let mut todo: VecDeque<(usize, usize)> = VecDeque::from([(x1, x2)]);
    let mut unions = 0;
    let mut invariant_checks = check_invariant.then(Vec::new);

    let abstract_step = |p: &Partition| -> Partition {
        let image = rel_transform(dfa, RelKind::BStar, &p.as_relation());
        equiv_close(&image.union(&query), n)
    };

    loop {
        if let Some(checks) = invariant_checks.as_mut() {
            let lhs = abstract_step(&partition);
            let rhs = equiv_close(
                &partition
                    .as_relation()
                    .union(&Relation::from_pairs(todo.iter().copied())),
                n,
            );
            checks.push(lhs == rhs);
        }
        let Some((p, q)) = todo.pop_front() else {
            break;
        };
        if partition.same(p, q) {
            continue;
        }
        for a in dfa.symbols() {
            todo.push_back((dfa.step(p, a), dfa.step(q, a)));
        }
        inserted.insert(p, q);
        partition.union(p, q);
        unions += 1;
    }

    // Final test: R ⊆ f, i.e. outputs agree inside every block.
    let verdict = partition
        .blocks()
        .iter()
        .all(|b| b.iter().all(|&s| dfa.is_final(s) == dfa.is_final(b[0])));
    Ok(EquivRunTrace {
        algorithm: Algo::Hk,
        verdict,
        visited: unions,
        relation: inserted,
        partition: Some(partition),
        unions,
        invariant_checks,
    })
}

/// The least fixed point of R ↦ e(bstar(R) ∪ i) in the lattice of
/// equivalence relations, by Kleene iteration from the identity partition.
/// For i = {(x1, x2)} this equals the final partition of [`run_hk`].
pub fn abstract_lfp(dfa: &Dfa, i: &Relation) -> Partition {
    let n = dfa.states();
    let mut current = equiv_close(i, n);
    loop {
        let image = rel_transform(dfa, RelKind::BStar, &current.as_relation());
        let next = equiv_close(&image.union(i), n);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// The descending chain ⊤ ⊒ b(⊤) ⊒ b²(⊤) ⊒ … in the relation lattice,
/// until it stabilises; the returned list includes the first repeated
/// element. Every iterate is an equivalence relation (checked), so the
/// chain is returned as partitions; the last one is language equivalence.
pub fn partition_refine(dfa: &Dfa) -> Vec<Partition> {
    let n = dfa.states();
    let mut rel = Relation::full(n);
    let mut chain = vec![equiv_close(&rel, n)];
    loop {
        let next = rel_transform(dfa, RelKind::B, &rel);
        let p = equiv_close(&next, n);
        // Instance of the duality law: each iterate is already closed.
        assert_eq!(
            p.as_relation(),
            next,
            "refinement iterate must be an equivalence"
        );
        let stable = next == rel;
        chain.push(p);
        if stable {
            return chain;
        }
        rel = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn word_membership_follows_the_transitions() {
        let fx = fixtures::main_dfa();
        assert!(!lang_query(&fx.dfa, fx.x, &[]).unwrap());
        assert!(lang_query(&fx.dfa, fx.x, &["a"]).unwrap());
        assert!(lang_query(&fx.dfa, fx.z, &["a", "b", "a", "b", "a"]).unwrap());
        assert!(matches!(
            lang_query(&fx.dfa, fx.x, &["c"]),
            Err(DfaError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn oracle_on_the_example_pairs() {
        let fx = fixtures::main_dfa();
        assert!(lang_equiv_oracle(&fx.dfa, fx.x, fx.u).unwrap());
        assert!(lang_equiv_oracle(&fx.dfa, fx.x, fx.x).unwrap());
        assert!(!lang_equiv_oracle(&fx.dfa, fx.x, fx.y).unwrap());
    }

    #[test]
    fn naive_builds_the_dashed_and_dotted_witness() {
        let fx = fixtures::main_dfa();
        let trace = run_naive(&fx.dfa, fx.x, fx.u, UpTo::None).unwrap();
        assert!(trace.verdict);
        let mut expected = Relation::from_pairs(fx.dashed.iter().copied());
        expected.insert(fx.dotted.0, fx.dotted.1);
        assert_eq!(trace.relation, expected);
        assert_eq!(trace.visited, 5);
        // The witness is a b-simulation containing the query pair.
        let b = rel_transform(&fx.dfa, RelKind::B, &trace.relation);
        assert!(trace.relation.is_subset(&b));
        assert!(trace.relation.contains(fx.x, fx.u));
    }

    #[test]
    fn up_to_equivalence_stores_strictly_fewer_pairs() {
        let fx = fixtures::main_dfa();
        let plain = run_naive(&fx.dfa, fx.x, fx.u, UpTo::None).unwrap();
        let upto = run_naive(&fx.dfa, fx.x, fx.u, UpTo::Equivalence).unwrap();
        assert!(upto.verdict);
        assert!(upto.relation.len() < plain.relation.len());
        // The stored relation is a b-simulation up to e.
        let e = equiv_close(&upto.relation, fx.dfa.states()).as_relation();
        let b_up_to = rel_transform(&fx.dfa, RelKind::B, &e);
        assert!(upto.relation.is_subset(&b_up_to));
    }

    #[test]
    fn reflexive_queries_stay_small() {
        let fx = fixtures::main_dfa();
        let n = fx.dfa.states();
        for upto in [UpTo::None, UpTo::Equivalence] {
            let trace = run_naive(&fx.dfa, fx.x, fx.x, upto).unwrap();
            assert!(trace.verdict);
            assert!(trace.relation.len() <= n);
        }
        let trace = run_hk(&fx.dfa, fx.x, fx.x, false).unwrap();
        assert!(trace.verdict);
        let blocks = trace.partition.unwrap().blocks();
        assert_eq!(blocks.len(), n); // only the diagonal: x's block is {x}
    }

    #[test]
    fn hk_matches_the_abstract_least_fixed_point() {
        let fx = fixtures::main_dfa();
        let trace = run_hk(&fx.dfa, fx.x, fx.u, true).unwrap();
        assert!(trace.verdict);
        assert_eq!(trace.unions, 4);
        assert!(trace.invariant_checks.unwrap().iter().all(|&ok| ok));
        let hk_partition = trace.partition.unwrap();
        let lfp = abstract_lfp(&fx.dfa, &Relation::from_pairs([(fx.x, fx.u)]));
        assert_eq!(hk_partition, lfp);
        assert_eq!(hk_partition.render(), "{0 5}{1 2 3 4}");
    }

    #[test]
    fn hk_rejects_inequivalent_states_only_at_the_end() {
        let fx = fixtures::main_dfa();
        let trace = run_hk(&fx.dfa, fx.x, fx.y, true).unwrap();
        assert!(!trace.verdict);
        assert!(trace.unions > 0); // the loop ran to completion
        assert!(trace.invariant_checks.unwrap().iter().all(|&ok| ok));
        // The abstract least fixed point for this query is not below f.
        let lfp = abstract_lfp(&fx.dfa, &Relation::from_pairs([(fx.x, fx.y)]));
        let f = rel_transform(&fx.dfa, RelKind::F, &Relation::new());
        assert!(!lfp.as_relation().is_subset(&f));
        assert_eq!(lfp, trace.partition.unwrap());
    }

    #[test]
    fn abstract_lfp_of_the_empty_seed_is_identity() {
        let fx = fixtures::main_dfa();
        assert_eq!(
            abstract_lfp(&fx.dfa, &Relation::new()),
            Partition::identity(fx.dfa.states())
        );
    }

    #[test]
    fn refinement_chain_stabilises_in_two_steps() {
        let fx = fixtures::main_dfa();
        let chain = partition_refine(&fx.dfa);
        assert_eq!(chain.len(), 3);
        assert_eq!(chain[1].render(), "{0 5}{1 2 3 4}");
        assert_eq!(chain[1], chain[2]);
        // The final partition is language equivalence, per the oracle.
        let last = chain.last().unwrap();
        for p in 0..fx.dfa.states() {
            for q in 0..fx.dfa.states() {
                assert_eq!(last.same(p, q), lang_equiv_oracle(&fx.dfa, p, q).unwrap());
            }
        }
    }

    #[test]
    fn one_state_chain_is_already_stable() {
        let dfa = Dfa::new(vec!["a".into()], vec![true], vec![vec![0]]).unwrap();
        let chain = partition_refine(&dfa);
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[0], chain[1]);
    }

    #[test]
    fn two_state_refinement_drops_to_identity() {
        let dfa = fixtures::small_dfa();
        let chain = partition_refine(&dfa);
        assert_eq!(chain[0].blocks().len(), 1);
        assert_eq!(chain[1], Partition::identity(2));
    }

    #[test]
    fn all_algorithms_agree_on_every_pair() {
        let fx = fixtures::main_dfa();
        let n = fx.dfa.states();
        for p in 0..n {
            for q in 0..n {
                let expected = lang_equiv_oracle(&fx.dfa, p, q).unwrap();
                assert_eq!(
                    run_naive(&fx.dfa, p, q, UpTo::None).unwrap().verdict,
                    expected
                );
                assert_eq!(
                    run_naive(&fx.dfa, p, q, UpTo::Equivalence).unwrap().verdict,
                    expected
                );
                assert_eq!(run_hk(&fx.dfa, p, q, true).unwrap().verdict, expected);
            }
        }
    }
}
