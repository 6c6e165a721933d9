//! Seedable random generators for lattices, monotone maps, and closures.
//!
//! Used by the property suites and by the sampled cross-checks in the CLI
//! report. Everything is driven by an explicit RNG so runs are reproducible.

use std::sync::Arc;

use rand::Rng;

use super::{AdjointPair, ClosureOperator, Elem, FiniteLattice, MonotoneMap};

/// A random monotone map: sample a raw table and monotonize it by taking
/// the pointwise join over lower sets. Every monotone map arises this way.
pub fn random_monotone_map(lattice: &Arc<FiniteLattice>, rng: &mut impl Rng) -> MonotoneMap {
    let n = lattice.len();
    let raw: Vec<Elem> = (0..n).map(|_| rng.random_range(0..n)).collect();
    monotonize(lattice, &raw)
}

/// Monotonizes a raw table: `f(x) = ⨆{raw(y) | y ⊑ x}`.
pub fn monotonize(lattice: &Arc<FiniteLattice>, raw: &[Elem]) -> MonotoneMap {
    let table: Vec<Elem> = lattice
        .elements()
        .map(|x| {
            lattice.join_all(
                lattice
                    .elements()
                    .filter(|&y| lattice.leq(y, x))
                    .map(|y| raw[y]),
            )
        })
        .collect();
    MonotoneMap::new(lattice.clone(), table).expect("monotonized table is monotone")
}

/// A random join-preserving map (hence a left adjoint), by rejection:
/// monotone maps fixing ⊥ are sampled until one preserves binary joins.
pub fn random_left_adjoint(lattice: &Arc<FiniteLattice>, rng: &mut impl Rng) -> AdjointPair {
    let n = lattice.len();
    loop {
        let mut raw: Vec<Elem> = (0..n).map(|_| rng.random_range(0..n)).collect();
        raw[lattice.bot()] = lattice.bot();
        let candidate = monotonize(lattice, &raw);
        if candidate.classify().preserves_joins {
            return AdjointPair::right_adjoint_of(&candidate)
                .expect("join-preserving maps have right adjoints");
        }
    }
}

/// A random meet-closed subset containing ⊤ (the domain of a closure).
pub fn random_meet_closed_subset(lattice: &Arc<FiniteLattice>, rng: &mut impl Rng) -> Vec<Elem> {
    let mut set: Vec<Elem> = lattice
        .elements()
        .filter(|_| rng.random_bool(0.5))
        .collect();
    set.push(lattice.top());
    meet_close(lattice, &mut set);
    set
}

/// Closes a set under binary meets, in place; result is sorted.
pub fn meet_close(lattice: &FiniteLattice, set: &mut Vec<Elem>) {
    set.sort_unstable();
    set.dedup();
    loop {
        let mut added = false;
        let snapshot = set.clone();
        for &x in &snapshot {
            for &y in &snapshot {
                let m = lattice.meet(x, y);
                if !set.contains(&m) {
                    set.push(m);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
        set.sort_unstable();
    }
    set.sort_unstable();
}

/// A random up-closure, built from a random meet-closed sublattice.
pub fn random_closure(lattice: &Arc<FiniteLattice>, rng: &mut impl Rng) -> ClosureOperator {
    let set = random_meet_closed_subset(lattice, rng);
    ClosureOperator::from_sublattice(lattice, &set).expect("sampled sublattice is valid")
}

/// A random closure pair a₁ ⊑ a₂: Pre(a₂) ⊆ Pre(a₁).
pub fn random_closure_pair(
    lattice: &Arc<FiniteLattice>,
    rng: &mut impl Rng,
) -> (ClosureOperator, ClosureOperator) {
    let small = random_meet_closed_subset(lattice, rng);
    let mut large = small.clone();
    for x in lattice.elements() {
        if rng.random_bool(0.5) {
            large.push(x);
        }
    }
    meet_close(lattice, &mut large);
    let a1 = ClosureOperator::from_sublattice(lattice, &large).unwrap();
    let a2 = ClosureOperator::from_sublattice(lattice, &small).unwrap();
    (a1, a2)
}

/// A small lattice drawn from a fixed family: chains, sublattices of the
/// boolean cube 2³, and the two classic non-distributive lattices M₃ / N₅.
/// All members have at most 8 elements.
pub fn random_lattice(rng: &mut impl Rng) -> Arc<FiniteLattice> {
    match rng.random_range(0..4u32) {
        0 => {
            let len = rng.random_range(1..=8usize);
            let names: Vec<String> = (0..len).map(|i| format!("c{i}")).collect();
            FiniteLattice::chain(&names)
        }
        1 => random_cube_sublattice(rng),
        2 => m3(),
        _ => n5(),
    }
}

fn random_cube_sublattice(rng: &mut impl Rng) -> Arc<FiniteLattice> {
    // A subset of 2³ closed under & and | is a (distributive) lattice.
    let mut masks: Vec<usize> = vec![0, 7];
    for m in 1..7usize {
        if rng.random_bool(0.5) {
            masks.push(m);
        }
    }
    loop {
        let mut added = false;
        let snapshot = masks.clone();
        for &x in &snapshot {
            for &y in &snapshot {
                for candidate in [x | y, x & y] {
                    if !masks.contains(&candidate) {
                        masks.push(candidate);
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    masks.sort_unstable();
    let names: Vec<String> = masks.iter().map(|m| format!("m{m}")).collect();
    let n = masks.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = masks[i] & masks[j] == masks[i];
        }
    }
    FiniteLattice::from_leq(names, leq).expect("cube sublattice is a lattice")
}

pub fn m3() -> Arc<FiniteLattice> {
    FiniteLattice::from_covers(
        &["bot", "p", "q", "r", "top"],
        &[
            ("bot", "p"),
            ("bot", "q"),
            ("bot", "r"),
            ("p", "top"),
            ("q", "top"),
            ("r", "top"),
        ],
    )
    .unwrap()
}

pub fn n5() -> Arc<FiniteLattice> {
    FiniteLattice::from_covers(
        &["bot", "p", "q", "r", "top"],
        &[
            ("bot", "p"),
            ("p", "r"),
            ("r", "top"),
            ("bot", "q"),
            ("q", "top"),
        ],
    )
    .unwrap()
}
