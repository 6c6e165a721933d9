//! The relation transformers of the bisimulation game, and an explicit
//! relation lattice for automata small enough to enumerate.

use std::sync::Arc;

use super::{equiv_close, Dfa, Relation};
use crate::lattice::{Elem, FiniteLattice, MonotoneMap};

/// Which transformer on relations to apply.
///
/// * `B` — the bisimulation step: outputs agree and all successors related.
/// * `BStar` — successor image, the left adjoint of `BSub`.
/// * `BSub` — all successors related (no output test).
/// * `F` — the constant output-agreement relation.
///
/// `B = BSub ⊓ F` by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelKind {
    B,
    BStar,
    BSub,
    F,
}

pub fn rel_transform(dfa: &Dfa, which: RelKind, rel: &Relation) -> Relation {
    let n = dfa.states();
    match which {
        RelKind::BStar => Relation::from_pairs(
            rel.iter()
                .flat_map(|(x, y)| dfa.symbols().map(move |a| (x, y, a)))
                .map(|(x, y, a)| (dfa.step(x, a), dfa.step(y, a))),
        ),
        RelKind::BSub => {
            Relation::from_pairs((0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(
                |&(x, y)| {
                    dfa.symbols()
                        .all(|a| rel.contains(dfa.step(x, a), dfa.step(y, a)))
                },
            ))
        }
        RelKind::F => Relation::from_pairs(
            (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter(|&(x, y)| dfa.is_final(x) == dfa.is_final(y)),
        ),
        RelKind::B => {
            let sub = rel_transform(dfa, RelKind::BSub, rel);
            let f = rel_transform(dfa, RelKind::F, rel);
            let b = Relation::from_pairs(sub.iter().filter(|&(x, y)| f.contains(x, y)));
            debug_assert!(b
                .iter()
                .all(|(x, y)| sub.contains(x, y) && f.contains(x, y)));
            b
        }
    }
}

/// The lattice of relations over `points` states, as an explicit powerset
/// lattice of `points²` bits. Only sensible for very small automata
/// (points ≤ 3 gives at most 512 elements).
pub struct RelLattice {
    pub lattice: Arc<FiniteLattice>,
    pub points: usize,
}

impl RelLattice {
    pub fn relation_of(&self, elem: Elem) -> Relation {
        let n = self.points;
        Relation::from_pairs(
            (0..n * n)
                .filter(|bit| elem >> bit & 1 == 1)
                .map(|bit| (bit / n, bit % n)),
        )
    }

    pub fn elem_of(&self, rel: &Relation) -> Elem {
        let n = self.points;
        rel.iter().fold(0, |acc, (x, y)| acc | 1 << (x * n + y))
    }

    /// Lifts a function on relations to a map table on the lattice.
    pub fn tabulate(&self, f: impl Fn(&Relation) -> Relation) -> MonotoneMap {
        MonotoneMap::from_fn(self.lattice.clone(), |elem| {
            self.elem_of(&f(&self.relation_of(elem)))
        })
        .expect("relation transformers are monotone")
    }

    /// The identity, the three generators of equivalence closure
    /// (constant-diagonal, transpose, composition), and their iterated
    /// join e — everything needed to decompose e as (id ⊔ r ⊔ s ⊔ t)^↑.
    pub fn closure_generators(&self) -> RelClosureMaps {
        let n = self.points;
        let id = MonotoneMap::identity(self.lattice.clone());
        let refl = self.tabulate(|_| Relation::diagonal(n));
        let sym = self.tabulate(|rel| Relation::from_pairs(rel.iter().map(|(x, y)| (y, x))));
        let comp = self.tabulate(|rel| {
            Relation::from_pairs(rel.iter().flat_map(|(x, y)| {
                rel.iter()
                    .filter(move |&(y2, _)| y2 == y)
                    .map(move |(_, z)| (x, z))
            }))
        });
        let equiv = self.tabulate(|rel| equiv_close(rel, n).as_relation());
        RelClosureMaps {
            id,
            refl,
            sym,
            comp,
            equiv,
        }
    }
}

pub struct RelClosureMaps {
    pub id: MonotoneMap,
    pub refl: MonotoneMap,
    pub sym: MonotoneMap,
    pub comp: MonotoneMap,
    pub equiv: MonotoneMap,
}

pub fn relation_lattice(points: usize) -> RelLattice {
    assert!(points * points <= 9, "relation lattice capped at 3 points");
    let n = points;
    let lattice = FiniteLattice::powerset(n * n, |mask| {
        let rel = Relation::from_pairs(
            (0..n * n)
                .filter(|bit| mask >> bit & 1 == 1)
                .map(|bit| (bit / n, bit % n)),
        );
        rel.render()
    });
    RelLattice { lattice, points }
}

/// The four transformers of `dfa` as map tables on its relation lattice.
pub struct DfaRelMaps {
    pub b: MonotoneMap,
    pub bstar: MonotoneMap,
    pub bsub: MonotoneMap,
    pub f: MonotoneMap,
    /// The output-agreement relation as a lattice element.
    pub f_elem: Elem,
}

pub fn dfa_rel_maps(rl: &RelLattice, dfa: &Dfa) -> DfaRelMaps {
    assert_eq!(rl.points, dfa.states());
    let b = rl.tabulate(|rel| rel_transform(dfa, RelKind::B, rel));
    let bstar = rl.tabulate(|rel| rel_transform(dfa, RelKind::BStar, rel));
    let bsub = rl.tabulate(|rel| rel_transform(dfa, RelKind::BSub, rel));
    let f = rl.tabulate(|rel| rel_transform(dfa, RelKind::F, rel));
    let f_elem = f.apply(rl.lattice.bot());
    DfaRelMaps {
        b,
        bstar,
        bsub,
        f,
        f_elem,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn bisimulation_step_on_the_witness_relations() {
        let fx = fixtures::main_dfa();
        let dashed = Relation::from_pairs(fx.dashed.iter().copied());
        // (y,w) is missing from the dashed relation, so (x,u) drops out.
        let b = rel_transform(&fx.dfa, RelKind::B, &dashed);
        assert!(!b.contains(fx.x, fx.u));
        assert!(!dashed.is_subset(&b));
        // Adding the dotted pair gives a genuine b-simulation.
        let mut full = dashed.clone();
        full.insert(fx.dotted.0, fx.dotted.1);
        let b = rel_transform(&fx.dfa, RelKind::B, &full);
        assert!(full.is_subset(&b));
        // And the dashed relation alone is a b-simulation up to e.
        let e = equiv_close(&dashed, fx.dfa.states()).as_relation();
        let b_up_to = rel_transform(&fx.dfa, RelKind::B, &e);
        assert!(e.contains(fx.dotted.0, fx.dotted.1));
        assert!(dashed.is_subset(&b_up_to));
    }

    #[test]
    fn successor_image_of_the_query_pair() {
        let fx = fixtures::main_dfa();
        let rel = Relation::from_pairs([(fx.x, fx.u)]);
        let image = rel_transform(&fx.dfa, RelKind::BStar, &rel);
        assert_eq!(image, Relation::from_pairs([(fx.y, fx.v), (fx.y, fx.w)]));
        assert!(rel_transform(&fx.dfa, RelKind::BStar, &Relation::new()).is_empty());
    }

    #[test]
    fn b_decomposes_as_bsub_meet_f() {
        use rand::{Rng, SeedableRng};
        let fx = fixtures::main_dfa();
        let n = fx.dfa.states();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let rel = Relation::from_pairs(
                (0..rng.random_range(0..12usize))
                    .map(|_| (rng.random_range(0..n), rng.random_range(0..n))),
            );
            let b = rel_transform(&fx.dfa, RelKind::B, &rel);
            let sub = rel_transform(&fx.dfa, RelKind::BSub, &rel);
            let f = rel_transform(&fx.dfa, RelKind::F, &rel);
            let meet = Relation::from_pairs(sub.iter().filter(|&(x, y)| f.contains(x, y)));
            assert_eq!(b, meet);
        }
    }

    #[test]
    fn bstar_bsub_adjunction_on_samples() {
        use rand::{Rng, SeedableRng};
        let fx = fixtures::main_dfa();
        let n = fx.dfa.states();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let sample = |rng: &mut rand_chacha::ChaCha8Rng| {
            Relation::from_pairs(
                (0..rng.random_range(0..10usize))
                    .map(|_| (rng.random_range(0..n), rng.random_range(0..n))),
            )
        };
        for _ in 0..200 {
            let r = sample(&mut rng);
            let s = sample(&mut rng);
            let lhs = rel_transform(&fx.dfa, RelKind::BStar, &r).is_subset(&s);
            let rhs = r.is_subset(&rel_transform(&fx.dfa, RelKind::BSub, &s));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn equivalence_closure_is_compatible_on_samples() {
        use rand::{Rng, SeedableRng};
        let fx = fixtures::main_dfa();
        let n = fx.dfa.states();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let e = |rel: &Relation| equiv_close(rel, n).as_relation();
        for _ in 0..200 {
            let rel = Relation::from_pairs(
                (0..rng.random_range(0..10usize))
                    .map(|_| (rng.random_range(0..n), rng.random_range(0..n))),
            );
            // e ∘ bsub ⊑ bsub ∘ e, and e ∘ f ⊑ f (f's image is an equivalence).
            let lhs = e(&rel_transform(&fx.dfa, RelKind::BSub, &rel));
            let rhs = rel_transform(&fx.dfa, RelKind::BSub, &e(&rel));
            assert!(lhs.is_subset(&rhs));
            let f = rel_transform(&fx.dfa, RelKind::F, &rel);
            assert_eq!(e(&f), f);
            // Componentwise: each generator of e satisfies g ∘ bsub ⊑ bsub ∘ g…
            // reflexivity is constant, so check it against the image too.
            let sub = rel_transform(&fx.dfa, RelKind::BSub, &rel);
            let sym = |r: &Relation| Relation::from_pairs(r.iter().map(|(x, y)| (y, x)));
            assert!(sym(&sub).is_subset(&rel_transform(&fx.dfa, RelKind::BSub, &sym(&rel))));
            let diag = Relation::diagonal(n);
            assert!(diag.is_subset(&rel_transform(&fx.dfa, RelKind::BSub, &diag)));
            let trans = |r: &Relation| {
                Relation::from_pairs(r.iter().flat_map(|(x, y)| {
                    r.iter()
                        .filter(move |&(y2, _)| y2 == y)
                        .map(move |(_, z)| (x, z))
                }))
            };
            assert!(trans(&sub).is_subset(&rel_transform(&fx.dfa, RelKind::BSub, &trans(&rel))));
        }
    }

    #[test]
    fn two_point_relation_lattice_round_trips() {
        let rl = relation_lattice(2);
        assert_eq!(rl.lattice.len(), 16);
        for elem in rl.lattice.elements() {
            assert_eq!(rl.elem_of(&rl.relation_of(elem)), elem);
        }
    }

    #[test]
    fn equivalence_closure_is_the_power_closure_of_the_generators() {
        let rl = relation_lattice(2);
        let gens = rl.closure_generators();
        let joined = MonotoneMap::join(
            &MonotoneMap::join(&gens.id, &gens.refl).unwrap(),
            &MonotoneMap::join(&gens.sym, &gens.comp).unwrap(),
        )
        .unwrap();
        let (up, _) = joined.power_closures();
        assert_eq!(up, gens.equiv);
    }
}
