//! Hard-coded structures used by the gallery and across the test suites:
//! the six-element chain with its adjoint pair of predicate transformers,
//! the six-state automaton, and the loop-counting flow system.

use std::sync::Arc;

use crate::automata::Dfa;
use crate::lattice::{ClosureOperator, Elem, FiniteLattice, MonotoneMap};
use crate::pred::flow::FlowSystem;

/// The six-element chain ⊥ < 1 < 2 < 3 < 4 < ⊤ with:
///
/// * `bstar`, a join-preserving map with right adjoint `bsub`,
/// * the up-closure `a` with Pre(a) = {⊤, 4, 3, 2},
/// * the up-closure `a′` with Pre(a′) = {⊤, 4, 3},
/// * the constants `i = 1` and `f = 4`.
///
/// On this fixture `a` is sound as an up-to technique for `bsub ⊓ f` but
/// not complete as an abstract domain for `i ⊔ bstar`, which is the whole
/// point of the fixture.
pub struct CounterexampleChain {
    pub lattice: Arc<FiniteLattice>,
    pub one: Elem,
    pub two: Elem,
    pub three: Elem,
    pub four: Elem,
    pub bstar: MonotoneMap,
    pub bsub: MonotoneMap,
    pub closure_a: ClosureOperator,
    pub closure_a_prime: ClosureOperator,
    /// The element 1, used as the constant map i.
    pub i: Elem,
    /// The element 4, used as the constant map f and as the query.
    pub f: Elem,
}

impl CounterexampleChain {
    /// i ⊔ b*, the forward transformer whose least fixed point is 1.
    pub fn i_join_bstar(&self) -> MonotoneMap {
        let i = MonotoneMap::constant(self.lattice.clone(), self.i);
        MonotoneMap::join(&i, &self.bstar).unwrap()
    }

    /// b_* ⊓ f, the backward transformer whose greatest fixed point is 4.
    pub fn bsub_meet_f(&self) -> MonotoneMap {
        let f = MonotoneMap::constant(self.lattice.clone(), self.f);
        MonotoneMap::meet(&self.bsub, &f).unwrap()
    }
}

pub fn counterexample_chain() -> CounterexampleChain {
    let lattice = FiniteLattice::chain(&["bot", "1", "2", "3", "4", "top"]);
    let idx = |s: &str| lattice.index_of(s).unwrap();
    let (bot, one, two, three, four, top) = (
        idx("bot"),
        idx("1"),
        idx("2"),
        idx("3"),
        idx("4"),
        idx("top"),
    );
    // bstar: ⊥↦⊥, 1↦⊥, 2↦3, 3↦3, 4↦4, ⊤↦⊤; bsub: ⊥↦1, 1↦1, 2↦1, 3↦3, 4↦4, ⊤↦⊤.
    let mut bstar_table = vec![0; 6];
    bstar_table[bot] = bot;
    bstar_table[one] = bot;
    bstar_table[two] = three;
    bstar_table[three] = three;
    bstar_table[four] = four;
    bstar_table[top] = top;
    let mut bsub_table = vec![0; 6];
    bsub_table[bot] = one;
    bsub_table[one] = one;
    bsub_table[two] = one;
    bsub_table[three] = three;
    bsub_table[four] = four;
    bsub_table[top] = top;
    let bstar = MonotoneMap::new(lattice.clone(), bstar_table).unwrap();
    let bsub = MonotoneMap::new(lattice.clone(), bsub_table).unwrap();
    let closure_a = ClosureOperator::from_sublattice(&lattice, &[top, four, three, two]).unwrap();
    let closure_a_prime = ClosureOperator::from_sublattice(&lattice, &[top, four, three]).unwrap();
    CounterexampleChain {
        lattice,
        one,
        two,
        three,
        four,
        bstar,
        bsub,
        closure_a,
        closure_a_prime,
        i: one,
        f: four,
    }
}

/// The lattice file rendering of [`counterexample_chain`], as consumed by
/// the CLI. Map `b` is i ⊔ b* with i = 1.
pub fn counterexample_chain_file() -> String {
    let fx = counterexample_chain();
    let l = &fx.lattice;
    let mut out = String::from("# six-element chain with closure and transformer tables\n");
    for x in l.elements() {
        out.push_str(&format!("elem {}\n", l.name(x)));
    }
    for w in [
        ("bot", "1"),
        ("1", "2"),
        ("2", "3"),
        ("3", "4"),
        ("4", "top"),
    ] {
        out.push_str(&format!("cover {} {}\n", w.0, w.1));
    }
    let dump = |out: &mut String, name: &str, m: &MonotoneMap| {
        for x in l.elements() {
            out.push_str(&format!(
                "map {name} {} {}\n",
                l.name(x),
                l.name(m.apply(x))
            ));
        }
    };
    dump(&mut out, "a", fx.closure_a.carrier());
    dump(&mut out, "aprime", fx.closure_a_prime.carrier());
    dump(&mut out, "bstar", &fx.bstar);
    dump(&mut out, "bsub", &fx.bsub);
    dump(&mut out, "b", &fx.i_join_bstar());
    dump(&mut out, "bf", &fx.bsub_meet_f());
    out
}

/// The six-state automaton over {a, b}: states x, y, z, v, w, u in that
/// order, with y, z, v, w final. States x and u accept exactly the
/// non-empty words; the other four accept everything.
pub struct MainDfa {
    pub dfa: Dfa,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub v: usize,
    pub w: usize,
    pub u: usize,
    /// The four solid witness pairs: (x,u), (y,v), (z,w), (z,v).
    pub dashed: Vec<(usize, usize)>,
    /// The extra pair (y,w) that equivalence closure supplies.
    pub dotted: (usize, usize),
}

pub fn main_dfa() -> MainDfa {
    let (x, y, z, v, w, u) = (0, 1, 2, 3, 4, 5);
    let out = vec![false, true, true, true, true, false];
    // trans[state][symbol]
    let trans = vec![
        vec![y, y], // x
        vec![z, z], // y
        vec![z, z], // z
        vec![w, w], // v
        vec![v, v], // w
        vec![v, w], // u
    ];
    let dfa = Dfa::new(vec!["a".into(), "b".into()], out, trans).unwrap();
    MainDfa {
        dfa,
        x,
        y,
        z,
        v,
        w,
        u,
        dashed: vec![(x, u), (y, v), (z, w), (z, v)],
        dotted: (y, w),
    }
}

/// The DFA file rendering of [`main_dfa`].
pub fn main_dfa_file() -> String {
    let fx = main_dfa();
    let mut out = String::from("# 0=x 1=y 2=z 3=v 4=w 5=u; y,z,v,w final\n");
    out.push_str("states 6\nalphabet a b\nfinal 1 2 3 4\n");
    for s in 0..6 {
        for (k, sym) in ["a", "b"].iter().enumerate() {
            out.push_str(&format!("trans {s} {sym} {}\n", fx.dfa.step(s, k)));
        }
    }
    out
}

/// The flow system of the loop-counting program
/// `x := 5; while x > 0 do x := x - 1`, one variable per program point.
pub fn toy_flow_file() -> String {
    "# x := 5;(1)  while (2) x>0 (3) do { x := x-1;(4) } (5)\n\
     var x1\nvar x2\nvar x3\nvar x4\nvar x5\n\
     eq x1 = const({5})\n\
     eq x2 = union(x1, x4)\n\
     eq x3 = inter(x2, [1,inf))\n\
     eq x4 = shift(x3, -1)\n\
     eq x5 = inter(x2, (-inf,0])\n"
        .to_string()
}

pub fn toy_flow_system() -> FlowSystem {
    crate::pred::flow::parse_flow_file(&toy_flow_file()).expect("toy flow file parses")
}

/// A two-state automaton whose relation lattice (16 elements) is small
/// enough to build explicitly; used to exercise the lattice-level checks
/// on an automaton instance.
pub fn small_dfa() -> Dfa {
    Dfa::new(
        vec!["a".into(), "b".into()],
        vec![false, true],
        vec![vec![1, 0], vec![1, 1]],
    )
    .unwrap()
}
