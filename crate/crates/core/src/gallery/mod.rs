//! Replays every worked claim about the fixtures through the library and
//! reports pass/fail per claim, with byte-stable output for golden diffs.

use thiserror::Error;

use crate::automata::{
    abstract_lfp, dfa_rel_maps, lang_equiv_oracle, lang_query, partition_refine, rel_transform,
    relation_lattice, run_hk, run_naive, RelKind, Relation, UpTo,
};
use crate::checker::{
    b_gfp, bf_compatibility, bridge_check, companion, duality_check, f_companion, law_report,
    local_completeness, CheckError,
};
use crate::fixtures;
use crate::lattice::{AdjointPair, ClosureOperator, Elem, FixKind, MonotoneMap};
use crate::pred::toy::{
    sign_report, toy_f, toy_f_companion_domain, toy_mu_chain, toy_nu_chain, ToyMap,
};
use crate::pred::IntPred;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GalleryError {
    #[error("unknown fixture `{0}` (known: {1})")]
    UnknownFixture(String, String),
}

#[derive(Debug, Clone)]
pub struct Claim {
    pub fixture: &'static str,
    pub label: String,
    pub detail: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
pub struct GalleryReport {
    pub claims: Vec<Claim>,
}

impl GalleryReport {
    pub fn passed(&self) -> usize {
        self.claims.iter().filter(|c| c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == self.claims.len()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let verdict = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{verdict}  [{}] {}: {}\n",
                c.fixture, c.label, c.detail
            ));
        }
        out.push_str(&format!(
            "gallery: {} claims, {} passed\n",
            self.claims.len(),
            self.passed()
        ));
        out
    }
}

pub const FIXTURES: [&str; 4] = [
    "chain-counterexample",
    "dfa-equivalence",
    "toy-analysis",
    "rel-pair",
];

pub fn run_gallery(filter: Option<&str>) -> Result<GalleryReport, GalleryError> {
    let selected: Vec<&str> = match filter {
        None => FIXTURES.to_vec(),
        Some(name) => {
            if !FIXTURES.contains(&name) {
                return Err(GalleryError::UnknownFixture(
                    name.to_string(),
                    FIXTURES.join(", "),
                ));
            }
            vec![name]
        }
    };
    let mut report = GalleryReport::default();
    for fixture in selected {
        match fixture {
            "chain-counterexample" => chain_counterexample(&mut report),
            "dfa-equivalence" => dfa_equivalence(&mut report),
            "toy-analysis" => toy_analysis(&mut report),
            "rel-pair" => rel_pair(&mut report),
            _ => unreachable!(),
        }
    }
    Ok(report)
}

fn chain_counterexample(report: &mut GalleryReport) {
    const FX: &str = "chain-counterexample";
    let fx = fixtures::counterexample_chain();
    let l = &fx.lattice;
    let name = |x: Elem| l.name(x).to_string();
    let chain_names = |chain: &[Elem]| chain.iter().map(|&x| name(x)).collect::<Vec<_>>().join(" ");
    let mut claim = |label: &str, detail: String, pass: bool| {
        report.claims.push(Claim {
            fixture: FX,
            label: label.to_string(),
            detail,
            pass,
        })
    };

    let b = fx.i_join_bstar();
    let bf = fx.bsub_meet_f();
    claim("mu(i|bstar)", name(b.mu()), b.mu() == fx.one);
    claim(
        "a(mu)",
        name(fx.closure_a.apply(b.mu())),
        fx.closure_a.apply(b.mu()) == fx.two,
    );
    let ab = MonotoneMap::compose(fx.closure_a.carrier(), &b).unwrap();
    let mu_chain = ab.kleene_chain(FixKind::Least);
    claim(
        "mu(a.(i|bstar)) chain",
        chain_names(&mu_chain),
        mu_chain == vec![l.bot(), fx.two, fx.three, fx.three],
    );
    let nu_chain = bf.kleene_chain(FixKind::Greatest);
    claim(
        "nu(bsub^f) chain",
        chain_names(&nu_chain),
        nu_chain == vec![l.top(), fx.four, fx.four] && bf.nu() == fx.four,
    );

    let law = law_report(&fx.closure_a, &b).unwrap();
    claim(
        "a complete for i|bstar",
        law.complete.to_string(),
        !law.complete,
    );
    claim("a sound for i|bstar", law.sound.to_string(), law.sound);
    let law_bf = law_report(&fx.closure_a, &bf).unwrap();
    claim("a sound for bsub^f", law_bf.sound.to_string(), law_bf.sound);
    claim(
        "a compatible with bsub^f",
        law_bf.compatible.to_string(),
        !law_bf.compatible,
    );

    for f in [l.top(), fx.four, fx.three] {
        let ok = local_completeness(&fx.closure_a, &b, f).unwrap();
        claim(
            &format!("a locally complete at {}", name(f)),
            ok.to_string(),
            ok,
        );
    }
    let at_two = local_completeness(&fx.closure_a, &b, fx.two).unwrap();
    claim("a locally complete at 2", at_two.to_string(), !at_two);

    let law_prime = law_report(&fx.closure_a_prime, &b).unwrap();
    claim(
        "aprime complete for i|bstar",
        law_prime.complete.to_string(),
        law_prime.complete,
    );
    claim(
        "a below aprime yet incomplete",
        format!(
            "a ⊑ aprime = {}, a complete = {}",
            fx.closure_a.pointwise_leq(&fx.closure_a_prime),
            law.complete
        ),
        fx.closure_a.pointwise_leq(&fx.closure_a_prime) && !law.complete,
    );

    // completeness is exactly local completeness at every domain element
    for (tag, closure, expected) in [
        ("a", &fx.closure_a, false),
        ("aprime", &fx.closure_a_prime, true),
    ] {
        let everywhere = closure
            .pre_fixed()
            .iter()
            .all(|&f| local_completeness(closure, &b, f).unwrap());
        let complete = law_report(closure, &b).unwrap().complete;
        claim(
            &format!("{tag}: complete iff locally complete on its domain"),
            format!("complete = {complete}, everywhere local = {everywhere}"),
            complete == everywhere && complete == expected,
        );
    }

    let comp = companion(&bf);
    claim(
        "companion domain of bsub^f",
        l.render_set(comp.closure.pre_fixed()),
        comp.closure.pre_fixed() == [fx.four, l.top()],
    );
    claim(
        "a below the companion of bsub^f",
        fx.closure_a.pointwise_leq(&comp.closure).to_string(),
        fx.closure_a.pointwise_leq(&comp.closure),
    );

    let fc = f_companion(&fx.bsub, fx.four).unwrap();
    claim(
        "f-companion domain (f=4)",
        l.render_set(&fc.sublattice),
        fc.sublattice == vec![fx.four, l.top()],
    );
    for f in [l.top(), fx.four, fx.three] {
        let via_enum = b_gfp(&fx.bsub, f).unwrap();
        let via_gens = f_companion(&fx.bsub, f).unwrap();
        claim(
            &format!("second-order gfp matches generators (f={})", name(f)),
            format!(
                "{} over {} monotone maps",
                l.render_set(via_enum.closure.pre_fixed()),
                via_enum.map_count
            ),
            via_enum.closure == via_gens.closure && via_enum.map_count == 462,
        );
    }

    let pair = AdjointPair::new(fx.bstar.clone(), fx.bsub.clone()).unwrap();
    let computed = AdjointPair::right_adjoint_of(&fx.bstar).unwrap();
    claim(
        "right adjoint of bstar is bsub",
        "computed adjoint matches the fixture table".to_string(),
        computed.right() == &fx.bsub,
    );
    let bridge = bridge_check(&pair, &fx.closure_a).unwrap();
    claim(
        "bridge fails on both sides for a",
        format!(
            "forward = {}, backward = {}",
            bridge.forward, bridge.backward
        ),
        !bridge.forward && !bridge.backward,
    );
    let duality = duality_check(&pair, &fx.closure_a, fx.four, 8);
    claim(
        "duality premise rejected for a",
        match &duality {
            Err(CheckError::PreconditionFailed(msg)) => (*msg).to_string(),
            other => format!("{other:?}"),
        },
        matches!(duality, Err(CheckError::PreconditionFailed(_))),
    );
}

fn dfa_equivalence(report: &mut GalleryReport) {
    const FX: &str = "dfa-equivalence";
    let fx = fixtures::main_dfa();
    let names = ["x", "y", "z", "v", "w", "u"];
    let named = |p: &crate::automata::Partition| p.render_named(|s| names[s].to_string());
    let mut claim = |label: &str, detail: String, pass: bool| {
        report.claims.push(Claim {
            fixture: FX,
            label: label.to_string(),
            detail,
            pass,
        })
    };

    claim(
        "word membership at x",
        "empty word rejected, `a` accepted".to_string(),
        !lang_query(&fx.dfa, fx.x, &[]).unwrap() && lang_query(&fx.dfa, fx.x, &["a"]).unwrap(),
    );
    let oracle = lang_equiv_oracle(&fx.dfa, fx.x, fx.u).unwrap();
    claim("oracle: x ~ u", oracle.to_string(), oracle);

    let naive = run_naive(&fx.dfa, fx.x, fx.u, UpTo::None).unwrap();
    claim(
        "naive verdict and witness size",
        format!("true with {} pairs", naive.relation.len()),
        naive.verdict && naive.relation.len() == 5,
    );
    let upto = run_naive(&fx.dfa, fx.x, fx.u, UpTo::Equivalence).unwrap();
    claim(
        "up-to-equivalence stores fewer pairs",
        format!("{} < {}", upto.relation.len(), naive.relation.len()),
        upto.verdict && upto.relation.len() < naive.relation.len(),
    );
    let hk = run_hk(&fx.dfa, fx.x, fx.u, true).unwrap();
    claim(
        "hk verdict and union count",
        format!("true with {} unions", hk.unions),
        hk.verdict && hk.unions == 4,
    );
    claim(
        "hk loop invariant",
        "holds at every loop head".to_string(),
        hk.invariant_checks
            .as_ref()
            .is_some_and(|cs| cs.iter().all(|&ok| ok)),
    );
    let hk_partition = hk.partition.clone().unwrap();
    let lfp = abstract_lfp(&fx.dfa, &Relation::from_pairs([(fx.x, fx.u)]));
    claim(
        "hk partition is the abstract lfp",
        named(&hk_partition),
        hk_partition == lfp && named(&hk_partition) == "{x u}{y z v w}",
    );

    let dashed = Relation::from_pairs(fx.dashed.iter().copied());
    let b_dashed = rel_transform(&fx.dfa, RelKind::B, &dashed);
    let e_dashed = crate::automata::equiv_close(&dashed, fx.dfa.states()).as_relation();
    let b_up_to = rel_transform(&fx.dfa, RelKind::B, &e_dashed);
    claim(
        "solid pairs: not a simulation, but one up to equivalence",
        format!(
            "missing pair recovered by closure: {}",
            e_dashed.contains(fx.dotted.0, fx.dotted.1)
        ),
        !dashed.is_subset(&b_dashed)
            && dashed.is_subset(&b_up_to)
            && e_dashed.contains(fx.dotted.0, fx.dotted.1),
    );

    let chain = partition_refine(&fx.dfa);
    let rendered: Vec<String> = chain.iter().map(named).collect();
    claim(
        "refinement chain stabilises in two steps",
        rendered.join(" => "),
        chain.len() == 3 && rendered[1] == "{x u}{y z v w}" && chain[1] == chain[2],
    );

    let oracle_xy = lang_equiv_oracle(&fx.dfa, fx.x, fx.y).unwrap();
    let naive_xy = run_naive(&fx.dfa, fx.x, fx.y, UpTo::None).unwrap();
    let hk_xy = run_hk(&fx.dfa, fx.x, fx.y, true).unwrap();
    claim(
        "x !~ y on every route",
        format!(
            "oracle = {oracle_xy}, naive = {}, hk = {} after {} unions",
            naive_xy.verdict, hk_xy.verdict, hk_xy.unions
        ),
        !oracle_xy && !naive_xy.verdict && !hk_xy.verdict && hk_xy.unions > 0,
    );

    let mut agree = true;
    for p in 0..fx.dfa.states() {
        for q in 0..fx.dfa.states() {
            let expected = lang_equiv_oracle(&fx.dfa, p, q).unwrap();
            agree &= run_naive(&fx.dfa, p, q, UpTo::None).unwrap().verdict == expected;
            agree &= run_naive(&fx.dfa, p, q, UpTo::Equivalence).unwrap().verdict == expected;
            agree &= run_hk(&fx.dfa, p, q, false).unwrap().verdict == expected;
        }
    }
    claim(
        "all algorithms agree on all 36 pairs",
        agree.to_string(),
        agree,
    );
}

fn toy_analysis(report: &mut GalleryReport) {
    const FX: &str = "toy-analysis";
    let mut claim = |label: &str, detail: String, pass: bool| {
        report.claims.push(Claim {
            fixture: FX,
            label: label.to_string(),
            detail,
            pass,
        })
    };

    let sys = fixtures::toy_flow_system();
    let concrete = sys.solve_concrete(10_000).unwrap();
    let x2 = sys.var_index("x2").unwrap();
    let x5 = sys.var_index("x5").unwrap();
    claim(
        "concrete solution",
        format!("x2 = {}, x5 = {}", concrete.values[x2], concrete.values[x5]),
        concrete.values[x2] == IntPred::range(Some(0), Some(5))
            && concrete.values[x5] == IntPred::singleton(0),
    );
    let column: Vec<String> = concrete
        .trace
        .iter()
        .map(|row| row[x2].to_string())
        .collect();
    let expected = [
        "{}", "{5}", "[4,5]", "[3,5]", "[2,5]", "[1,5]", "[0,5]", "[0,5]",
    ];
    claim(
        "concrete x2 sweeps are the six-step chain",
        column.join(" "),
        column == expected,
    );
    let mu_chain: Vec<String> = toy_mu_chain().iter().map(|p| p.to_string()).collect();
    claim(
        "transformer chain matches the solver sweeps",
        mu_chain.join(" "),
        mu_chain == expected,
    );

    let sign = sys.solve_sign();
    claim(
        "sign solution",
        format!("x2 = {}, x5 = {}", sign.values[x2], sign.values[x5]),
        sign.values[x2] == toy_f() && sign.values[x5] == IntPred::singleton(0),
    );
    let column: Vec<String> = sign.trace.iter().map(|row| row[x2].to_string()).collect();
    claim(
        "sign x2 sweeps",
        column.join(" "),
        column == ["{}", "[1,inf)", "[0,inf)", "[0,inf)"],
    );
    let sound = concrete
        .values
        .iter()
        .zip(&sign.values)
        .all(|(c, s)| c.leq(s));
    claim("sign solution over-approximates", sound.to_string(), sound);

    for item in sign_report() {
        claim(item.label, item.detail.clone(), item.pass);
    }

    let nu: Vec<String> = toy_nu_chain().iter().map(|p| p.to_string()).collect();
    claim(
        "backward chain",
        nu.join(" => "),
        nu == ["(-inf,inf)", "[0,inf)", "[0,inf)"],
    );
    let domain = toy_f_companion_domain();
    let rendered: Vec<String> = domain.iter().map(|p| p.to_string()).collect();
    claim(
        "f-companion domain",
        format!("{{{}}}", rendered.join(", ")),
        domain == vec![IntPred::all(), toy_f()],
    );
    claim(
        "query: x5 inside {0}",
        format!("{} subset {}", sign.values[x5], IntPred::singleton(0)),
        sign.values[x5].leq(&IntPred::singleton(0)),
    );
    // forward transformer decomposes as i ⊔ bstar
    let probe = IntPred::from_values(&[-7, 0, 3, 9]);
    let lhs = crate::pred::toy::toy_transform(ToyMap::B, &probe);
    let rhs = crate::pred::toy::toy_transform(ToyMap::I, &probe)
        .union(&crate::pred::toy::toy_transform(ToyMap::BStar, &probe));
    claim("b = i join bstar", format!("{lhs} = {rhs}"), lhs == rhs);
}

fn rel_pair(report: &mut GalleryReport) {
    const FX: &str = "rel-pair";
    let mut claim = |label: &str, detail: String, pass: bool| {
        report.claims.push(Claim {
            fixture: FX,
            label: label.to_string(),
            detail,
            pass,
        })
    };

    let dfa = fixtures::small_dfa();
    let rl = relation_lattice(2);
    let maps = dfa_rel_maps(&rl, &dfa);
    let pair = AdjointPair::new(maps.bstar.clone(), maps.bsub.clone());
    claim(
        "successor image is left adjoint to predecessor test",
        format!("validated on all {} relations", rl.lattice.len()),
        pair.is_ok(),
    );
    let pair = pair.unwrap();

    let meet = MonotoneMap::meet(
        &maps.bsub,
        &MonotoneMap::constant(rl.lattice.clone(), maps.f_elem),
    )
    .unwrap();
    claim(
        "b decomposes as bsub meet f",
        "tables agree on all 16 elements".to_string(),
        maps.b == meet,
    );

    let gens = rl.closure_generators();
    let e = ClosureOperator::from_map(gens.equiv.clone()).unwrap();
    let joined = MonotoneMap::join(
        &MonotoneMap::join(&gens.id, &gens.refl).unwrap(),
        &MonotoneMap::join(&gens.sym, &gens.comp).unwrap(),
    )
    .unwrap();
    let (up, _) = joined.power_closures();
    claim(
        "equivalence closure is the iterated join of its generators",
        "power closure equals the union-find table".to_string(),
        up == gens.equiv,
    );

    let compatible = bf_compatibility(e.carrier(), &maps.bsub, maps.f_elem).unwrap();
    claim(
        "closure commutes with bsub and fixes f",
        compatible.to_string(),
        compatible,
    );
    let bridge = bridge_check(&pair, &e).unwrap();
    claim(
        "bridge holds on both sides for e",
        format!(
            "forward = {}, backward = {}",
            bridge.forward, bridge.backward
        ),
        bridge.forward && bridge.backward,
    );
    let duality = duality_check(&pair, &e, maps.f_elem, 16).unwrap();
    claim(
        "every backward iterate is an equivalence relation",
        duality.to_string(),
        duality,
    );

    // the lattice-level abstract lfp agrees with the union-find solver
    let i_rel = Relation::from_pairs([(0, 1)]);
    let i_elem = rl.elem_of(&i_rel);
    let step = MonotoneMap::compose(
        e.carrier(),
        &MonotoneMap::join(
            &maps.bstar,
            &MonotoneMap::constant(rl.lattice.clone(), i_elem),
        )
        .unwrap(),
    )
    .unwrap();
    let mu = step.mu();
    let via_unionfind = abstract_lfp(&dfa, &i_rel).as_relation();
    claim(
        "abstract lfp agrees with the union-find iteration",
        rl.relation_of(mu).render(),
        rl.relation_of(mu) == via_unionfind,
    );
}
