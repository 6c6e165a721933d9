//! Structured text report for a (closure, map) configuration from a
//! lattice file: stable `key: value` lines, machine-diffable, with an
//! optional JSON rendering mirroring the law-report field names.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{best_abstraction, companion, f_companion, law_report, local_completeness, CheckError};
use crate::lattice::{sample, ClosureOperator, Elem, LatticeError, LatticeFile, MonotoneMap};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no map named `{0}` in the lattice file")]
    UnknownMap(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Key/value lines in emission order, plus the headline verdict: local
/// completeness at f when a query is given, plain completeness otherwise.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub lines: Vec<(String, String)>,
    pub pass: bool,
    pub headline: String,
}

impl CheckReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.pass { "pass" } else { &self.headline }
        ));
        out
    }

    pub fn render_json(&self) -> String {
        let mut out = String::from("{");
        for (k, v) in &self.lines {
            let value = match v.as_str() {
                "true" | "false" => v.clone(),
                other if other.parse::<i64>().is_ok() => v.clone(),
                other => format!("\"{}\"", other.replace('"', "\\\"")),
            };
            out.push_str(&format!("\"{k}\": {value}, "));
        }
        out.push_str(&format!(
            "\"result\": \"{}\"}}",
            if self.pass { "pass" } else { &self.headline }
        ));
        out
    }
}

pub fn check_report(
    file: &LatticeFile,
    closure_name: &str,
    map_name: &str,
    i: Option<&str>,
    f: Option<&str>,
    seed: u64,
) -> Result<CheckReport, ReportError> {
    let lattice = &file.lattice;
    let lookup = |name: &str| -> Result<MonotoneMap, ReportError> {
        let table = file
            .tables
            .get(name)
            .ok_or_else(|| ReportError::UnknownMap(name.to_string()))?;
        Ok(MonotoneMap::new(lattice.clone(), table.clone())?)
    };
    let closure = ClosureOperator::from_map(lookup(closure_name)?)?;
    let base = lookup(map_name)?;
    let i_elem: Option<Elem> = i.map(|name| lattice.index_of(name)).transpose()?;
    let f_elem: Option<Elem> = f.map(|name| lattice.index_of(name)).transpose()?;
    let map = match i_elem {
        Some(elem) => MonotoneMap::join(&MonotoneMap::constant(lattice.clone(), elem), &base)?,
        None => base.clone(),
    };

    let mut lines: Vec<(String, String)> = Vec::new();
    let mut push = |k: &str, v: String| lines.push((k.to_string(), v));
    push("lattice_size", lattice.len().to_string());
    push("closure", closure_name.to_string());
    push("closure_domain", lattice.render_set(closure.pre_fixed()));
    push("map", map_name.to_string());
    if let Some(elem) = i_elem {
        push("i", lattice.name(elem).to_string());
    }

    let report = law_report(&closure, &map)?;
    push("compatible", report.compatible.to_string());
    push("fully_complete", report.fully_complete.to_string());
    push("sound", report.sound.to_string());
    push("complete", report.complete.to_string());
    push("em_lifting", report.em_lifting_exists.to_string());
    push("kl_extension", report.kl_extension_exists.to_string());

    let ab = MonotoneMap::compose(closure.carrier(), &map)?;
    push("mu_map", lattice.name(map.mu()).to_string());
    push(
        "closure_of_mu",
        lattice.name(closure.apply(map.mu())).to_string(),
    );
    push("mu_abstract", lattice.name(ab.mu()).to_string());
    push("nu_map", lattice.name(map.nu()).to_string());

    let comp = companion(&map);
    push(
        "companion_domain",
        lattice.render_set(comp.closure.pre_fixed()),
    );
    push(
        "closure_below_companion",
        closure.pointwise_leq(&comp.closure).to_string(),
    );

    // Seeded cross-checks: the best abstraction is minimal among sampled
    // sound approximations, and the companion dominates sampled
    // compatible closures.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let best = best_abstraction(&closure, &map)?;
    let abs = closure.abstract_lattice().clone();
    let mut minimal = true;
    for _ in 0..40 {
        let candidate = sample::random_monotone_map(&abs, &mut rng);
        let is_sound = lattice.elements().all(|x| {
            abs.leq(
                closure.alpha(map.apply(x)),
                candidate.apply(closure.alpha(x)),
            )
        });
        if is_sound && !best.pointwise_leq(&candidate) {
            minimal = false;
        }
    }
    push("best_abstraction_minimal_on_samples", minimal.to_string());
    let mut maximal = true;
    for _ in 0..40 {
        let candidate = sample::random_closure(lattice, &mut rng);
        let cb = MonotoneMap::compose(candidate.carrier(), &map)?;
        let bc = MonotoneMap::compose(&map, candidate.carrier())?;
        if cb.pointwise_leq(&bc) && !candidate.pointwise_leq(&comp.closure) {
            maximal = false;
        }
    }
    push("companion_maximal_on_samples", maximal.to_string());

    match base.classify().preserves_meets {
        true => {
            if let Some(elem) = f_elem {
                let fc = f_companion(&base, elem)?;
                push("f_companion_domain", lattice.render_set(&fc.sublattice));
                push(
                    "closure_below_f_companion",
                    closure.pointwise_leq(&fc.closure).to_string(),
                );
            }
        }
        false => push(
            "f_companion_domain",
            "n/a (map is not a right adjoint)".to_string(),
        ),
    }

    let (pass, headline) = match f_elem {
        Some(elem) => {
            let local = local_completeness(&closure, &map, elem)?;
            push(
                &format!("local_complete(f={})", lattice.name(elem)),
                local.to_string(),
            );
            (
                local,
                format!("locally incomplete at f={}", lattice.name(elem)),
            )
        }
        None => (report.complete, "incomplete".to_string()),
    };

    Ok(CheckReport {
        lines,
        pass,
        headline,
    })
}
