//! The property suite run by `loopmod selftest`, over a seeded corpus.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::thread;

use loopmod::central::{
    central_image, central_images_are_twists, decompose, maximal_graded_subfields, pair_isomorphism, SubfieldWithAug,
};
use loopmod::corpus::{corpus, CorpusConfig, Instance};
use loopmod::envelope::graded_envelope;
use loopmod::gmod::{graded_centralizer, is_graded_simple};
use loopmod::invars::{grade_endomorphism_algebra, inertia_group, profile_with_checks};
use loopmod::loopfun::{centralizer_loop_identity, check_loop_induced, induce_default, loop_module};
use loopmod::{Character, CycScalar, Error, GradedModule};
use serde::Serialize;

pub const PROPERTIES: &[&str] = &[
    "instance is a valid graded module",
    "instance is graded simple",
    "centralizer is a graded division algebra of the expected dimension",
    "division algebra profile identities",
    "loop of central image recovers the pair",
    "loop and induced module agree via phi and psi",
    "isotypic decomposition",
    "centralizer of the loop subfield",
    "central images are the twists",
    "inertia group by centralizer and by search agree",
    "graded envelope",
    "grading of End(V) recovers the invariant",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Undecided(String),
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub property: String,
    pub passed: usize,
    pub failed: usize,
    pub undecided: usize,
    pub first_failure: Option<String>,
}

fn judge(r: Result<bool, Error>, what: impl FnOnce() -> String) -> Outcome {
    match r {
        Ok(true) => Outcome::Pass,
        Ok(false) => Outcome::Fail(what()),
        Err(e @ (Error::FieldNotSplit(_) | Error::Indeterminate(_))) => Outcome::Undecided(e.to_string()),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn image(w: &GradedModule) -> Result<(SubfieldWithAug, GradedModule), Error> {
    let f = maximal_graded_subfields(w)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Violation("no maximal graded subfield".into()))?;
    let v = central_image(w, &f, Character::trivial())?.module;
    Ok((f, v))
}

fn property(inst: &Instance, p: usize) -> Result<bool, Error> {
    let w = &inst.module;
    match p {
        0 => Ok(w.algebra().validate().is_valid() && w.validate().is_valid()),
        1 => Ok(is_graded_simple(w).is_simple()),
        2 => {
            let c = graded_centralizer(w);
            Ok(c.dim() == inst.support.order() && c.algebra.is_graded_division())
        }
        3 => {
            let (p, checks) = profile_with_checks(&inst.division)?;
            let isotropic = p.beta.isotropic_subgroups(true)?;
            let orders = isotropic.iter().all(|h| p.support.order() * p.center_support.order() == h.order() * h.order());
            Ok(checks.holds() && orders && !isotropic.is_empty())
        }
        4 => {
            for f in maximal_graded_subfields(w)? {
                let v = central_image(w, &f, Character::trivial())?.module;
                let l = loop_module(&v);
                let lf = SubfieldWithAug::from_loop(&l);
                if !pair_isomorphism(w, &f, l.module(), &lf, |_| CycScalar::one(1)).is_iso() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        5 => {
            let (_, v) = image(w)?;
            Ok(check_loop_induced(&loop_module(&v), &induce_default(&v)?)?.holds())
        }
        6 => {
            let (f, _) = image(w)?;
            Ok(decompose(w, &f)?.report.holds())
        }
        7 => {
            let (_, v) = image(w)?;
            let central = centralizer_loop_identity(&v);
            let doubled = centralizer_loop_identity(&v.direct_sum(&v)?);
            Ok(central.equal && central.self_centralized && doubled.equal && !doubled.self_centralized)
        }
        8 => {
            let (f, _) = image(w)?;
            central_images_are_twists(w, &f)
        }
        9 => Ok(inertia_group(w)?.agrees()),
        10 => {
            let (_, v) = image(w)?;
            Ok(graded_envelope(&v)?.checks.holds())
        }
        11 => {
            let (_, v) = image(w)?;
            Ok(grade_endomorphism_algebra(w, &v)?.checks.holds())
        }
        _ => unreachable!("unknown property"),
    }
}

pub fn check_instance(inst: &Instance) -> Vec<Outcome> {
    (0..PROPERTIES.len())
        .map(|p| {
            let r = catch_unwind(AssertUnwindSafe(|| property(inst, p)))
                .unwrap_or_else(|_| Err(Error::Violation("panicked".into())));
            judge(r, || "property does not hold".into())
        })
        .collect()
}

/// Run every property on `instances` corpus instances, spread over `threads` workers.
pub fn run(seed: u64, instances: usize, cfg: CorpusConfig, threads: usize) -> Result<Vec<Tally>, Error> {
    let corpus = corpus(seed, instances, cfg)?;
    let threads = threads.clamp(1, instances.max(1));
    let mut outcomes: Vec<(usize, Vec<Outcome>)> = thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let corpus = &corpus;
                s.spawn(move || {
                    corpus.iter().skip(t).step_by(threads).map(|i| (i.index, check_instance(i))).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    outcomes.sort_by_key(|(i, _)| *i);
    let mut tallies: Vec<Tally> =
        PROPERTIES.iter().map(|p| Tally { property: p.to_string(), ..Default::default() }).collect();
    for (i, outs) in &outcomes {
        for (t, o) in tallies.iter_mut().zip(outs) {
            match o {
                Outcome::Pass => t.passed += 1,
                Outcome::Fail(m) => {
                    t.failed += 1;
                    t.first_failure.get_or_insert_with(|| format!("{}: {m}", corpus[*i].describe()));
                }
                Outcome::Undecided(m) => {
                    t.undecided += 1;
                    t.first_failure.get_or_insert_with(|| format!("{}: {m}", corpus[*i].describe()));
                }
            }
        }
    }
    Ok(tallies)
}
