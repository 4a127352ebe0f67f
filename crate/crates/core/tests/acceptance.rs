//! Acceptance gate: ten criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use loopmod::abgroup::{subgroup_characters, Character, QuotientMap, Subgroup};
use loopmod::arith::cyclo::{divisors, euler_phi, rational_poly_mul};
use loopmod::arith::{cyclotomic_polynomial, CycScalar, Matrix, Rational};
use loopmod::central::{
    central_image, central_images_are_twists, decompose, loop_iso_implies_twist, maximal_graded_subfields,
    pair_isomorphism, SubfieldWithAug,
};
use loopmod::corpus::{corpus, CorpusConfig, Instance};
use loopmod::envelope::graded_envelope;
use loopmod::fixtures;
use loopmod::gmod::{graded_centralizer, is_graded_simple, is_isomorphic_graded, is_isomorphic_ungraded};
use loopmod::invars::{inertia_group, profile, random_division_algebra, schur_index};
use loopmod::loopfun::{
    check_loop_induced, centralizer_loop_identity, forgetful, induce, induce_default, loop_module, loop_transitivity_iso,
    phi_raw, shifted_transversal,
};
use loopmod::GradedModule;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;
const INSTANCES: usize = 50;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn the_corpus() -> Vec<Instance> {
    corpus(SEED, INSTANCES, CorpusConfig::default()).expect("corpus generation")
}

/// Pairs (W, F) with the trivial central image, one per corpus instance.
fn with_images(c: &[Instance]) -> Result<Vec<(&Instance, SubfieldWithAug, GradedModule)>, String> {
    c.iter()
        .map(|inst| {
            let f = maximal_graded_subfields(&inst.module).map_err(err)?.into_iter().next().ok_or("no subfield")?;
            let v = central_image(&inst.module, &f, Character::trivial()).map_err(err)?.module;
            Ok((inst, f, v))
        })
        .collect()
}

fn pauli() -> Outcome {
    let w = fixtures::pauli_module();
    ensure(is_graded_simple(&w).is_simple(), || "W not graded simple".into())?;
    let c = graded_centralizer(&w);
    ensure(c.dim() == 4, || format!("dim C(W) = {}", c.dim()))?;
    let p = profile(&c.algebra).map_err(err)?;
    ensure(p.support.order() == 4, || "support is not all of G".into())?;
    ensure(p.center_support.is_trivial(), || "Z is not trivial".into())?;
    let fs = maximal_graded_subfields(&w).map_err(err)?;
    ensure(fs.len() == 3, || format!("{} maximal graded subfields", fs.len()))?;
    ensure(schur_index(&w).map_err(err)? == 2, || "Schur index".into())?;
    let inertia = inertia_group(&w).map_err(err)?;
    ensure(inertia.group.order() == 4 && inertia.agrees(), || "inertia group".into())?;
    let d = decompose(&w, &fs[0]).map_err(err)?;
    ensure(d.classes.len() == 1 && d.classes[0].multiplicity == 2, || "decomposition shape".into())?;
    ensure(d.classes[0].representative.module.dim() == 2, || "dim V".into())?;
    ensure(d.report.holds(), || format!("{:?}", d.report))?;
    Ok("dim C(W)=4, |T|=4, Z={e}, 3 subfields, index 2, |K|=4, W≅V²".into())
}

fn roundtrip(c: &[Instance]) -> Outcome {
    let mut pairs = 0;
    for inst in c {
        for f in maximal_graded_subfields(&inst.module).map_err(err)? {
            let v = central_image(&inst.module, &f, Character::trivial()).map_err(err)?.module;
            let l = loop_module(&v);
            let lf = SubfieldWithAug::from_loop(&l);
            let iso = pair_isomorphism(&inst.module, &f, l.module(), &lf, |_| CycScalar::one(1));
            ensure(iso.is_iso(), || format!("{}: loop of central image is not the pair", inst.describe()))?;
            pairs += 1;
        }
    }
    Ok(format!("{} instances, {} pairs", c.len(), pairs))
}

fn phi_psi(c: &[Instance]) -> Outcome {
    let data = with_images(c)?;
    let mut shifted = 0;
    for (inst, _, v) in &data {
        let l = loop_module(v);
        let ind = induce_default(v).map_err(err)?;
        let rep = check_loop_induced(&l, &ind).map_err(err)?;
        ensure(rep.holds(), || format!("{}: {:?}", inst.describe(), rep))?;
        let perp = loopmod::abgroup::orthogonal_complement(v.grading().kernel());
        if perp.order() > 1 {
            let t = shifted_transversal(v.grading(), ind.transversal(), |j| j + 1);
            let other = induce(v, &t).map_err(err)?;
            let moved = other.raw_change(&ind).mul(&phi_raw(&l, &other));
            ensure(moved == phi_raw(&l, &ind), || format!("{}: φ depends on the transversal", inst.describe()))?;
            shifted += 1;
        }
    }
    Ok(format!("{} instances, {} transversal changes", data.len(), shifted))
}

fn isotropic_orders() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut subgroups = 0;
    for i in 0..INSTANCES {
        let d = random_division_algebra(&mut rng, 64).map_err(err)?;
        let p = profile(&d).map_err(err)?;
        let all = p.beta.isotropic_subgroups(true).map_err(err)?;
        ensure(!all.is_empty(), || format!("#{i}: no maximal isotropic subgroup"))?;
        for h in all {
            ensure(p.support.order() * p.center_support.order() == h.order() * h.order(), || {
                format!("#{i}: |T||Z| = {}·{} but |H| = {}", p.support.order(), p.center_support.order(), h.order())
            })?;
            subgroups += 1;
        }
    }
    Ok(format!("{INSTANCES} algebras, {subgroups} maximal isotropic subgroups"))
}

fn decompositions(c: &[Instance]) -> Outcome {
    let data = with_images(c)?;
    let mut classes = 0;
    for (inst, f, _) in &data {
        let d = decompose(&inst.module, f).map_err(err)?;
        ensure(d.report.holds(), || format!("{}: {:?}", inst.describe(), d.report))?;
        let pieces: Vec<&GradedModule> = d.classes.iter().map(|cl| &cl.piece.module).collect();
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                ensure(!is_isomorphic_ungraded(pieces[i], pieces[j]).is_iso(), || {
                    format!("{}: Wε_{i} ≅ Wε_{j}", inst.describe())
                })?;
            }
        }
        classes += d.classes.len();
    }
    Ok(format!("{} instances, {} isotypic classes", data.len(), classes))
}

fn centralizer_loops(c: &[Instance]) -> Outcome {
    let data = with_images(c)?;
    for (inst, _, v) in &data {
        let rep = centralizer_loop_identity(v);
        ensure(rep.equal && rep.self_centralized, || format!("{}: central V: {:?}", inst.describe(), rep))?;
        let doubled = v.direct_sum(v).map_err(err)?;
        let rep = centralizer_loop_identity(&doubled);
        ensure(rep.equal && !rep.self_centralized, || format!("{}: V⊕V: {:?}", inst.describe(), rep))?;
    }
    Ok(format!("{} central and {} non-central modules", data.len(), data.len()))
}

fn transitivity(c: &[Instance]) -> Outcome {
    let mut chains = 0;
    for inst in c {
        let g = inst.group.clone();
        for h in Subgroup::all(&g) {
            let v = forgetful(&inst.module, &Arc::new(QuotientMap::new(&h))).map_err(err)?;
            for k in Subgroup::all(&g).into_iter().filter(|k| k.is_subgroup_of(&h)) {
                let (direct, outer, map) = loop_transitivity_iso(&v, Arc::new(QuotientMap::new(&k))).map_err(err)?;
                ensure(map.is_isomorphism(&direct, &outer), || {
                    format!("{}: chain |K|={} |H|={}", inst.describe(), k.order(), h.order())
                })?;
                chains += 1;
            }
        }
    }
    Ok(format!("{chains} chains K ≤ H ≤ G"))
}

fn twists(c: &[Instance]) -> Outcome {
    let mut witnesses = 0;
    for inst in c {
        let f = maximal_graded_subfields(&inst.module).map_err(err)?.into_iter().next().ok_or("no subfield")?;
        ensure(central_images_are_twists(&inst.module, &f).map_err(err)?, || {
            format!("{}: central images are not the twists", inst.describe())
        })?;
        let base = central_image(&inst.module, &f, Character::trivial()).map_err(err)?.module;
        for chi in subgroup_characters(f.support()) {
            let other = central_image(&inst.module, &f, chi).map_err(err)?.module;
            let found = loop_iso_implies_twist(&base, &other).map_err(err)?;
            ensure(found.is_some(), || format!("{}: loops differ for χ={:?}", inst.describe(), chi))?;
            witnesses += 1;
        }
    }
    Ok(format!("{witnesses} twist witnesses"))
}

fn envelopes(c: &[Instance]) -> Outcome {
    let v = fixtures::pauli_natural();
    let r = graded_envelope(&v).map_err(err)?;
    ensure(r.checks.holds(), || format!("Pauli: {:?}", r.checks))?;
    ensure(is_isomorphic_graded(r.module(), &fixtures::pauli_module()).is_iso(), || "Pauli envelope".into())?;
    let data = with_images(c)?;
    let mut slowest = Duration::ZERO;
    for (inst, _, v) in &data {
        let t = Instant::now();
        let r = graded_envelope(v).map_err(|e| format!("{}: {e}", inst.describe()))?;
        ensure(r.checks.holds(), || format!("{}: {:?}", inst.describe(), r.checks))?;
        slowest = slowest.max(t.elapsed());
    }
    ensure(slowest < Duration::from_secs(10), || format!("slowest instance took {slowest:?}"))?;
    Ok(format!("Pauli + {} central images, slowest {:.2?}", data.len(), slowest))
}

fn random_scalar<R: Rng>(rng: &mut R, n: u64) -> CycScalar {
    let k = rng.gen_range(0..n as i64);
    let num = rng.gen_range(-5..=5);
    let den = rng.gen_range(1..=4);
    let base = CycScalar::from_rational(Rational::new(num, den), n);
    &(&base * &CycScalar::zeta_pow(n, k)) + &CycScalar::from_int(rng.gen_range(-2..=2), n)
}

fn arithmetic() -> Outcome {
    for n in 1..=64u64 {
        let prod = divisors(n).into_iter().map(cyclotomic_polynomial).reduce(|a, b| rational_poly_mul(&a, &b)).unwrap();
        let mut expect = vec![Rational::ZERO; n as usize + 1];
        expect[0] = Rational::from_int(-1);
        expect[n as usize] = Rational::one();
        ensure(prod == expect, || format!("Π Φ_d ≠ x^{n} − 1"))?;
        ensure(cyclotomic_polynomial(n).len() as u64 == euler_phi(n) + 1, || format!("deg Φ_{n}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..100 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let n = [1u64, 3, 4, 5, 8, 12][rng.gen_range(0..6)];
        let m = Matrix::from_fn(r, c, |_, _| if rng.gen_bool(0.4) { CycScalar::zero(n) } else { random_scalar(&mut rng, n) });
        let kernel = m.kernel();
        ensure(m.rank() + kernel.len() == c, || format!("matrix #{i}: rank–nullity"))?;
        ensure(kernel.iter().all(|v| m.mul_vec(v).iter().all(|e| e.is_zero())), || format!("matrix #{i}: kernel"))?;
    }
    for i in 0..200 {
        let n = [1u64, 3, 4, 7, 8, 12, 15][rng.gen_range(0..7)];
        let (a, b, c) = (random_scalar(&mut rng, n), random_scalar(&mut rng, n), random_scalar(&mut rng, n));
        let one = CycScalar::one(n);
        let zero = CycScalar::zero(n);
        let ok = &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a + &b == &b + &a
            && &a * &b == &b * &a
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a + &zero == a
            && &a * &one == a
            && (&a - &a).is_zero()
            && (a.is_zero() || (&a * &a.inv().unwrap()).is_one());
        ensure(ok, || format!("triple #{i} over ℚ(ζ_{n}) violates a field axiom"))?;
    }
    Ok("Φ products for N ≤ 64, 100 rank–nullity checks, 200 field-axiom triples".into())
}

fn main() {
    let corpus = the_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Pauli fixture", Box::new(pauli)),
        ("loop of central image recovers the pair", Box::new(|| roundtrip(&corpus))),
        ("φ/ψ inverse identities and transversal independence", Box::new(|| phi_psi(&corpus))),
        ("|T||Z| = |H|² for maximal isotropic H", Box::new(isotropic_orders)),
        ("isotypic decomposition", Box::new(|| decompositions(&corpus))),
        ("loop of centralizer vs centralizer of loop subfield", Box::new(|| centralizer_loops(&corpus))),
        ("loop transitivity", Box::new(|| transitivity(&corpus))),
        ("isomorphic loops come from twists", Box::new(|| twists(&corpus))),
        ("graded envelope", Box::new(|| envelopes(&corpus))),
        ("exact arithmetic", Box::new(arithmetic)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let el = t.elapsed();
        match out {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({el:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({el:.2?})", i + 1)
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
