use std::sync::Arc;

use loopmod::abgroup::{QuotientMap, Subgroup};
use loopmod::central::{decompose, maximal_graded_subfields, central_image};
use loopmod::doc::Workspace;
use loopmod::envelope::graded_envelope;
use loopmod::gmod::{graded_centralizer, is_graded_simple, is_isomorphic_graded, is_isomorphic_ungraded, Certificate, IsoOutcome};
use loopmod::invars::{centralizer_profile, inertia_group, schur_index, BrauerInvariant};
use loopmod::loopfun::{check_loop_induced, induce_default, loop_module, loop_to, phi_raw};
use loopmod::{Character, Error, GradedModule, Result, Simplicity, SubfieldWithAug};
use serde_json::{json, Value};

use crate::report::{character, degree, elem, elems, Report, Status};

pub struct Input {
    pub ws: Workspace,
    pub module: Option<String>,
}

impl Input {
    pub fn report(&self, command: &str, extra: Value) -> Report {
        let mut inputs = json!({ "module": self.module });
        if let (Value::Object(a), Value::Object(b)) = (&mut inputs, extra) {
            a.extend(b);
        }
        Report::new(command, inputs, self.ws.cyclotomic_order)
    }

    /// The named module, or the only module of the document.
    pub fn target(&self) -> Result<(&str, &GradedModule)> {
        match &self.module {
            Some(name) => Ok((name.as_str(), self.ws.module(name)?)),
            None if self.ws.modules.len() == 1 => {
                let (k, v) = self.ws.modules.iter().next().unwrap();
                Ok((k.as_str(), v))
            }
            None => Err(Error::Reference("--module is required when the document has several modules".into())),
        }
    }
}

/// The input document with the given modules added.
fn embed(ws: &Workspace, rep: &mut Report, modules: Vec<(&str, &GradedModule)>) -> Result<Value> {
    let mut out = Workspace {
        cyclotomic_order: ws.cyclotomic_order,
        groups: ws.groups.clone(),
        subgroups: ws.subgroups.clone(),
        algebras: ws.algebras.clone(),
        modules: ws.modules.clone(),
        characters: ws.characters.clone(),
    };
    for (name, m) in modules {
        let g = m.algebra().group();
        if !out.groups.values().any(|h| **h == **g) {
            out.groups.insert(format!("G{}", out.groups.len()), g.clone());
        }
        let k = m.grading().kernel();
        let named = out.subgroups.values().any(|s| s.elements() == k.elements());
        if !k.is_trivial() && k.order() != k.parent().order() && !named {
            out.subgroups.insert(format!("K{}", out.subgroups.len()), k.clone());
        }
        out.modules.insert(name.to_string(), m.clone());
    }
    let doc = out.to_doc()?;
    if doc.cyclotomic_order != ws.cyclotomic_order {
        rep.diagnose(format!("cyclotomic order raised from {} to {}", ws.cyclotomic_order, doc.cyclotomic_order));
    }
    serde_json::to_value(doc).map_err(|e| Error::Parse(e.to_string()))
}

fn grading_name(m: &GradedModule) -> String {
    let k = m.grading().kernel();
    if k.is_trivial() {
        "G".into()
    } else {
        format!("G/<{}>", k.canonical_generators().iter().map(|x| k.parent().fmt_elem(*x)).collect::<Vec<_>>().join(","))
    }
}

fn pick_subfield(inp: &Input, w: &GradedModule, support: Option<&str>) -> Result<(SubfieldWithAug, usize)> {
    let fs = maximal_graded_subfields(w)?;
    let count = fs.len();
    let f = match support {
        None => fs.into_iter().next(),
        Some(name) => {
            let h = inp.ws.subgroup(name, w.algebra().group())?;
            fs.into_iter().find(|f| f.support().elements() == h.elements())
        }
    };
    let f = f.ok_or_else(|| Error::Reference(format!("no maximal graded subfield with support {}", support.unwrap_or("?"))))?;
    Ok((f, count))
}

fn simplicity(rep: &mut Report, key: &str, s: &Simplicity) -> bool {
    match s {
        Simplicity::Simple(c) => {
            let cert = match c {
                Certificate::FullImage { image_dim } => json!({ "kind": "full_image", "image_dim": image_dim }),
                Certificate::QuadraticField { discriminant, image_dim } => {
                    json!({ "kind": "quadratic_field", "discriminant": discriminant.to_string(), "image_dim": image_dim })
                }
            };
            rep.certificate(key, cert);
            true
        }
        Simplicity::NotSimple(basis) => {
            let v = rep.vectors(basis);
            rep.certificate(&format!("{key}_submodule"), v);
            false
        }
        Simplicity::Indeterminate(m) => {
            rep.diagnose(format!("indeterminate: {m}"));
            rep.flag(Status::Undecided);
            false
        }
    }
}

pub fn validate(inp: &Input) -> Result<Report> {
    let mut rep = inp.report("validate", json!({}));
    let mut algebras = serde_json::Map::new();
    for (name, a) in &inp.ws.algebras {
        let r = a.validate();
        if !r.is_valid() {
            rep.flag(Status::Counterexample);
            rep.certificate(
                &format!("algebra {name}"),
                json!({ "associativity": r.associativity, "unit": r.unit, "grading": r.grading, "unit_degree": r.unit_degree }),
            );
        }
        algebras.insert(name.clone(), json!({ "dim": a.dim(), "valid": r.is_valid() }));
    }
    let mut modules = serde_json::Map::new();
    for (name, m) in &inp.ws.modules {
        if inp.module.as_ref().is_some_and(|n| n != name) {
            continue;
        }
        let r = m.validate();
        if !r.is_valid() {
            rep.flag(Status::Counterexample);
            rep.certificate(
                &format!("module {name}"),
                json!({ "homomorphism": r.homomorphism, "unit": r.unit, "grading": r.grading, "shape": r.shape }),
            );
        }
        modules.insert(name.clone(), json!({ "dim": m.dim(), "grading": grading_name(m), "valid": r.is_valid() }));
    }
    if let Some(n) = &inp.module {
        inp.ws.module(n)?;
    }
    rep.result("cyclotomic_order", inp.ws.cyclotomic_order);
    rep.result("algebras", algebras);
    rep.result("modules", modules);
    Ok(rep)
}

pub fn centralizer(inp: &Input) -> Result<Report> {
    let (_, w) = inp.target()?;
    let mut rep = inp.report("centralizer", json!({}));
    let c = graded_centralizer(w);
    let pi = w.grading();
    let mut comps = Vec::new();
    for q in w.grading_group().elements() {
        let k = c.component(q).len();
        if k > 0 {
            comps.push(json!({ "degree": degree(pi, q), "dim": k }));
        }
    }
    rep.result("dim", c.dim());
    rep.result("components", comps);
    rep.result("graded_division", c.algebra.is_graded_division());
    rep.result("commutative", c.algebra.is_commutative());
    let maps: Vec<Value> =
        (0..c.dim()).map(|i| json!({ "degree": degree(pi, c.algebra.degree(i)), "matrix": rep.matrix(&c.maps[i]) })).collect();
    rep.certificate("basis", Value::Array(maps));
    Ok(rep)
}

pub fn simple(inp: &Input, ungraded: bool) -> Result<Report> {
    let (_, w) = inp.target()?;
    let mut rep = inp.report("simple", json!({ "ungraded": ungraded }));
    let s = if ungraded { loopmod::gmod::is_simple_ungraded(w) } else { is_graded_simple(w) };
    let verdict = simplicity(&mut rep, "simplicity", &s);
    if s.is_not_simple() {
        rep.flag(Status::Counterexample);
    }
    rep.result("dim", w.dim());
    rep.result("simple", if s.is_simple() || s.is_not_simple() { json!(verdict) } else { Value::Null });
    Ok(rep)
}

pub fn looped(inp: &Input, subgroup: Option<&str>) -> Result<Report> {
    let (name, v) = inp.target()?;
    let mut rep = inp.report("loop", json!({ "subgroup": subgroup }));
    let g = v.algebra().group().clone();
    let k = match subgroup {
        Some(s) => inp.ws.subgroup(s, &g)?,
        None => Subgroup::trivial(&g),
    };
    let l = loop_to(v, Arc::new(QuotientMap::new(&k)))?;
    let m = l.module();
    rep.result("source_dim", v.dim());
    rep.result("dim", m.dim());
    rep.result("grading", grading_name(m));
    let matches: Vec<&String> = inp
        .ws
        .modules
        .iter()
        .filter(|(_, o)| o.grading() == m.grading() && is_isomorphic_graded(m, o).is_iso())
        .map(|(k, _)| k)
        .collect();
    rep.result("isomorphic_to", matches);
    if v.grading() == m.grading() {
        let iso = is_isomorphic_graded(m, v);
        rep.result("isomorphic_to_input", iso.is_iso());
        match iso {
            IsoOutcome::Isomorphic(x) => {
                let x = rep.matrix(&x);
                rep.certificate("isomorphism", x);
            }
            IsoOutcome::NotIsomorphic => rep.flag(Status::Counterexample),
            IsoOutcome::Inconclusive { hom_dim } => {
                rep.diagnose(format!("no invertible map found in a Hom space of dimension {hom_dim}"));
                rep.flag(Status::Undecided);
            }
        }
    }
    let out = format!("L({name})");
    let d = embed(&inp.ws, &mut rep, vec![(&out, m)])?;
    rep.certificate("workspace", d);
    Ok(rep)
}

pub fn induce(inp: &Input) -> Result<Report> {
    let (name, v) = inp.target()?;
    let mut rep = inp.report("induce", json!({}));
    let ind = induce_default(v)?;
    let l = loop_module(v);
    let check = check_loop_induced(&l, &ind)?;
    let g = v.algebra().group().clone();
    rep.result("dim", ind.module().dim());
    rep.result("transversal", ind.transversal().iter().map(|c| character(&g, *c)).collect::<Vec<_>>());
    rep.result("phi_psi_identity", check.phi_psi_identity);
    rep.result("psi_phi_identity", check.psi_phi_identity);
    rep.result("phi_graded_iso", check.phi_graded_iso);
    rep.result("psi_graded_iso", check.psi_graded_iso);
    if !check.holds() {
        rep.flag(Status::Counterexample);
    }
    let phi = rep.matrix(&phi_raw(&l, &ind));
    rep.certificate("phi", phi);
    let out = format!("I({name})");
    let d = embed(&inp.ws, &mut rep, vec![(&out, ind.module())])?;
    rep.certificate("workspace", d);
    Ok(rep)
}

pub fn central(inp: &Input, subgroup: Option<&str>, chi: Option<&str>) -> Result<Report> {
    let (name, w) = inp.target()?;
    let mut rep = inp.report("central-image", json!({ "subgroup": subgroup, "character": chi }));
    let g = w.algebra().group().clone();
    let (f, count) = pick_subfield(inp, w, subgroup)?;
    let chi = match chi {
        Some(c) => inp.ws.character(c, &g)?,
        None => Character::trivial(),
    };
    let ci = central_image(w, &f, chi)?;
    let check = ci.certify(w, &f);
    rep.result("maximal_graded_subfields", count);
    rep.result("support", elems(&g, f.support().elements()));
    rep.result("character", character(&g, chi));
    rep.result("dim", ci.module.dim());
    rep.result("specialization", check.specialization);
    rep.result("componentwise_bijective", check.componentwise_bijective);
    rep.result("central", check.central);
    rep.result("loop_isomorphic", check.loop_isomorphic);
    let s = simplicity(&mut rep, "simple", &check.simple);
    let gs = simplicity(&mut rep, "graded_simple", &check.graded_simple);
    rep.result("simple", s);
    rep.result("graded_simple", gs);
    if !check.holds() {
        rep.flag(Status::Counterexample);
    }
    let gamma = rep.matrix(&ci.gamma);
    rep.certificate("gamma", gamma);
    let out = format!("V({name})");
    let d = embed(&inp.ws, &mut rep, vec![(&out, &ci.module)])?;
    rep.certificate("workspace", d);
    Ok(rep)
}

pub fn decomposition(inp: &Input, subgroup: Option<&str>) -> Result<Report> {
    let (_, w) = inp.target()?;
    let mut rep = inp.report("decompose", json!({ "subgroup": subgroup }));
    let g = w.algebra().group().clone();
    let (f, _) = pick_subfield(inp, w, subgroup)?;
    let d = decompose(w, &f)?;
    rep.result("support", elems(&g, f.support().elements()));
    rep.result("center_support", elems(&g, d.center_support.elements()));
    let classes: Vec<Value> = d
        .classes
        .iter()
        .map(|c| {
            json!({
                "characters": c.characters.iter().map(|x| character(&g, *x)).collect::<Vec<_>>(),
                "multiplicity": c.multiplicity,
                "simple_dim": c.representative.module.dim(),
                "piece_dim": c.piece.module.dim(),
            })
        })
        .collect();
    rep.result("classes", classes);
    let r = &d.report;
    rep.result("multiplicities_equal_index", r.multiplicities_equal_index);
    rep.result("dimensions_add_up", r.dimensions_add_up);
    rep.result("pieces_graded_simple", r.pieces_graded_simple);
    rep.result("grouping_confirmed", r.grouping_confirmed);
    rep.result("completely_reducible", r.completely_reducible);
    if !r.holds() {
        rep.flag(Status::Counterexample);
    }
    let idem: Vec<Value> = d.classes.iter().map(|c| rep.matrix(&c.piece.idempotent)).collect();
    rep.certificate("idempotents", Value::Array(idem));
    Ok(rep)
}

pub fn invariants(inp: &Input) -> Result<Report> {
    let (_, w) = inp.target()?;
    let mut rep = inp.report("invariants", json!({}));
    let s = is_graded_simple(w);
    if !simplicity(&mut rep, "graded_simple", &s) {
        rep.result("graded_simple", false);
        if s.is_not_simple() {
            rep.flag(Status::Counterexample);
        }
        return Ok(rep);
    }
    let g = w.algebra().group().clone();
    let p = centralizer_profile(w)?;
    let inertia = inertia_group(w)?;
    rep.result("graded_simple", true);
    rep.result("centralizer_dim", graded_centralizer(w).dim());
    rep.result("support", elems(&g, p.support.elements()));
    rep.result("center_support", elems(&g, p.center_support.elements()));
    rep.result("maximal_isotropic", elems(&g, p.maximal_isotropic.elements()));
    rep.result("schur_index", schur_index(w)?);
    rep.result("inertia_order", inertia.group.order());
    rep.result("inertia", elems(&g, inertia.group.elements()));
    rep.result("inertia_by_search_agrees", inertia.agrees());
    rep.result("brauer_invariant", BrauerInvariant::from_profile(&p));
    if !inertia.agrees() {
        rep.flag(Status::Counterexample);
        rep.certificate("inertia_by_search", elems(&g, inertia.by_search.elements()));
    }
    Ok(rep)
}

pub fn iso(inp: &Input, other: &str, ungraded: bool) -> Result<Report> {
    let (_, v) = inp.target()?;
    let w = inp.ws.module(other)?;
    let mut rep = inp.report("iso", json!({ "other": other, "ungraded": ungraded }));
    let out = if ungraded { is_isomorphic_ungraded(v, w) } else { is_isomorphic_graded(v, w) };
    match &out {
        IsoOutcome::Isomorphic(x) => {
            rep.result("isomorphic", true);
            let x = rep.matrix(x);
            rep.certificate("isomorphism", x);
        }
        IsoOutcome::NotIsomorphic => {
            rep.result("isomorphic", false);
            rep.flag(Status::Counterexample);
        }
        IsoOutcome::Inconclusive { hom_dim } => {
            rep.result("isomorphic", Value::Null);
            rep.diagnose(format!("no invertible map found in a Hom space of dimension {hom_dim}"));
            rep.flag(Status::Undecided);
        }
    }
    Ok(rep)
}

pub fn envelope(inp: &Input) -> Result<Report> {
    let (name, v) = inp.target()?;
    let mut rep = inp.report("envelope", json!({}));
    let g = v.algebra().group().clone();
    let r = graded_envelope(v)?;
    rep.result("inertia_order", r.inertia.group.order());
    rep.result("inertia", elems(&g, r.inertia.group.elements()));
    rep.result("z", elems(&g, r.z.elements()));
    rep.result("ideal_dim", r.ideal.dim());
    rep.result("dim", r.module().dim());
    let c = &r.checks;
    rep.result("split", c.split);
    rep.result("graded_simple", c.graded_simple);
    rep.result("contains_v", c.contains_v);
    rep.result("inertia_matches", c.inertia_matches);
    rep.result("dimension", c.dimension);
    if !c.holds() {
        rep.flag(Status::Counterexample);
    }
    let emb = rep.matrix(&r.embedding);
    rep.certificate("embedding", emb);
    let wit: Vec<Value> = r
        .inertia
        .witnesses
        .iter()
        .map(|(chi, m)| json!({ "character": elem(&g, chi.0), "matrix": rep.matrix(m) }))
        .collect();
    rep.certificate("inertia_witnesses", Value::Array(wit));
    let out = format!("E({name})");
    let d = embed(&inp.ws, &mut rep, vec![(&out, r.module())])?;
    rep.certificate("workspace", d);
    Ok(rep)
}
