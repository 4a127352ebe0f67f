use std::collections::HashMap;
use std::sync::Arc;

use super::profile::profile;
use crate::abgroup::{Bicharacter, Elem, QuotientMap, Subgroup};
use crate::arith::matrix::{Echelon, Vector};
use crate::arith::{CycScalar, Matrix};
use crate::error::{Error, Result};
use crate::galg::{normalize_subfield_basis, GradedAlgebra};
use crate::gmod::{is_simple_ungraded, GradedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// 𝔽A # 𝔽B acting on 𝔽B.
    Smash,
    /// Cocycle formula with an arbitrary section.
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelChecks {
    pub valid_module: bool,
    pub simple: bool,
    /// ϱ: D → End(M) bijective.
    pub rho_bijective: bool,
    /// M* is a graded right module and the evaluation pairing has degree e.
    pub dual_graded: bool,
    /// x ⊗ f ↦ ϱ⁻¹(x.f) bijective and graded.
    pub morita_bijective: bool,
}

impl ModelChecks {
    pub fn holds(&self) -> bool {
        self.valid_module && self.simple && self.rho_bijective && self.dual_graded && self.morita_bijective
    }
}

/// The simple D-module M graded by T/H and its dual M* with the right action f·d = f∘ϱ(d).
#[derive(Clone, Debug)]
pub struct SimpleModel {
    pub kind: ModelKind,
    pub h: Subgroup,
    pub module: GradedModule,
    /// Degrees of the dual basis e*_t̄ (inverse of the degrees of M).
    pub dual_degrees: Vec<Elem>,
    pub checks: ModelChecks,
}

impl SimpleModel {
    /// Matrix of f ↦ f·d on row vectors, for the algebra basis element d.
    pub fn dual_action(&self, i: usize) -> &Matrix {
        self.module.action(i)
    }
}

/// Nonzero element of D_t, for each t in the support.
fn component_vector(d: &GradedAlgebra, t: Elem) -> Result<Vector> {
    d.component(t)
        .first()
        .map(|i| d.basis_vector(*i))
        .ok_or_else(|| Error::Precondition(format!("no component in degree {}", d.group().fmt_elem(t))))
}

/// λ with x = λ y, for nonzero y.
fn ratio(x: &[CycScalar], y: &[CycScalar]) -> Result<CycScalar> {
    let k = y.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::Violation("zero element".into()))?;
    let l = x[k].div(&y[k])?;
    if x.iter().zip(y.iter()).all(|(a, b)| *a == b * &l) {
        Ok(l)
    } else {
        Err(Error::Violation("elements are not proportional".into()))
    }
}

/// Default section T/H → T: least element of each coset inside T.
pub fn default_section(t: &Subgroup, pi: &QuotientMap) -> HashMap<Elem, Elem> {
    let mut xi = HashMap::new();
    for x in t.elements() {
        xi.entry(pi.apply(*x)).or_insert(*x);
    }
    xi
}

/// M with basis e_t̄ and c_{t₁}·e_{t̄₂} = σ(t₁, ξ(t̄₂)) σ(ξ(t̄₁t̄₂), t₁ξ(t̄₂)ξ(t̄₁t̄₂)⁻¹)⁻¹ e_{t̄₁t̄₂},
/// for c_t = c_{ξ(t̄)}c_h normalized so that σ is trivial on H.
pub fn simple_module_model(d: &GradedAlgebra, h: &Subgroup, section: Option<&HashMap<Elem, Elem>>) -> Result<SimpleModel> {
    let p = profile(d)?;
    if !p.center_support.is_trivial() {
        return Err(Error::Precondition("D must be central".into()));
    }
    if !p.beta.is_isotropic(h) || h.order() * h.order() != p.support.order() {
        return Err(Error::Precondition("H must be maximal isotropic in the support".into()));
    }
    let t = &p.support;
    let g = t.parent().clone();
    let pi = Arc::new(QuotientMap::new(h));
    let xi = match section {
        Some(s) => s.clone(),
        None => default_section(t, &pi),
    };
    let tbar: Vec<Elem> = {
        let mut v: Vec<Elem> = xi.keys().copied().collect();
        v.sort();
        v
    };
    if tbar.len() != h.order() || tbar.iter().any(|y| pi.apply(xi[y]) != *y || !t.contains(xi[y])) {
        return Err(Error::Invalid("not a section of T → T/H".into()));
    }
    // c_h normalized on H; c_{ξ(t̄)} any nonzero element, except on the trivial coset
    let ch: HashMap<Elem, Vector> = normalize_subfield_basis(d, h)?.into_iter().collect();
    let mut c: HashMap<Elem, Vector> = HashMap::new();
    for y in &tbar {
        let s = xi[y];
        if h.contains(s) {
            c.extend(ch.iter().map(|(k, v)| (*k, v.clone())));
            continue;
        }
        let cs = component_vector(d, s)?;
        for k in h.elements() {
            c.insert(g.mul(s, *k), d.mul(&cs, &ch[k]));
        }
    }
    let sigma = |a: Elem, b: Elem| -> Result<CycScalar> { ratio(&d.mul(&c[&a], &c[&b]), &c[&g.mul(a, b)]) };
    let pos: HashMap<Elem, usize> = tbar.iter().enumerate().map(|(i, y)| (*y, i)).collect();
    let n = tbar.len();
    let mut rho: HashMap<Elem, Matrix> = HashMap::new();
    for t1 in t.elements() {
        let mut m = Matrix::zeros(n, n, 1);
        for y2 in &tbar {
            let x2 = xi[y2];
            let y = pi.apply(g.mul(*t1, x2));
            let xy = xi[&y];
            let hh = g.div(g.mul(*t1, x2), xy);
            let coef = sigma(*t1, x2)?.div(&sigma(xy, hh)?)?;
            m.set(pos[&y], pos[y2], coef);
        }
        rho.insert(*t1, m);
    }
    let mut action = Vec::with_capacity(d.dim());
    for i in 0..d.dim() {
        let deg = d.degree(i);
        let mu = ratio(&d.basis_vector(i), &c[&deg])?;
        action.push(rho[&deg].scale(&mu));
    }
    let module = GradedModule::new(Arc::new(d.clone()), pi, tbar.clone(), action)?;
    finish(ModelKind::General, h.clone(), module)
}

fn finish(kind: ModelKind, h: Subgroup, module: GradedModule) -> Result<SimpleModel> {
    let n = module.dim();
    let q = module.grading_group().clone();
    let dual_degrees: Vec<Elem> = module.degrees().iter().map(|x| q.inv(*x)).collect();
    let d = module.algebra().clone();
    let pi = module.grading().clone();
    // ϱ bijective
    let mut span = Echelon::tracking(n * n);
    let mut independent = true;
    for a in module.actions() {
        independent &= span.insert(a.entries().to_vec());
    }
    let rho_bijective = independent && d.dim() == n * n;
    // dual: f_u·c_t is a multiple of a single f_{u'} with deg f_{u'} = deg f_u · π(t)
    let dual_graded = (0..d.dim()).all(|i| {
        let a = module.action(i);
        let t = pi.apply(d.degree(i));
        (0..n).all(|u| {
            let row = a.row(u);
            row.iter().enumerate().all(|(v, x)| x.is_zero() || dual_degrees[v] == q.mul(dual_degrees[u], t))
        })
    });
    // Morita: E_{su} = e_s ⊗ e*_u ↦ ϱ⁻¹(E_su), of degree deg e_s · deg e*_u
    let mut morita = rho_bijective;
    let mut image = Echelon::new(d.dim());
    if morita {
        for s in 0..n {
            for u in 0..n {
                let e = Matrix::from_fn(n, n, |r, cc| if r == s && cc == u { CycScalar::one(1) } else { CycScalar::zero(1) });
                let Some(coords) = span.coordinates(e.entries()) else {
                    morita = false;
                    continue;
                };
                let want = q.mul(module.degree(s), dual_degrees[u]);
                morita &= coords.iter().enumerate().all(|(k, x)| x.is_zero() || pi.apply(d.degree(k)) == want);
                morita &= image.insert(coords);
            }
        }
    }
    let checks = ModelChecks {
        valid_module: module.validate().is_valid(),
        simple: is_simple_ungraded(&module).is_simple(),
        rho_bijective,
        dual_graded,
        morita_bijective: morita,
    };
    Ok(SimpleModel { kind, h, module, dual_degrees, checks })
}

/// A maximal isotropic B with T = A × B, if one exists.
pub fn isotropic_complement(beta: &Bicharacter, a: &Subgroup) -> Result<Option<Subgroup>> {
    let t = beta.support();
    for b in beta.isotropic_subgroups(true)? {
        if b.intersect(a).is_trivial() && a.order() * b.order() == t.order() {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// M = 𝔽B with (c_a c_b)·e_{b'} = β(a, bb') e_{bb'}, graded by T/A.
pub fn smash_model(d: &GradedAlgebra, a: &Subgroup, b: &Subgroup) -> Result<SimpleModel> {
    let p = profile(d)?;
    let t = &p.support;
    let g = t.parent().clone();
    if !p.center_support.is_trivial()
        || !p.beta.is_isotropic(a)
        || !p.beta.is_isotropic(b)
        || !a.intersect(b).is_trivial()
        || a.order() * b.order() != t.order()
    {
        return Err(Error::Precondition("A and B must be complementary maximal isotropic subgroups".into()));
    }
    let ca: HashMap<Elem, Vector> = normalize_subfield_basis(d, a)?.into_iter().collect();
    let cb: HashMap<Elem, Vector> = normalize_subfield_basis(d, b)?.into_iter().collect();
    let pi = Arc::new(QuotientMap::new(a));
    let bs = b.elements().to_vec();
    let pos: HashMap<Elem, usize> = bs.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let n = bs.len();
    let mut action = Vec::with_capacity(d.dim());
    for i in 0..d.dim() {
        let deg = d.degree(i);
        let (x, y) = a
            .elements()
            .iter()
            .flat_map(|x| bs.iter().map(move |y| (*x, *y)))
            .find(|(x, y)| g.mul(*x, *y) == deg)
            .ok_or_else(|| Error::Violation("degree outside A×B".into()))?;
        let mu = ratio(&d.basis_vector(i), &d.mul(&ca[&x], &cb[&y]))?;
        let mut m = Matrix::zeros(n, n, 1);
        for b2 in &bs {
            let target = g.mul(y, *b2);
            m.set(pos[&target], pos[b2], &p.beta.value(x, target) * &mu);
        }
        action.push(m);
    }
    let degrees = bs.iter().map(|x| pi.apply(*x)).collect();
    let module = GradedModule::new(Arc::new(d.clone()), pi, degrees, action)?;
    finish(ModelKind::Smash, a.clone(), module)
}

/// Smash model when some maximal isotropic subgroup has an isotropic complement, otherwise the
/// general model for the first maximal isotropic subgroup.
pub fn model(d: &GradedAlgebra) -> Result<SimpleModel> {
    let p = profile(d)?;
    let all = p.beta.isotropic_subgroups(true)?;
    for a in &all {
        if let Some(b) = isotropic_complement(&p.beta, a)? {
            return smash_model(d, a, &b);
        }
    }
    let h = all.first().ok_or_else(|| Error::Violation("no maximal isotropic subgroup".into()))?;
    simple_module_model(d, h, None)
}
