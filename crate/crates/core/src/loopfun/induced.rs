use std::sync::Arc;

use super::looped::LoopModule;
use crate::abgroup::{decompose_in_transversal, subgroup_characters, Character, QuotientMap, Subgroup};
use crate::arith::{CycScalar, Matrix, Rational};
use crate::error::{Error, Result};
use crate::gmod::{GradedMap, GradedModule};

/// I_π(V) = ⊕_j χ_j ⊗ V with its G-grading.
///
/// Raw coordinates index χ_j ⊗ v_i as j·dim V + i; `module` is expressed in an eigenbasis
/// whose vectors (in raw coordinates) are the columns of `to_raw`.
#[derive(Clone, Debug)]
pub struct InducedModule {
    module: GradedModule,
    source: GradedModule,
    transversal: Vec<Character>,
    raw_action: Vec<Matrix>,
    to_raw: Matrix,
}

impl InducedModule {
    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn transversal(&self) -> &[Character] {
        &self.transversal
    }

    pub fn raw_action(&self) -> &[Matrix] {
        &self.raw_action
    }

    pub fn to_raw(&self) -> &Matrix {
        &self.to_raw
    }

    /// Action of χ ∈ Ĝ in raw coordinates: χ·(χ_j ⊗ v_ḡ) = ϖ(g) χ_k ⊗ v_ḡ where χχ_j = χ_kϖ.
    pub fn dual_action(&self, chi: Character) -> Matrix {
        dual_action(&self.source, &self.transversal, chi)
    }

    /// Raw coordinates of this module's basis rewritten in the raw coordinates of `other`
    /// (same V, different transversal): χ̃_j ⊗ v_ḡ = ϖ_j(g) χ_k ⊗ v_ḡ.
    pub fn raw_change(&self, other: &InducedModule) -> Matrix {
        let v = &self.source;
        let h = v.grading().kernel();
        let g = h.parent();
        let m = v.dim();
        let n = self.transversal.len();
        let mut p = Matrix::zeros(n * m, n * m, 1);
        for (j, chi) in self.transversal.iter().enumerate() {
            let (k, w) = decompose_in_transversal(*chi, &other.transversal, h);
            for i in 0..m {
                let s = v.grading().section(v.degree(i));
                p.set(k * m + i, j * m + i, w.value(g, s));
            }
        }
        p
    }
}

fn check_transversal(h: &Subgroup, t: &[Character]) -> Result<()> {
    if t.len() != h.order() {
        return Err(Error::Invalid(format!("transversal has {} characters, |H| = {}", t.len(), h.order())));
    }
    for (a, x) in t.iter().enumerate() {
        for y in &t[a + 1..] {
            if x.agrees_on(*y, h) {
                return Err(Error::Invalid("transversal characters agree on H".into()));
            }
        }
    }
    Ok(())
}

fn dual_action(v: &GradedModule, transversal: &[Character], chi: Character) -> Matrix {
    let h = v.grading().kernel();
    let g = h.parent();
    let m = v.dim();
    let n = transversal.len();
    let mut t = Matrix::zeros(n * m, n * m, 1);
    for (j, cj) in transversal.iter().enumerate() {
        let (k, w) = decompose_in_transversal(chi.mul(g, *cj), transversal, h);
        for i in 0..m {
            let s = v.grading().section(v.degree(i));
            t.set(k * m + i, j * m + i, w.value(g, s));
        }
    }
    t
}

/// I_π(V) with the canonical transversal of H^⊥.
pub fn induce_default(v: &GradedModule) -> Result<InducedModule> {
    induce(v, &subgroup_characters(v.grading().kernel()))
}

pub fn induce(v: &GradedModule, transversal: &[Character]) -> Result<InducedModule> {
    let pi = v.grading();
    let h = pi.kernel();
    check_transversal(h, transversal)?;
    let g = pi.source().clone();
    let a = v.algebra();
    let m = v.dim();
    let n = transversal.len();
    let raw_action: Vec<Matrix> = (0..a.dim())
        .map(|x| {
            let d = a.degree(x);
            let rv = v.action(x);
            Matrix::from_fn(n * m, n * m, |r, c| {
                if r / m != c / m {
                    return CycScalar::zero(1);
                }
                let e = rv.get(r % m, c % m);
                if e.is_zero() {
                    e.clone()
                } else {
                    e * &transversal[r / m].value_inv(&g, d)
                }
            })
        })
        .collect();
    // G-grading: simultaneous eigenspaces of the dual generators
    let gens: Vec<(Character, Matrix)> = g
        .standard_generators()
        .into_iter()
        .map(|c| (Character(c), dual_action(v, transversal, Character(c))))
        .collect();
    let id = Matrix::identity(n * m, 1);
    let mut cols = Vec::new();
    let mut degrees = Vec::new();
    for x in g.elements() {
        let mut rows = Vec::new();
        for (chi, t) in &gens {
            rows.extend(t.sub(&id.scale(&chi.value(&g, x))).to_rows());
        }
        let k = if rows.is_empty() {
            id.columns()
        } else {
            Matrix::from_rows(rows)?.kernel()
        };
        for vec in k {
            cols.push(vec);
            degrees.push(x);
        }
    }
    if cols.len() != n * m {
        return Err(Error::Violation("eigenspaces do not decompose the induced module".into()));
    }
    let to_raw = Matrix::from_columns(n * m, &cols);
    let back = to_raw.inverse()?;
    let action = raw_action.iter().map(|r| back.mul(r).mul(&to_raw)).collect();
    let module = GradedModule::new_g(a.clone(), degrees, action)?;
    Ok(InducedModule { module, source: v.clone(), transversal: transversal.to_vec(), raw_action, to_raw })
}

/// φ in raw coordinates: v_ḡ ⊗ g ↦ Σ_j χ_j(g)⁻¹ χ_j ⊗ v_ḡ.
pub fn phi_raw(l: &LoopModule, ind: &InducedModule) -> Matrix {
    let g = l.source().grading().source().clone();
    let m = l.source().dim();
    let t = ind.transversal();
    let mut out = Matrix::zeros(t.len() * m, l.dim(), 1);
    for k in 0..l.dim() {
        let (x, i) = l.label(k);
        for (j, chi) in t.iter().enumerate() {
            out.set(j * m + i, k, chi.value_inv(&g, x));
        }
    }
    out
}

/// ψ in raw coordinates: χ_j ⊗ v_ḡ ↦ (1/n) Σ_h χ_j(gh) v_ḡ ⊗ gh.
pub fn psi_raw(l: &LoopModule, ind: &InducedModule) -> Matrix {
    let pi = l.source().grading();
    let g = pi.source().clone();
    let m = l.source().dim();
    let t = ind.transversal();
    let n = t.len();
    let inv_n = Rational::new(1, n as i64);
    let mut out = Matrix::zeros(l.dim(), n * m, 1);
    for (j, chi) in t.iter().enumerate() {
        for i in 0..m {
            let s = pi.section(l.source().degree(i));
            for h in pi.kernel().elements() {
                let x = g.mul(s, *h);
                let r = l.position(x, i).expect("loop basis");
                out.set(r, j * m + i, chi.value(&g, x).scale(&inv_n));
            }
        }
    }
    out
}

/// φ: L_π(V) → I_π(V) as a degree-e graded map in the module bases.
pub fn phi(l: &LoopModule, ind: &InducedModule) -> Result<GradedMap> {
    let back = ind.to_raw().inverse()?;
    Ok(GradedMap::new(l.module().grading_group().identity(), back.mul(&phi_raw(l, ind))))
}

/// ψ: I_π(V) → L_π(V).
pub fn psi(l: &LoopModule, ind: &InducedModule) -> GradedMap {
    GradedMap::new(l.module().grading_group().identity(), psi_raw(l, ind).mul(ind.to_raw()))
}

/// Outcome of checking φ and ψ on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopInducedReport {
    pub phi_psi_identity: bool,
    pub psi_phi_identity: bool,
    pub phi_graded_iso: bool,
    pub psi_graded_iso: bool,
}

impl LoopInducedReport {
    pub fn holds(&self) -> bool {
        self.phi_psi_identity && self.psi_phi_identity && self.phi_graded_iso && self.psi_graded_iso
    }
}

pub fn check_loop_induced(l: &LoopModule, ind: &InducedModule) -> Result<LoopInducedReport> {
    let f = phi(l, ind)?;
    let p = psi(l, ind);
    let (fr, pr) = (phi_raw(l, ind), psi_raw(l, ind));
    Ok(LoopInducedReport {
        phi_psi_identity: fr.mul(&pr).is_identity(),
        psi_phi_identity: pr.mul(&fr).is_identity(),
        phi_graded_iso: f.is_isomorphism(l.module(), ind.module()),
        psi_graded_iso: p.is_isomorphism(ind.module(), l.module()),
    })
}

/// A transversal χ_jϖ_j with ϖ_j ∈ H^⊥ picked by `pick(j)` (indices into H^⊥ mod its order).
pub fn shifted_transversal(pi: &Arc<QuotientMap>, base: &[Character], pick: impl Fn(usize) -> usize) -> Vec<Character> {
    let h = pi.kernel();
    let g = h.parent();
    let perp = crate::abgroup::orthogonal_complement(h);
    base.iter()
        .enumerate()
        .map(|(j, c)| {
            let w = perp.elements()[pick(j) % perp.order()];
            Character(g.mul(c.0, w))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::loopfun::loop_module;

    #[test]
    fn pauli_induced() {
        let v = fixtures::pauli_natural();
        let ind = induce_default(&v).unwrap();
        assert_eq!(ind.module().dim(), 4);
        assert!(ind.module().validate().is_valid());
        for g in ind.module().grading_group().elements() {
            assert_eq!(ind.module().component(g).len(), 1);
        }
        let l = loop_module(&v);
        assert!(check_loop_induced(&l, &ind).unwrap().holds());
    }

    #[test]
    fn phi_independent_of_transversal() {
        let v = fixtures::pauli_natural();
        let l = loop_module(&v);
        let a = induce_default(&v).unwrap();
        let t = shifted_transversal(v.grading(), a.transversal(), |j| j + 1);
        assert_ne!(t, a.transversal());
        let b = induce(&v, &t).unwrap();
        assert!(check_loop_induced(&l, &b).unwrap().holds());
        assert_eq!(b.raw_change(&a).mul(&phi_raw(&l, &b)), phi_raw(&l, &a));
    }

    #[test]
    fn bad_transversal_rejected() {
        let v = fixtures::pauli_natural();
        assert!(induce(&v, &[Character::trivial(), Character::trivial()]).is_err());
        assert!(induce(&v, &[Character::trivial()]).is_err());
    }

    #[test]
    fn trivial_kernel() {
        let w = fixtures::pauli_module();
        let ind = induce_default(&w).unwrap();
        let l = loop_module(&w);
        let r = check_loop_induced(&l, &ind).unwrap();
        assert!(r.holds());
        assert!(phi_raw(&l, &ind).is_identity());
    }
}
