use super::subfield::SubfieldWithAug;
use crate::abgroup::{Character, Elem};
use crate::arith::{CycScalar, Matrix};
use crate::error::{Error, Result};
use crate::gmod::{
    invertible_in_span, is_graded_simple, is_isomorphic_graded, is_simple_ungraded, solve_intertwining,
    ungraded_centralizer, GradedModule, IsoOutcome, Simplicity,
};
use crate::loopfun::loop_module;

/// V = W / W·ker(ρ_χ), realized on ⊕_{g∈Θ} W_g for the canonical transversal Θ of H.
#[derive(Clone, Debug)]
pub struct CentralImage {
    pub module: GradedModule,
    /// γ: W → V (dim V × dim W).
    pub gamma: Matrix,
    pub chi: Character,
    /// Indices of the W basis vectors spanning ⊕_{g∈Θ} W_g.
    pub theta: Vec<usize>,
}

/// γ(w) = χ(h)·(w c_{h⁻¹}) for w ∈ W_{ξ(ḡ)h}.
pub fn central_image(w: &GradedModule, f: &SubfieldWithAug, chi: Character) -> Result<CentralImage> {
    if !w.grading().is_identity() {
        return Err(Error::Precondition("central images are taken of G-graded modules".into()));
    }
    let pi = f.quotient();
    let g = pi.source().clone();
    let theta: Vec<usize> = (0..w.dim()).filter(|&i| pi.section(pi.apply(w.degree(i))) == w.degree(i)).collect();
    let pos: Vec<Option<usize>> = (0..w.dim()).map(|i| theta.iter().position(|&t| t == i)).collect();
    let m = theta.len();
    let mut gamma = Matrix::zeros(m, w.dim(), 1);
    for k in 0..w.dim() {
        let h = pi.kernel_part(w.degree(k));
        let c = f.element(g.inv(h));
        let s = chi.value(&g, h);
        for r in 0..w.dim() {
            let e = c.get(r, k);
            if e.is_zero() {
                continue;
            }
            let row = pos[r].ok_or_else(|| Error::Violation("c_h does not have degree h".into()))?;
            gamma.set(row, k, e * &s);
        }
    }
    let embed = Matrix::from_fn(w.dim(), m, |r, c| if theta[c] == r { CycScalar::one(1) } else { CycScalar::zero(1) });
    let action = w.actions().iter().map(|a| gamma.mul(a).mul(&embed)).collect();
    let degrees = theta.iter().map(|&i| pi.apply(w.degree(i))).collect();
    let module = GradedModule::new(w.algebra().clone(), pi, degrees, action)?;
    Ok(CentralImage { module, gamma, chi, theta })
}

/// Checks of one central image against its source pair.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralImageReport {
    /// γ is an R-module map with γ(wc) = γ(w)ρ_χ(c).
    pub specialization: bool,
    /// γ restricts to a bijection W_g → V_ḡ for every g.
    pub componentwise_bijective: bool,
    pub simple: Simplicity,
    pub central: bool,
    pub graded_simple: Simplicity,
    /// L_π(V) ≅ W as G-graded modules.
    pub loop_isomorphic: bool,
}

impl CentralImageReport {
    pub fn holds(&self) -> bool {
        self.specialization
            && self.componentwise_bijective
            && self.simple.is_simple()
            && self.central
            && self.graded_simple.is_simple()
            && self.loop_isomorphic
    }
}

impl CentralImage {
    pub fn certify(&self, w: &GradedModule, f: &SubfieldWithAug) -> CentralImageReport {
        let v = &self.module;
        let g = f.support().parent();
        let mut spec = w.actions().iter().zip(v.actions()).all(|(a, b)| self.gamma.mul(a) == b.mul(&self.gamma));
        for (h, c) in f.basis() {
            spec &= self.gamma.mul(c) == self.gamma.scale(&self.chi.value(g, *h));
        }
        let mut bij = true;
        for x in w.grading_group().elements() {
            let cols = w.component(x);
            let rows = v.component(v.grading().apply(x));
            if cols.len() != rows.len() {
                bij = false;
                continue;
            }
            if !cols.is_empty() && self.gamma.submatrix(&rows, &cols).inverse().is_err() {
                bij = false;
            }
        }
        let loop_iso = is_isomorphic_graded(loop_module(v).module(), w).is_iso();
        CentralImageReport {
            specialization: spec,
            componentwise_bijective: bij,
            simple: is_simple_ungraded(v),
            central: ungraded_centralizer(v).len() == 1,
            graded_simple: is_graded_simple(v),
            loop_isomorphic: loop_iso,
        }
    }
}

/// Isomorphism of pairs (W, F) → (W', F') with Ψ(c_h) = ψ(h)·c'_h: a degree-e module
/// isomorphism Φ with Φ(w c_h) = ψ(h) Φ(w) c'_h.
pub fn pair_isomorphism(
    w: &GradedModule,
    f: &SubfieldWithAug,
    w2: &GradedModule,
    f2: &SubfieldWithAug,
    psi: impl Fn(Elem) -> CycScalar,
) -> IsoOutcome {
    let hom = pair_morphisms(w, f, w2, f2, psi);
    if hom.is_empty() || w.dim() != w2.dim() {
        return IsoOutcome::NotIsomorphic;
    }
    match invertible_in_span(&hom, 0x9a1) {
        Some(m) => IsoOutcome::Isomorphic(m),
        None => IsoOutcome::Inconclusive { hom_dim: hom.len() },
    }
}

/// Basis of the space of morphisms of pairs with the given Ψ.
pub fn pair_morphisms(
    w: &GradedModule,
    f: &SubfieldWithAug,
    w2: &GradedModule,
    f2: &SubfieldWithAug,
    psi: impl Fn(Elem) -> CycScalar,
) -> Vec<Matrix> {
    if f.support() != f2.support() || *w.grading() != *w2.grading() {
        return Vec::new();
    }
    let scaled: Vec<Matrix> = f.basis().iter().map(|(h, _)| f2.element(*h).scale(&psi(*h))).collect();
    let mut pairs: Vec<(&Matrix, &Matrix)> =
        w.algebra().generators().iter().map(|&i| (w.action(i), w2.action(i))).collect();
    for ((_, c), c2) in f.basis().iter().zip(scaled.iter()) {
        pairs.push((c, c2));
    }
    solve_intertwining(w2.dim(), w.dim(), &pairs, |r, c| w2.degree(r) == w.degree(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::central::maximal_graded_subfields;
    use crate::fixtures;
    use crate::gmod::is_isomorphic_ungraded;

    #[test]
    fn pauli_central_image_is_natural_module() {
        let w = fixtures::pauli_module();
        for f in maximal_graded_subfields(&w).unwrap() {
            let ci = central_image(&w, &f, Character::trivial()).unwrap();
            assert_eq!(ci.module.dim(), 2);
            assert!(ci.module.validate().is_valid());
            let rep = ci.certify(&w, &f);
            assert!(rep.holds(), "{rep:?}");
        }
    }

    #[test]
    fn kernel_oracle() {
        // with c² = 1 and χ trivial, ker γ = W(c − 1) = ker(c + 1)
        let w = fixtures::pauli_module();
        let f = maximal_graded_subfields(&w).unwrap().into_iter().find(|f| f.support().contains(Elem(2))).unwrap();
        let ci = central_image(&w, &f, Character::trivial()).unwrap();
        let c = f.element(Elem(2));
        let k = ci.gamma.kernel();
        assert_eq!(k.len(), 2);
        let p = c.add(&Matrix::identity(4, 1));
        for x in &k {
            assert!(p.mul_vec(x).iter().all(|e| e.is_zero()));
        }
        // V is the natural module up to a twist
        let nat = fixtures::pauli_natural();
        let hit = crate::abgroup::subgroup_characters(nat.grading().kernel()).into_iter().any(|chi| {
            let t = super::super::twist_by_character(&nat, chi, None).unwrap();
            is_isomorphic_graded(&ci.module, &t).is_iso()
        });
        assert!(hit);
    }

    #[test]
    fn roundtrip_pair() {
        let w = fixtures::pauli_module();
        for f in maximal_graded_subfields(&w).unwrap() {
            let v = central_image(&w, &f, Character::trivial()).unwrap().module;
            let l = loop_module(&v);
            let lf = SubfieldWithAug::from_loop(&l);
            let out = pair_isomorphism(&w, &f, l.module(), &lf, |_| CycScalar::one(1));
            assert!(out.is_iso());
            assert_eq!(pair_morphisms(&w, &f, l.module(), &lf, |_| CycScalar::one(1)).len(), 1);
        }
    }

    #[test]
    fn reverse_roundtrip() {
        let v = fixtures::pauli_natural();
        let l = loop_module(&v);
        let lf = SubfieldWithAug::from_loop(&l);
        let ci = central_image(l.module(), &lf, Character::trivial()).unwrap();
        assert!(is_isomorphic_graded(&ci.module, &v).is_iso());
    }

    #[test]
    fn images_are_twists() {
        let w = fixtures::pauli_module();
        let f = &maximal_graded_subfields(&w).unwrap()[0];
        let v1 = central_image(&w, f, Character::trivial()).unwrap().module;
        for chi in crate::abgroup::subgroup_characters(f.support()) {
            let vc = central_image(&w, f, chi).unwrap().module;
            let tw = super::super::twist_by_character(&v1, chi, None).unwrap();
            assert!(is_isomorphic_graded(&vc, &tw).is_iso());
            assert!(is_isomorphic_ungraded(&vc, &v1).is_iso());
        }
    }
}
