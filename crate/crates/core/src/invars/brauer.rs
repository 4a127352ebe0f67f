use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::profile::{profile, DivisionAlgebraProfile};
use crate::abgroup::{characters, orthogonal_complement, Bicharacter, Character, Elem, FinAbGroup, QuotientMap, Subgroup};
use crate::arith::matrix::{Echelon, Vector};
use crate::arith::{CycScalar, Matrix};
use crate::central::{central_idempotents, central_image, maximal_graded_subfields};
use crate::error::{Error, Result};
use crate::galg::{monomial_basis, Composition, GradedAlgebra};
use crate::gmod::{graded_centralizer, is_isomorphic_ungraded, Centralizer, GradedModule};

/// Canonical classification key of a graded division algebra with trivial center support:
/// the invariant factors of the grading group, the support by canonical generators, and the
/// commutation factor on those generators (z = ζ_m, m the exponent of the grading group).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BrauerInvariant {
    pub quotient: Vec<u64>,
    pub support: Vec<String>,
    pub beta: Vec<[String; 3]>,
}

impl BrauerInvariant {
    pub fn new(group: &FinAbGroup, beta: &Bicharacter) -> Self {
        let t = beta.support();
        let gens = t.canonical_generators();
        let m = group.exponent().max(1);
        let mut entries = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let e = beta.exp(gens[i], gens[j]) * m / beta.modulus().max(1);
                entries.push([format!("t{}", i + 1), format!("t{}", j + 1), CycScalar::zeta_pow(m, e as i64).to_literal()]);
            }
        }
        BrauerInvariant {
            quotient: group.factors().to_vec(),
            support: gens.iter().map(|g| group.fmt_elem(*g)).collect(),
            beta: entries,
        }
    }

    pub fn from_profile(p: &DivisionAlgebraProfile) -> Self {
        Self::new(p.quotient.target(), &p.reduced_beta)
    }

    pub fn is_trivial(&self) -> bool {
        self.support.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// Dε restricted to Wε, graded by G/Z.
pub fn reduced_division_algebra(c: &Centralizer, eps: &Matrix, pi: &Arc<QuotientMap>) -> Result<GradedAlgebra> {
    let n = eps.rows();
    let mut ech = Echelon::tracking(n);
    let mut basis: Vec<Vector> = Vec::new();
    for col in eps.columns() {
        if ech.insert(col.clone()) {
            basis.push(col);
        }
    }
    let k = basis.len();
    let mut mats: Vec<Matrix> = Vec::new();
    let mut degrees = Vec::new();
    let mut span = Echelon::new(k * k);
    for (i, d) in c.maps.iter().enumerate() {
        let cols: Vec<Vector> = basis
            .iter()
            .map(|b| ech.coordinates(&d.mul_vec(b)).ok_or_else(|| Error::Violation("Wε is not C(W)-stable".into())))
            .collect::<Result<_>>()?;
        let m = Matrix::from_columns(k, &cols);
        if span.insert(m.entries().to_vec()) {
            mats.push(m);
            degrees.push(pi.apply(c.algebra.degree(i)));
        }
    }
    GradedAlgebra::from_matrices(pi.target().clone(), &mats, degrees, Composition::LeftToRight)
}

/// Profile of C(W) itself.
pub fn centralizer_profile(w: &GradedModule) -> Result<DivisionAlgebraProfile> {
    profile(&graded_centralizer(w).algebra)
}

/// Profile of Dε for the i-th primitive central idempotent ε of D = C(W).
pub fn reduced_profile(w: &GradedModule, i: usize) -> Result<DivisionAlgebraProfile> {
    let c = graded_centralizer(w);
    let (z, eps) = central_idempotents(&c)?;
    let e = eps.get(i).ok_or_else(|| Error::Invalid(format!("only {} central idempotents", eps.len())))?;
    let pi = Arc::new(QuotientMap::new(&z));
    let de = reduced_division_algebra(&c, e, &pi)?;
    let p = profile(&de)?;
    if !p.center_support.is_trivial() {
        return Err(Error::Violation("Dε is not central".into()));
    }
    Ok(p)
}

pub fn brauer_invariant(w: &GradedModule) -> Result<BrauerInvariant> {
    brauer_invariant_at(w, 0)
}

pub fn brauer_invariant_at(w: &GradedModule, i: usize) -> Result<BrauerInvariant> {
    Ok(BrauerInvariant::from_profile(&reduced_profile(w, i)?))
}

/// Degree of the matrix algebra Dε, i.e. |H/Z|.
pub fn schur_index(w: &GradedModule) -> Result<usize> {
    let p = reduced_profile(w, 0)?;
    let s = p.schur_index;
    if s * s != p.support.order() {
        return Err(Error::Violation("index² differs from |T/Z|".into()));
    }
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct InertiaReport {
    /// Z^⊥, as a subgroup of Ĝ identified with G.
    pub group: Subgroup,
    /// {χ ∈ Ĝ : V^{α_χ} ≅ V} for a simple submodule V.
    pub by_search: Subgroup,
}

impl InertiaReport {
    pub fn agrees(&self) -> bool {
        self.group == self.by_search
    }
}

pub fn inertia_group(w: &GradedModule) -> Result<InertiaReport> {
    let c = graded_centralizer(w);
    let (z, _) = central_idempotents(&c)?;
    let group = orthogonal_complement(&z);
    let f = maximal_graded_subfields(w)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Violation("no maximal graded subfield".into()))?;
    let v = central_image(w, &f, Character::trivial())?.module;
    let by_search = inertia_by_search(&v)?;
    Ok(InertiaReport { group, by_search })
}

/// {χ ∈ Ĝ : V^{α_χ} ≅ V} by testing every character.
pub fn inertia_by_search(v: &GradedModule) -> Result<Subgroup> {
    let g = v.algebra().group().clone();
    let fixed: Vec<_> = characters(&g)
        .into_iter()
        .filter(|chi| is_isomorphic_ungraded(&v.twist_by_automorphism(*chi), v).is_iso())
        .map(|chi| chi.0)
        .collect();
    Subgroup::from_elements(&g, &fixed).map_err(|_| Error::Violation("stabilizer is not a subgroup".into()))
}

/// Same support and commutation factor; cross-checked by a rescaling search when |T| ≤ 64.
pub fn division_algebras_isomorphic(d1: &GradedAlgebra, d2: &GradedAlgebra) -> Result<bool> {
    if **d1.group() != **d2.group() {
        return Ok(false);
    }
    let (p1, p2) = (profile(d1)?, profile(d2)?);
    let by_beta = p1.support == p2.support && p1.beta == p2.beta;
    if p1.support == p2.support && p1.support.order() <= 64 {
        let w = rescaling_witness(d1, d2, &p1.support)?;
        if w.is_some() != by_beta {
            return Err(Error::Violation("bicharacter comparison disagrees with the rescaling search".into()));
        }
    }
    Ok(by_beta)
}

/// Search λ on the cyclic generators of T (λ_g ∈ μ_d) with c¹_t ↦ λ_t c²_t multiplicative.
/// Returns the map as a matrix D₁ → D₂.
pub fn rescaling_witness(d1: &GradedAlgebra, d2: &GradedAlgebra, t: &Subgroup) -> Result<Option<Matrix>> {
    fn pick(a: &GradedAlgebra) -> impl Fn(Elem) -> Option<Vector> + '_ {
        move |x| a.component(x).first().map(|i| a.basis_vector(*i))
    }
    let b1 = monomial_basis(d1, t, pick(d1))?;
    let b2 = monomial_basis(d2, t, pick(d2))?;
    let (abs, emb) = t.as_abstract();
    let dec: Vec<u64> = abs.factors().to_vec();
    let n = d1.dim();
    let src = Matrix::from_columns(n, &b1.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
    let src_inv = src.inverse()?;
    let mut idx = vec![0u64; dec.len()];
    loop {
        let cols: Vec<Vector> = abs
            .elements()
            .map(|x| {
                let c = abs.coords(x);
                let lam = c.iter().zip(dec.iter()).zip(idx.iter()).fold(CycScalar::one(1), |acc, ((a, d), k)| {
                    &acc * &CycScalar::zeta_pow(*d, (a * k) as i64)
                });
                let pos = b2.iter().position(|(s, _)| *s == emb[x.0]).expect("same support");
                let col: Vector = b2[pos].1.iter().map(|e| e * &lam).collect();
                (b1.iter().position(|(s, _)| *s == emb[x.0]).expect("same support"), col)
            })
            .fold(vec![Vec::new(); n], |mut acc, (p, col)| {
                acc[p] = col;
                acc
            });
        let f = Matrix::from_columns(n, &cols).mul(&src_inv);
        let multiplicative = (0..n).all(|i| {
            (0..n).all(|j| {
                let (x, y) = (d1.basis_vector(i), d1.basis_vector(j));
                f.mul_vec(&d1.mul(&x, &y)) == d2.mul(&f.mul_vec(&x), &f.mul_vec(&y))
            })
        });
        if multiplicative {
            return Ok(Some(f));
        }
        let mut p = 0;
        while p < idx.len() {
            idx[p] += 1;
            if idx[p] < dec[p] {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
        if p == idx.len() {
            return Ok(None);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::Elem;
    use crate::fixtures;
    use crate::galg::{twisted_group_algebra, Cocycle};

    #[test]
    fn pauli_invariants() {
        let w = fixtures::pauli_module();
        assert_eq!(schur_index(&w).unwrap(), 2);
        let inv = brauer_invariant(&w).unwrap();
        assert_eq!(inv.quotient, vec![2, 2]);
        assert_eq!(inv.support.len(), 2);
        assert_eq!(inv.beta, vec![["t1".to_string(), "t2".to_string(), "-1".to_string()]]);
        let r = inertia_group(&w).unwrap();
        assert_eq!(r.group.order(), 4);
        assert!(r.agrees());
        let p = centralizer_profile(&w).unwrap();
        assert_eq!(p.support.order(), 4);
        assert!(p.center_support.is_trivial());
        let json = inv.to_json();
        assert!(json.starts_with("{\"quotient\":[2,2],\"support\":"));
        let back: BrauerInvariant = serde_json::from_str(&json).unwrap();
        assert_eq!(back, inv);
    }

    #[test]
    fn trivial_centralizer() {
        let v = fixtures::pauli_natural();
        let inv = brauer_invariant(&v).unwrap();
        assert!(inv.is_trivial());
        assert_eq!(schur_index(&v).unwrap(), 1);
    }

    #[test]
    fn commutative_centralizer_inertia() {
        let w = GradedModule::regular(Arc::new(fixtures::group_algebra_z2()));
        let r = inertia_group(&w).unwrap();
        assert!(r.group.is_trivial());
        assert!(r.agrees());
        for i in 0..2 {
            assert!(brauer_invariant_at(&w, i).unwrap().is_trivial());
        }
    }

    #[test]
    fn invariant_stable_under_shift() {
        let w = fixtures::pauli_module();
        let s = w.shift(Elem(3));
        assert_eq!(brauer_invariant(&w).unwrap(), brauer_invariant(&s).unwrap());
    }

    #[test]
    fn division_isomorphism() {
        let p = fixtures::pauli_algebra();
        assert!(division_algebras_isomorphic(&p, &p).unwrap());
        let g = fixtures::klein_group();
        let comm = twisted_group_algebra(&Cocycle::trivial(g.clone()));
        assert!(!division_algebras_isomorphic(&p, &comm).unwrap());
        // σ and σ·δλ with λ(x) = ζ₄^{x₀}
        let gg = g.clone();
        let s = Cocycle::from_bilinear(g.clone(), 2, move |a, b| gg.coords(a)[1] * gg.coords(b)[0]).unwrap();
        let gg = g.clone();
        let lam = move |x: Elem| CycScalar::zeta_pow(4, gg.coords(x)[0] as i64);
        let g2 = g.clone();
        let s2 = Cocycle::from_fn(g.clone(), |a, b| {
            let v = s.value(a, b) * &lam(a);
            (&v * &lam(b)).div(&lam(g2.mul(a, b))).unwrap()
        })
        .unwrap();
        let (d1, d2) = (twisted_group_algebra(&s), twisted_group_algebra(&s2));
        assert!(division_algebras_isomorphic(&d1, &d2).unwrap());
        assert!(rescaling_witness(&d1, &d2, &Subgroup::whole(&g)).unwrap().is_some());
    }

    #[test]
    fn z4z4_index() {
        let w = GradedModule::regular(Arc::new(fixtures::z4z4_algebra()));
        assert_eq!(schur_index(&w).unwrap(), 4);
        assert!(inertia_group(&w).unwrap().agrees());
    }
}
