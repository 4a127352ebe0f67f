use std::collections::HashMap;
use std::sync::Arc;

use crate::abgroup::{Character, Elem, QuotientMap, Subgroup};
use crate::arith::matrix::{Echelon, Vector};
use crate::arith::{CycScalar, Matrix};
use crate::error::{Error, Result};
use crate::galg::{commutation_bicharacter, normalize_elements, normalize_subfield_basis};
use crate::gmod::{graded_centralizer, Centralizer, GradedModule};
use crate::loopfun::LoopModule;

/// Graded subfield ⊕_{h∈H} 𝔽c_h of a centralizer, with c_{h₁}c_{h₂} = c_{h₁h₂}.
///
/// The c_h are stored as matrices acting on the module; the augmentation sends every c_h to 1.
#[derive(Clone, Debug)]
pub struct SubfieldWithAug {
    support: Subgroup,
    basis: Vec<(Elem, Matrix)>,
}

impl SubfieldWithAug {
    pub fn new(support: Subgroup, basis: Vec<(Elem, Matrix)>) -> Result<Self> {
        let g = support.parent().clone();
        if basis.len() != support.order() || basis.iter().any(|(h, _)| !support.contains(*h)) {
            return Err(Error::Invalid("subfield basis must be indexed by its support".into()));
        }
        let f = SubfieldWithAug { support, basis };
        for (s, x) in &f.basis {
            for (t, y) in &f.basis {
                if x.mul(y) != *f.element(g.mul(*s, *t)) {
                    return Err(Error::Violation("subfield basis does not satisfy c_s c_t = c_st".into()));
                }
            }
        }
        Ok(f)
    }

    /// L_π(𝔽1) = span{δ_h} inside the centralizer of a loop module.
    pub fn from_loop(l: &LoopModule) -> Self {
        let q = l.module().grading_group().clone();
        let support = Subgroup::from_elements(&q, &l.kernel_elements()).expect("kernel is a subgroup");
        SubfieldWithAug::new(support, l.subfield()).expect("δ_h form a group")
    }

    pub fn support(&self) -> &Subgroup {
        &self.support
    }

    pub fn basis(&self) -> &[(Elem, Matrix)] {
        &self.basis
    }

    pub fn element(&self, h: Elem) -> &Matrix {
        &self.basis[self.support.position(h).expect("element of the support")].1
    }

    /// ρ_χ(c_h) = χ(h).
    pub fn augmentation(&self, chi: Character, h: Elem) -> CycScalar {
        chi.value(self.support.parent(), h)
    }

    /// π: G → G/H for the support H.
    pub fn quotient(&self) -> Arc<QuotientMap> {
        Arc::new(QuotientMap::new(&self.support))
    }

    /// Dimension of the centralizer of this subfield inside `c`.
    pub fn centralizer_dim_in(&self, c: &Centralizer) -> usize {
        let k = c.maps.len();
        if k == 0 {
            return 0;
        }
        let n = c.maps[0].rows();
        let comms: Vec<Vec<Matrix>> =
            c.maps.iter().map(|m| self.basis.iter().map(|(_, d)| m.mul(d).sub(&d.mul(m))).collect()).collect();
        let per = n * n;
        let rows = self.basis.len() * per;
        let sys = Matrix::from_fn(rows, k, |r, col| comms[col][r / per].entries()[r % per].clone());
        sys.kernel().len()
    }

    pub fn is_maximal_in(&self, c: &Centralizer) -> bool {
        self.centralizer_dim_in(c) == self.support.order()
    }

    fn span_key(&self) -> Echelon {
        let n = self.basis[0].1.rows();
        let mut e = Echelon::new(n * n);
        for (_, m) in &self.basis {
            e.insert(m.entries().to_vec());
        }
        e
    }

    fn same_span(&self, o: &SubfieldWithAug) -> bool {
        self.support == o.support && {
            let e = self.span_key();
            o.basis.iter().all(|(_, m)| e.contains(m.entries()))
        }
    }
}

fn from_coords(c: &Centralizer, h: &Subgroup, coords: Vec<(Elem, Vector)>) -> Result<SubfieldWithAug> {
    let mut basis = Vec::with_capacity(coords.len());
    for t in h.elements() {
        let v = &coords.iter().find(|(s, _)| s == t).expect("complete basis").1;
        basis.push((*t, c.matrix_of(v)));
    }
    SubfieldWithAug::new(h.clone(), basis)
}

/// Maximal graded subfields of C(W) that are graded isomorphic to group algebras.
///
/// When every component of C(W) is at most one-dimensional they correspond to the maximal
/// isotropic subgroups of the commutation bicharacter. Otherwise subfields generated by
/// homogeneous basis elements are searched.
pub fn maximal_graded_subfields(w: &GradedModule) -> Result<Vec<SubfieldWithAug>> {
    let c = graded_centralizer(w);
    subfields_of(&c)
}

pub fn subfields_of(c: &Centralizer) -> Result<Vec<SubfieldWithAug>> {
    let a = &c.algebra;
    if a.support().iter().all(|t| a.component(*t).len() == 1) {
        let (_, beta) = commutation_bicharacter(a)?;
        let mut out = Vec::new();
        for h in beta.isotropic_subgroups(true)? {
            let coords = normalize_subfield_basis(a, &h)?;
            out.push(from_coords(c, &h, coords)?);
        }
        return Ok(out);
    }
    let grp = a.group().clone();
    let supp = a.support();
    let mut out: Vec<SubfieldWithAug> = Vec::new();
    for h in Subgroup::all(&grp) {
        if h.elements().iter().any(|t| !supp.contains(t)) {
            continue;
        }
        let gens: Vec<Elem> = h.cyclic_decomposition().into_iter().map(|(t, _)| t).collect();
        let choices: Vec<Vec<Vector>> = gens.iter().map(|t| candidates(c, *t)).collect();
        let mut idx = vec![0usize; gens.len()];
        loop {
            let elems: HashMap<Elem, Vector> =
                gens.iter().zip(idx.iter()).enumerate().map(|(p, (t, &k))| (*t, choices[p][k].clone())).collect();
            if let Ok(coords) = normalize_elements(a, &h, &elems) {
                if let Ok(f) = from_coords(c, &h, coords) {
                    if f.is_maximal_in(c) && !out.iter().any(|o| o.same_span(&f)) {
                        out.push(f);
                    }
                }
            }
            // next choice
            let mut p = 0;
            while p < idx.len() {
                idx[p] += 1;
                if idx[p] < choices[p].len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == idx.len() {
                break;
            }
        }
    }
    Ok(out)
}

/// Homogeneous elements of degree t to try as generators: a reduced basis of C(W)_t and
/// pairwise sums of its members.
fn candidates(c: &Centralizer, t: Elem) -> Vec<Vector> {
    let comp = c.algebra.component(t);
    let Some(first) = comp.first() else { return Vec::new() };
    let n = c.maps[*first].rows();
    let rows: Vec<Vector> = comp.iter().map(|&i| c.maps[i].entries().to_vec()).collect();
    let (rr, piv) = Matrix::from_rows(rows).expect("equal lengths").rref();
    let reduced: Vec<Matrix> =
        (0..piv.len()).map(|r| Matrix::from_fn(n, n, |i, j| rr.get(r, i * n + j).clone())).collect();
    let mut mats = reduced.clone();
    for i in 0..reduced.len() {
        for j in i + 1..reduced.len() {
            mats.push(reduced[i].add(&reduced[j]));
        }
    }
    mats.iter().filter_map(|m| c.coordinates(m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pauli_has_three_subfields() {
        let w = fixtures::pauli_module();
        let fs = maximal_graded_subfields(&w).unwrap();
        assert_eq!(fs.len(), 3);
        let mut supports: Vec<Vec<Elem>> = fs.iter().map(|f| f.support().elements().to_vec()).collect();
        supports.sort();
        assert_eq!(supports, vec![vec![Elem(0), Elem(1)], vec![Elem(0), Elem(2)], vec![Elem(0), Elem(3)]]);
        let c = graded_centralizer(&w);
        assert!(fs.iter().all(|f| f.is_maximal_in(&c)));
    }

    #[test]
    fn m2rz2_listed_subfields_found() {
        let w = fixtures::m2rz2_module();
        let fs = maximal_graded_subfields(&w).unwrap();
        for listed in fixtures::m2rz2_listed_subfields() {
            let hit = fs.iter().any(|f| {
                let e = f.span_key();
                e.contains(listed.entries()) && e.contains(Matrix::identity(4, 1).entries())
            });
            assert!(hit, "listed subfield missing");
        }
    }

    #[test]
    fn central_simple_gives_ground_field() {
        let v = fixtures::pauli_natural();
        let fs = maximal_graded_subfields(&v).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].support().order(), 1);
    }
}
