use std::sync::Arc;

use super::brauer::{brauer_invariant, BrauerInvariant};
use super::profile::profile;
use crate::abgroup::{Elem, QuotientMap};
use crate::arith::matrix::Echelon;
use crate::arith::Matrix;
use crate::central::central_idempotents;
use crate::envelope::{graded_wedderburn_split, GradedMatrixAlgebra};
use crate::error::{Error, Result};
use crate::gmod::{graded_centralizer, GradedModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndChecks {
    /// The components ρ_V(R_ḡ) are independent and span End(V).
    pub direct_sum: bool,
    pub algebra_grading: bool,
    /// The invariant of the graded matrix algebra equals that of W.
    pub invariant_matches: bool,
}

impl EndChecks {
    pub fn holds(&self) -> bool {
        self.direct_sum && self.algebra_grading && self.invariant_matches
    }
}

/// End(V) graded by G/Z, Z the support of the center of C(W).
#[derive(Clone, Debug)]
pub struct EndGrading {
    pub algebra: GradedMatrixAlgebra,
    pub invariant: BrauerInvariant,
    pub checks: EndChecks,
}

/// Grade End(V) by End(V)_ḡ = ρ_V(R_ḡ) for a simple submodule V of W.
pub fn grade_endomorphism_algebra(w: &GradedModule, v: &GradedModule) -> Result<EndGrading> {
    if !Arc::ptr_eq(w.algebra(), v.algebra()) && **w.algebra().group() != **v.algebra().group() {
        return Err(Error::Invalid("V and W are modules over different algebras".into()));
    }
    let c = graded_centralizer(w);
    let (z, _) = central_idempotents(&c)?;
    let pz = Arc::new(QuotientMap::new(&z));
    let r = v.algebra();
    let n = v.dim();
    let mut mats: Vec<Matrix> = Vec::new();
    let mut degrees: Vec<Elem> = Vec::new();
    let mut total = Echelon::new(n * n);
    let mut direct = true;
    for q in pz.target().elements() {
        let mut comp = Echelon::new(n * n);
        for i in 0..r.dim() {
            if pz.apply(r.degree(i)) != q {
                continue;
            }
            let m = v.action(i);
            if comp.insert(m.entries().to_vec()) {
                direct &= total.insert(m.entries().to_vec());
                mats.push(m.clone());
                degrees.push(q);
            }
        }
    }
    direct &= total.rank() == n * n;
    if !direct {
        return Err(Error::Violation("ρ_V(R_ḡ) do not form a direct decomposition of End(V)".into()));
    }
    let algebra = GradedMatrixAlgebra::new(pz.clone(), mats, degrees)?;
    let algebra_grading = algebra.is_algebra_grading();
    let split = graded_wedderburn_split(&algebra.algebra)?;
    let p = profile(&split.division.algebra)?;
    let invariant = BrauerInvariant::new(pz.target(), &p.beta);
    let invariant_matches = invariant == brauer_invariant(w)?;
    Ok(EndGrading { algebra, invariant, checks: EndChecks { direct_sum: direct, algebra_grading, invariant_matches } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::central::{decompose, maximal_graded_subfields};
    use crate::fixtures;

    #[test]
    fn pauli_grading_recovered() {
        let w = fixtures::pauli_module();
        let e = grade_endomorphism_algebra(&w, &fixtures::pauli_natural()).unwrap();
        assert!(e.checks.holds(), "{:?}", e.checks);
        assert_eq!(e.algebra.component_dims(), (0..4).map(|i| (Elem(i), 1)).collect::<Vec<_>>());
        for (i, m) in fixtures::pauli_matrices().iter().enumerate() {
            assert_eq!(e.algebra.algebra.degree(i), Elem(i));
            assert_eq!(&e.algebra.matrices[i], m);
        }
    }

    #[test]
    fn commutative_centralizer_collapses_grading() {
        // C(W) = 𝔽ℤ₂ is its own center, so everything lands in the trivial quotient
        let w = GradedModule::regular(Arc::new(fixtures::group_algebra_z2()));
        let f = &maximal_graded_subfields(&w).unwrap()[0];
        let d = decompose(&w, f).unwrap();
        for class in &d.classes {
            let e = grade_endomorphism_algebra(&w, &class.piece.module).unwrap();
            assert!(e.checks.holds(), "{:?}", e.checks);
            assert_eq!(e.algebra.algebra.group().order(), 1);
            assert!(e.invariant.is_trivial());
        }
    }

    #[test]
    fn invariant_matches_on_corpus() {
        use crate::abgroup::Character;
        use crate::central::central_image;
        for inst in crate::corpus::corpus(11, 15, Default::default()).unwrap() {
            let w = &inst.module;
            let f = &maximal_graded_subfields(w).unwrap()[0];
            let v = central_image(w, f, Character::trivial()).unwrap().module;
            let e = grade_endomorphism_algebra(w, &v).unwrap();
            assert!(e.checks.holds(), "{}: {:?}", inst.describe(), e.checks);
        }
    }
}
