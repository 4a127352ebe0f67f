//! Small worked examples used by tests, the CLI and the benches.

use std::sync::Arc;

use crate::abgroup::{Bicharacter, Elem, FinAbGroup, QuotientMap, Subgroup};
use crate::arith::{CycScalar, Matrix};
use crate::galg::{smash_product, twisted_group_algebra, Cocycle, Composition, GradedAlgebra};
use crate::gmod::GradedModule;

pub fn klein_group() -> Arc<FinAbGroup> {
    Arc::new(FinAbGroup::new(vec![2, 2]).unwrap())
}

/// I, X, Z, ZX in the order of their degrees e, h, g, gh (g = (1,0), h = (0,1)).
pub fn pauli_matrices() -> Vec<Matrix> {
    let x = Matrix::from_ints(&[&[0, 1], &[1, 0]], 1);
    let z = Matrix::from_ints(&[&[1, 0], &[0, -1]], 1);
    vec![Matrix::identity(2, 1), x.clone(), z.clone(), z.mul(&x)]
}

/// M₂ with its ℤ₂×ℤ₂ Pauli grading.
pub fn pauli_algebra() -> GradedAlgebra {
    let g = klein_group();
    GradedAlgebra::from_matrices(g, &pauli_matrices(), (0..4).map(Elem).collect(), Composition::Standard)
        .expect("Pauli matrices span M2")
        .with_labels(vec!["I".into(), "X".into(), "Z".into(), "ZX".into()])
}

/// Regular module of the Pauli algebra.
pub fn pauli_module() -> GradedModule {
    GradedModule::regular(Arc::new(pauli_algebra()))
}

/// 𝔽² graded by G/⟨g⟩ (g = diag(1,-1)'s degree).
pub fn pauli_natural() -> GradedModule {
    let a = Arc::new(pauli_algebra());
    let g = a.group().clone();
    let h1 = Subgroup::generated(&g, &[Elem(2)]);
    let q = Arc::new(QuotientMap::new(&h1));
    let d = vec![q.apply(Elem(0)), q.apply(Elem(1))];
    GradedModule::new(a, q, d, pauli_matrices()).expect("natural module")
}

/// M₂(ℚ) graded by ℤ₂ with R_e = ⟨1, J⟩, R_g = ⟨diag(1,-1), X⟩.
pub fn m2rz2_algebra() -> GradedAlgebra {
    let g = Arc::new(FinAbGroup::cyclic(2));
    let j = Matrix::from_ints(&[&[0, 1], &[-1, 0]], 1);
    let z = Matrix::from_ints(&[&[1, 0], &[0, -1]], 1);
    let x = Matrix::from_ints(&[&[0, 1], &[1, 0]], 1);
    GradedAlgebra::from_matrices(
        g,
        &[Matrix::identity(2, 1), j, z, x],
        vec![Elem(0), Elem(0), Elem(1), Elem(1)],
        Composition::Standard,
    )
    .expect("M2 basis")
    .with_labels(vec!["I".into(), "J".into(), "Z".into(), "X".into()])
}

pub fn m2rz2_module() -> GradedModule {
    GradedModule::regular(Arc::new(m2rz2_algebra()))
}

/// Matrices of right multiplication by diag(1,-1) and X on the regular M2RZ2 module.
pub fn m2rz2_listed_subfields() -> Vec<Matrix> {
    let a = m2rz2_algebra();
    vec![a.right_mult(&a.basis_vector(2)), a.right_mult(&a.basis_vector(3))]
}

/// Column module of an elementary matrix algebra End(U), U with degrees `udeg`.
pub fn column_module(a: &Arc<GradedAlgebra>, udeg: &[Elem]) -> GradedModule {
    let u = udeg.len();
    let action = (0..u * u)
        .map(|k| Matrix::from_fn(u, u, |r, c| if r == k / u && c == k % u { CycScalar::one(1) } else { CycScalar::zero(1) }))
        .collect();
    GradedModule::new_g(a.clone(), udeg.to_vec(), action).expect("column module")
}

/// Group algebra 𝔽ℤ₂ (graded by ℤ₂).
pub fn group_algebra_z2() -> GradedAlgebra {
    twisted_group_algebra(&Cocycle::trivial(Arc::new(FinAbGroup::cyclic(2))))
}

/// One-dimensional ungraded module of 𝔽ℤ₂ with c_g ↦ sign.
pub fn z2_character_module(sign: i64) -> GradedModule {
    let a = Arc::new(group_algebra_z2());
    let g = a.group().clone();
    let q = Arc::new(QuotientMap::new(&Subgroup::whole(&g)));
    let action = vec![Matrix::from_ints(&[&[1]], 1), Matrix::from_ints(&[&[sign]], 1)];
    GradedModule::new(a, q, vec![Elem(0)], action).expect("character module")
}

/// ℤ₄×ℤ₄ with β((x₁,y₁),(x₂,y₂)) = i^{y₁x₂ − x₁y₂}.
pub fn z4z4_bicharacter() -> Bicharacter {
    let g = Arc::new(FinAbGroup::new(vec![4, 4]).unwrap());
    let gg = g.clone();
    Bicharacter::from_fn(&Subgroup::whole(&g), move |a, b| {
        let (p, q) = (gg.coords(a), gg.coords(b));
        (p[1] * q[0] + 4 * 4 - p[0] * q[1] % 4) % 4
    })
}

/// 𝔽^σ(ℤ₄×ℤ₄) with σ = i^{y₁x₂}; its commutation factor is [`z4z4_bicharacter`].
pub fn z4z4_algebra() -> GradedAlgebra {
    let g = Arc::new(FinAbGroup::new(vec![4, 4]).unwrap());
    let gg = g.clone();
    let sigma = Cocycle::from_bilinear(g, 4, move |a, b| gg.coords(a)[1] * gg.coords(b)[0]).expect("bilinear cocycle");
    twisted_group_algebra(&sigma)
}

/// 𝔽ℤ_n # 𝔽ℤ_n with β(b, a) = ζ_n^{ab}.
pub fn smash_fixture(n: u64) -> GradedAlgebra {
    let a = Arc::new(FinAbGroup::cyclic(n));
    let p = Arc::new(a.product(&a));
    let pp = p.clone();
    let beta = Bicharacter::from_fn(&Subgroup::whole(&p), move |x, y| pp.coords(x)[1] * pp.coords(y)[0]);
    smash_product(&a, &a, &beta).expect("smash product")
}
