use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::module::{GradedMap, GradedModule};
use crate::abgroup::Elem;
use crate::arith::cyclo::lcm;
use crate::arith::matrix::{zero_vec, Echelon, Vector};
use crate::arith::{CycScalar, Matrix};
use crate::error::Result;
use crate::galg::{Composition, GradedAlgebra};

/// Solve F·A_k = B_k·F for F (rows × cols) with F[r][c] allowed only where `allowed(r, c)`.
pub fn solve_intertwining(
    rows: usize,
    cols: usize,
    pairs: &[(&Matrix, &Matrix)],
    allowed: impl Fn(usize, usize) -> bool,
) -> Vec<Matrix> {
    let mut index = vec![usize::MAX; rows * cols];
    let mut unknowns = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if allowed(r, c) {
                index[r * cols + c] = unknowns.len();
                unknowns.push((r, c));
            }
        }
    }
    let u = unknowns.len();
    if u == 0 {
        return Vec::new();
    }
    let order = pairs.iter().fold(1, |o, (a, b)| lcm(o, lcm(a.order(), b.order())));
    let mut ech = Echelon::new(u);
    for (a, b) in pairs {
        // (F A)[r][c] - (B F)[r][c] = Σ_k F[r][k] A[k][c] - Σ_k B[r][k] F[k][c]
        for r in 0..rows {
            for c in 0..cols {
                let mut eq = zero_vec(u, order);
                let mut any = false;
                for k in 0..cols {
                    let idx = index[r * cols + k];
                    if idx != usize::MAX {
                        let x = a.get(k, c);
                        if !x.is_zero() {
                            eq[idx] = &eq[idx] + x;
                            any = true;
                        }
                    }
                }
                for k in 0..rows {
                    let idx = index[k * cols + c];
                    if idx != usize::MAX {
                        let x = b.get(r, k);
                        if !x.is_zero() {
                            eq[idx] = &eq[idx] - x;
                            any = true;
                        }
                    }
                }
                if any {
                    ech.insert(eq);
                }
                if ech.rank() == u {
                    return Vec::new();
                }
            }
        }
    }
    ech.nullspace()
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(rows, cols, 1);
            for (k, (r, c)) in unknowns.iter().enumerate() {
                if !v[k].is_zero() {
                    m.set(*r, *c, v[k].clone());
                }
            }
            m
        })
        .collect()
}

fn generator_pairs<'a>(v: &'a GradedModule, w: &'a GradedModule) -> Vec<(&'a Matrix, &'a Matrix)> {
    v.algebra().generators().iter().map(|&i| (v.action(i), w.action(i))).collect()
}

/// Basis of Hom_R(V, W) ∩ Hom_g(V, W) (g in the common grading group).
pub fn intertwiners(v: &GradedModule, w: &GradedModule, g: Elem) -> Vec<Matrix> {
    let grp = w.grading_group().clone();
    solve_intertwining(w.dim(), v.dim(), &generator_pairs(v, w), |r, c| w.degree(r) == grp.mul(g, v.degree(c)))
}

/// Basis of Hom_R(V, W), ignoring gradings.
pub fn intertwiners_ungraded(v: &GradedModule, w: &GradedModule) -> Vec<Matrix> {
    solve_intertwining(w.dim(), v.dim(), &generator_pairs(v, w), |_, _| true)
}

/// Graded centralizer with its matrices; products are composed left to right.
#[derive(Clone)]
pub struct Centralizer {
    pub algebra: GradedAlgebra,
    pub maps: Vec<Matrix>,
    coords: Echelon,
}

impl Centralizer {
    fn build(w: &GradedModule, maps: Vec<Matrix>, degrees: Vec<Elem>) -> Self {
        let n = w.dim();
        let algebra = GradedAlgebra::from_matrices(w.grading_group().clone(), &maps, degrees, Composition::LeftToRight)
            .expect("centralizer is a unital algebra");
        let mut coords = Echelon::tracking(n * n);
        for m in &maps {
            coords.insert(m.entries().to_vec());
        }
        Centralizer { algebra, maps, coords }
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    /// Matrix of the element with the given coordinates.
    pub fn matrix_of(&self, x: &[CycScalar]) -> Matrix {
        let n = self.maps.first().map_or(0, |m| m.rows());
        let mut acc = Matrix::zeros(n, n, 1);
        for (c, m) in x.iter().zip(self.maps.iter()) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    pub fn coordinates(&self, m: &Matrix) -> Option<Vector> {
        self.coords.coordinates(m.entries())
    }

    pub fn component(&self, g: Elem) -> Vec<usize> {
        self.algebra.component(g)
    }
}

/// C^gr(W) = ⊕_g Hom_g(W,W) ∩ End_R(W).
pub fn graded_centralizer(w: &GradedModule) -> Centralizer {
    let mut maps = Vec::new();
    let mut degrees = Vec::new();
    for g in w.grading_group().elements() {
        for m in intertwiners(w, w, g) {
            maps.push(m);
            degrees.push(g);
        }
    }
    Centralizer::build(w, maps, degrees)
}

/// Degree-e part of the graded centralizer.
pub fn centralizer_e(w: &GradedModule) -> Vec<Matrix> {
    intertwiners(w, w, w.grading_group().identity())
}

/// End_R(W) with no grading constraint.
pub fn ungraded_centralizer(w: &GradedModule) -> Vec<Matrix> {
    intertwiners_ungraded(w, w)
}

#[derive(Clone, Debug, PartialEq)]
pub enum IsoOutcome {
    Isomorphic(Matrix),
    NotIsomorphic,
    /// The Hom space is nonzero but no invertible element was found within the retry bound.
    Inconclusive { hom_dim: usize },
}

impl IsoOutcome {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            IsoOutcome::Isomorphic(m) => Some(m),
            _ => None,
        }
    }
}

const RETRIES: usize = 24;

/// Look for an invertible element in the span of `basis`: basis elements first, then seeded
/// random integer combinations.
pub fn invertible_in_span(basis: &[Matrix], seed: u64) -> Option<Matrix> {
    let first = basis.first()?;
    if !first.is_square() {
        return None;
    }
    for m in basis {
        if m.inverse().is_ok() {
            return Some(m.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRIES {
        let mut acc = Matrix::zeros(first.rows(), first.cols(), 1);
        for m in basis {
            let k: i64 = rng.gen_range(-5..=5);
            if k != 0 {
                acc = acc.add(&m.scale(&CycScalar::from_int(k, 1)));
            }
        }
        if acc.inverse().is_ok() {
            return Some(acc);
        }
    }
    None
}

fn decide(hom: Vec<Matrix>, dims_equal: bool) -> IsoOutcome {
    if !dims_equal || hom.is_empty() {
        return IsoOutcome::NotIsomorphic;
    }
    let d = hom.len();
    match invertible_in_span(&hom, 0x5eed) {
        Some(m) => IsoOutcome::Isomorphic(m),
        None => IsoOutcome::Inconclusive { hom_dim: d },
    }
}

/// Degree-e graded isomorphism V → W, if any.
pub fn is_isomorphic_graded(v: &GradedModule, w: &GradedModule) -> IsoOutcome {
    if v.dim() != w.dim() || *v.grading() != *w.grading() {
        return IsoOutcome::NotIsomorphic;
    }
    // graded isomorphisms preserve component dimensions
    let g = v.grading_group();
    if g.elements().any(|q| v.component(q).len() != w.component(q).len()) {
        return IsoOutcome::NotIsomorphic;
    }
    decide(intertwiners(v, w, g.identity()), true)
}

pub fn is_isomorphic_ungraded(v: &GradedModule, w: &GradedModule) -> IsoOutcome {
    decide(intertwiners_ungraded(v, w), v.dim() == w.dim())
}

/// The identity as a graded map of degree e.
pub fn identity_map(v: &GradedModule) -> GradedMap {
    GradedMap::new(v.grading_group().identity(), Matrix::identity(v.dim(), 1))
}

/// Check a degree-g map intertwines and is homogeneous.
pub fn check_map(v: &GradedModule, w: &GradedModule, f: &GradedMap) -> Result<()> {
    if !f.is_homogeneous(v, w) {
        return Err(crate::error::Error::Violation("map is not homogeneous of its degree".into()));
    }
    if !f.is_module_map(v, w) {
        return Err(crate::error::Error::Violation("map does not commute with the action".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fixtures;

    #[test]
    fn pauli_centralizer_is_right_multiplication() {
        let w = fixtures::pauli_module();
        let c = graded_centralizer(&w);
        assert_eq!(c.dim(), 4);
        assert!(c.algebra.validate().is_valid());
        // every component one-dimensional, and the algebra is the opposite of R
        for g in w.grading_group().elements() {
            assert_eq!(c.component(g).len(), 1);
        }
        let a = w.algebra();
        for i in 0..4 {
            let r = a.right_mult(&a.basis_vector(i));
            assert!(c.coordinates(&r).is_some());
        }
        assert_eq!(ungraded_centralizer(&w).len(), 4);
    }

    #[test]
    fn schur_for_natural_module() {
        let v = fixtures::pauli_natural();
        assert_eq!(ungraded_centralizer(&v).len(), 1);
        let out = is_isomorphic_graded(&v, &v);
        assert!(out.is_iso());
    }

    #[test]
    fn shift_by_support_element_is_isomorphic() {
        let w = fixtures::pauli_module();
        let g = w.grading_group().clone();
        for t in g.elements() {
            assert!(is_isomorphic_graded(&w.shift(t), &w).is_iso());
        }
        // M2 with the elementary Z2 grading: shift by the nontrivial element is not
        // isomorphic when the centralizer is supported at e only
        let z2 = Arc::new(crate::abgroup::FinAbGroup::cyclic(2));
        let a = Arc::new(crate::galg::GradedAlgebra::elementary_matrix_algebra(z2.clone(), &[Elem(0), Elem(0), Elem(1)]));
        let col = fixtures::column_module(&a, &[Elem(0), Elem(0), Elem(1)]);
        let c = graded_centralizer(&col);
        assert_eq!(c.dim(), 1);
        assert!(!is_isomorphic_graded(&col.shift(Elem(1)), &col).is_iso());
    }
}
