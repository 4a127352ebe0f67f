use std::fmt;
use std::sync::Arc;

use crate::abgroup::{Elem, FinAbGroup, QuotientMap};
use crate::arith::cyclo::lcm;
use crate::arith::matrix::{vec_is_zero, zero_vec, Echelon, Vector};
use crate::arith::{CycScalar, Matrix};
use crate::error::{Error, Result};
use crate::galg::GradedAlgebra;

/// Left module over a G-graded algebra, graded by Ḡ = target of `grading`.
#[derive(Clone)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    grading: Arc<QuotientMap>,
    degrees: Vec<Elem>,
    action: Vec<Matrix>,
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedModule(dim {}, graded by {})", self.dim(), self.grading_group())
    }
}

/// Axiom violations found by [`GradedModule::validate`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ModuleReport {
    /// (i, j) with ρ(x_i)ρ(x_j) ≠ ρ(x_i x_j)
    pub homomorphism: Vec<(usize, usize)>,
    pub unit: bool,
    /// (algebra basis index, module row, module column)
    pub grading: Vec<(usize, usize, usize)>,
    pub shape: Vec<usize>,
}

impl ModuleReport {
    pub fn is_valid(&self) -> bool {
        self.homomorphism.is_empty() && !self.unit && self.grading.is_empty() && self.shape.is_empty()
    }
}

impl GradedModule {
    pub fn new(
        algebra: Arc<GradedAlgebra>,
        grading: Arc<QuotientMap>,
        degrees: Vec<Elem>,
        action: Vec<Matrix>,
    ) -> Result<Self> {
        if **grading.source() != **algebra.group() {
            return Err(Error::Invalid("module grading must be a quotient of the algebra's group".into()));
        }
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        let n = degrees.len();
        if action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch("action matrix shape".into()));
        }
        if degrees.iter().any(|d| d.0 >= grading.target().order()) {
            return Err(Error::Invalid("module degree outside grading group".into()));
        }
        Ok(GradedModule { algebra, grading, degrees, action })
    }

    /// G-graded module (identity quotient).
    pub fn new_g(algebra: Arc<GradedAlgebra>, degrees: Vec<Elem>, action: Vec<Matrix>) -> Result<Self> {
        let q = Arc::new(QuotientMap::identity(algebra.group()));
        Self::new(algebra, q, degrees, action)
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular(algebra: Arc<GradedAlgebra>) -> Self {
        let action = (0..algebra.dim()).map(|i| algebra.left_mult(&algebra.basis_vector(i))).collect();
        let degrees = algebra.degrees().to_vec();
        Self::new_g(algebra, degrees, action).expect("regular module shapes")
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn grading(&self) -> &Arc<QuotientMap> {
        &self.grading
    }

    pub fn grading_group(&self) -> &Arc<FinAbGroup> {
        self.grading.target()
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[Elem] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> Elem {
        self.degrees[i]
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Degree of algebra basis element i in Ḡ.
    pub fn algebra_degree(&self, i: usize) -> Elem {
        self.grading.apply(self.algebra.degree(i))
    }

    /// Matrix of ρ(x) for x in algebra coordinates.
    pub fn act(&self, x: &[CycScalar]) -> Matrix {
        let mut acc = Matrix::zeros(self.dim(), self.dim(), 1);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.action[i].scale(c));
            }
        }
        acc
    }

    /// Cyclotomic order of the action entries.
    pub fn order(&self) -> u64 {
        self.action.iter().fold(1, |a, m| lcm(a, m.order()))
    }

    /// Smallest N with all data (and all characters of the grading groups) in ℚ(ζ_N).
    pub fn field_order(&self) -> u64 {
        lcm(lcm(self.order(), self.algebra.order()), self.grading.source().exponent())
    }

    pub fn component(&self, q: Elem) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == q).collect()
    }

    pub fn support(&self) -> Vec<Elem> {
        let mut s = self.degrees.clone();
        s.sort();
        s.dedup();
        s
    }

    pub fn homogeneous_degree(&self, v: &[CycScalar]) -> Option<Elem> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                match deg {
                    None => deg = Some(self.degrees[i]),
                    Some(d) if d != self.degrees[i] => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    /// Split v into its homogeneous components (nonzero ones only).
    pub fn homogeneous_parts(&self, v: &[CycScalar]) -> Vec<(Elem, Vector)> {
        let mut out: Vec<(Elem, Vector)> = Vec::new();
        for q in self.support() {
            let mut w = zero_vec(self.dim(), 1);
            for i in self.component(q) {
                w[i] = v[i].clone();
            }
            if !vec_is_zero(&w) {
                out.push((q, w));
            }
        }
        out
    }

    pub fn validate(&self) -> ModuleReport {
        let a = &self.algebra;
        let n = a.dim();
        let mut rep = ModuleReport::default();
        for (i, m) in self.action.iter().enumerate() {
            if m.rows() != self.dim() || m.cols() != self.dim() {
                rep.shape.push(i);
            }
        }
        if !rep.shape.is_empty() {
            return rep;
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = Matrix::zeros(self.dim(), self.dim(), 1);
                for (k, c) in a.basis_product(i, j) {
                    rhs = rhs.add(&self.action[*k].scale(c));
                }
                if lhs != rhs {
                    rep.homomorphism.push((i, j));
                }
            }
        }
        rep.unit = !self.act(a.unit()).is_identity();
        let g = self.grading_group();
        for (i, m) in self.action.iter().enumerate() {
            let d = self.algebra_degree(i);
            for r in 0..self.dim() {
                for c in 0..self.dim() {
                    if !m.get(r, c).is_zero() && self.degrees[r] != g.mul(d, self.degrees[c]) {
                        rep.grading.push((i, r, c));
                    }
                }
            }
        }
        rep
    }

    /// W^{[g]}: same action, degrees multiplied by g.
    pub fn shift(&self, g: Elem) -> GradedModule {
        let grp = self.grading_group();
        let mut m = self.clone();
        m.degrees = self.degrees.iter().map(|d| grp.mul(*d, g)).collect();
        m
    }

    pub fn with_degrees(&self, degrees: Vec<Elem>) -> Result<GradedModule> {
        GradedModule::new(self.algebra.clone(), self.grading.clone(), degrees, self.action.clone())
    }

    /// Push the grading through π: Ḡ → Ḡ' (the induced map of quotients).
    pub fn regrade(&self, grading: Arc<QuotientMap>, degrees: Vec<Elem>) -> Result<GradedModule> {
        GradedModule::new(self.algebra.clone(), grading, degrees, self.action.clone())
    }

    /// Same space and grading with action replaced.
    pub fn with_action(&self, action: Vec<Matrix>) -> Result<GradedModule> {
        GradedModule::new(self.algebra.clone(), self.grading.clone(), self.degrees.clone(), action)
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) && *self.grading != *other.grading {
            return Err(Error::Invalid("summands over different algebras or gradings".into()));
        }
        let (n, m) = (self.dim(), other.dim());
        let action = self
            .action
            .iter()
            .zip(other.action.iter())
            .map(|(x, y)| {
                Matrix::from_fn(n + m, n + m, |i, j| {
                    if i < n && j < n {
                        x.get(i, j).clone()
                    } else if i >= n && j >= n {
                        y.get(i - n, j - n).clone()
                    } else {
                        CycScalar::zero(1)
                    }
                })
            })
            .collect();
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        GradedModule::new(self.algebra.clone(), self.grading.clone(), degrees, action)
    }

    /// Change basis: new basis vectors are the columns of `p` (must be homogeneous and invertible).
    pub fn change_basis(&self, p: &Matrix) -> Result<GradedModule> {
        let pinv = p.inverse()?;
        let mut degrees = Vec::with_capacity(self.dim());
        for c in 0..p.cols() {
            degrees.push(
                self.homogeneous_degree(&p.column(c))
                    .ok_or_else(|| Error::Invalid("change of basis is not homogeneous".into()))?,
            );
        }
        let action = self.action.iter().map(|a| pinv.mul(a).mul(p)).collect();
        GradedModule::new(self.algebra.clone(), self.grading.clone(), degrees, action)
    }

    /// Submodule spanned by homogeneous vectors (closed under the action), in that basis.
    pub fn submodule(&self, basis: &[Vector]) -> Result<GradedModule> {
        let mut ech = Echelon::tracking(self.dim());
        let mut degrees = Vec::new();
        for v in basis {
            if !ech.insert(v.clone()) {
                return Err(Error::Invalid("submodule basis is dependent".into()));
            }
            degrees.push(self.homogeneous_degree(v).ok_or_else(|| Error::Invalid("submodule basis not homogeneous".into()))?);
        }
        let k = basis.len();
        let mut action = Vec::with_capacity(self.algebra.dim());
        for a in &self.action {
            let mut cols = Vec::with_capacity(k);
            for v in basis {
                let w = a.mul_vec(v);
                cols.push(ech.coordinates(&w).ok_or_else(|| Error::Invalid("subspace is not a submodule".into()))?);
            }
            action.push(Matrix::from_columns(k, &cols));
        }
        GradedModule::new(self.algebra.clone(), self.grading.clone(), degrees, action)
    }

    /// Smallest submodule containing v; with `homogeneous_only`, the smallest graded one.
    pub fn spin(&self, v: &[CycScalar], homogeneous_only: bool) -> Vec<Vector> {
        let seeds: Vec<Vector> = if homogeneous_only {
            self.homogeneous_parts(v).into_iter().map(|(_, w)| w).collect()
        } else {
            vec![v.to_vec()]
        };
        self.spin_all(&seeds)
    }

    /// Smallest submodule containing all seeds.
    pub fn spin_all(&self, seeds: &[Vector]) -> Vec<Vector> {
        let gens: Vec<&Matrix> = self.algebra.generators().iter().map(|&i| &self.action[i]).collect();
        let mut ech = Echelon::new(self.dim());
        let mut out: Vec<Vector> = Vec::new();
        let mut queue: Vec<Vector> = Vec::new();
        for s in seeds {
            if ech.insert(s.clone()) {
                out.push(s.clone());
                queue.push(s.clone());
            }
        }
        while let Some(w) = queue.pop() {
            for g in &gens {
                let x = g.mul_vec(&w);
                if ech.insert(x.clone()) {
                    out.push(x.clone());
                    queue.push(x);
                }
            }
        }
        out
    }

    /// Twist by the diagonal automorphism α_χ: r_g ↦ χ(g) r_g (χ a character of G).
    pub fn twist_by_automorphism(&self, chi: crate::abgroup::Character) -> GradedModule {
        let g = self.algebra.group();
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(i, m)| m.scale(&chi.value(g, self.algebra.degree(i))))
            .collect();
        self.with_action(action).expect("same shapes")
    }
}

/// Linear map between modules, homogeneous of a declared degree in the grading group.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap {
    pub degree: Elem,
    pub matrix: Matrix,
}

impl GradedMap {
    pub fn new(degree: Elem, matrix: Matrix) -> Self {
        GradedMap { degree, matrix }
    }

    /// Maps V_h into W_{gh} for all h.
    pub fn is_homogeneous(&self, source: &GradedModule, target: &GradedModule) -> bool {
        let g = target.grading_group();
        (0..self.matrix.rows()).all(|r| {
            (0..self.matrix.cols()).all(|c| {
                self.matrix.get(r, c).is_zero() || target.degree(r) == g.mul(self.degree, source.degree(c))
            })
        })
    }

    /// Commutes with the action of every algebra basis element.
    pub fn is_module_map(&self, source: &GradedModule, target: &GradedModule) -> bool {
        source
            .actions()
            .iter()
            .zip(target.actions().iter())
            .all(|(a, b)| self.matrix.mul(a) == b.mul(&self.matrix))
    }

    pub fn is_isomorphism(&self, source: &GradedModule, target: &GradedModule) -> bool {
        source.dim() == target.dim()
            && self.is_homogeneous(source, target)
            && self.is_module_map(source, target)
            && self.matrix.inverse().is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn regular_module_valid() {
        let a = Arc::new(fixtures::pauli_algebra());
        let w = GradedModule::regular(a);
        assert!(w.validate().is_valid());
    }

    #[test]
    fn corrupted_degree_reported() {
        let w = GradedModule::regular(Arc::new(fixtures::pauli_algebra()));
        let mut d = w.degrees().to_vec();
        d[0] = d[1];
        let bad = w.with_degrees(d).unwrap();
        let rep = bad.validate();
        assert!(rep.homomorphism.is_empty() && !rep.unit);
        assert!(!rep.grading.is_empty());
        // every violation touches index 0 or 1 (row or column)
        assert!(rep.grading.iter().all(|(_, r, c)| [0, 1].contains(r) || [0, 1].contains(c)));
    }

    #[test]
    fn shifts_compose() {
        let w = GradedModule::regular(Arc::new(fixtures::pauli_algebra()));
        let g = w.grading_group().clone();
        assert_eq!(w.shift(g.identity()).degrees(), w.degrees());
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(w.shift(a).shift(b).degrees(), w.shift(g.mul(a, b)).degrees());
            }
            assert_eq!(w.shift(a).shift(g.inv(a)).degrees(), w.degrees());
        }
    }

    #[test]
    fn spin_in_double() {
        let w = GradedModule::regular(Arc::new(fixtures::pauli_algebra()));
        let ww = w.direct_sum(&w).unwrap();
        let mut v = zero_vec(8, 1);
        v[0] = CycScalar::one(1);
        let s = ww.spin(&v, true);
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|x| x[4..].iter().all(|c| c.is_zero())));
        assert!(ww.spin(&zero_vec(8, 1), true).is_empty());
    }
}
