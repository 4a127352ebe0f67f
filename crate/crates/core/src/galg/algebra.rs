use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::abgroup::{Elem, FinAbGroup};
use crate::arith::cyclo::lcm;
use crate::arith::matrix::{axpy, vec_order, zero_vec, Echelon, Vector};
use crate::arith::{CycScalar, Matrix};
use crate::error::{Error, Result};

/// Sparse structure constants: x_i x_j = Σ_k c(i,j,k) x_k.
pub type Product = Vec<(usize, CycScalar)>;

/// Finite-dimensional unital associative algebra graded by a finite abelian group,
/// with a homogeneous basis.
pub struct GradedAlgebra {
    group: Arc<FinAbGroup>,
    degrees: Vec<Elem>,
    unit: Vector,
    table: Vec<Product>,
    labels: Vec<String>,
    generators: OnceLock<Vec<usize>>,
}

impl Clone for GradedAlgebra {
    fn clone(&self) -> Self {
        GradedAlgebra {
            group: self.group.clone(),
            degrees: self.degrees.clone(),
            unit: self.unit.clone(),
            table: self.table.clone(),
            labels: self.labels.clone(),
            generators: OnceLock::new(),
        }
    }
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedAlgebra(dim {}, group {})", self.dim(), self.group)
    }
}

/// How products of matrix basis elements are read.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Composition {
    /// x·y is the matrix product XY
    Standard,
    /// x·y means "apply x first", i.e. the matrix YX (endomorphisms written on the right)
    LeftToRight,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgebraReport {
    pub associativity: Vec<(usize, usize, usize)>,
    pub unit: Vec<usize>,
    pub grading: Vec<(usize, usize, usize)>,
    pub unit_degree: bool,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.associativity.is_empty() && self.unit.is_empty() && self.grading.is_empty() && !self.unit_degree
    }
}

impl GradedAlgebra {
    /// Build from sparse structure triples (i, j, k, c).
    pub fn new(
        group: Arc<FinAbGroup>,
        degrees: Vec<Elem>,
        unit: Vector,
        triples: Vec<(usize, usize, usize, CycScalar)>,
    ) -> Result<Self> {
        let dim = degrees.len();
        if unit.len() != dim {
            return Err(Error::DimensionMismatch("unit vector length".into()));
        }
        if degrees.iter().any(|d| d.0 >= group.order()) {
            return Err(Error::Invalid("degree outside group".into()));
        }
        let mut table: Vec<Product> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in triples {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Invalid(format!("structure index ({i},{j},{k}) out of range")));
            }
            if c.is_zero() {
                continue;
            }
            let slot = &mut table[i * dim + j];
            match slot.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, v)) => *v = &*v + &c,
                None => slot.push((k, c)),
            }
        }
        for slot in table.iter_mut() {
            slot.retain(|(_, c)| !c.is_zero());
            slot.sort_by_key(|(k, _)| *k);
        }
        let labels = (0..dim).map(|i| format!("x{i}")).collect();
        Ok(GradedAlgebra { group, degrees, unit, table, labels, generators: OnceLock::new() })
    }

    fn from_table(group: Arc<FinAbGroup>, degrees: Vec<Elem>, unit: Vector, table: Vec<Product>) -> Self {
        let labels = (0..degrees.len()).map(|i| format!("x{i}")).collect();
        GradedAlgebra { group, degrees, unit, table, labels, generators: OnceLock::new() }
    }

    /// Algebra spanned by homogeneous matrices (closed under products, containing the identity).
    pub fn from_matrices(
        group: Arc<FinAbGroup>,
        basis: &[Matrix],
        degrees: Vec<Elem>,
        comp: Composition,
    ) -> Result<Self> {
        let dim = basis.len();
        let flat: Vec<Vector> = basis.iter().map(|m| m.entries().to_vec()).collect();
        let mut ech = Echelon::tracking(flat.first().map_or(0, |v| v.len()));
        for v in &flat {
            if !ech.insert(v.clone()) {
                return Err(Error::Invalid("matrix basis is linearly dependent".into()));
            }
        }
        let n = basis.first().map_or(0, |m| m.rows());
        let unit = ech
            .coordinates(Matrix::identity(n, 1).entries())
            .ok_or_else(|| Error::Invalid("identity not in span".into()))?;
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = match comp {
                    Composition::Standard => basis[i].mul(&basis[j]),
                    Composition::LeftToRight => basis[j].mul(&basis[i]),
                };
                if p.is_zero() {
                    table.push(Vec::new());
                    continue;
                }
                let c = ech
                    .coordinates(p.entries())
                    .ok_or_else(|| Error::Invalid("span of matrices is not closed under products".into()))?;
                table.push(c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
            }
        }
        Ok(Self::from_table(group, degrees, unit, table))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn group(&self) -> &Arc<FinAbGroup> {
        &self.group
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

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Product {
        &self.table[i * self.dim() + j]
    }

    /// Largest cyclotomic order among structure constants and unit.
    pub fn order(&self) -> u64 {
        let mut n = vec_order(&self.unit);
        for p in &self.table {
            for (_, c) in p {
                n = lcm(n, c.order());
            }
        }
        n
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = zero_vec(self.dim(), 1);
        v[i] = CycScalar::one(1);
        v
    }

    pub fn mul(&self, a: &[CycScalar], b: &[CycScalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n, lcm(vec_order(a), vec_order(b)));
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.table[i * n + j] {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[CycScalar], k: u64) -> Vector {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Matrix of left multiplication by a (acting on coordinate columns).
    pub fn left_mult(&self, a: &[CycScalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    pub fn right_mult(&self, a: &[CycScalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Two-sided inverse if it exists.
    pub fn inverse(&self, a: &[CycScalar]) -> Option<Vector> {
        let l = self.left_mult(a);
        match l.solve(&self.unit) {
            crate::arith::SolveOutcome::Solution { particular, .. } => {
                let prod = self.mul(&particular, a);
                if prod == self.unit || vec_eq(&prod, &self.unit) {
                    Some(particular)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Degree of a homogeneous nonzero element.
    pub fn homogeneous_degree(&self, a: &[CycScalar]) -> Option<Elem> {
        let mut deg = None;
        for (i, x) in a.iter().enumerate() {
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

    /// Basis indices of degree g.
    pub fn component(&self, g: Elem) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == g).collect()
    }

    pub fn support(&self) -> Vec<Elem> {
        let mut s: Vec<Elem> = self.degrees.clone();
        s.sort();
        s.dedup();
        s
    }

    pub fn validate(&self) -> AlgebraReport {
        let n = self.dim();
        let mut rep = AlgebraReport::default();
        let g = &self.group;
        for i in 0..n {
            for j in 0..n {
                let dij = g.mul(self.degrees[i], self.degrees[j]);
                for (k, _) in self.basis_product(i, j) {
                    if self.degrees[*k] != dij {
                        rep.grading.push((i, j, *k));
                    }
                }
            }
        }
        let ord = self.order();
        let basis: Vec<Vector> = (0..n).map(|i| self.basis_vector(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let xy = self.mul(&basis[i], &basis[j]);
                for k in 0..n {
                    let l = self.mul(&xy, &basis[k]);
                    let r = self.mul(&basis[i], &self.mul(&basis[j], &basis[k]));
                    if !vec_eq(&l, &r) {
                        rep.associativity.push((i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            let a = self.mul(&self.unit, &basis[i]);
            let b = self.mul(&basis[i], &self.unit);
            if !vec_eq(&a, &basis[i]) || !vec_eq(&b, &basis[i]) {
                rep.unit.push(i);
            }
        }
        let _ = ord;
        rep.unit_degree = self.homogeneous_degree(&self.unit) != Some(g.identity());
        rep
    }

    /// A small set of homogeneous basis elements generating the algebra.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let n = self.dim();
            let mut gens: Vec<usize> = Vec::new();
            let mut span = Echelon::new(n);
            span.insert(self.unit.clone());
            let mut members: Vec<Vector> = vec![self.unit.clone()];
            for i in 0..n {
                let x = self.basis_vector(i);
                if span.contains(&x) {
                    continue;
                }
                gens.push(i);
                // closure under left multiplication by generators
                let mut queue: Vec<Vector> = members.clone();
                while let Some(v) = queue.pop() {
                    for &gi in &gens {
                        let w = self.mul(&self.basis_vector(gi), &v);
                        if span.insert(w.clone()) {
                            members.push(w.clone());
                            queue.push(w);
                        }
                    }
                }
                if span.rank() == n {
                    break;
                }
            }
            gens
        })
    }

    /// Coarsen or push the grading along a homomorphism of groups given by a table.
    pub fn regrade(&self, target: Arc<FinAbGroup>, map: impl Fn(Elem) -> Elem) -> GradedAlgebra {
        let degrees = self.degrees.iter().map(|d| map(*d)).collect();
        GradedAlgebra::from_table(target, degrees, self.unit.clone(), self.table.clone()).with_labels(self.labels.clone())
    }

    /// Rescale basis elements: x'_i = s_i x_i.
    pub fn rescale(&self, s: &[CycScalar]) -> Result<GradedAlgebra> {
        let n = self.dim();
        let inv: Vec<CycScalar> = s.iter().map(|x| x.inv()).collect::<Result<_>>()?;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let f = &s[i] * &s[j];
                table.push(self.basis_product(i, j).iter().map(|(k, c)| (*k, &(&f * c) * &inv[*k])).collect());
            }
        }
        let unit = self.unit.iter().zip(inv.iter()).map(|(u, v)| u * v).collect();
        Ok(GradedAlgebra::from_table(self.group.clone(), self.degrees.clone(), unit, table).with_labels(self.labels.clone()))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| prod_eq(self.basis_product(i, j), self.basis_product(j, i))))
    }

    /// Every homogeneous basis element invertible (the basis is homogeneous, so it suffices
    /// to test a basis of each component and the component structure below).
    pub fn is_graded_division(&self) -> bool {
        // Each homogeneous component must consist of invertible elements. For components of
        // dimension 1 that is a single check; for larger ones we test that left multiplication
        // by a generic element of the component is injective on the whole algebra.
        for g in self.support() {
            let comp = self.component(g);
            for &i in &comp {
                if self.inverse(&self.basis_vector(i)).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Subalgebra spanned by the given elements (assumed closed), as its own graded algebra.
    pub fn subalgebra(&self, basis: &[Vector]) -> Result<GradedAlgebra> {
        let n = self.dim();
        let mut ech = Echelon::tracking(n);
        let mut degrees = Vec::new();
        for v in basis {
            if !ech.insert(v.clone()) {
                return Err(Error::Invalid("subalgebra basis is dependent".into()));
            }
            degrees.push(self.homogeneous_degree(v).ok_or_else(|| Error::Invalid("basis element not homogeneous".into()))?);
        }
        let unit = ech.coordinates(&self.unit).ok_or_else(|| Error::Invalid("unit not in subalgebra".into()))?;
        let mut table = Vec::new();
        for a in basis {
            for b in basis {
                let p = self.mul(a, b);
                let c = ech.coordinates(&p).ok_or_else(|| Error::Invalid("subspace not closed".into()))?;
                table.push(c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
            }
        }
        Ok(GradedAlgebra::from_table(self.group.clone(), degrees, unit, table))
    }

    /// Tensor product A ⊗ B graded by the common group (degrees multiply).
    pub fn tensor(&self, other: &GradedAlgebra) -> Result<GradedAlgebra> {
        if *self.group != *other.group {
            return Err(Error::Invalid("tensor factors must share the grading group".into()));
        }
        let (n, m) = (self.dim(), other.dim());
        let g = &self.group;
        let degrees = (0..n * m).map(|k| g.mul(self.degrees[k / m], other.degrees[k % m])).collect();
        let mut table = Vec::with_capacity(n * m * n * m);
        for i in 0..n * m {
            for j in 0..n * m {
                let (a1, b1, a2, b2) = (i / m, i % m, j / m, j % m);
                let mut p = Vec::new();
                for (ka, ca) in self.basis_product(a1, a2) {
                    for (kb, cb) in other.basis_product(b1, b2) {
                        p.push((ka * m + kb, ca * cb));
                    }
                }
                p.sort_by_key(|(k, _)| *k);
                table.push(p);
            }
        }
        let mut unit = zero_vec(n * m, 1);
        for (i, x) in self.unit.iter().enumerate() {
            for (j, y) in other.unit.iter().enumerate() {
                unit[i * m + j] = x * y;
            }
        }
        let labels = (0..n * m).map(|k| format!("{}*{}", self.labels[k / m], other.labels[k % m])).collect();
        Ok(GradedAlgebra::from_table(g.clone(), degrees, unit, table).with_labels(labels))
    }

    /// Full matrix algebra End(U) for a graded vector space U with the given degrees
    /// (elementary grading: deg E_ij = deg u_i · deg u_j⁻¹).
    pub fn elementary_matrix_algebra(group: Arc<FinAbGroup>, udeg: &[Elem]) -> GradedAlgebra {
        let u = udeg.len();
        let degrees = (0..u * u).map(|k| group.div(udeg[k / u], udeg[k % u])).collect();
        let mut table = Vec::with_capacity(u.pow(4));
        for i in 0..u * u {
            for j in 0..u * u {
                let (a, b, c, d) = (i / u, i % u, j / u, j % u);
                table.push(if b == c { vec![(a * u + d, CycScalar::one(1))] } else { Vec::new() });
            }
        }
        let mut unit = zero_vec(u * u, 1);
        for i in 0..u {
            unit[i * u + i] = CycScalar::one(1);
        }
        let labels = (0..u * u).map(|k| format!("E{}{}", k / u, k % u)).collect();
        GradedAlgebra::from_table(group, degrees, unit, table).with_labels(labels)
    }
}

pub fn vec_eq(a: &[CycScalar], b: &[CycScalar]) -> bool {
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| x == y)
}

fn prod_eq(a: &Product, b: &Product) -> bool {
    let mut x: Vec<&(usize, CycScalar)> = a.iter().filter(|(_, c)| !c.is_zero()).collect();
    let mut y: Vec<&(usize, CycScalar)> = b.iter().filter(|(_, c)| !c.is_zero()).collect();
    x.sort_by_key(|(k, _)| *k);
    y.sort_by_key(|(k, _)| *k);
    x.len() == y.len() && x.iter().zip(y.iter()).all(|(p, q)| p.0 == q.0 && p.1 == q.1)
}

/// Smallest unital subalgebra of End(F^n) containing the generators.
pub fn span_closure(n: usize, generators: &[Matrix]) -> Vec<Matrix> {
    let order = generators.iter().fold(1, |a, m| lcm(a, m.order()));
    let id = Matrix::identity(n, order);
    let mut ech = Echelon::new(n * n);
    ech.insert(id.entries().to_vec());
    let mut basis = vec![id];
    let mut queue: Vec<usize> = vec![0];
    while let Some(i) = queue.pop() {
        for g in generators {
            let p = g.mul(&basis[i]);
            if ech.insert(p.entries().to_vec()) {
                basis.push(p);
                queue.push(basis.len() - 1);
            }
        }
    }
    basis
}

/// Kernel of the trace form tr(xy) on the span of `basis` (the Jacobson radical in characteristic 0).
pub fn radical_via_trace(basis: &[Matrix]) -> Vec<Matrix> {
    radical_of_pairing(basis, basis)
}

/// {x ∈ span(xs) : tr(x y) = 0 for all y ∈ ys}
pub fn radical_of_pairing(xs: &[Matrix], ys: &[Matrix]) -> Vec<Matrix> {
    if xs.is_empty() {
        return Vec::new();
    }
    let gram = Matrix::from_fn(ys.len(), xs.len(), |i, j| trace_of_product(&xs[j], &ys[i]));
    gram.kernel()
        .into_iter()
        .map(|c| {
            let mut acc = Matrix::zeros(xs[0].rows(), xs[0].cols(), 1);
            for (k, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    acc = acc.add(&xs[k].scale(x));
                }
            }
            acc
        })
        .collect()
}

/// tr(XY) without forming the product.
pub fn trace_of_product(x: &Matrix, y: &Matrix) -> CycScalar {
    let mut s = CycScalar::zero(lcm(x.order(), y.order()));
    for i in 0..x.rows() {
        for k in 0..x.cols() {
            let a = x.get(i, k);
            if a.is_zero() {
                continue;
            }
            let b = y.get(k, i);
            if !b.is_zero() {
                s = &s + &(a * b);
            }
        }
    }
    s
}

pub(crate) fn combine(basis: &[Vector], coeffs: &[CycScalar]) -> Vector {
    let n = basis.first().map_or(0, |v| v.len());
    let mut out = zero_vec(n, 1);
    for (b, c) in basis.iter().zip(coeffs.iter()) {
        axpy(&mut out, c, b);
    }
    out
}
