use super::hom::{centralizer_e, graded_centralizer, ungraded_centralizer};
use super::module::GradedModule;
use crate::arith::cyclo::{rational_sqrt_in, SqrtOutcome};
use crate::arith::matrix::{vec_is_zero, zero_vec, Echelon, Vector};
use crate::arith::{CycScalar, Matrix, Rational, SolveOutcome};
use crate::error::{Error, Result};
use crate::galg::radical_via_trace;

/// How a positive simplicity verdict was certified.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// The algebra generated by the action (and the grading projections) is all of End(W).
    FullImage { image_dim: usize },
    /// Semisimple image whose commutant is the quadratic field of the given discriminant.
    QuadraticField { discriminant: Rational, image_dim: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Simplicity {
    Simple(Certificate),
    /// A proper nonzero (graded) submodule, given by a basis.
    NotSimple(Vec<Vector>),
    Indeterminate(String),
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple(_))
    }

    pub fn is_not_simple(&self) -> bool {
        matches!(self, Simplicity::NotSimple(_))
    }

    pub fn witness(&self) -> Option<&[Vector]> {
        match self {
            Simplicity::NotSimple(w) => Some(w),
            _ => None,
        }
    }
}

/// dim of span{ρ(x_i) restricted to the columns `cols`}.
fn image_rank(w: &GradedModule, cols: &[usize]) -> usize {
    let n = w.dim();
    let mut ech = Echelon::new(n * cols.len());
    for a in w.actions() {
        let mut v = Vec::with_capacity(n * cols.len());
        for r in 0..n {
            for &c in cols {
                v.push(a.get(r, c).clone());
            }
        }
        ech.insert(v);
        if ech.rank() == n * cols.len() {
            break;
        }
    }
    ech.rank()
}

/// Graded simplicity: no proper nonzero graded submodule.
pub fn is_graded_simple(w: &GradedModule) -> Simplicity {
    decide(w, true)
}

/// Plain simplicity of the underlying module.
pub fn is_simple_ungraded(w: &GradedModule) -> Simplicity {
    decide(w, false)
}

fn decide(w: &GradedModule, graded: bool) -> Simplicity {
    let n = w.dim();
    if n == 0 {
        return Simplicity::NotSimple(Vec::new());
    }
    let blocks: Vec<Vec<usize>> = if graded {
        w.support().into_iter().map(|q| w.component(q)).collect()
    } else {
        vec![(0..n).collect()]
    };
    let mut total = 0;
    let mut full = true;
    for cols in &blocks {
        let r = image_rank(w, cols);
        total += r;
        full &= r == n * cols.len();
    }
    if full {
        return Simplicity::Simple(Certificate::FullImage { image_dim: total });
    }
    fallback(w, graded, &blocks)
}

fn fallback(w: &GradedModule, graded: bool, blocks: &[Vec<usize>]) -> Simplicity {
    let n = w.dim();
    // the image algebra B: ρ(x_i)P_q, or ρ(x_i) when ungraded
    let mut ech = Echelon::new(n * n);
    let mut b: Vec<Matrix> = Vec::new();
    for a in w.actions() {
        for cols in blocks {
            let m = Matrix::from_fn(n, n, |r, c| if cols.contains(&c) { a.get(r, c).clone() } else { CycScalar::zero(1) });
            if ech.insert(m.entries().to_vec()) {
                b.push(m);
            }
        }
    }
    let rad = radical_via_trace(&b);
    if !rad.is_empty() {
        let spanning: Vec<Vector> = rad.iter().flat_map(|j| j.columns()).filter(|v| !vec_is_zero(v)).collect();
        return Simplicity::NotSimple(homogeneous_basis(w, &spanning, graded));
    }
    let end = if graded { centralizer_e(w) } else { ungraded_centralizer(w) };
    let image_dim = b.len();
    if end.len() == 1 {
        return Simplicity::Simple(Certificate::FullImage { image_dim });
    }
    for c in &end {
        let k = c.kernel();
        if !k.is_empty() {
            return Simplicity::NotSimple(homogeneous_basis(w, &k, graded));
        }
    }
    // elements with a quadratic minimal polynomial over ℚ: split iff the discriminant is a square
    let id = Matrix::identity(n, 1);
    let mut candidates: Vec<Matrix> = end.clone();
    for i in 0..end.len() {
        for j in i + 1..end.len() {
            candidates.push(end[i].add(&end[j]));
        }
    }
    let mut field_disc = None;
    for c in &candidates {
        let Some((a, b)) = quadratic_relation(c) else { continue };
        let disc = &(&a * &a) + &b.mul_int(4);
        match rational_sqrt_in(&disc, w.field_order()) {
            Some(SqrtOutcome::Root(s)) => {
                let lambda = (&CycScalar::from_rational(a, 1) + &s).scale(&Rational::new(1, 2));
                let k = c.sub(&id.scale(&lambda)).kernel();
                if !k.is_empty() {
                    return Simplicity::NotSimple(homogeneous_basis(w, &k, graded));
                }
            }
            Some(SqrtOutcome::Absent) => {
                field_disc.get_or_insert(disc);
            }
            None => {}
        }
    }
    if end.len() == 2 {
        if let Some(discriminant) = field_disc {
            let commutative = end[0].mul(&end[1]) == end[1].mul(&end[0]);
            if commutative {
                return Simplicity::Simple(Certificate::QuadraticField { discriminant, image_dim });
            }
        }
    }
    Simplicity::Indeterminate(format!("commutant of dimension {} has no visible zero divisor", end.len()))
}

/// (a, b) rational with c² = a·c + b·1, when c is not scalar.
fn quadratic_relation(c: &Matrix) -> Option<(Rational, Rational)> {
    let n = c.rows();
    let id = Matrix::identity(n, 1);
    let mut e = Echelon::new(n * n);
    e.insert(id.entries().to_vec());
    if !e.insert(c.entries().to_vec()) {
        return None;
    }
    let c2 = c.mul(c);
    let sys = Matrix::from_columns(n * n, &[c.entries().to_vec(), id.entries().to_vec()]);
    match sys.solve(c2.entries()) {
        SolveOutcome::Solution { particular, .. } => Some((particular[0].as_rational()?, particular[1].as_rational()?)),
        SolveOutcome::Inconsistent { .. } => None,
    }
}

/// Basis of span(vs) made of homogeneous vectors; for graded submodules the span is
/// the sum of its projections to components.
fn homogeneous_basis(w: &GradedModule, vs: &[Vector], graded: bool) -> Vec<Vector> {
    let mut ech = Echelon::new(w.dim());
    let mut out = Vec::new();
    for v in vs {
        let parts: Vec<Vector> = if graded { w.homogeneous_parts(v).into_iter().map(|(_, p)| p).collect() } else { vec![v.clone()] };
        for p in parts {
            if ech.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    out
}

/// Find r ∈ R with r·v_i = w_i, given homogeneous v_i independent over the centralizer.
/// Returns r in algebra coordinates.
pub fn solve_density(v: &GradedModule, vs: &[Vector], ws: &[Vector]) -> Result<Vector> {
    if vs.len() != ws.len() {
        return Err(Error::DimensionMismatch("sources and targets".into()));
    }
    if vs.iter().any(|x| v.homogeneous_degree(x).is_none()) {
        return Err(Error::Precondition("source vectors must be nonzero and homogeneous".into()));
    }
    let c = graded_centralizer(v);
    let n = v.dim();
    let mut ech = Echelon::new(n);
    for x in vs {
        for m in &c.maps {
            ech.insert(m.mul_vec(x));
        }
    }
    if ech.rank() != vs.len() * c.dim() {
        return Err(Error::Precondition("vectors are dependent over the centralizer".into()));
    }
    // independent subset of ρ(x_i)
    let mut sel = Vec::new();
    let mut img = Echelon::new(n * n);
    for (i, a) in v.actions().iter().enumerate() {
        if img.insert(a.entries().to_vec()) {
            sel.push(i);
        }
    }
    let cols: Vec<Vector> = sel
        .iter()
        .map(|&i| vs.iter().flat_map(|x| v.action(i).mul_vec(x)).collect())
        .collect();
    let rhs: Vector = ws.iter().flat_map(|x| x.iter().cloned()).collect();
    let sys = Matrix::from_columns(n * vs.len(), &cols);
    match sys.solve(&rhs) {
        SolveOutcome::Solution { particular, .. } => {
            let mut r = zero_vec(v.algebra().dim(), 1);
            for (k, &i) in sel.iter().enumerate() {
                r[i] = particular[k].clone();
            }
            Ok(r)
        }
        SolveOutcome::Inconsistent { .. } => Err(Error::Inconsistent("no algebra element realizes the targets".into())),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::abgroup::Elem;
    use crate::fixtures;
    use crate::galg::GradedAlgebra;

    #[test]
    fn pauli_regular_is_graded_simple() {
        let w = fixtures::pauli_module();
        assert!(is_graded_simple(&w).is_simple());
        match is_simple_ungraded(&w) {
            Simplicity::NotSimple(sub) => assert_eq!(sub.len(), 2),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn doubled_module_has_witness() {
        let w = fixtures::pauli_module();
        let ww = w.direct_sum(&w).unwrap();
        let s = is_graded_simple(&ww);
        let sub = s.witness().expect("witness");
        assert!(!sub.is_empty() && sub.len() < 8);
        // the witness is a graded submodule
        let spun = ww.spin_all(sub);
        assert_eq!(spun.len(), sub.len());
        assert!(sub.iter().all(|x| ww.homogeneous_degree(x).is_some()));
    }

    #[test]
    fn m2rz2_is_graded_simple_over_q() {
        let w = fixtures::m2rz2_module();
        match is_graded_simple(&w) {
            Simplicity::Simple(Certificate::QuadraticField { discriminant, .. }) => {
                assert_eq!(discriminant, Rational::from_int(-4));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn natural_and_regular_m2() {
        let g = Arc::new(crate::abgroup::FinAbGroup::trivial());
        let a = Arc::new(GradedAlgebra::elementary_matrix_algebra(g, &[Elem(0), Elem(0)]));
        let col = fixtures::column_module(&a, &[Elem(0), Elem(0)]);
        assert!(is_simple_ungraded(&col).is_simple());
        let reg = GradedModule::regular(a);
        assert!(is_simple_ungraded(&reg).is_not_simple());
    }

    #[test]
    fn density_examples() {
        let v = fixtures::pauli_natural();
        let e1 = vec![CycScalar::one(1), CycScalar::zero(1)];
        let e2 = vec![CycScalar::zero(1), CycScalar::one(1)];
        let r = solve_density(&v, &[e1.clone()], &[e2.clone()]).unwrap();
        assert_eq!(v.act(&r).mul_vec(&e1), e2);
        let r1 = solve_density(&v, &[e1.clone()], &[e1.clone()]).unwrap();
        assert_eq!(v.act(&r1).mul_vec(&e1), e1);
        assert!(matches!(solve_density(&v, &[e1.clone(), e1.clone()], &[e1.clone(), e2]), Err(Error::Precondition(_))));
    }
}
