use std::collections::HashMap;

use super::algebra::{vec_eq, GradedAlgebra};
use crate::abgroup::{subgroup_characters, Bicharacter, Character, Elem, Subgroup};
use crate::arith::matrix::{vec_scale, zero_vec, Echelon, Vector};
use crate::arith::{CycScalar, Matrix, Rational};
use crate::error::{Error, Result};

/// Homogeneous elements of a graded algebra spanning a graded subalgebra.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub basis: Vec<Vector>,
    pub degrees: Vec<Elem>,
}

impl GradedSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn support(&self) -> Vec<Elem> {
        let mut s = self.degrees.clone();
        s.sort();
        s.dedup();
        s
    }

    pub fn component(&self, g: Elem) -> Vec<&Vector> {
        self.basis.iter().zip(self.degrees.iter()).filter(|(_, d)| **d == g).map(|(v, _)| v).collect()
    }
}

/// Solve for the elements of A_t commuting with every generator of A, for each t.
pub fn center(a: &GradedAlgebra) -> GradedSubspace {
    let gens: Vec<Vector> = a.generators().iter().map(|&i| a.basis_vector(i)).collect();
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    for t in a.support() {
        let comp = a.component(t);
        let k = comp.len();
        // columns: commutator [x_c, g] for each component basis element, stacked over generators
        let mut rows: Vec<Vector> = Vec::new();
        let cols: Vec<Vector> = comp
            .iter()
            .map(|&c| {
                let x = a.basis_vector(c);
                let mut col = Vec::new();
                for g in &gens {
                    let l = a.mul(&x, g);
                    let r = a.mul(g, &x);
                    col.extend(l.iter().zip(r.iter()).map(|(p, q)| p - q));
                }
                col
            })
            .collect();
        if cols.is_empty() {
            continue;
        }
        let m = cols[0].len();
        for i in 0..m {
            let row: Vector = cols.iter().map(|c| c[i].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
        let ker = if rows.is_empty() {
            (0..k).map(|i| {
                let mut v = zero_vec(k, 1);
                v[i] = CycScalar::one(1);
                v
            }).collect()
        } else {
            Matrix::from_rows(rows).expect("rectangular").kernel()
        };
        for v in ker {
            let mut z = zero_vec(a.dim(), 1);
            for (j, c) in comp.iter().enumerate() {
                z[*c] = v[j].clone();
            }
            basis.push(z);
            degrees.push(t);
        }
    }
    GradedSubspace { basis, degrees }
}

/// Support of a graded subspace as a subgroup (errors if not closed).
pub fn support_subgroup(a: &GradedAlgebra, s: &GradedSubspace) -> Result<Subgroup> {
    Subgroup::from_elements(a.group(), &s.support())
}

/// For a graded subalgebra whose components on `h` are one-dimensional and spanned by invertible
/// elements, choose c_h for each cyclic factor generator normalized by c^d = 1 and take ordered
/// monomials. `pick(t)` supplies a nonzero element of degree t.
pub fn monomial_basis(
    a: &GradedAlgebra,
    h: &Subgroup,
    mut pick: impl FnMut(Elem) -> Option<Vector>,
) -> Result<Vec<(Elem, Vector)>> {
    let dec = h.cyclic_decomposition();
    let grp = h.parent().clone();
    let mut gens: Vec<Vector> = Vec::new();
    for (t, d) in &dec {
        let x = pick(*t).ok_or_else(|| Error::Precondition(format!("no element of degree {}", grp.fmt_elem(*t))))?;
        let p = a.pow(&x, *d);
        let lambda = scalar_multiple_of_unit(a, &p)
            .ok_or_else(|| Error::Precondition(format!("power of degree-{} element is not a scalar", grp.fmt_elem(*t))))?;
        if lambda.is_zero() {
            return Err(Error::Precondition("homogeneous element is nilpotent".into()));
        }
        let root = lambda.kth_root(*d)?;
        gens.push(vec_scale(&x, &root.inv()?));
    }
    let (abs, emb) = h.as_abstract();
    let mut out = Vec::with_capacity(h.order());
    let mut index: HashMap<Elem, Vector> = HashMap::new();
    for x in abs.elements() {
        let coords = abs.coords(x);
        let mut v = a.unit().clone();
        for (c, g) in coords.iter().zip(gens.iter()) {
            for _ in 0..*c {
                v = a.mul(&v, g);
            }
        }
        index.insert(emb[x.0], v);
    }
    for t in h.elements() {
        out.push((*t, index.remove(t).expect("every element reached")));
    }
    Ok(out)
}

/// λ with p = λ·1, if any.
pub fn scalar_multiple_of_unit(a: &GradedAlgebra, p: &[CycScalar]) -> Option<CycScalar> {
    let u = a.unit();
    let k = u.iter().position(|x| !x.is_zero())?;
    let lambda = p[k].div(&u[k]).ok()?;
    if vec_eq(&vec_scale(u, &lambda), p) {
        Some(lambda)
    } else {
        None
    }
}

/// Rescaled basis {c_h} of ⊕_{h∈H} A_h with c_{h₁}c_{h₂} = c_{h₁h₂}.
pub fn normalize_subfield_basis(a: &GradedAlgebra, h: &Subgroup) -> Result<Vec<(Elem, Vector)>> {
    for t in h.elements() {
        let comp = a.component(*t);
        if comp.len() != 1 {
            return Err(Error::Precondition(format!(
                "component of degree {} has dimension {}",
                a.group().fmt_elem(*t),
                comp.len()
            )));
        }
    }
    let basis = monomial_basis(a, h, |t| Some(a.basis_vector(a.component(t)[0])))?;
    check_group_law(a, h, &basis)?;
    Ok(basis)
}

/// Same, for a subalgebra given inside `a` by one homogeneous element per degree.
pub fn normalize_elements(a: &GradedAlgebra, h: &Subgroup, elems: &HashMap<Elem, Vector>) -> Result<Vec<(Elem, Vector)>> {
    let basis = monomial_basis(a, h, |t| elems.get(&t).cloned())?;
    check_group_law(a, h, &basis)?;
    Ok(basis)
}

fn check_group_law(a: &GradedAlgebra, h: &Subgroup, basis: &[(Elem, Vector)]) -> Result<()> {
    let g = h.parent();
    let look: HashMap<Elem, &Vector> = basis.iter().map(|(t, v)| (*t, v)).collect();
    for (s, x) in basis {
        for (t, y) in basis {
            if !vec_eq(&a.mul(x, y), look[&g.mul(*s, *t)]) {
                return Err(Error::Precondition("subalgebra is not commutative".into()));
            }
        }
    }
    Ok(())
}

/// ε_χ = (1/|Z|) Σ_z χ(z)⁻¹ c_z over χ ∈ Ẑ, trivial character first.
pub fn primitive_central_idempotents(a: &GradedAlgebra) -> Result<Vec<(Character, Vector)>> {
    let c = center(a);
    let z = support_subgroup(a, &c)?;
    let mut elems = HashMap::new();
    for t in z.elements() {
        let comp = c.component(*t);
        if comp.len() != 1 {
            return Err(Error::FieldNotSplit(format!(
                "center component of degree {} has dimension {}",
                a.group().fmt_elem(*t),
                comp.len()
            )));
        }
        elems.insert(*t, comp[0].clone());
    }
    let basis = normalize_elements(a, &z, &elems).map_err(|e| match e {
        Error::Precondition(m) => Error::FieldNotSplit(m),
        other => other,
    })?;
    idempotents_from_basis(a, &z, &basis)
}

/// Character-formula idempotents of a split group-algebra basis {c_z}.
pub fn idempotents_from_basis(a: &GradedAlgebra, z: &Subgroup, basis: &[(Elem, Vector)]) -> Result<Vec<(Character, Vector)>> {
    let grp = z.parent();
    let inv_n = Rational::new(1, z.order() as i64);
    let mut out = Vec::new();
    for chi in subgroup_characters(z) {
        let mut e = zero_vec(a.dim(), 1);
        for (t, v) in basis {
            let w = vec_scale(v, &chi.value_inv(grp, *t).scale(&inv_n));
            for (x, y) in e.iter_mut().zip(w.iter()) {
                *x = &*x + y;
            }
        }
        out.push((chi, e));
    }
    Ok(out)
}

/// Dimension of the span of the given vectors.
pub fn span_dim(vs: &[Vector]) -> usize {
    let n = vs.first().map_or(0, |v| v.len());
    let mut e = Echelon::new(n);
    for v in vs {
        e.insert(v.clone());
    }
    e.rank()
}

/// Support T and commutation factor β with x_s x_t = β(s,t) x_t x_s, for an algebra whose
/// nonzero components are one-dimensional and spanned by invertible elements.
pub fn commutation_bicharacter(a: &GradedAlgebra) -> Result<(Subgroup, Bicharacter)> {
    let grp = a.group().clone();
    let supp = a.support();
    for t in &supp {
        if a.component(*t).len() != 1 {
            return Err(Error::Precondition(format!(
                "component of degree {} has dimension {}",
                grp.fmt_elem(*t),
                a.component(*t).len()
            )));
        }
    }
    let t = Subgroup::from_elements(&grp, &supp).map_err(|_| Error::Precondition("support is not a subgroup".into()))?;
    let e = grp.exponent();
    let mut table = HashMap::new();
    for s in t.elements() {
        for u in t.elements() {
            let x = a.basis_vector(a.component(*s)[0]);
            let y = a.basis_vector(a.component(*u)[0]);
            let xy = a.mul(&x, &y);
            let yx = a.mul(&y, &x);
            let k = xy.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::Precondition("zero divisor".into()))?;
            let ratio = xy[k].div(&yx[k])?;
            if !vec_eq(&vec_scale(&yx, &ratio), &xy) {
                return Err(Error::Precondition("homogeneous elements do not commute up to a scalar".into()));
            }
            let (num, m) = ratio
                .as_root_of_unity()
                .ok_or_else(|| Error::Violation("commutation factor is not a root of unity".into()))?;
            if e % m != 0 {
                return Err(Error::Violation("commutation factor order does not divide the exponent".into()));
            }
            table.insert((*s, *u), num * (e / m) % e);
        }
    }
    let b = Bicharacter::from_fn(&t, |x, y| table[&(x, y)]);
    Ok((t, b))
}
