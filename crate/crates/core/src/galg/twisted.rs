use std::sync::Arc;

use super::algebra::GradedAlgebra;
use crate::abgroup::{Bicharacter, Elem, FinAbGroup, Subgroup};
use crate::arith::CycScalar;
use crate::error::{Error, Result};

/// 2-cocycle σ: T × T → 𝔽^×.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    group: Arc<FinAbGroup>,
    values: Vec<CycScalar>,
}

impl Cocycle {
    pub fn new(group: Arc<FinAbGroup>, values: Vec<CycScalar>) -> Result<Self> {
        let n = group.order();
        if values.len() != n * n {
            return Err(Error::DimensionMismatch(format!("cocycle needs {} values", n * n)));
        }
        let c = Cocycle { group, values };
        c.check()?;
        Ok(c)
    }

    pub fn from_fn(group: Arc<FinAbGroup>, mut f: impl FnMut(Elem, Elem) -> CycScalar) -> Result<Self> {
        let mut values = Vec::with_capacity(group.order() * group.order());
        for a in group.elements() {
            for b in group.elements() {
                values.push(f(a, b));
            }
        }
        Self::new(group, values)
    }

    pub fn trivial(group: Arc<FinAbGroup>) -> Self {
        let n = group.order();
        Cocycle { group, values: vec![CycScalar::one(1); n * n] }
    }

    /// σ(a, b) = ζ_m^{B(a,b)} for an exponent-valued bimultiplicative B.
    pub fn from_bilinear(group: Arc<FinAbGroup>, m: u64, b: impl Fn(Elem, Elem) -> u64) -> Result<Self> {
        Self::from_fn(group, |x, y| CycScalar::zeta_pow(m, (b(x, y) % m) as i64))
    }

    pub fn group(&self) -> &Arc<FinAbGroup> {
        &self.group
    }

    pub fn value(&self, a: Elem, b: Elem) -> &CycScalar {
        &self.values[a.0 * self.group.order() + b.0]
    }

    fn check(&self) -> Result<()> {
        let g = &self.group;
        let e = g.identity();
        for t in g.elements() {
            if self.value(t, t).is_zero() {
                return Err(Error::Invalid("cocycle value zero".into()));
            }
            if !self.value(e, t).is_one() || !self.value(t, e).is_one() {
                return Err(Error::Invalid("cocycle not normalized".into()));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                if self.value(a, b).is_zero() {
                    return Err(Error::Invalid("cocycle value zero".into()));
                }
                for c in g.elements() {
                    let l = self.value(a, b) * self.value(g.mul(a, b), c);
                    let r = self.value(b, c) * self.value(a, g.mul(b, c));
                    if l != r {
                        return Err(Error::Violation(format!(
                            "cocycle identity fails at ({}, {}, {})",
                            g.fmt_elem(a),
                            g.fmt_elem(b),
                            g.fmt_elem(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Commutation factor σ(a,b)/σ(b,a).
    pub fn commutator(&self, a: Elem, b: Elem) -> CycScalar {
        self.value(a, b).div(self.value(b, a)).expect("cocycle values are nonzero")
    }
}

/// 𝔽^σT with basis {c_t}, c_a c_b = σ(a,b) c_{ab}.
pub fn twisted_group_algebra(sigma: &Cocycle) -> GradedAlgebra {
    let g = sigma.group().clone();
    let n = g.order();
    let mut triples = Vec::with_capacity(n * n);
    for a in g.elements() {
        for b in g.elements() {
            triples.push((a.0, b.0, g.mul(a, b).0, sigma.value(a, b).clone()));
        }
    }
    let mut unit = vec![CycScalar::zero(1); n];
    unit[0] = CycScalar::one(1);
    let degrees: Vec<Elem> = g.elements().collect();
    let labels = degrees.iter().map(|t| format!("c{}", g.fmt_elem(*t))).collect();
    GradedAlgebra::new(g, degrees, unit, triples).expect("indices in range").with_labels(labels)
}

/// 𝔽^σT for T a subgroup of G, graded by G. `sigma` lives on the abstract group of `t`
/// (as returned by [`Subgroup::as_abstract`]).
pub fn twisted_group_algebra_in(t: &Subgroup, sigma: &Cocycle) -> Result<GradedAlgebra> {
    let (abs, emb) = t.as_abstract();
    if *abs != **sigma.group() {
        return Err(Error::Invalid("cocycle group does not match subgroup".into()));
    }
    let a = twisted_group_algebra(sigma);
    let parent = t.parent().clone();
    let labels = emb.iter().map(|x| format!("c{}", parent.fmt_elem(*x))).collect();
    Ok(a.regrade(parent, |x| emb[x.0]).with_labels(labels))
}

/// 𝔽A # 𝔽B: basis a⊗b graded by A×B, (a₁⊗b₁)(a₂⊗b₂) = β(b₁,a₂) a₁a₂⊗b₁b₂.
/// `beta` is a bicharacter on the whole of A×B; only its values on (B, A) are used.
pub fn smash_product(a: &Arc<FinAbGroup>, b: &Arc<FinAbGroup>, beta: &Bicharacter) -> Result<GradedAlgebra> {
    let p = Arc::new(a.product(b));
    if **beta.support().parent() != *p || beta.support().order() != p.order() {
        return Err(Error::Invalid("bicharacter must be defined on A×B".into()));
    }
    let nb = b.order();
    let split = |x: Elem| (Elem(x.0 / nb), Elem(x.0 % nb));
    let emb_a = |x: Elem| Elem(x.0 * nb);
    let emb_b = |y: Elem| y;
    let sigma = Cocycle::from_fn(p.clone(), |x, y| {
        let (_, b1) = split(x);
        let (a2, _) = split(y);
        beta.value(emb_b(b1), emb_a(a2))
    })?;
    let labels = p
        .elements()
        .map(|x| {
            let (u, v) = split(x);
            format!("{}#{}", a.fmt_elem(u), b.fmt_elem(v))
        })
        .collect();
    Ok(twisted_group_algebra(&sigma).with_labels(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Matrix;
    use crate::galg::algebra::Composition;

    fn z2() -> Arc<FinAbGroup> {
        Arc::new(FinAbGroup::cyclic(2))
    }

    #[test]
    fn group_algebra_is_commutative() {
        let g = Arc::new(FinAbGroup::new(vec![2, 3]).unwrap());
        let a = twisted_group_algebra(&Cocycle::trivial(g));
        assert!(a.validate().is_valid());
        assert!(a.is_commutative());
        assert_eq!(a.dim(), 6);
    }

    #[test]
    fn pauli_smash_is_matrix_algebra() {
        let (a, b) = (z2(), z2());
        let p = Arc::new(a.product(&b));
        let beta = Bicharacter::from_fn(&Subgroup::whole(&p), |x, y| {
            let u = p.coords(x);
            let v = p.coords(y);
            (u[0] * v[1] + u[1] * v[0]) % 2
        });
        let alg = smash_product(&a, &b, &beta).unwrap();
        assert_eq!(alg.dim(), 4);
        assert!(alg.validate().is_valid());
        assert!(!alg.is_commutative());
        // regular representation oracle: left multiplication matrices span all of M_4's
        // commutant-free part, i.e. the algebra is central simple of dim 4
        let mats: Vec<Matrix> = (0..4).map(|i| alg.left_mult(&alg.basis_vector(i))).collect();
        let closed = crate::galg::span_closure(4, &mats);
        assert_eq!(closed.len(), 4);
        assert!(crate::galg::radical_via_trace(&closed).is_empty());
        let c = crate::galg::center(&alg);
        assert_eq!(c.dim(), 1);
        // concrete 2x2 model reproduces the same structure constants
        let x = Matrix::from_ints(&[&[1, 0], &[0, -1]], 1);
        let y = Matrix::from_ints(&[&[0, 1], &[1, 0]], 1);
        let m = GradedAlgebra::from_matrices(
            p.clone(),
            &[Matrix::identity(2, 1), y.clone(), x.clone(), x.mul(&y)],
            vec![Elem(0), Elem(1), Elem(2), Elem(3)],
            Composition::Standard,
        )
        .unwrap();
        assert!(m.validate().is_valid());
    }

    #[test]
    fn trivial_smash_is_ground_field() {
        let t = Arc::new(FinAbGroup::trivial());
        let p = Arc::new(t.product(&t));
        let beta = Bicharacter::from_fn(&Subgroup::whole(&p), |_, _| 0);
        let alg = smash_product(&t, &t, &beta).unwrap();
        assert_eq!(alg.dim(), 1);
    }

    #[test]
    fn bad_cocycle_rejected() {
        let g = z2();
        let r = Cocycle::from_fn(g, |a, b| if a.0 == 1 && b.0 == 1 { CycScalar::from_int(2, 1) } else { CycScalar::from_int(3, 1) });
        assert!(r.is_err());
    }
}
