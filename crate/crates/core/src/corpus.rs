//! Seeded random instances: W = U ⊗ D over End(U) ⊗ D, for a twisted group algebra D = 𝔽^σT
//! with T ≤ G and an elementarily graded U. Every such W is G-graded simple with C(W) ≅ D.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abgroup::{Elem, FinAbGroup, Subgroup};
use crate::arith::Matrix;
use crate::error::Result;
use crate::galg::{twisted_group_algebra_in, GradedAlgebra};
use crate::gmod::GradedModule;
use crate::invars::{random_bilinear_cocycle, random_group};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub max_order: usize,
    pub max_dim: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { max_order: 8, max_dim: 12 }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub index: usize,
    pub group: Arc<FinAbGroup>,
    /// Support of D.
    pub support: Subgroup,
    pub division: GradedAlgebra,
    /// Degrees of the basis of U.
    pub udeg: Vec<Elem>,
    pub module: GradedModule,
}

impl Instance {
    pub fn describe(&self) -> String {
        format!(
            "#{} G={:?} |T|={} dim U={} dim W={}",
            self.index,
            self.group.factors(),
            self.support.order(),
            self.udeg.len(),
            self.module.dim()
        )
    }
}

/// The module U ⊗ D over End(U) ⊗ D.
pub fn tensor_module(g: &Arc<FinAbGroup>, udeg: &[Elem], d: &GradedAlgebra) -> Result<GradedModule> {
    let e = GradedAlgebra::elementary_matrix_algebra(g.clone(), udeg);
    let r = Arc::new(e.tensor(d)?);
    let (u, m) = (udeg.len(), d.dim());
    let left: Vec<Matrix> = (0..m).map(|b| d.left_mult(&d.basis_vector(b))).collect();
    let mut action = Vec::with_capacity(u * u * m);
    for a in 0..u * u {
        let ea = Matrix::from_fn(u, u, |i, j| {
            if i == a / u && j == a % u {
                crate::arith::CycScalar::one(1)
            } else {
                crate::arith::CycScalar::zero(1)
            }
        });
        for l in &left {
            action.push(ea.kron(l));
        }
    }
    let degrees = (0..u * m).map(|k| g.mul(udeg[k / m], d.degree(k % m))).collect();
    GradedModule::new_g(r, degrees, action)
}

pub fn random_instance<R: Rng>(rng: &mut R, index: usize, cfg: CorpusConfig) -> Result<Instance> {
    let group = random_group(rng, cfg.max_order);
    let subgroups: Vec<Subgroup> = Subgroup::all(&group).into_iter().filter(|s| s.order() <= cfg.max_dim).collect();
    let support = subgroups.choose(rng).expect("the trivial subgroup qualifies").clone();
    let (abs, _) = support.as_abstract();
    let sigma = random_bilinear_cocycle(rng, &abs)?;
    let division = twisted_group_algebra_in(&support, &sigma)?;
    let kmax = (cfg.max_dim / support.order()).clamp(1, 3);
    let k = rng.gen_range(1..=kmax);
    let udeg: Vec<Elem> = (0..k).map(|_| Elem(rng.gen_range(0..group.order()))).collect();
    let module = tensor_module(&group, &udeg, &division)?;
    Ok(Instance { index, group, support, division, udeg, module })
}

/// `count` instances from `seed`; each instance depends only on (seed, index).
pub fn corpus(seed: u64, count: usize, cfg: CorpusConfig) -> Result<Vec<Instance>> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(i as u64));
            random_instance(&mut rng, i, cfg)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::{graded_centralizer, is_graded_simple};

    #[test]
    fn instances_are_valid_and_graded_simple() {
        for inst in corpus(3, 12, CorpusConfig::default()).unwrap() {
            let w = &inst.module;
            assert!(w.algebra().validate().is_valid(), "{}", inst.describe());
            assert!(w.validate().is_valid(), "{}", inst.describe());
            assert!(w.dim() <= 12);
            assert!(is_graded_simple(w).is_simple(), "{}", inst.describe());
            assert_eq!(graded_centralizer(w).dim(), inst.support.order());
        }
    }

    #[test]
    fn deterministic() {
        let a = corpus(5, 4, CorpusConfig::default()).unwrap();
        let b = corpus(5, 4, CorpusConfig::default()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.module.degrees(), y.module.degrees());
            assert_eq!(x.module.actions(), y.module.actions());
        }
    }
}
