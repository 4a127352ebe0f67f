use std::sync::Arc;

use rand::Rng;

use crate::abgroup::{Bicharacter, Elem, FinAbGroup, QuotientMap, Subgroup};
use crate::error::{Error, Result};
use crate::galg::{
    center, commutation_bicharacter, radical_via_trace, support_subgroup, twisted_group_algebra, Cocycle, GradedAlgebra,
};

/// Support, center support, commutation bicharacter and a maximal isotropic subgroup of a
/// graded division algebra with split center.
#[derive(Clone, Debug)]
pub struct DivisionAlgebraProfile {
    pub support: Subgroup,
    pub center_support: Subgroup,
    pub beta: Bicharacter,
    /// π: G → G/Z.
    pub quotient: Arc<QuotientMap>,
    /// T/Z inside G/Z.
    pub reduced_support: Subgroup,
    /// β' on T/Z.
    pub reduced_beta: Bicharacter,
    pub maximal_isotropic: Subgroup,
    pub schur_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileChecks {
    pub alternating: bool,
    pub radical_is_center: bool,
    pub order_identity: bool,
    pub index_squared: bool,
    pub reduced_nondegenerate: bool,
    /// D simple (ungraded) exactly when Z is trivial.
    pub simple_iff_central: bool,
}

impl ProfileChecks {
    pub fn holds(&self) -> bool {
        self.alternating
            && self.radical_is_center
            && self.order_identity
            && self.index_squared
            && self.reduced_nondegenerate
            && self.simple_iff_central
    }
}

impl DivisionAlgebraProfile {
    /// |T|·|Z| = |H|².
    pub fn order_identity(&self) -> bool {
        self.support.order() * self.center_support.order() == self.maximal_isotropic.order().pow(2)
    }
}

/// Push an alternating bicharacter through π: G → G/Z, where Z is its radical.
pub fn reduce_bicharacter(beta: &Bicharacter, pi: &Arc<QuotientMap>) -> Result<(Subgroup, Bicharacter)> {
    let t = beta.support();
    let q = pi.target().clone();
    let imgs: Vec<Elem> = t.elements().iter().map(|x| pi.apply(*x)).collect();
    let tbar = Subgroup::generated(&q, &imgs);
    let lift = |y: Elem| *t.elements().iter().find(|x| pi.apply(**x) == y).expect("element of the image");
    let (m, mbar) = (beta.modulus(), q.exponent().max(1));
    let mut bad = false;
    let reduced = Bicharacter::from_fn(&tbar, |a, b| {
        let e = beta.exp(lift(a), lift(b));
        if (e * mbar) % m != 0 {
            bad = true;
            return 0;
        }
        e * mbar / m
    });
    if bad {
        return Err(Error::Violation("bicharacter values do not fit the quotient exponent".into()));
    }
    Ok((tbar, reduced))
}

pub fn profile(d: &GradedAlgebra) -> Result<DivisionAlgebraProfile> {
    profile_with_checks(d).map(|(p, _)| p)
}

pub fn profile_with_checks(d: &GradedAlgebra) -> Result<(DivisionAlgebraProfile, ProfileChecks)> {
    if !d.is_graded_division() {
        return Err(Error::Precondition("not a graded division algebra".into()));
    }
    let (t, beta) = commutation_bicharacter(d).map_err(|e| match e {
        Error::Precondition(m) => Error::FieldNotSplit(m),
        other => other,
    })?;
    let z = beta.radical();
    let zc = support_subgroup(d, &center(d))?;
    let pi = Arc::new(QuotientMap::new(&z));
    let (reduced_support, reduced_beta) = reduce_bicharacter(&beta, &pi)?;
    let h = beta
        .isotropic_subgroups(true)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Violation("no maximal isotropic subgroup".into()))?;
    let schur_index = h.order() / z.order();
    let semisimple = radical_via_trace(&(0..d.dim()).map(|i| d.left_mult(&d.basis_vector(i))).collect::<Vec<_>>()).is_empty();
    let simple = semisimple && center(d).dim() == 1;
    let p = DivisionAlgebraProfile {
        support: t.clone(),
        center_support: z.clone(),
        beta: beta.clone(),
        quotient: pi,
        reduced_support: reduced_support.clone(),
        reduced_beta: reduced_beta.clone(),
        maximal_isotropic: h,
        schur_index,
    };
    let checks = ProfileChecks {
        alternating: beta.is_alternating() && beta.is_bicharacter(),
        radical_is_center: z == zc,
        order_identity: p.order_identity(),
        index_squared: schur_index * schur_index == t.order() / z.order(),
        reduced_nondegenerate: reduced_beta.is_nondegenerate(),
        simple_iff_central: simple == z.is_trivial(),
    };
    Ok((p, checks))
}

/// Random group of order at most `max_order` as a product of cyclic factors.
pub fn random_group<R: Rng>(rng: &mut R, max_order: usize) -> Arc<FinAbGroup> {
    let mut factors = Vec::new();
    let mut order = 1usize;
    let choices = [2u64, 2, 2, 3, 4, 4, 5, 6, 8];
    for _ in 0..4 {
        let d = choices[rng.gen_range(0..choices.len())];
        if order * d as usize <= max_order {
            factors.push(d);
            order *= d as usize;
        }
    }
    if factors.is_empty() {
        factors.push(2.min(max_order.max(1) as u64));
    }
    Arc::new(FinAbGroup::new(factors).expect("positive factors"))
}

/// Cocycle σ(a,b) = ζ_m^{Σ_{i<j} k_ij a_i b_j · m/gcd(d_i,d_j)}, bilinear hence a cocycle.
pub fn random_bilinear_cocycle<R: Rng>(rng: &mut R, g: &Arc<FinAbGroup>) -> Result<Cocycle> {
    let f = g.factors().to_vec();
    let m = g.exponent();
    let r = f.len();
    let mut k = vec![vec![0u64; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let gd = num_integer::gcd(f[i], f[j]);
            k[i][j] = rng.gen_range(0..gd) * (m / gd);
        }
    }
    let gg = g.clone();
    Cocycle::from_bilinear(g.clone(), m, move |a, b| {
        let (ca, cb) = (gg.coords(a), gg.coords(b));
        let mut s = 0u64;
        for i in 0..r {
            for j in i + 1..r {
                s = (s + ca[i] * cb[j] % m * k[i][j]) % m;
            }
        }
        s
    })
}

/// A random twisted group algebra 𝔽^σG, a graded division algebra.
pub fn random_division_algebra<R: Rng>(rng: &mut R, max_order: usize) -> Result<GradedAlgebra> {
    let g = random_group(rng, max_order);
    let s = random_bilinear_cocycle(rng, &g)?;
    Ok(twisted_group_algebra(&s))
}
