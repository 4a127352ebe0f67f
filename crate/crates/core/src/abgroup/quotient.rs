use std::sync::Arc;

use super::group::{Elem, FinAbGroup, Subgroup};
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Surjective homomorphism π: G → Ḡ with kernel H, canonical section and transversal.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: Arc<FinAbGroup>,
    target: Arc<FinAbGroup>,
    kernel: Subgroup,
    table: Vec<Elem>,
    section: Vec<Elem>,
}

impl PartialEq for QuotientMap {
    fn eq(&self, o: &Self) -> bool {
        *self.source == *o.source && *self.target == *o.target && self.table == o.table
    }
}

impl Eq for QuotientMap {}

impl QuotientMap {
    pub fn identity(g: &Arc<FinAbGroup>) -> Self {
        let table: Vec<Elem> = g.elements().collect();
        QuotientMap {
            source: g.clone(),
            target: g.clone(),
            kernel: Subgroup::trivial(g),
            section: table.clone(),
            table,
        }
    }

    /// π: G → G/H with Ḡ renormalized to invariant factor form.
    pub fn new(h: &Subgroup) -> Self {
        let g = h.parent().clone();
        if h.is_trivial() {
            return Self::identity(&g);
        }
        let k = g.rank();
        let mut rel: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut r = vec![0i64; k];
                r[i] = g.factors()[i] as i64;
                r
            })
            .collect();
        for x in h.canonical_generators() {
            rel.push(g.coords(x).into_iter().map(|c| c as i64).collect());
        }
        let snf = smith_normal_form(&rel, k);
        let keep: Vec<usize> = (0..k).filter(|&i| snf.diag[i] != 1).collect();
        let target = Arc::new(FinAbGroup::new(keep.iter().map(|&i| snf.diag[i] as u64).collect()).unwrap());
        let table: Vec<Elem> = g
            .elements()
            .map(|x| {
                let c = g.coords(x);
                let y: Vec<i64> = keep
                    .iter()
                    .map(|&j| (0..k).map(|i| c[i] as i64 * snf.v[i][j]).sum::<i64>())
                    .collect();
                target.elem(&y)
            })
            .collect();
        Self::from_table(g, target, table).expect("quotient map is a surjective homomorphism")
    }

    /// Build from an explicit table; checks homomorphism and surjectivity.
    pub fn from_table(source: Arc<FinAbGroup>, target: Arc<FinAbGroup>, table: Vec<Elem>) -> Result<Self> {
        if table.len() != source.order() {
            return Err(Error::Invalid("quotient table length".into()));
        }
        for a in source.elements() {
            for b in source.standard_generators() {
                if table[source.mul(a, b).0] != target.mul(table[a.0], table[b.0]) {
                    return Err(Error::Invalid("map is not a homomorphism".into()));
                }
            }
        }
        let mut section = vec![None; target.order()];
        for x in source.elements() {
            let t = table[x.0].0;
            if section[t].is_none() {
                section[t] = Some(x);
            }
        }
        let section: Option<Vec<Elem>> = section.into_iter().collect();
        let section = section.ok_or_else(|| Error::Invalid("map is not surjective".into()))?;
        let kern: Vec<Elem> = source.elements().filter(|x| table[x.0] == target.identity()).collect();
        let kernel = Subgroup::from_elements(&source, &kern)?;
        Ok(QuotientMap { source, target, kernel, table, section })
    }

    /// π'': G/K → G/H induced by π' : G → G/K and π : G → G/H with K ≤ H.
    pub fn induced(inner: &QuotientMap, outer: &QuotientMap) -> Result<Self> {
        if !inner.kernel.is_subgroup_of(&outer.kernel) {
            return Err(Error::Precondition("inner kernel must lie in outer kernel".into()));
        }
        let table = inner.target.elements().map(|x| outer.apply(inner.section(x))).collect();
        Self::from_table(inner.target.clone(), outer.target.clone(), table)
    }

    pub fn source(&self) -> &Arc<FinAbGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinAbGroup> {
        &self.target
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn apply(&self, g: Elem) -> Elem {
        self.table[g.0]
    }

    /// ξ(ḡ): least element of the coset.
    pub fn section(&self, q: Elem) -> Elem {
        self.section[q.0]
    }

    /// Θ = ξ(Ḡ), indexed by Ḡ.
    pub fn transversal(&self) -> &[Elem] {
        &self.section
    }

    pub fn is_identity(&self) -> bool {
        self.kernel.is_trivial() && *self.source == *self.target && self.table.iter().enumerate().all(|(i, e)| e.0 == i)
    }

    /// Elements of the coset π⁻¹(q).
    pub fn fiber(&self, q: Elem) -> Vec<Elem> {
        let s = self.section(q);
        self.kernel.elements().iter().map(|h| self.source.mul(s, *h)).collect()
    }

    /// Decompose g = ξ(π(g))·h, returning h ∈ H.
    pub fn kernel_part(&self, g: Elem) -> Elem {
        self.source.div(g, self.section(self.apply(g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_mod_2z4() {
        let g = Arc::new(FinAbGroup::cyclic(4));
        let h = Subgroup::generated(&g, &[g.elem(&[2])]);
        let q = QuotientMap::new(&h);
        assert_eq!(q.target().factors(), &[2]);
        assert_eq!(q.transversal(), &[Elem(0), Elem(1)]);
    }

    #[test]
    fn extremes() {
        let g = Arc::new(FinAbGroup::new(vec![2, 4]).unwrap());
        let q = QuotientMap::new(&Subgroup::trivial(&g));
        assert_eq!(q.transversal().len(), 8);
        let q = QuotientMap::new(&Subgroup::whole(&g));
        assert_eq!(q.transversal(), &[Elem(0)]);
        assert_eq!(q.target().order(), 1);
    }

    #[test]
    fn sections_and_cosets() {
        let g = Arc::new(FinAbGroup::new(vec![2, 4]).unwrap());
        for h in Subgroup::all(&g) {
            let q = QuotientMap::new(&h);
            assert_eq!(q.target().order() * h.order(), g.order());
            for x in q.target().elements() {
                assert_eq!(q.apply(q.section(x)), x);
            }
            let mut seen = std::collections::HashSet::new();
            for t in q.transversal() {
                assert!(seen.insert(q.apply(*t)));
            }
            for w in q.target().factors().windows(2) {
                assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}
