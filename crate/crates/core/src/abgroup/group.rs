use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::snf::smith_normal_form;
use crate::arith::cyclo::lcm;
use crate::error::{Error, Result};

/// Element of a finite abelian group, stored as its index in lexicographic coordinate order.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Elem(pub usize);

/// ℤ_{d₁} × … × ℤ_{d_k}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    factors: Vec<u64>,
    strides: Vec<usize>,
}

impl FinAbGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|d| *d == 0) {
            return Err(Error::Invalid("invariant factors must be positive".into()));
        }
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        Ok(FinAbGroup { factors, strides })
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n]).unwrap()
    }

    pub fn trivial() -> Self {
        Self::new(vec![]).unwrap()
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |a, d| lcm(a, *d))
    }

    pub fn identity(&self) -> Elem {
        Elem(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order()).map(Elem)
    }

    pub fn coords(&self, g: Elem) -> Vec<u64> {
        self.factors
            .iter()
            .zip(self.strides.iter())
            .map(|(d, s)| ((g.0 / s) as u64) % d)
            .collect()
    }

    pub fn elem(&self, coords: &[i64]) -> Elem {
        assert_eq!(coords.len(), self.factors.len(), "coordinate length");
        let mut idx = 0usize;
        for ((c, d), s) in coords.iter().zip(self.factors.iter()).zip(self.strides.iter()) {
            idx += (c.rem_euclid(*d as i64) as usize) * s;
        }
        Elem(idx)
    }

    pub fn elem_checked(&self, coords: &[i64]) -> Result<Elem> {
        if coords.len() != self.factors.len() {
            return Err(Error::Invalid(format!(
                "element {coords:?} has {} coordinates, group has rank {}",
                coords.len(),
                self.factors.len()
            )));
        }
        Ok(self.elem(coords))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let mut idx = 0usize;
        for (d, s) in self.factors.iter().zip(self.strides.iter()) {
            let d = *d as usize;
            let x = (a.0 / s) % d + (b.0 / s) % d;
            idx += (x % d) * s;
        }
        Elem(idx)
    }

    pub fn inv(&self, a: Elem) -> Elem {
        let mut idx = 0usize;
        for (d, s) in self.factors.iter().zip(self.strides.iter()) {
            let d = *d as usize;
            let x = (a.0 / s) % d;
            idx += ((d - x) % d) * s;
        }
        Elem(idx)
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let c: Vec<i64> = self.coords(a).into_iter().map(|x| x as i64 * k).collect();
        self.elem(&c)
    }

    pub fn order_of(&self, a: Elem) -> u64 {
        self.coords(a)
            .iter()
            .zip(self.factors.iter())
            .fold(1, |acc, (c, d)| lcm(acc, d / num_integer::gcd(*c, *d)))
    }

    /// Generators of the cyclic factors.
    pub fn standard_generators(&self) -> Vec<Elem> {
        (0..self.rank())
            .map(|i| {
                let mut c = vec![0i64; self.rank()];
                c[i] = 1;
                self.elem(&c)
            })
            .collect()
    }

    pub fn fmt_elem(&self, g: Elem) -> String {
        let c: Vec<String> = self.coords(g).iter().map(|x| x.to_string()).collect();
        format!("({})", c.join(","))
    }

    /// Pairing ⟨χ, g⟩ as an exponent of ζ_e, e = exponent; χ is read through the same coordinates.
    pub fn pairing(&self, chi: Elem, g: Elem) -> u64 {
        let e = self.exponent();
        let a = self.coords(chi);
        let b = self.coords(g);
        let mut s = 0u64;
        for ((x, y), d) in a.iter().zip(b.iter()).zip(self.factors.iter()) {
            s = (s + x * y % d * (e / d)) % e;
        }
        s
    }

    /// Direct product self × other; elements (a, b) ↦ index.
    pub fn product(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        FinAbGroup::new(f).unwrap()
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup{:?}", self.factors)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Fully enumerated subgroup.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FinAbGroup>,
    generators: Vec<Elem>,
    elements: Vec<Elem>,
    position: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, o: &Self) -> bool {
        *self.parent == *o.parent && self.elements == o.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.elements.iter().map(|g| self.parent.fmt_elem(*g)).collect();
        write!(f, "Subgroup{{{}}}", e.join(" "))
    }
}

impl Subgroup {
    pub fn generated(parent: &Arc<FinAbGroup>, gens: &[Elem]) -> Self {
        let n = parent.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut elements = vec![Elem(0)];
        let mut frontier = vec![Elem(0)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = parent.mul(x, *g);
                if !member[y.0] {
                    member[y.0] = true;
                    elements.push(y);
                    frontier.push(y);
                }
            }
        }
        elements.sort();
        Self::from_sorted(parent.clone(), gens.to_vec(), elements)
    }

    fn from_sorted(parent: Arc<FinAbGroup>, generators: Vec<Elem>, elements: Vec<Elem>) -> Self {
        let mut position = vec![usize::MAX; parent.order()];
        for (i, e) in elements.iter().enumerate() {
            position[e.0] = i;
        }
        Subgroup { parent, generators, elements, position }
    }

    /// Subgroup from an explicit element set; fails unless closed.
    pub fn from_elements(parent: &Arc<FinAbGroup>, elems: &[Elem]) -> Result<Self> {
        let s = Self::generated(parent, elems);
        if s.order() != elems.iter().collect::<HashSet<_>>().len() {
            return Err(Error::Invalid("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    pub fn trivial(parent: &Arc<FinAbGroup>) -> Self {
        Self::generated(parent, &[])
    }

    pub fn whole(parent: &Arc<FinAbGroup>) -> Self {
        Self::generated(parent, &parent.standard_generators())
    }

    pub fn parent(&self) -> &Arc<FinAbGroup> {
        &self.parent
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.position[g.0] != usize::MAX
    }

    /// Position of g in the sorted element list.
    pub fn position(&self, g: Elem) -> Option<usize> {
        let p = self.position[g.0];
        (p != usize::MAX).then_some(p)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|g| other.contains(*g))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut g = self.generators.clone();
        g.extend_from_slice(&other.generators);
        Subgroup::generated(&self.parent, &g)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let e: Vec<Elem> = self.elements.iter().copied().filter(|g| other.contains(*g)).collect();
        Subgroup::from_sorted(self.parent.clone(), e.clone(), e)
    }

    pub fn with_element(&self, g: Elem) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.push(g);
        Subgroup::generated(&self.parent, &gens)
    }

    /// Membership bitmask key (for deduplication).
    pub fn key(&self) -> Vec<Elem> {
        self.elements.clone()
    }

    /// A generating set chosen canonically from the element list.
    pub fn canonical_generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut cur = Subgroup::trivial(&self.parent);
        // prefer elements of large order, ties broken by index
        let mut cand = self.elements.clone();
        cand.sort_by_key(|g| (std::cmp::Reverse(self.parent.order_of(*g)), *g));
        for g in cand {
            if !cur.contains(g) {
                gens.push(g);
                cur = cur.with_element(g);
            }
            if cur.order() == self.order() {
                break;
            }
        }
        gens
    }

    /// Decomposition into cyclic factors: generators h_i with orders d_i such that
    /// the subgroup is the internal direct product of the ⟨h_i⟩ and d₁ | d₂ | ….
    pub fn cyclic_decomposition(&self) -> Vec<(Elem, u64)> {
        let g = &self.parent;
        let gens = self.canonical_generators();
        let s = gens.len();
        if s == 0 {
            return Vec::new();
        }
        let k = g.rank();
        // A = [coords(gens) as columns | diag(d)]
        let mut a = vec![vec![0i64; s + k]; k];
        for (j, x) in gens.iter().enumerate() {
            for (i, c) in g.coords(*x).into_iter().enumerate() {
                a[i][j] = c as i64;
            }
        }
        for i in 0..k {
            a[i][s + i] = g.factors()[i] as i64;
        }
        let snf = smith_normal_form(&a, s + k);
        let rank = snf.diag.iter().filter(|d| **d != 0).count();
        let rel: Vec<Vec<i64>> = (rank..s + k).map(|j| (0..s).map(|i| snf.v[i][j]).collect()).collect();
        let rsnf = smith_normal_form(&rel, s);
        let mut out = Vec::new();
        for (i, d) in rsnf.diag.iter().enumerate() {
            if *d == 1 {
                continue;
            }
            let mut h = g.identity();
            for (j, x) in gens.iter().enumerate() {
                h = g.mul(h, g.pow(*x, rsnf.v_inv[i][j]));
            }
            assert_eq!(g.order_of(h), *d as u64, "cyclic decomposition order");
            out.push((h, *d as u64));
        }
        debug_assert_eq!(out.iter().map(|(_, d)| *d as usize).product::<usize>(), self.order());
        out
    }

    /// The subgroup as an abstract group with an injective map into the parent.
    pub fn as_abstract(&self) -> (Arc<FinAbGroup>, Vec<Elem>) {
        let dec = self.cyclic_decomposition();
        let abs = Arc::new(FinAbGroup::new(dec.iter().map(|(_, d)| *d).collect()).unwrap());
        let p = &self.parent;
        let embed = abs
            .elements()
            .map(|a| {
                abs.coords(a)
                    .iter()
                    .zip(dec.iter())
                    .fold(p.identity(), |acc, (c, (h, _))| p.mul(acc, p.pow(*h, *c as i64)))
            })
            .collect();
        (abs, embed)
    }

    /// All subgroups of G, deterministic order (by order, then elements).
    pub fn all(parent: &Arc<FinAbGroup>) -> Vec<Subgroup> {
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        let triv = Subgroup::trivial(parent);
        seen.insert(triv.key());
        let mut out = vec![triv];
        let mut i = 0;
        while i < out.len() {
            let s = out[i].clone();
            for g in parent.elements() {
                if !s.contains(g) {
                    let t = s.with_element(g);
                    if seen.insert(t.key()) {
                        out.push(t);
                    }
                }
            }
            i += 1;
        }
        out.sort_by(|a, b| a.order().cmp(&b.order()).then(a.elements.cmp(&b.elements)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_indexing() {
        let g = FinAbGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g.coords(Elem(4)), vec![1, 1]);
        assert_eq!(g.elem(&[1, 2]), Elem(5));
        assert_eq!(g.mul(Elem(5), Elem(5)), g.elem(&[0, 1]));
        assert_eq!(g.inv(g.elem(&[1, 1])), g.elem(&[1, 2]));
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.order_of(g.elem(&[1, 1])), 6);
    }

    #[test]
    fn subgroup_counts() {
        let g = Arc::new(FinAbGroup::new(vec![2, 2]).unwrap());
        assert_eq!(Subgroup::all(&g).len(), 5);
        let g = Arc::new(FinAbGroup::new(vec![2, 2, 2]).unwrap());
        assert_eq!(Subgroup::all(&g).len(), 16);
        let g = Arc::new(FinAbGroup::cyclic(12));
        assert_eq!(Subgroup::all(&g).len(), 6);
    }

    #[test]
    fn decomposition() {
        let g = Arc::new(FinAbGroup::new(vec![4, 4]).unwrap());
        for s in Subgroup::all(&g) {
            let dec = s.cyclic_decomposition();
            let (abs, emb) = s.as_abstract();
            assert_eq!(abs.order(), s.order());
            let img: HashSet<Elem> = emb.iter().copied().collect();
            assert_eq!(img.len(), s.order());
            assert!(img.iter().all(|x| s.contains(*x)));
            for w in dec.windows(2) {
                assert_eq!(w[1].1 % w[0].1, 0);
            }
        }
    }
}
