use std::collections::HashSet;

use super::group::{Elem, Subgroup};
use crate::arith::CycScalar;
use crate::error::{Error, Result};

/// Bicharacter β: T × T → μ_m on a subgroup T, stored as exponents of ζ_m (m = exponent of the ambient group).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bicharacter {
    support: Subgroup,
    modulus: u64,
    table: Vec<u64>,
}

impl Bicharacter {
    pub fn from_fn(support: &Subgroup, mut f: impl FnMut(Elem, Elem) -> u64) -> Self {
        let m = support.parent().exponent();
        let n = support.order();
        let mut table = vec![0u64; n * n];
        for (i, a) in support.elements().iter().enumerate() {
            for (j, b) in support.elements().iter().enumerate() {
                table[i * n + j] = f(*a, *b) % m;
            }
        }
        Bicharacter { support: support.clone(), modulus: m, table }
    }

    /// From values on the canonical cyclic decomposition generators: `gen_values[i][j]` is the
    /// exponent (mod m) of β(h_i, h_j). Extended bimultiplicatively.
    pub fn from_generator_exponents(support: &Subgroup, gen_values: &[Vec<u64>]) -> Result<Self> {
        let dec = support.cyclic_decomposition();
        if gen_values.len() != dec.len() || gen_values.iter().any(|r| r.len() != dec.len()) {
            return Err(Error::DimensionMismatch("generator value matrix".into()));
        }
        let g = support.parent().clone();
        let m = g.exponent();
        // coordinates of each element in the decomposition
        let mut coords = std::collections::HashMap::new();
        let (abs, emb) = support.as_abstract();
        for a in abs.elements() {
            coords.insert(emb[a.0], abs.coords(a));
        }
        let b = Self::from_fn(support, |x, y| {
            let cx = &coords[&x];
            let cy = &coords[&y];
            let mut s = 0u64;
            for i in 0..dec.len() {
                for j in 0..dec.len() {
                    s = (s + cx[i] * cy[j] % m * gen_values[i][j]) % m;
                }
            }
            s
        });
        if !b.is_bicharacter() {
            return Err(Error::Invalid("generator values do not define a bicharacter".into()));
        }
        Ok(b)
    }

    pub fn support(&self) -> &Subgroup {
        &self.support
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exp(&self, a: Elem, b: Elem) -> u64 {
        let n = self.support.order();
        let i = self.support.position(a).expect("argument outside support");
        let j = self.support.position(b).expect("argument outside support");
        self.table[i * n + j]
    }

    pub fn value(&self, a: Elem, b: Elem) -> CycScalar {
        CycScalar::zeta_pow(self.modulus, self.exp(a, b) as i64)
    }

    pub fn is_bicharacter(&self) -> bool {
        let g = self.support.parent();
        let el = self.support.elements();
        let m = self.modulus;
        el.iter().all(|a| {
            el.iter().all(|b| {
                el.iter().all(|c| {
                    let ab = g.mul(*a, *b);
                    self.exp(ab, *c) == (self.exp(*a, *c) + self.exp(*b, *c)) % m
                        && self.exp(*c, ab) == (self.exp(*c, *a) + self.exp(*c, *b)) % m
                })
            })
        })
    }

    pub fn is_alternating(&self) -> bool {
        self.support.elements().iter().all(|t| self.exp(*t, *t) == 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|x| *x == 0)
    }

    /// {t : β(t, ·) ≡ 1}
    pub fn radical(&self) -> Subgroup {
        let el = self.support.elements();
        let r: Vec<Elem> = el.iter().copied().filter(|t| el.iter().all(|u| self.exp(*t, *u) == 0)).collect();
        Subgroup::from_elements(self.support.parent(), &r).expect("radical is a subgroup")
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_trivial()
    }

    pub fn is_isotropic(&self, k: &Subgroup) -> bool {
        k.elements().iter().all(|a| k.elements().iter().all(|b| self.exp(*a, *b) == 0))
    }

    /// {t ∈ T : β(t, k) = 1 ∀k ∈ K}
    pub fn perp(&self, k: &Subgroup) -> Subgroup {
        let el = self.support.elements();
        let r: Vec<Elem> = el.iter().copied().filter(|t| k.elements().iter().all(|x| self.exp(*t, *x) == 0)).collect();
        Subgroup::from_elements(self.support.parent(), &r).expect("perp is a subgroup")
    }

    /// All isotropic subgroups (or only the maximal ones), in a deterministic order.
    pub fn isotropic_subgroups(&self, maximal_only: bool) -> Result<Vec<Subgroup>> {
        if !self.is_alternating() {
            return Err(Error::Precondition("bicharacter is not alternating".into()));
        }
        let start = Subgroup::trivial(self.support.parent());
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        seen.insert(start.key());
        let mut all = vec![start];
        let mut i = 0;
        while i < all.len() {
            let k = all[i].clone();
            let p = self.perp(&k);
            for t in p.elements() {
                if !k.contains(*t) {
                    let k2 = k.with_element(*t);
                    if seen.insert(k2.key()) {
                        all.push(k2);
                    }
                }
            }
            i += 1;
        }
        let mut out: Vec<Subgroup> = if maximal_only {
            all.into_iter().filter(|k| self.perp(k) == *k).collect()
        } else {
            all
        };
        out.sort_by(|a, b| a.order().cmp(&b.order()).then(a.elements().cmp(b.elements())));
        Ok(out)
    }

    /// β̃: t ↦ β(t, ·)|_H as exponent vectors on H; returns the kernel.
    pub fn tilde_kernel(&self, h: &Subgroup) -> Subgroup {
        let el = self.support.elements();
        let r: Vec<Elem> = el.iter().copied().filter(|t| h.elements().iter().all(|x| self.exp(*t, *x) == 0)).collect();
        Subgroup::from_elements(self.support.parent(), &r).expect("kernel is a subgroup")
    }

    /// Whether t ↦ β(t,·)|_H is multiplicative.
    pub fn tilde_is_hom(&self, h: &Subgroup) -> bool {
        let g = self.support.parent();
        let el = self.support.elements();
        let m = self.modulus;
        el.iter().all(|a| {
            el.iter().all(|b| {
                let ab = g.mul(*a, *b);
                h.elements().iter().all(|x| self.exp(ab, *x) == (self.exp(*a, *x) + self.exp(*b, *x)) % m)
            })
        })
    }

    /// Restriction to a subgroup of the support.
    pub fn restrict(&self, k: &Subgroup) -> Bicharacter {
        Bicharacter::from_fn(k, |a, b| self.exp(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::FinAbGroup;
    use std::sync::Arc;

    fn pauli() -> Bicharacter {
        let g = Arc::new(FinAbGroup::new(vec![2, 2]).unwrap());
        let t = Subgroup::whole(&g);
        Bicharacter::from_fn(&t, |a, b| {
            let x = g.coords(a);
            let y = g.coords(b);
            (x[0] * y[1] + x[1] * y[0]) % 2
        })
    }

    #[test]
    fn pauli_isotropics() {
        let b = pauli();
        assert!(b.is_bicharacter() && b.is_alternating());
        assert!(b.radical().is_trivial());
        let m = b.isotropic_subgroups(true).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.iter().all(|k| k.order() == 2));
    }

    #[test]
    fn trivial_form() {
        let g = Arc::new(FinAbGroup::new(vec![2, 4]).unwrap());
        let b = Bicharacter::from_fn(&Subgroup::whole(&g), |_, _| 0);
        assert_eq!(b.radical().order(), 8);
        let m = b.isotropic_subgroups(true).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 8);
    }

    #[test]
    fn block_radical() {
        let g = Arc::new(FinAbGroup::new(vec![2, 2, 2, 2]).unwrap());
        let b = Bicharacter::from_fn(&Subgroup::whole(&g), |a, c| {
            let x = g.coords(a);
            let y = g.coords(c);
            (x[0] * y[1] + x[1] * y[0]) % 2
        });
        let r = b.radical();
        let want = Subgroup::generated(&g, &[g.elem(&[0, 0, 1, 0]), g.elem(&[0, 0, 0, 1])]);
        assert_eq!(r, want);
        for h in b.isotropic_subgroups(true).unwrap() {
            assert!(r.is_subgroup_of(&h));
            assert_eq!(16 * r.order(), h.order() * h.order());
            assert!(b.tilde_is_hom(&h));
            assert_eq!(b.tilde_kernel(&h), h);
        }
    }
}
