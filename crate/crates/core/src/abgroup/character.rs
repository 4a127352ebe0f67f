//! Characters of finite abelian groups.
//!
//! Ĝ is identified with G through the coordinate pairing
//! χ_a(g) = Π ζ_{d_i}^{a_i g_i}, so a character is an element index read as an
//! exponent tuple. Subgroups of Ĝ are therefore subgroups of the same group.

use std::sync::Arc;

use super::group::{Elem, FinAbGroup, Subgroup};
use crate::arith::CycScalar;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Character(pub Elem);

impl Character {
    pub fn trivial() -> Self {
        Character(Elem(0))
    }

    pub fn from_exponents(g: &FinAbGroup, exps: &[i64]) -> Self {
        Character(g.elem(exps))
    }

    pub fn exponents(&self, g: &FinAbGroup) -> Vec<u64> {
        g.coords(self.0)
    }

    /// Exponent k with χ(g) = ζ_e^k, e = exponent(G).
    pub fn exp_at(&self, grp: &FinAbGroup, g: Elem) -> u64 {
        grp.pairing(self.0, g)
    }

    pub fn value(&self, grp: &FinAbGroup, g: Elem) -> CycScalar {
        let e = grp.exponent();
        CycScalar::zeta_pow(e, self.exp_at(grp, g) as i64)
    }

    pub fn value_inv(&self, grp: &FinAbGroup, g: Elem) -> CycScalar {
        let e = grp.exponent();
        CycScalar::zeta_pow(e, -(self.exp_at(grp, g) as i64))
    }

    pub fn mul(&self, grp: &FinAbGroup, o: Character) -> Character {
        Character(grp.mul(self.0, o.0))
    }

    pub fn inv(&self, grp: &FinAbGroup) -> Character {
        Character(grp.inv(self.0))
    }

    pub fn is_trivial_on(&self, s: &Subgroup) -> bool {
        let g = s.parent();
        s.elements().iter().all(|x| self.exp_at(g, *x) == 0)
    }

    pub fn agrees_on(&self, o: Character, s: &Subgroup) -> bool {
        let g = s.parent();
        s.elements().iter().all(|x| self.exp_at(g, *x) == o.exp_at(g, *x))
    }
}

/// All characters of G, identity first.
pub fn characters(g: &FinAbGroup) -> Vec<Character> {
    g.elements().map(Character).collect()
}

/// Annihilator of S on the dual side (the pairing is symmetric, so this serves both directions).
pub fn orthogonal_complement(s: &Subgroup) -> Subgroup {
    let g = s.parent();
    let elems: Vec<Elem> = g
        .elements()
        .filter(|x| s.elements().iter().all(|y| g.pairing(*x, *y) == 0))
        .collect();
    Subgroup::from_elements(g, &elems).expect("annihilator is a subgroup")
}

/// One character of G per element of Ĥ (least index in each H^⊥-coset), trivial first.
/// This is the canonical transversal of H^⊥ in Ĝ.
pub fn subgroup_characters(h: &Subgroup) -> Vec<Character> {
    let g = h.parent();
    let perp = orthogonal_complement(h);
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for x in g.elements() {
        if seen[x.0] {
            continue;
        }
        out.push(Character(x));
        for p in perp.elements() {
            seen[g.mul(x, *p).0] = true;
        }
    }
    out
}

/// All characters of G restricting to χ on H.
pub fn extend_character(chi: Character, h: &Subgroup) -> Vec<Character> {
    let g = h.parent();
    let perp = orthogonal_complement(h);
    let mut out: Vec<Character> = perp.elements().iter().map(|p| Character(g.mul(chi.0, *p))).collect();
    out.sort();
    out
}

/// Index of the element of `transversal` agreeing with χ on H, plus ϖ ∈ H^⊥ with χ = χ_k·ϖ.
pub fn decompose_in_transversal(chi: Character, transversal: &[Character], h: &Subgroup) -> (usize, Character) {
    let g = h.parent();
    for (k, t) in transversal.iter().enumerate() {
        if chi.agrees_on(*t, h) {
            return (k, Character(g.div(chi.0, t.0)));
        }
    }
    panic!("transversal does not cover Ĥ")
}

/// Dual group object (same invariant factors).
pub fn dual(g: &Arc<FinAbGroup>) -> Arc<FinAbGroup> {
    g.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z6_values_are_sixth_roots() {
        let g = FinAbGroup::cyclic(6);
        let chars = characters(&g);
        assert_eq!(chars[0], Character::trivial());
        for c in &chars {
            for x in g.elements() {
                let v = c.value(&g, x);
                assert!(v.pow(6).unwrap().is_one());
            }
        }
        // a faithful character takes a primitive 6th root value at the generator
        let v = chars[1].value(&g, Elem(1));
        assert_eq!(v.as_root_of_unity(), Some((1, 6)));
    }

    #[test]
    fn complements() {
        let g = Arc::new(FinAbGroup::new(vec![2, 2]).unwrap());
        let h = Subgroup::generated(&g, &[g.elem(&[1, 0])]);
        assert_eq!(orthogonal_complement(&h).order(), 2);
        assert!(orthogonal_complement(&Subgroup::whole(&g)).is_trivial());
        assert_eq!(orthogonal_complement(&Subgroup::trivial(&g)).order(), 4);
    }

    #[test]
    fn extension_from_2z4() {
        let g = Arc::new(FinAbGroup::cyclic(4));
        let h = Subgroup::generated(&g, &[Elem(2)]);
        let chi = Character(Elem(1)); // χ(2) = ζ₄² = -1
        assert_eq!(chi.value(&g, Elem(2)), CycScalar::from_int(-1, 4));
        let ext = extend_character(chi, &h);
        assert_eq!(ext.len(), 2);
        let vals: Vec<CycScalar> = ext.iter().map(|c| c.value(&g, Elem(1))).collect();
        let i = CycScalar::zeta_pow(4, 1);
        assert!(vals.contains(&i) && vals.contains(&(-i.clone())));
    }

    #[test]
    fn transversal_covers() {
        let g = Arc::new(FinAbGroup::new(vec![2, 4]).unwrap());
        for h in Subgroup::all(&g) {
            let t = subgroup_characters(&h);
            assert_eq!(t.len(), h.order());
            assert_eq!(t[0], Character::trivial());
        }
    }
}
