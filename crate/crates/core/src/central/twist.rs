use crate::abgroup::{Character, Elem};
use crate::arith::Matrix;
use crate::error::{Error, Result};
use crate::gmod::{GradedMap, GradedModule};

/// V^χ: r_g • v_k̄ = χ(g ξ(k̄) ξ(gk̄)⁻¹) r_g·v_k̄, with ξ the canonical section unless given.
pub fn twist_by_character(v: &GradedModule, chi: Character, section: Option<&[Elem]>) -> Result<GradedModule> {
    let pi = v.grading();
    let g = pi.source();
    let xi = section.unwrap_or_else(|| pi.transversal());
    if xi.len() != pi.target().order() || xi.iter().enumerate().any(|(q, s)| pi.apply(*s).0 != q) {
        return Err(Error::Invalid("not a section of the grading quotient".into()));
    }
    let a = v.algebra();
    let mut action = Vec::with_capacity(a.dim());
    for x in 0..a.dim() {
        let d = a.degree(x);
        let m = v.action(x);
        let mut out = m.clone();
        for r in 0..v.dim() {
            for c in 0..v.dim() {
                let e = m.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let h = g.div(g.mul(d, xi[v.degree(c).0]), xi[v.degree(r).0]);
                if pi.apply(h) != pi.target().identity() {
                    return Err(Error::Violation("action does not respect the grading".into()));
                }
                out.set(r, c, e * &chi.value(g, h));
            }
        }
        action.push(out);
    }
    v.with_action(action)
}

/// v_k̄ ↦ χ(ξ(k̄)) v_k̄, a graded isomorphism V^χ → V^{α_χ} when χ is a character of G.
pub fn twist_comparison_map(v: &GradedModule, chi: Character) -> GradedMap {
    let pi = v.grading();
    let g = pi.source();
    let n = v.dim();
    let mut m = Matrix::zeros(n, n, 1);
    for i in 0..n {
        m.set(i, i, chi.value(g, pi.section(v.degree(i))));
    }
    GradedMap::new(pi.target().identity(), m)
}
