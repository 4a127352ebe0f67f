use std::collections::HashMap;
use std::sync::Arc;

use crate::abgroup::{Character, Elem, QuotientMap};
use crate::arith::matrix::Echelon;
use crate::arith::{CycScalar, Matrix};
use crate::error::{Error, Result};
use crate::gmod::{graded_centralizer, is_graded_simple, GradedMap, GradedModule, Simplicity};

/// L(V) = ⊕_q V_{q̄} ⊗ q for a refinement ρ: G → Q of the grading π: G → Ḡ of V.
///
/// With ρ the identity this is the usual loop module L_π(V).
#[derive(Clone, Debug)]
pub struct LoopModule {
    module: GradedModule,
    source: GradedModule,
    down: Arc<QuotientMap>,
    index: Vec<(Elem, usize)>,
    pos: HashMap<(Elem, usize), usize>,
}

impl LoopModule {
    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn into_module(self) -> GradedModule {
        self.module
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    /// Q → Ḡ.
    pub fn down(&self) -> &Arc<QuotientMap> {
        &self.down
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    /// Basis index of v_i ⊗ q.
    pub fn position(&self, q: Elem, i: usize) -> Option<usize> {
        self.pos.get(&(q, i)).copied()
    }

    /// (q, i) for basis index k.
    pub fn label(&self, k: usize) -> (Elem, usize) {
        self.index[k]
    }

    /// Elements of Q lying over the identity of Ḡ (H, or H/K in the relative case).
    pub fn kernel_elements(&self) -> Vec<Elem> {
        self.down.kernel().elements().to_vec()
    }

    /// δ_h: v ⊗ q ↦ v ⊗ qh.
    pub fn delta(&self, h: Elem) -> Matrix {
        let q = self.module.grading_group();
        let n = self.dim();
        let mut m = Matrix::zeros(n, n, 1);
        for (k, &(g, i)) in self.index.iter().enumerate() {
            let t = self.pos[&(q.mul(g, h), i)];
            m.set(t, k, CycScalar::one(1));
        }
        m
    }

    /// The graded subfield span{δ_h}, with degrees.
    pub fn subfield(&self) -> Vec<(Elem, Matrix)> {
        self.kernel_elements().into_iter().map(|h| (h, self.delta(h))).collect()
    }
}

/// L_π(V) over the full group G.
pub fn loop_module(v: &GradedModule) -> LoopModule {
    let id = Arc::new(QuotientMap::identity(v.algebra().group()));
    loop_to(v, id).expect("identity refines every grading")
}

/// Loop of V relative to a grading ρ: G → Q that refines the grading of V.
pub fn loop_to(v: &GradedModule, rho: Arc<QuotientMap>) -> Result<LoopModule> {
    let down = Arc::new(QuotientMap::induced(&rho, v.grading())?);
    let q = rho.target().clone();
    let mut index = Vec::new();
    let mut pos = HashMap::new();
    for g in q.elements() {
        for i in v.component(down.apply(g)) {
            pos.insert((g, i), index.len());
            index.push((g, i));
        }
    }
    let n = index.len();
    let a = v.algebra();
    let action = (0..a.dim())
        .map(|x| {
            let d = rho.apply(a.degree(x));
            let rv = v.action(x);
            let mut m = Matrix::zeros(n, n, 1);
            for (c, &(g, i)) in index.iter().enumerate() {
                let g2 = q.mul(d, g);
                for k in 0..v.dim() {
                    let e = rv.get(k, i);
                    if !e.is_zero() {
                        m.set(pos[&(g2, k)], c, e.clone());
                    }
                }
            }
            m
        })
        .collect();
    let degrees = index.iter().map(|&(g, _)| g).collect();
    let module = GradedModule::new(a.clone(), rho, degrees, action)?;
    Ok(LoopModule { module, source: v.clone(), down, index, pos })
}

/// F_π: push the grading of W through π (whose kernel must contain that of W's grading).
pub fn forgetful(w: &GradedModule, pi: &Arc<QuotientMap>) -> Result<GradedModule> {
    let push = QuotientMap::induced(w.grading(), pi)?;
    let degrees = w.degrees().iter().map(|d| push.apply(*d)).collect();
    w.regrade(pi.clone(), degrees)
}

/// Hom^Ḡ_e(F_π(W), V) and Hom^G_e(W, L_π(V)) dimensions (adjunction check).
pub fn adjunction_dims(w: &GradedModule, v: &GradedModule) -> Result<(usize, usize)> {
    let fw = forgetful(w, v.grading())?;
    let l = loop_module(v);
    let left = crate::gmod::intertwiners(&fw, v, v.grading_group().identity()).len();
    let right = crate::gmod::intertwiners(w, l.module(), w.grading_group().identity()).len();
    Ok((left, right))
}

/// v ⊗ g ↦ (v ⊗ gK) ⊗ g from L_π(V) to L_{π'}(L_{π''}(V)), for K = ker π'.
pub fn loop_transitivity_iso(v: &GradedModule, inner: Arc<QuotientMap>) -> Result<(GradedModule, GradedModule, GradedMap)> {
    if !inner.kernel().is_subgroup_of(v.grading().kernel()) {
        return Err(Error::Precondition("K must lie in H".into()));
    }
    let direct = loop_module(v);
    let middle = loop_to(v, inner.clone())?;
    let outer = loop_module(middle.module());
    let n = direct.dim();
    let mut m = Matrix::zeros(n, n, 1);
    for k in 0..n {
        let (g, i) = direct.label(k);
        let mid = middle.position(inner.apply(g), i).expect("basis element of the inner loop");
        let t = outer.position(g, mid).expect("basis element of the outer loop");
        m.set(t, k, CycScalar::one(1));
    }
    let map = GradedMap::new(v.algebra().group().identity(), m);
    if !map.is_isomorphism(direct.module(), outer.module()) {
        return Err(Error::Violation("transitivity map is not a graded isomorphism".into()));
    }
    Ok((direct.into_module(), outer.into_module(), map))
}

/// Φ(v ⊗ ξ(ḡ)h) = χ(h) φ(v) ⊗ ξ(ḡ)h and Ψ(δ_h) = χ(h) δ_h, for φ: V^χ → V'.
pub fn loop_on_morphism(
    l: &LoopModule,
    l2: &LoopModule,
    phi: &Matrix,
    chi: Character,
) -> Result<(GradedMap, Vec<(Elem, CycScalar)>)> {
    let pi = l.source().grading();
    let g = pi.source();
    if l.dim() != l2.dim() {
        return Err(Error::DimensionMismatch("loops of different dimension".into()));
    }
    let n = l.dim();
    let mut big = Matrix::zeros(n, n, 1);
    for k in 0..n {
        let (x, i) = l.label(k);
        let h = pi.kernel_part(x);
        let s = chi.value(g, h);
        for r in 0..phi.rows() {
            let e = phi.get(r, i);
            if !e.is_zero() {
                let t = l2.position(x, r).ok_or_else(|| Error::Violation("φ is not degree preserving".into()))?;
                big.set(t, k, e * &s);
            }
        }
    }
    let map = GradedMap::new(g.identity(), big);
    if !map.is_isomorphism(l.module(), l2.module()) {
        return Err(Error::Violation("Φ is not a graded module isomorphism".into()));
    }
    let psi: Vec<(Elem, CycScalar)> = l.kernel_elements().into_iter().map(|h| (h, chi.value(g, h))).collect();
    for (h, c) in &psi {
        // Φ(w δ_h) = Φ(w) Ψ(δ_h)
        if map.matrix.mul(&l.delta(*h)) != l2.delta(*h).scale(c).mul(&map.matrix) {
            return Err(Error::Violation("Φ does not intertwine the subfields".into()));
        }
    }
    Ok((map, psi))
}

/// Both sides of the identity L_π(C^gr(V)) = centralizer of L_π(𝔽1) in C^gr(L_π(V)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerLoopReport {
    pub loop_of_centralizer: usize,
    pub centralizer_of_subfield: usize,
    pub equal: bool,
    pub self_centralized: bool,
}

pub fn centralizer_loop_identity(v: &GradedModule) -> CentralizerLoopReport {
    let l = loop_module(v);
    let g = v.algebra().group().clone();
    let pi = v.grading().clone();
    let n = l.dim();
    let cv = graded_centralizer(v);
    let mut lhs = Echelon::new(n * n);
    for (d, dm) in cv.maps.iter().enumerate() {
        let qd = cv.algebra.degree(d);
        for x in pi.fiber(qd) {
            // v ⊗ g₁ ↦ (v·d) ⊗ g₁x
            let mut m = Matrix::zeros(n, n, 1);
            for k in 0..n {
                let (g1, i) = l.label(k);
                for r in 0..v.dim() {
                    let e = dm.get(r, i);
                    if !e.is_zero() {
                        m.set(l.position(g.mul(g1, x), r).unwrap(), k, e.clone());
                    }
                }
            }
            lhs.insert(m.entries().to_vec());
        }
    }
    let cl = graded_centralizer(l.module());
    let deltas: Vec<Matrix> = l.subfield().into_iter().map(|(_, m)| m).collect();
    let comms: Vec<Vec<Matrix>> = cl.maps.iter().map(|m| deltas.iter().map(|d| m.mul(d).sub(&d.mul(m))).collect()).collect();
    let k = cl.maps.len();
    let rows = deltas.len() * n * n;
    let sys = Matrix::from_fn(rows, k, |r, c| {
        let (di, e) = (r / (n * n), r % (n * n));
        comms[c][di].entries()[e].clone()
    });
    let mut rhs = Echelon::new(n * n);
    for coeffs in sys.kernel() {
        rhs.insert(cl.matrix_of(&coeffs).entries().to_vec());
    }
    let contained = lhs.basis().iter().all(|b| rhs.contains(b));
    let equal = contained && lhs.rank() == rhs.rank();
    CentralizerLoopReport {
        loop_of_centralizer: lhs.rank(),
        centralizer_of_subfield: rhs.rank(),
        equal,
        self_centralized: rhs.rank() == pi.kernel().order(),
    }
}

/// Whether the G-pregrading associated to the Ḡ-grading of V is thin, decided by graded
/// simplicity of the loop.
pub fn is_thin_associated(v: &GradedModule) -> Result<bool> {
    match is_graded_simple(v) {
        Simplicity::Simple(_) => {}
        Simplicity::NotSimple(_) => return Err(Error::Precondition("V is not graded simple".into())),
        Simplicity::Indeterminate(s) => return Err(Error::Indeterminate(s)),
    }
    match is_graded_simple(loop_module(v).module()) {
        Simplicity::Simple(_) => Ok(true),
        Simplicity::NotSimple(_) => Ok(false),
        Simplicity::Indeterminate(s) => Err(Error::Indeterminate(s)),
    }
}
