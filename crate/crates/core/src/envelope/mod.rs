//! Graded envelopes of ungraded simple modules: the inertia group K_V, the induced
//! G/Z-grading on End(V), a graded Wedderburn splitting of it, and the G-graded simple
//! module obtained by inducing the minimal graded left ideal back up to G.

use std::sync::Arc;

use crate::abgroup::{characters, orthogonal_complement, Character, Elem, QuotientMap, Subgroup};
use crate::arith::matrix::{Echelon, Vector};
use crate::arith::Matrix;
use crate::error::{Error, Result};
use crate::galg::algebra::combine;
use crate::galg::{Composition, GradedAlgebra};
use crate::gmod::{
    graded_centralizer, intertwiners_ungraded, is_graded_simple, is_simple_ungraded, Centralizer, GradedModule,
    Simplicity,
};
use crate::invars::inertia_group;
use crate::loopfun::{induce_default, InducedModule};

/// K_V with one intertwiner φ_χ: V → V^{α_χ} per χ ∈ K_V (unnormalized).
#[derive(Clone, Debug)]
pub struct Inertia {
    pub group: Subgroup,
    pub witnesses: Vec<(Character, Matrix)>,
}

impl Inertia {
    pub fn witness(&self, chi: Character) -> Option<&Matrix> {
        self.witnesses.iter().find(|(c, _)| *c == chi).map(|(_, m)| m)
    }
}

/// A graded subalgebra of End(V) given by homogeneous matrices, graded by the target of `quotient`.
#[derive(Clone, Debug)]
pub struct GradedMatrixAlgebra {
    pub algebra: GradedAlgebra,
    pub matrices: Vec<Matrix>,
    pub quotient: Arc<QuotientMap>,
    coords: Echelon,
}

impl GradedMatrixAlgebra {
    pub fn new(quotient: Arc<QuotientMap>, matrices: Vec<Matrix>, degrees: Vec<Elem>) -> Result<Self> {
        let algebra = GradedAlgebra::from_matrices(quotient.target().clone(), &matrices, degrees, Composition::Standard)?;
        let mut coords = Echelon::tracking(matrices.first().map_or(0, |m| m.rows() * m.cols()));
        for m in &matrices {
            coords.insert(m.entries().to_vec());
        }
        Ok(GradedMatrixAlgebra { algebra, matrices, quotient, coords })
    }

    /// Coordinates of a matrix in the homogeneous basis.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vector> {
        self.coords.coordinates(m.entries())
    }

    pub fn component_dims(&self) -> Vec<(Elem, usize)> {
        self.algebra.support().into_iter().map(|q| (q, self.algebra.component(q).len())).collect()
    }

    /// Products of basis elements land in the product degree.
    pub fn is_algebra_grading(&self) -> bool {
        let a = &self.algebra;
        let g = a.group();
        (0..a.dim()).all(|i| {
            (0..a.dim()).all(|j| {
                let d = g.mul(a.degree(i), a.degree(j));
                a.basis_product(i, j).iter().all(|(k, _)| a.degree(*k) == d)
            })
        })
    }

    /// ρ(R_g) ⊆ A_{π(g)} for a module whose action lands in this algebra.
    pub fn is_compatible_with(&self, v: &GradedModule) -> bool {
        let r = v.algebra();
        (0..r.dim()).all(|i| match self.coordinates(v.action(i)) {
            Some(c) => {
                let q = self.quotient.apply(r.degree(i));
                c.iter().enumerate().all(|(k, x)| x.is_zero() || self.algebra.degree(k) == q)
            }
            None => false,
        })
    }
}

fn require_simple(v: &GradedModule) -> Result<()> {
    match is_simple_ungraded(v) {
        Simplicity::Simple(_) => Ok(()),
        Simplicity::NotSimple(_) => Err(Error::Precondition("module is not simple".into())),
        Simplicity::Indeterminate(m) => Err(Error::Indeterminate(m)),
    }
}

/// K_V = {χ : V^{α_χ} ≅ V}, by testing every character of G.
pub fn inertia_of_simple(v: &GradedModule) -> Result<Inertia> {
    require_simple(v)?;
    let g = v.algebra().group().clone();
    let mut witnesses = Vec::new();
    for chi in characters(&g) {
        let t = v.twist_by_automorphism(chi);
        let hom = intertwiners_ungraded(v, &t);
        match hom.len() {
            0 => {}
            1 => witnesses.push((chi, hom.into_iter().next().expect("one map"))),
            _ => return Err(Error::FieldNotSplit("End(V) is larger than the field".into())),
        }
    }
    let elems: Vec<Elem> = witnesses.iter().map(|(c, _)| c.0).collect();
    let group = Subgroup::from_elements(&g, &elems).map_err(|_| Error::Violation("inertia is not a subgroup".into()))?;
    Ok(Inertia { group, witnesses })
}

/// Matrix of f ↦ φ f φ⁻¹ on row-major vec(f).
fn conjugation_operator(phi: &Matrix) -> Result<Matrix> {
    let inv = phi.inverse()?;
    let n = phi.rows();
    // vec(φ f φ⁻¹)[(r,c)] = Σ_{i,j} φ[r][i] f[i][j] φ⁻¹[j][c]
    Ok(Matrix::from_fn(n * n, n * n, |row, col| {
        let (r, c, i, j) = (row / n, row % n, col / n, col % n);
        phi.get(r, i) * inv.get(j, c)
    }))
}

/// End(V)_{gZ} = {f : φ_χ f φ_χ⁻¹ = χ(g) f for all χ ∈ K_V}, with Z = K_V^⊥.
pub fn grade_by_inertia(v: &GradedModule, inertia: &Inertia) -> Result<GradedMatrixAlgebra> {
    let g = v.algebra().group().clone();
    let z = orthogonal_complement(&inertia.group);
    let pz = Arc::new(QuotientMap::new(&z));
    let n = v.dim();
    let ops: Vec<(Character, Matrix)> = inertia
        .group
        .canonical_generators()
        .into_iter()
        .map(|c| {
            let chi = Character(c);
            let phi = inertia.witness(chi).ok_or_else(|| Error::Violation("missing inertia witness".into()))?;
            Ok((chi, conjugation_operator(phi)?))
        })
        .collect::<Result<_>>()?;
    let id = Matrix::identity(n * n, 1);
    let mut mats = Vec::new();
    let mut degrees = Vec::new();
    for q in pz.target().elements() {
        let x = pz.section(q);
        let mut rows: Vec<Vector> = Vec::new();
        for (chi, op) in &ops {
            rows.extend(op.sub(&id.scale(&chi.value(&g, x))).to_rows());
        }
        let k = if rows.is_empty() { id.columns() } else { Matrix::from_rows(rows)?.kernel() };
        for vec in k {
            mats.push(Matrix::from_rows(vec.chunks(n).map(|r| r.to_vec()).collect())?);
            degrees.push(q);
        }
    }
    if mats.len() != n * n {
        return Err(Error::Violation(format!("eigenspaces have total dimension {} ≠ {}", mats.len(), n * n)));
    }
    let a = GradedMatrixAlgebra::new(pz, mats, degrees)?;
    if !a.is_algebra_grading() || !a.is_compatible_with(v) {
        return Err(Error::Violation("eigenspace decomposition is not a compatible algebra grading".into()));
    }
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitChecks {
    pub ideal_graded_simple: bool,
    pub division: bool,
    /// dim A · dim D' = (dim W')².
    pub dimension: bool,
    /// A acts faithfully on W'.
    pub faithful: bool,
}

impl SplitChecks {
    pub fn holds(&self) -> bool {
        self.ideal_graded_simple && self.division && self.dimension && self.faithful
    }
}

/// A ≅ End_{D'}(W') for a minimal graded left ideal W' and D' = C(W').
#[derive(Clone)]
pub struct WedderburnSplit {
    pub ideal: GradedModule,
    /// Basis of W' in the coordinates of A.
    pub basis: Vec<Vector>,
    pub division: Centralizer,
    pub checks: SplitChecks,
}

pub fn graded_wedderburn_split(a: &GradedAlgebra) -> Result<WedderburnSplit> {
    let n = a.dim();
    let reg = GradedModule::regular(Arc::new(a.clone()));
    // seed: the homogeneous basis element spinning the smallest ideal
    let mut current = (0..n)
        .map(|i| reg.spin(&a.basis_vector(i), true))
        .min_by_key(|s| s.len())
        .ok_or_else(|| Error::Invalid("zero algebra".into()))?;
    let ideal = loop {
        let sub = reg.submodule(&current)?;
        match is_graded_simple(&sub) {
            Simplicity::Simple(_) => break sub,
            Simplicity::NotSimple(w) => {
                current = w.iter().map(|c| combine(&current, c)).collect();
            }
            Simplicity::Indeterminate(m) => return Err(Error::Indeterminate(m)),
        }
    };
    let division = graded_centralizer(&ideal);
    let mut span = Echelon::new(ideal.dim() * ideal.dim());
    for m in ideal.actions() {
        span.insert(m.entries().to_vec());
    }
    let checks = SplitChecks {
        ideal_graded_simple: true,
        division: division.algebra.is_graded_division(),
        dimension: n * division.dim() == ideal.dim() * ideal.dim(),
        faithful: span.rank() == n,
    };
    Ok(WedderburnSplit { ideal, basis: current, division, checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeChecks {
    pub split: bool,
    pub graded_simple: bool,
    pub contains_v: bool,
    pub inertia_matches: bool,
    /// dim W = dim W' · [Ĝ : K_V].
    pub dimension: bool,
}

impl EnvelopeChecks {
    pub fn holds(&self) -> bool {
        self.split && self.graded_simple && self.contains_v && self.inertia_matches && self.dimension
    }
}

#[derive(Clone)]
pub struct EnvelopeResult {
    pub inertia: Inertia,
    pub z: Subgroup,
    pub end_grading: GradedMatrixAlgebra,
    pub split: WedderburnSplit,
    /// W' as a G/Z-graded R-module.
    pub ideal: GradedModule,
    pub induced: InducedModule,
    /// Injective R-module map V → W.
    pub embedding: Matrix,
    pub checks: EnvelopeChecks,
}

impl EnvelopeResult {
    pub fn module(&self) -> &GradedModule {
        self.induced.module()
    }
}

/// R acting on W' through ρ_V: R → End(V) = A.
fn ideal_as_r_module(v: &GradedModule, a: &GradedMatrixAlgebra, split: &WedderburnSplit) -> Result<GradedModule> {
    let action = v
        .actions()
        .iter()
        .map(|m| {
            let c = a.coordinates(m).ok_or_else(|| Error::Violation("ρ(r) outside End(V)".into()))?;
            Ok(split.ideal.act(&c))
        })
        .collect::<Result<_>>()?;
    GradedModule::new(v.algebra().clone(), a.quotient.clone(), split.ideal.degrees().to_vec(), action)
}

pub fn graded_envelope(v: &GradedModule) -> Result<EnvelopeResult> {
    let inertia = inertia_of_simple(v)?;
    let end_grading = grade_by_inertia(v, &inertia)?;
    let z = end_grading.quotient.kernel().clone();
    let split = graded_wedderburn_split(&end_grading.algebra)?;
    let ideal = ideal_as_r_module(v, &end_grading, &split)?;
    let induced = induce_default(&ideal)?;
    let w = induced.module();
    let graded_simple = match is_graded_simple(w) {
        Simplicity::Simple(_) => true,
        Simplicity::NotSimple(_) => false,
        Simplicity::Indeterminate(m) => return Err(Error::Indeterminate(m)),
    };
    let embedding = intertwiners_ungraded(v, w)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Violation("V does not map into W".into()))?;
    let contains_v = embedding.rank() == v.dim();
    let inertia_matches = inertia_group(w)?.group == inertia.group;
    let index = inertia.group.parent().order() / inertia.group.order();
    let checks = EnvelopeChecks {
        split: split.checks.holds(),
        graded_simple,
        contains_v,
        inertia_matches,
        dimension: w.dim() == ideal.dim() * index,
    };
    Ok(EnvelopeResult { inertia, z, end_grading, split, ideal, induced, embedding, checks })
}
