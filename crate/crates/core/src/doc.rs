//! JSON documents: groups, algebras, modules and whole workspaces.
//!
//! Scalars are written in the literal grammar of [`CycScalar::parse`] with `z = ζ_N` for the
//! document's `cyclotomic_order`. Group elements are coordinate tuples. Degrees of modules
//! graded by a quotient G/H are written as representatives in G.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abgroup::{Character, Elem, FinAbGroup, QuotientMap, Subgroup};
use crate::arith::cyclo::lcm;
use crate::arith::{CycScalar, Matrix};
use crate::error::{Error, Result};
use crate::galg::GradedAlgebra;
use crate::gmod::GradedModule;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub invariant_factors: Vec<u64>,
}

/// A group written inline or by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDoc {
    pub group: String,
    pub generators: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterDoc {
    pub group: String,
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclotomic_order: Option<u64>,
    pub group: GroupRef,
    pub dim: usize,
    pub degrees: Vec<Vec<i64>>,
    pub unit: Vec<String>,
    pub structure: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub algebra_ref: String,
    pub dim: usize,
    /// "G" for the algebra's own group, or "G/H" for the quotient by the subgroup named H.
    pub grading_group: String,
    pub degrees: Vec<Vec<i64>>,
    pub action: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkspaceDoc {
    pub cyclotomic_order: u64,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupDoc>,
    #[serde(default)]
    pub subgroups: BTreeMap<String, SubgroupDoc>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraDoc>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default)]
    pub characters: BTreeMap<String, CharacterDoc>,
}

/// A resolved workspace.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub cyclotomic_order: u64,
    pub groups: BTreeMap<String, Arc<FinAbGroup>>,
    pub subgroups: BTreeMap<String, Subgroup>,
    pub algebras: BTreeMap<String, Arc<GradedAlgebra>>,
    pub modules: BTreeMap<String, GradedModule>,
    pub characters: BTreeMap<String, Character>,
}

fn reference(kind: &str, name: &str) -> Error {
    Error::Reference(format!("{kind} '{name}'"))
}

fn elem(g: &FinAbGroup, coords: &[i64]) -> Result<Elem> {
    g.elem_checked(coords)
}

fn coords(g: &FinAbGroup, x: Elem) -> Vec<i64> {
    g.coords(x).into_iter().map(|c| c as i64).collect()
}

fn literal(x: &CycScalar, n: u64) -> Result<String> {
    Ok(x.lift(n)?.to_literal())
}

fn parse_scalar(s: &str, n: u64) -> Result<CycScalar> {
    CycScalar::parse(s, n)
}

impl GroupDoc {
    pub fn of(g: &FinAbGroup) -> Self {
        GroupDoc { invariant_factors: g.factors().to_vec() }
    }

    pub fn build(&self) -> Result<Arc<FinAbGroup>> {
        Ok(Arc::new(FinAbGroup::new(self.invariant_factors.clone())?))
    }
}

impl AlgebraDoc {
    /// Serialize with an inline group; `n` must be a multiple of the algebra's cyclotomic order.
    pub fn of(a: &GradedAlgebra, n: u64) -> Result<Self> {
        let g = a.group();
        let mut structure = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for (k, c) in a.basis_product(i, j) {
                    structure.push((i, j, *k, literal(c, n)?));
                }
            }
        }
        Ok(AlgebraDoc {
            cyclotomic_order: Some(n),
            group: GroupRef::Inline(GroupDoc::of(g)),
            dim: a.dim(),
            degrees: a.degrees().iter().map(|d| coords(g, *d)).collect(),
            unit: a.unit().iter().map(|x| literal(x, n)).collect::<Result<_>>()?,
            structure,
            labels: a.labels().to_vec(),
        })
    }

    pub fn build(&self, n: u64, groups: &BTreeMap<String, Arc<FinAbGroup>>) -> Result<GradedAlgebra> {
        let n = self.cyclotomic_order.unwrap_or(n);
        let g = match &self.group {
            GroupRef::Name(name) => groups.get(name).cloned().ok_or_else(|| reference("group", name))?,
            GroupRef::Inline(d) => d.build()?,
        };
        if self.degrees.len() != self.dim || self.unit.len() != self.dim {
            return Err(Error::DimensionMismatch("algebra degrees/unit length differ from dim".into()));
        }
        let degrees = self.degrees.iter().map(|c| elem(&g, c)).collect::<Result<Vec<_>>>()?;
        let unit = self.unit.iter().map(|s| parse_scalar(s, n)).collect::<Result<Vec<_>>>()?;
        let triples = self
            .structure
            .iter()
            .map(|(i, j, k, s)| Ok((*i, *j, *k, parse_scalar(s, n)?)))
            .collect::<Result<Vec<_>>>()?;
        let a = GradedAlgebra::new(g, degrees, unit, triples)?;
        Ok(if self.labels.len() == self.dim { a.with_labels(self.labels.clone()) } else { a })
    }
}

impl ModuleDoc {
    /// `grading_name` is "G" or "G/H" where H names the kernel of the module's grading.
    pub fn of(v: &GradedModule, algebra_ref: &str, grading_name: &str, n: u64) -> Result<Self> {
        let pi = v.grading();
        let g = pi.source();
        let mut action = Vec::new();
        for (b, m) in v.actions().iter().enumerate() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let x = m.get(i, j);
                    if !x.is_zero() {
                        action.push((b, i, j, literal(x, n)?));
                    }
                }
            }
        }
        Ok(ModuleDoc {
            algebra_ref: algebra_ref.into(),
            dim: v.dim(),
            grading_group: grading_name.into(),
            degrees: v.degrees().iter().map(|d| coords(g, pi.section(*d))).collect(),
            action,
        })
    }

    pub fn build(
        &self,
        n: u64,
        algebras: &BTreeMap<String, Arc<GradedAlgebra>>,
        subgroups: &BTreeMap<String, Subgroup>,
    ) -> Result<GradedModule> {
        let a = algebras.get(&self.algebra_ref).cloned().ok_or_else(|| reference("algebra", &self.algebra_ref))?;
        let g = a.group().clone();
        let pi = match self.grading_group.split_once('/') {
            None => Arc::new(QuotientMap::identity(&g)),
            Some((_, h)) => {
                let h = resolve_subgroup(h, &g, subgroups)?;
                Arc::new(QuotientMap::new(&rehome(&h, &g)?))
            }
        };
        if self.degrees.len() != self.dim {
            return Err(Error::DimensionMismatch("module degrees length differs from dim".into()));
        }
        let degrees = self.degrees.iter().map(|c| Ok(pi.apply(elem(&g, c)?))).collect::<Result<Vec<_>>>()?;
        let mut action: Vec<Matrix> = (0..a.dim()).map(|_| Matrix::zeros(self.dim, self.dim, 1)).collect();
        for (b, i, j, s) in &self.action {
            if *b >= a.dim() || *i >= self.dim || *j >= self.dim {
                return Err(Error::Invalid(format!("action entry ({b},{i},{j}) out of range")));
            }
            action[*b].set(*i, *j, parse_scalar(s, n)?);
        }
        GradedModule::new(a, pi, degrees, action)
    }
}

/// The same subgroup with `g` as its parent object.
fn rehome(h: &Subgroup, g: &Arc<FinAbGroup>) -> Result<Subgroup> {
    if **h.parent() != **g {
        return Err(Error::Invalid("subgroup of a different group".into()));
    }
    Ok(Subgroup::generated(g, h.generators()))
}

fn resolve_subgroup(name: &str, g: &Arc<FinAbGroup>, subgroups: &BTreeMap<String, Subgroup>) -> Result<Subgroup> {
    match name {
        "trivial" | "e" => Ok(Subgroup::trivial(g)),
        "whole" | "G" => Ok(Subgroup::whole(g)),
        _ => subgroups.get(name).cloned().ok_or_else(|| reference("subgroup", name)),
    }
}

impl Workspace {
    pub fn module(&self, name: &str) -> Result<&GradedModule> {
        self.modules.get(name).ok_or_else(|| reference("module", name))
    }

    pub fn algebra(&self, name: &str) -> Result<&Arc<GradedAlgebra>> {
        self.algebras.get(name).ok_or_else(|| reference("algebra", name))
    }

    /// A named subgroup, or "trivial"/"whole", as a subgroup of `g`.
    pub fn subgroup(&self, name: &str, g: &Arc<FinAbGroup>) -> Result<Subgroup> {
        rehome(&resolve_subgroup(name, g, &self.subgroups)?, g)
    }

    /// A named character, or an inline exponent tuple such as "1,0".
    pub fn character(&self, name: &str, g: &FinAbGroup) -> Result<Character> {
        if let Some(c) = self.characters.get(name) {
            return Ok(*c);
        }
        let exps = name
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|_| reference("character", name)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Character(elem(g, &exps)?))
    }

    pub fn from_doc(d: &WorkspaceDoc) -> Result<Self> {
        let n = d.cyclotomic_order.max(1);
        let mut ws = Workspace { cyclotomic_order: n, ..Default::default() };
        for (name, g) in &d.groups {
            ws.groups.insert(name.clone(), g.build()?);
        }
        for (name, s) in &d.subgroups {
            let g = ws.groups.get(&s.group).ok_or_else(|| reference("group", &s.group))?;
            let gens = s.generators.iter().map(|c| elem(g, c)).collect::<Result<Vec<_>>>()?;
            ws.subgroups.insert(name.clone(), Subgroup::generated(g, &gens));
        }
        for (name, c) in &d.characters {
            let g = ws.groups.get(&c.group).ok_or_else(|| reference("group", &c.group))?;
            ws.characters.insert(name.clone(), Character(elem(g, &c.exponents)?));
        }
        for (name, a) in &d.algebras {
            let alg = a.build(n, &ws.groups)?;
            let e = alg.group().exponent();
            if a.cyclotomic_order.unwrap_or(n) % e != 0 {
                return Err(Error::Invalid(format!("cyclotomic order is not a multiple of the group exponent {e}")));
            }
            ws.algebras.insert(name.clone(), Arc::new(alg));
        }
        for (name, m) in &d.modules {
            ws.modules.insert(name.clone(), m.build(n, &ws.algebras, &ws.subgroups)?);
        }
        Ok(ws)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let d: WorkspaceDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(&d)
    }

    /// Smallest N covering the declared order, every scalar and every group exponent.
    pub fn required_order(&self) -> u64 {
        let mut n = self.cyclotomic_order.max(1);
        for a in self.algebras.values() {
            n = lcm(n, lcm(a.order(), a.group().exponent()));
        }
        for m in self.modules.values() {
            n = lcm(n, m.order());
        }
        n
    }

    /// Serialize; N is raised when needed so that every scalar can be written.
    pub fn to_doc(&self) -> Result<WorkspaceDoc> {
        let n = self.required_order();
        let mut d = WorkspaceDoc { cyclotomic_order: n, ..Default::default() };
        for (name, g) in &self.groups {
            d.groups.insert(name.clone(), GroupDoc::of(g));
        }
        for (name, s) in &self.subgroups {
            let gname = self
                .groups
                .iter()
                .find(|(_, g)| ***g == **s.parent())
                .map(|(k, _)| k.clone())
                .ok_or_else(|| reference("group of subgroup", name))?;
            let gens = s.generators().iter().map(|x| coords(s.parent(), *x)).collect();
            d.subgroups.insert(name.clone(), SubgroupDoc { group: gname, generators: gens });
        }
        for (name, c) in &self.characters {
            let (gname, g) = self.groups.iter().next().ok_or_else(|| reference("group of character", name))?;
            d.characters.insert(name.clone(), CharacterDoc { group: gname.clone(), exponents: coords(g, c.0) });
        }
        for (name, a) in &self.algebras {
            let mut ad = AlgebraDoc::of(a, n)?;
            ad.cyclotomic_order = None;
            if let Some((gname, _)) = self.groups.iter().find(|(_, g)| ***g == **a.group()) {
                ad.group = GroupRef::Name(gname.clone());
            }
            d.algebras.insert(name.clone(), ad);
        }
        for (name, m) in &self.modules {
            let aname = self
                .algebras
                .iter()
                .find(|(_, a)| Arc::ptr_eq(a, m.algebra()))
                .map(|(k, _)| k.clone())
                .ok_or_else(|| reference("algebra of module", name))?;
            let kernel = m.grading().kernel();
            let grading = if kernel.is_trivial() {
                "G".to_string()
            } else if let Some((sname, _)) = self.subgroups.iter().find(|(_, s)| s.elements() == kernel.elements()) {
                format!("G/{sname}")
            } else if kernel.order() == kernel.parent().order() {
                "G/whole".to_string()
            } else {
                return Err(reference("subgroup for the grading of module", name));
            };
            d.modules.insert(name.clone(), ModuleDoc::of(m, &aname, &grading, n)?);
        }
        Ok(d)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&self.to_doc()?).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Workspaces for the shipped examples.
pub mod examples {
    use super::*;
    use crate::fixtures;

    fn single(group: &Arc<FinAbGroup>, algebra: GradedAlgebra, modules: Vec<(&str, GradedModule)>) -> Workspace {
        let a = Arc::new(algebra);
        let mut ws = Workspace { cyclotomic_order: 1, ..Default::default() };
        ws.groups.insert("G".into(), group.clone());
        ws.algebras.insert("R".into(), a.clone());
        for (name, m) in modules {
            let m = GradedModule::new(a.clone(), rebased(m.grading(), a.group()), m.degrees().to_vec(), m.actions().to_vec())
                .expect("same shapes");
            ws.modules.insert(name.into(), m);
        }
        ws.cyclotomic_order = ws.required_order();
        ws
    }

    fn rebased(pi: &Arc<QuotientMap>, g: &Arc<FinAbGroup>) -> Arc<QuotientMap> {
        if pi.kernel().is_trivial() {
            Arc::new(QuotientMap::identity(g))
        } else {
            Arc::new(QuotientMap::new(&Subgroup::generated(g, pi.kernel().generators())))
        }
    }

    /// Pauli M₂ with W (regular) and V (natural, graded by G/H1).
    pub fn pauli() -> Workspace {
        let a = fixtures::pauli_algebra();
        let g = a.group().clone();
        let mut ws = single(&g, a, vec![("W", fixtures::pauli_module()), ("V", fixtures::pauli_natural())]);
        ws.subgroups.insert("H1".into(), Subgroup::generated(&g, &[Elem(2)]));
        ws.characters.insert("chi".into(), Character(Elem(1)));
        ws
    }

    pub fn m2rz2() -> Workspace {
        let a = fixtures::m2rz2_algebra();
        let g = a.group().clone();
        single(&g, a, vec![("W", fixtures::m2rz2_module())])
    }

    /// 𝔽ℤ₂ with its regular module and the two one-dimensional modules.
    pub fn torus() -> Workspace {
        let a = fixtures::group_algebra_z2();
        let g = a.group().clone();
        let reg = GradedModule::regular(Arc::new(a.clone()));
        single(
            &g,
            a,
            vec![("W", reg), ("Vplus", fixtures::z2_character_module(1)), ("Vminus", fixtures::z2_character_module(-1))],
        )
    }

    pub fn z4z4() -> Workspace {
        let a = fixtures::z4z4_algebra();
        let g = a.group().clone();
        let reg = GradedModule::regular(Arc::new(a.clone()));
        single(&g, a, vec![("W", reg)])
    }

    pub fn smash(n: u64) -> Workspace {
        let a = fixtures::smash_fixture(n);
        let g = a.group().clone();
        let reg = GradedModule::regular(Arc::new(a.clone()));
        single(&g, a, vec![("W", reg)])
    }

    pub fn by_name(name: &str) -> Option<Workspace> {
        Some(match name {
            "pauli" => pauli(),
            "m2rz2" => m2rz2(),
            "torus" => torus(),
            "z4z4" => z4z4(),
            "smash2" => smash(2),
            "smash3" => smash(3),
            "smash4" => smash(4),
            _ => return None,
        })
    }

    pub const NAMES: &[&str] = &["pauli", "m2rz2", "torus", "z4z4", "smash2", "smash3", "smash4"];
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::is_isomorphic_graded;

    fn roundtrip(ws: &Workspace) -> Workspace {
        let text = ws.to_json().unwrap();
        let back = Workspace::parse(&text).unwrap();
        assert_eq!(back.to_json().unwrap(), text);
        back
    }

    #[test]
    fn examples_roundtrip() {
        for name in examples::NAMES {
            let ws = examples::by_name(name).unwrap();
            let back = roundtrip(&ws);
            for (k, m) in &ws.modules {
                let m2 = back.module(k).unwrap();
                assert_eq!(m.actions(), m2.actions(), "{name}/{k}");
                assert_eq!(m.degrees(), m2.degrees(), "{name}/{k}");
                assert!(m2.validate().is_valid());
            }
        }
    }

    #[test]
    fn quotient_graded_module_survives() {
        let ws = examples::pauli();
        let back = roundtrip(&ws);
        let v = back.module("V").unwrap();
        assert_eq!(v.grading().kernel().order(), 2);
        assert!(is_isomorphic_graded(v, ws.module("V").unwrap()).is_iso());
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(matches!(Workspace::parse("{"), Err(Error::Parse(_))));
        let bad = r#"{"cyclotomic_order":1,"modules":{"W":{"algebra_ref":"nope","dim":1,"grading_group":"G","degrees":[[0]],"action":[]}}}"#;
        assert!(matches!(Workspace::parse(bad), Err(Error::Reference(_))));
    }

    #[test]
    fn hand_written_document() {
        let text = r#"{
          "cyclotomic_order": 2,
          "groups": {"G": {"invariant_factors": [2]}},
          "algebras": {"R": {"group": "G", "dim": 2, "degrees": [[0],[1]], "unit": ["1","0"],
                             "structure": [[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"1"]]}},
          "modules": {"V": {"algebra_ref": "R", "dim": 1, "grading_group": "G/whole", "degrees": [[0]],
                            "action": [[0,0,0,"1"],[1,0,0,"-1"]]}}
        }"#;
        let ws = Workspace::parse(text).unwrap();
        assert!(ws.algebra("R").unwrap().validate().is_valid());
        assert!(ws.module("V").unwrap().validate().is_valid());
    }
}
