//! Size, cohesion and coupling of a class, in its original or flattened
//! form.
//!
//! * NOA, NOM: attributes and methods declared in the view (constructors
//!   are not methods here).
//! * SLOC: non-blank lines of the canonical emission, without provenance
//!   comments.
//! * LCOM1: method pairs that use no attribute in common. LCOM2: that
//!   count minus the pairs that do, floored at zero. "Uses" means a direct
//!   read or write of one of the view's own attributes.
//! * CBO: other model classes named in field, parameter and return types,
//!   instantiated, or used as a receiver type.

use crate::emit::{emit_class, EmitOptions};
use crate::flatten::{FlattenOutcome, FlattenedClass, Rule};
use crate::model::access::analyze_class;
use crate::model::{AccessKind, BodyId, ClassAccess, ClassModel, ClassScope, ResolveError};
use crate::syntax::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum View {
    Original,
    Flattened,
}

impl View {
    pub fn as_str(self) -> &'static str {
        match self {
            View::Original => "original",
            View::Flattened => "flattened",
        }
    }
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for View {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "original" => Ok(View::Original),
            "flattened" => Ok(View::Flattened),
            _ => Err(format!("unknown view `{s}` (expected original or flattened)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricsRecord {
    pub name: String,
    pub view: View,
    pub noa: usize,
    pub nom: usize,
    pub sloc: usize,
    pub lcom1: usize,
    pub lcom2: usize,
    pub cbo: usize,
}

/// Method pairs that share no attribute (P) and pairs that share at least
/// one (Q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairCounts {
    pub disjoint: usize,
    pub sharing: usize,
}

impl PairCounts {
    pub fn of<T: Ord>(uses: &[BTreeSet<T>]) -> Self {
        let mut out = PairCounts::default();
        for (i, a) in uses.iter().enumerate() {
            for b in &uses[i + 1..] {
                if a.is_disjoint(b) {
                    out.disjoint += 1;
                } else {
                    out.sharing += 1;
                }
            }
        }
        out
    }

    pub fn lcom1(self) -> usize {
        self.disjoint
    }

    pub fn lcom2(self) -> usize {
        self.disjoint.saturating_sub(self.sharing)
    }
}

/// Attributes of `class` each method reads or writes directly, one set per
/// method in declaration order.
pub fn attribute_uses(decl: &ClassDecl, access: &ClassAccess) -> Vec<BTreeSet<String>> {
    let class = &decl.name.name;
    decl.methods()
        .map(|m| {
            let source = BodyId::Method(m.signature());
            access
                .edges
                .iter()
                .filter(|e| {
                    e.source == source
                        && e.kind != AccessKind::Call
                        && &e.target.class == class
                        && e.target.member.kind == crate::model::MemberKind::Attribute
                })
                .map(|e| e.target.member.name.clone())
                .collect()
        })
        .collect()
}

fn coupled_classes(decl: &ClassDecl, access: &ClassAccess, model: &ClassModel) -> BTreeSet<String> {
    let mut names: BTreeSet<String> = access.used_classes.clone();
    let mut add = |t: &TypeRef| {
        if let Some(n) = t.class_name() {
            names.insert(n.to_string());
        }
    };
    for m in &decl.members {
        match m {
            Member::Field(f) => add(&f.ty),
            Member::Method(m) => {
                if let Some(t) = &m.return_type {
                    add(t);
                }
                m.params.iter().for_each(|p| add(&p.ty));
            }
            Member::Constructor(c) => c.params.iter().for_each(|p| add(&p.ty)),
        }
    }
    names.retain(|n| n != &decl.name.name && model.contains(n));
    names
}

/// Non-blank lines of `text`.
pub fn sloc(text: &str) -> usize {
    text.lines().filter(|l| !l.trim().is_empty()).count()
}

pub fn measure(
    decl: &ClassDecl,
    package: Option<&QualifiedName>,
    view: View,
    access: &ClassAccess,
    model: &ClassModel,
) -> MetricsRecord {
    let pairs = PairCounts::of(&attribute_uses(decl, access));
    MetricsRecord {
        name: decl.name.name.clone(),
        view,
        noa: decl.fields().count(),
        nom: decl.methods().count(),
        sloc: sloc(&emit_class(package, decl, &[], &EmitOptions::default())),
        lcom1: pairs.lcom1(),
        lcom2: pairs.lcom2(),
        cbo: coupled_classes(decl, access, model).len(),
    }
}

fn package_of(model: &ClassModel, class: &str) -> Option<QualifiedName> {
    let info = model.class(class)?;
    info.package.as_ref().map(|p| QualifiedName {
        parts: p.split('.').map(|s| Ident::new(s, info.decl.span)).collect(),
        span: info.decl.span,
    })
}

pub fn measure_original(model: &ClassModel, class: &str) -> Result<MetricsRecord, ResolveError> {
    let info = model.class(class).expect("class registered in model");
    let access = model.analyze(class)?;
    Ok(measure(&info.decl, package_of(model, class).as_ref(), View::Original, &access, model))
}

pub fn measure_flattened(model: &ClassModel, flat: &FlattenedClass) -> Result<MetricsRecord, ResolveError> {
    let table = flat.table();
    let scope = ClassScope::standalone(&table);
    let access = analyze_class(&flat.decl, &scope, model, &model.own_classes(flat.name()))?;
    Ok(measure(&flat.decl, flat.package.as_ref(), View::Flattened, &access, model))
}

/// Flattened minus original, per metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Delta {
    pub noa: i64,
    pub nom: i64,
    pub sloc: i64,
    pub lcom1: i64,
    pub lcom2: i64,
    pub cbo: i64,
}

impl Delta {
    pub fn between(original: &MetricsRecord, flattened: &MetricsRecord) -> Self {
        let d = |a: usize, b: usize| b as i64 - a as i64;
        Delta {
            noa: d(original.noa, flattened.noa),
            nom: d(original.nom, flattened.nom),
            sloc: d(original.sloc, flattened.sloc),
            lcom1: d(original.lcom1, flattened.lcom1),
            lcom2: d(original.lcom2, flattened.lcom2),
            cbo: d(original.cbo, flattened.cbo),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub name: String,
    pub original: MetricsRecord,
    pub flattened: MetricsRecord,
    pub delta: Delta,
    /// How many superclass members each rule decided (every rule listed).
    pub rules: BTreeMap<String, usize>,
}

/// Paired records for every successfully flattened class, by class name.
pub fn compare(model: &ClassModel, outcome: &FlattenOutcome) -> Result<Vec<Comparison>, ResolveError> {
    let mut out = Vec::new();
    for (name, flat) in &outcome.classes {
        let original = measure_original(model, name)?;
        let flattened = measure_flattened(model, flat)?;
        let mut rules: BTreeMap<String, usize> = Rule::ALL.iter().map(|r| (r.id().to_string(), 0)).collect();
        if let Some(plan) = outcome.plans.get(name) {
            for (r, n) in plan.rule_counts() {
                rules.insert(r.id().to_string(), n);
            }
        }
        out.push(Comparison {
            name: name.clone(),
            delta: Delta::between(&original, &flattened),
            original,
            flattened,
            rules,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flatten::flatten_all;

    fn model(srcs: &[&str]) -> ClassModel {
        let units: Vec<_> = srcs
            .iter()
            .enumerate()
            .map(|(i, s)| parse_source(FileId(i as u32), s).unwrap())
            .collect();
        ClassModel::build(&units).unwrap()
    }

    #[test]
    fn attributes_only() {
        let m = model(&["class A { int a; int b; }"]);
        let r = measure_original(&m, "A").unwrap();
        assert_eq!((r.noa, r.nom, r.lcom1, r.lcom2, r.cbo, r.sloc), (2, 0, 0, 0, 0, 4));
    }

    #[test]
    fn shared_and_disjoint_pairs() {
        let m = model(&["class A { int x; void f() { x = 1; } void g() { int y = x; } }"]);
        let r = measure_original(&m, "A").unwrap();
        assert_eq!((r.lcom1, r.lcom2), (0, 0));
        let m = model(&["class A { int x; int y; void f() { x = 1; } void g() { y = 1; } }"]);
        let r = measure_original(&m, "A").unwrap();
        assert_eq!((r.lcom1, r.lcom2), (1, 1));
    }

    #[test]
    fn pair_counts_by_hand() {
        let s = |v: &[u8]| v.iter().copied().collect::<BTreeSet<u8>>();
        // {0},{0,1},{2},{} -> sharing: (0,1); others disjoint
        let p = PairCounts::of(&[s(&[0]), s(&[0, 1]), s(&[2]), s(&[])]);
        assert_eq!((p.disjoint, p.sharing), (5, 1));
        assert_eq!(p.lcom2(), 4);
    }

    #[test]
    fn coupling_skips_self_and_builtins() {
        let m = model(&[
            "class A { A next; String s; int[] xs; B make() { return new B(); } int n(C c) { return c.k; } }",
            "class B {}",
            "class C { int k; }",
        ]);
        assert_eq!(measure_original(&m, "A").unwrap().cbo, 2);
    }

    #[test]
    fn one_pulled_attribute_and_method() {
        let m = model(&["class A { public int a; public void g() {} }", "class B extends A {}"]);
        let out = flatten_all(&m);
        let cmp = compare(&m, &out).unwrap();
        let b = cmp.iter().find(|c| c.name == "B").unwrap();
        assert_eq!((b.delta.noa, b.delta.nom), (1, 1));
        assert_eq!(b.rules["R1"], 1);
        assert_eq!(b.rules["R5"], 1);
        let a = cmp.iter().find(|c| c.name == "A").unwrap();
        assert_eq!(a.delta, Delta::default());
    }
}
