//! Resolved view of a set of parsed classes: the inheritance graph, member
//! tables, override relations, and (in [`access`]) which bodies touch which
//! members.

pub mod access;
pub mod dump;
pub mod resolve;

use crate::diag::{DiagCode, Diagnostic};
use crate::syntax::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

pub use access::{compute_access_graph, AccessEdge, AccessGraph, AccessKind, Basis, BodyId, ClassAccess};
pub use resolve::{ClassScope, Layer, ResolveError, TypeEnv};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MemberKind {
    Attribute,
    Method,
}

impl fmt::Display for MemberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MemberKind::Attribute => "attribute",
            MemberKind::Method => "method",
        })
    }
}

/// Identity of a member inside one class: attributes by name, methods by
/// signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MemberKey {
    pub kind: MemberKind,
    pub name: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
}

impl MemberKey {
    pub fn attribute(name: &str) -> Self {
        MemberKey {
            kind: MemberKind::Attribute,
            name: name.to_string(),
            params: Vec::new(),
        }
    }

    pub fn method(sig: &Signature) -> Self {
        MemberKey {
            kind: MemberKind::Method,
            name: sig.name.clone(),
            params: sig.params.clone(),
        }
    }

    pub fn signature(&self) -> Option<Signature> {
        (self.kind == MemberKind::Method).then(|| Signature::new(&self.name, self.params.clone()))
    }

    pub fn renamed(&self, name: &str) -> Self {
        MemberKey {
            kind: self.kind,
            name: name.to_string(),
            params: self.params.clone(),
        }
    }
}

impl fmt::Display for MemberKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MemberKind::Attribute => f.write_str(&self.name),
            MemberKind::Method => write!(f, "{}({})", self.name, self.params.join(",")),
        }
    }
}

/// A member qualified by the class that holds it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MemberRef {
    pub class: String,
    pub member: MemberKey,
}

impl fmt::Display for MemberRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.class, self.member)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberInfo {
    pub owner: String,
    pub key: MemberKey,
    pub visibility: Visibility,
    pub is_static: bool,
    pub is_final: bool,
    /// Attribute type or method return type; `None` for `void`.
    #[serde(rename = "type")]
    pub ty: Option<String>,
    pub span: Span,
}

impl MemberInfo {
    pub fn name(&self) -> &str {
        &self.key.name
    }

    pub fn kind(&self) -> MemberKind {
        self.key.kind
    }

    /// Non-private members are visible to subclasses.
    pub fn is_visible(&self) -> bool {
        self.visibility.is_visible()
    }

    pub fn member_ref(&self) -> MemberRef {
        MemberRef {
            class: self.owner.clone(),
            member: self.key.clone(),
        }
    }
}

/// Attribute and method declarations of one class, in source order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberTable {
    pub class: String,
    pub attributes: Vec<MemberInfo>,
    pub methods: Vec<MemberInfo>,
}

impl MemberTable {
    pub fn from_decl(decl: &ClassDecl) -> Result<Self, ModelError> {
        let class = decl.name.name.clone();
        let mut attributes: Vec<MemberInfo> = Vec::new();
        let mut methods: Vec<MemberInfo> = Vec::new();
        for member in &decl.members {
            match member {
                Member::Field(f) => {
                    if attributes.iter().any(|a| a.key.name == f.name.name) {
                        return Err(ModelError::DuplicateMember {
                            class,
                            member: f.name.name.clone(),
                            span: f.name.span,
                        });
                    }
                    attributes.push(MemberInfo {
                        owner: class.clone(),
                        key: MemberKey::attribute(&f.name.name),
                        visibility: f.modifiers.visibility,
                        is_static: f.modifiers.is_static,
                        is_final: f.modifiers.is_final,
                        ty: Some(f.ty.to_string()),
                        span: f.span,
                    });
                }
                Member::Method(m) => {
                    let key = MemberKey::method(&m.signature());
                    if methods.iter().any(|x| x.key == key) {
                        return Err(ModelError::DuplicateMember {
                            class,
                            member: key.to_string(),
                            span: m.name.span,
                        });
                    }
                    methods.push(MemberInfo {
                        owner: class.clone(),
                        key,
                        visibility: m.modifiers.visibility,
                        is_static: m.modifiers.is_static,
                        is_final: m.modifiers.is_final,
                        ty: m.return_type.as_ref().map(|t| t.to_string()),
                        span: m.span,
                    });
                }
                Member::Constructor(_) => {}
            }
        }
        Ok(MemberTable {
            class,
            attributes,
            methods,
        })
    }

    pub fn attribute(&self, name: &str) -> Option<&MemberInfo> {
        self.attributes.iter().find(|a| a.key.name == name)
    }

    pub fn method(&self, key: &MemberKey) -> Option<&MemberInfo> {
        self.methods.iter().find(|m| &m.key == key)
    }

    pub fn get(&self, key: &MemberKey) -> Option<&MemberInfo> {
        match key.kind {
            MemberKind::Attribute => self.attribute(&key.name),
            MemberKind::Method => self.method(key),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &MemberInfo> {
        self.attributes.iter().chain(self.methods.iter())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassInfo {
    pub name: String,
    pub package: Option<String>,
    pub file: FileId,
    pub superclass: Option<String>,
    pub decl: ClassDecl,
    pub members: MemberTable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Legality {
    Ok,
    IllegalStaticMismatch,
    IllegalFinal,
}

impl Legality {
    pub fn is_ok(self) -> bool {
        self == Legality::Ok
    }
}

/// Java rejects an override when exactly one side is static, or when the
/// superclass member is final. Static mismatch is reported first.
pub fn override_legality(sub: &MemberInfo, sup: &MemberInfo) -> Legality {
    if sub.is_static != sup.is_static {
        Legality::IllegalStaticMismatch
    } else if sup.is_final {
        Legality::IllegalFinal
    } else {
        Legality::Ok
    }
}

/// Attributes override by name alone (types are ignored); methods only on
/// identical signatures. Different-signature methods with the same name are
/// overloads and never override.
pub fn overrides(sub: &MemberInfo, sup: &MemberInfo) -> bool {
    sub.key.kind == sup.key.kind && sub.key.name == sup.key.name && sub.key.params == sup.key.params
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OverrideRelation {
    pub sub: MemberRef,
    pub sup: MemberRef,
    pub kind: MemberKind,
    pub legality: Legality,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{span}: class {class} extends unknown class {superclass}")]
    UnknownSuperclass {
        class: String,
        superclass: String,
        span: Span,
    },
    #[error("{span}: inheritance cycle through {}", classes.join(" -> "))]
    InheritanceCycle { classes: Vec<String>, span: Span },
    #[error("{span}: class {name} is declared more than once")]
    DuplicateClassName { name: String, span: Span },
    #[error("{span}: {class} declares {member} more than once")]
    DuplicateMember {
        class: String,
        member: String,
        span: Span,
    },
}

impl ModelError {
    pub fn span(&self) -> Span {
        match self {
            ModelError::UnknownSuperclass { span, .. }
            | ModelError::InheritanceCycle { span, .. }
            | ModelError::DuplicateClassName { span, .. }
            | ModelError::DuplicateMember { span, .. } => *span,
        }
    }
}

/// Classes, inheritance edges and topological order. The implicit `Object`
/// root contributes nothing and is represented by the absence of an edge.
#[derive(Debug, Clone, Default)]
pub struct ClassModel {
    classes: BTreeMap<String, ClassInfo>,
    order: Vec<String>,
    overrides: Vec<OverrideRelation>,
    diagnostics: Vec<Diagnostic>,
}

impl ClassModel {
    /// Registers every class, resolves `extends` edges and computes the
    /// superclass-first order. Member classification runs as part of the
    /// build so the returned model is ready for the resolver.
    pub fn build(units: &[SourceUnit]) -> Result<Self, ModelError> {
        let mut model = build_model(units)?;
        classify_members(&mut model);
        Ok(model)
    }

    pub fn class(&self, name: &str) -> Option<&ClassInfo> {
        self.classes.get(name)
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassInfo> {
        self.classes.values()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.classes.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Superclasses before subclasses, ties broken by class name.
    pub fn topological_order(&self) -> &[String] {
        &self.order
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.classes
            .values()
            .filter_map(|c| c.superclass.as_deref().map(|s| (c.name.as_str(), s)))
    }

    /// Direct and transitive superclasses, nearest first.
    pub fn ancestors(&self, name: &str) -> Vec<&ClassInfo> {
        let mut out = Vec::new();
        let mut cur = self.classes.get(name).and_then(|c| c.superclass.as_deref());
        while let Some(s) = cur {
            let Some(info) = self.classes.get(s) else { break };
            if out.iter().any(|c: &&ClassInfo| c.name == info.name) {
                break;
            }
            out.push(info);
            cur = info.superclass.as_deref();
        }
        out
    }

    pub fn overrides(&self) -> &[OverrideRelation] {
        &self.overrides
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    /// Member lookup as seen from `class`: own members of any visibility,
    /// then visible members of each superclass; the nearest declaration of a
    /// name (attributes) or signature (methods) wins.
    pub fn visible_members(&self, class: &str) -> Vec<&MemberInfo> {
        let mut out: Vec<&MemberInfo> = Vec::new();
        let mut seen: BTreeSet<&MemberKey> = BTreeSet::new();
        let Some(info) = self.classes.get(class) else {
            return out;
        };
        for m in info.members.iter() {
            if seen.insert(&m.key) {
                out.push(m);
            }
        }
        for anc in self.ancestors(class) {
            for m in anc.members.iter().filter(|m| m.is_visible()) {
                if seen.insert(&m.key) {
                    out.push(m);
                }
            }
        }
        out
    }
}

/// Registers classes and resolves inheritance without classifying members.
pub fn build_model(units: &[SourceUnit]) -> Result<ClassModel, ModelError> {
    let mut classes: BTreeMap<String, ClassInfo> = BTreeMap::new();
    for unit in units {
        let decl = &unit.class;
        let name = decl.name.name.clone();
        if classes.contains_key(&name) {
            return Err(ModelError::DuplicateClassName {
                name,
                span: decl.name.span,
            });
        }
        let members = MemberTable::from_decl(decl)?;
        classes.insert(
            name.clone(),
            ClassInfo {
                name,
                package: unit.package.as_ref().map(|p| p.to_string()),
                file: decl.span.file,
                superclass: decl.extends.as_ref().map(|e| e.name.clone()),
                decl: decl.clone(),
                members,
            },
        );
    }
    for info in classes.values() {
        if let Some(sup) = &info.superclass {
            if !classes.contains_key(sup) {
                return Err(ModelError::UnknownSuperclass {
                    class: info.name.clone(),
                    superclass: sup.clone(),
                    span: info.decl.extends.as_ref().map(|e| e.span).unwrap_or(info.decl.span),
                });
            }
        }
    }
    detect_cycles(&classes)?;
    let order = topological_order(&classes);
    Ok(ClassModel {
        classes,
        order,
        overrides: Vec::new(),
        diagnostics: Vec::new(),
    })
}

fn detect_cycles(classes: &BTreeMap<String, ClassInfo>) -> Result<(), ModelError> {
    for start in classes.keys() {
        let mut path = vec![start.clone()];
        let mut cur = classes[start].superclass.as_ref();
        while let Some(s) = cur {
            if let Some(pos) = path.iter().position(|p| p == s) {
                let mut cycle: Vec<String> = path[pos..].to_vec();
                cycle.push(s.clone());
                let info = &classes[start];
                return Err(ModelError::InheritanceCycle {
                    classes: cycle,
                    span: info.decl.extends.as_ref().map(|e| e.span).unwrap_or(info.decl.span),
                });
            }
            path.push(s.clone());
            cur = classes.get(s).and_then(|c| c.superclass.as_ref());
        }
    }
    Ok(())
}

/// Kahn's algorithm over superclass → subclass edges, always taking the
/// lexicographically smallest ready class.
fn topological_order(classes: &BTreeMap<String, ClassInfo>) -> Vec<String> {
    let mut children: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut ready: BTreeSet<&str> = BTreeSet::new();
    for info in classes.values() {
        match &info.superclass {
            Some(s) => children.entry(s.as_str()).or_default().push(&info.name),
            None => {
                ready.insert(&info.name);
            }
        }
    }
    let mut order = Vec::with_capacity(classes.len());
    while let Some(next) = ready.pop_first() {
        order.push(next.to_string());
        if let Some(kids) = children.get(next) {
            ready.extend(kids.iter().copied());
        }
    }
    order
}

/// Computes override relations for every (class, ancestor) pair and records
/// illegal overrides and cross-package visibility as diagnostics.
pub fn classify_members(model: &mut ClassModel) {
    let mut relations = Vec::new();
    let mut diagnostics = Vec::new();
    for info in model.classes.values() {
        let ancestors = model.ancestors(&info.name);
        for anc in &ancestors {
            for sub in info.members.iter() {
                for sup in anc.members.iter() {
                    if !overrides(sub, sup) {
                        continue;
                    }
                    let legality = override_legality(sub, sup);
                    if !legality.is_ok() {
                        let why = match legality {
                            Legality::IllegalStaticMismatch => "exactly one of them is static",
                            _ => "the superclass member is final",
                        };
                        diagnostics.push(Diagnostic {
                            code: DiagCode::IllegalOverride,
                            class: info.name.clone(),
                            message: format!(
                                "{} cannot override {}: {why}; treated as not overriding",
                                sub.member_ref(),
                                sup.member_ref()
                            ),
                            span: Some(sub.span),
                        });
                    }
                    relations.push(OverrideRelation {
                        sub: sub.member_ref(),
                        sup: sup.member_ref(),
                        kind: sub.kind(),
                        legality,
                    });
                }
            }
            if anc.package != info.package {
                for m in anc.members.iter().filter(|m| m.visibility == Visibility::Package) {
                    diagnostics.push(Diagnostic {
                        code: DiagCode::PackageVisibility,
                        class: info.name.clone(),
                        message: format!(
                            "package-private {} is treated as visible although {} and {} are in different packages",
                            m.member_ref(),
                            info.name,
                            anc.name
                        ),
                        span: Some(m.span),
                    });
                }
            }
        }
    }
    relations.sort();
    diagnostics.sort();
    model.overrides = relations;
    model.diagnostics = diagnostics;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn units(srcs: &[&str]) -> Vec<SourceUnit> {
        srcs.iter()
            .enumerate()
            .map(|(i, s)| parse_source(FileId(i as u32), s).unwrap())
            .collect()
    }

    fn model(srcs: &[&str]) -> Result<ClassModel, ModelError> {
        ClassModel::build(&units(srcs))
    }

    #[test]
    fn single_class_has_no_edges() {
        let m = model(&["class A {}"]).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.edges().count(), 0);
        assert_eq!(m.topological_order(), ["A"]);
    }

    #[test]
    fn chain_orders_root_first() {
        let m = model(&["class c1 extends c2 {}", "class c2 extends c3 {}", "class c3 {}"]).unwrap();
        assert_eq!(m.topological_order(), ["c3", "c2", "c1"]);
        let anc: Vec<_> = m.ancestors("c1").iter().map(|c| c.name.clone()).collect();
        assert_eq!(anc, ["c2", "c3"]);
    }

    #[test]
    fn siblings_are_lexicographic() {
        let m = model(&["class C extends A {}", "class B extends A {}", "class A {}"]).unwrap();
        assert_eq!(m.topological_order(), ["A", "B", "C"]);
    }

    #[test]
    fn cycles_and_unknown_superclasses_are_errors() {
        assert!(matches!(
            model(&["class A extends B {}", "class B extends A {}"]),
            Err(ModelError::InheritanceCycle { .. })
        ));
        assert!(matches!(
            model(&["class A extends Missing {}"]),
            Err(ModelError::UnknownSuperclass { .. })
        ));
        assert!(matches!(
            model(&["class A {}", "class A {}"]),
            Err(ModelError::DuplicateClassName { .. })
        ));
        assert!(matches!(
            model(&["class A { int x; String x; }"]),
            Err(ModelError::DuplicateMember { .. })
        ));
        assert!(model(&["class A { void f(int a) {} void f(String a) {} }"]).is_ok());
    }

    #[test]
    fn private_members_are_invisible() {
        let m = model(&["class A { private int x; protected int y; int z; }"]).unwrap();
        let a = m.class("A").unwrap();
        let vis: Vec<_> = a.members.attributes.iter().map(|m| m.is_visible()).collect();
        assert_eq!(vis, [false, true, true]);
    }

    #[test]
    fn attribute_override_ignores_types() {
        let m = model(&["class A { String x; }", "class B extends A { int x; }"]).unwrap();
        assert_eq!(m.overrides().len(), 1);
        let r = &m.overrides()[0];
        assert_eq!(r.sub.to_string(), "B.x");
        assert_eq!(r.sup.to_string(), "A.x");
        assert_eq!(r.legality, Legality::Ok);
    }

    #[test]
    fn overloads_are_not_overrides() {
        let m = model(&[
            "class A { void f(String s) {} }",
            "class B extends A { void f(int i) {} }",
        ])
        .unwrap();
        assert!(m.overrides().is_empty());
    }

    #[test]
    fn transitive_overrides_are_recorded() {
        let m = model(&[
            "class A { int x; }",
            "class B extends A { int x; }",
            "class C extends B { int x; }",
        ])
        .unwrap();
        let pairs: Vec<_> = m
            .overrides()
            .iter()
            .map(|r| format!("{}>{}", r.sub, r.sup))
            .collect();
        assert_eq!(pairs, ["B.x>A.x", "C.x>A.x", "C.x>B.x"]);
        assert!(m.overrides().iter().all(|r| r.sub.class != r.sup.class));
    }

    // Brute force over every static/final combination on both sides.
    #[test]
    fn legality_matches_exhaustive_table() {
        for sub_static in [false, true] {
            for sub_final in [false, true] {
                for sup_static in [false, true] {
                    for sup_final in [false, true] {
                        let mods = |s: bool, f: bool| {
                            format!("{}{}", if s { "static " } else { "" }, if f { "final " } else { "" })
                        };
                        let m = model(&[
                            &format!("class A {{ {}int x; }}", mods(sup_static, sup_final)),
                            &format!("class B extends A {{ {}int x; }}", mods(sub_static, sub_final)),
                        ])
                        .unwrap();
                        let expected = if sub_static != sup_static {
                            Legality::IllegalStaticMismatch
                        } else if sup_final {
                            Legality::IllegalFinal
                        } else {
                            Legality::Ok
                        };
                        assert_eq!(m.overrides()[0].legality, expected);
                        let flagged = m
                            .diagnostics()
                            .iter()
                            .any(|d| d.code == DiagCode::IllegalOverride);
                        assert_eq!(flagged, expected != Legality::Ok);
                    }
                }
            }
        }
    }

    #[test]
    fn package_boundary_is_diagnosed() {
        let m = model(&[
            "package p; class A { int shared; }",
            "package q; class B extends A {}",
        ])
        .unwrap();
        assert!(m
            .diagnostics()
            .iter()
            .any(|d| d.code == DiagCode::PackageVisibility));
    }

    #[test]
    fn visible_members_nearest_wins() {
        let m = model(&[
            "class A { int x; private int hidden; void f() {} }",
            "class B extends A { String x; void g() {} }",
        ])
        .unwrap();
        let names: Vec<_> = m
            .visible_members("B")
            .iter()
            .map(|mi| mi.member_ref().to_string())
            .collect();
        assert_eq!(names, ["B.x", "B.g()", "A.f()"]);
    }
}
