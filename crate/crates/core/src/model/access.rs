//! Which bodies read, write or call which members.

use super::resolve::{Access, ClassUse, Reference, Visitor, Walker};
use super::{ClassModel, ClassScope, Layer, MemberRef, ResolveError, TypeEnv};
use crate::syntax::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

pub use super::resolve::Basis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AccessKind {
    Read,
    Write,
    Call,
}

impl fmt::Display for AccessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AccessKind::Read => "read",
            AccessKind::Write => "write",
            AccessKind::Call => "call",
        })
    }
}

/// The body an access happens in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "body", content = "signature", rename_all = "kebab-case")]
pub enum BodyId {
    Method(Signature),
    /// All field initializers of a class, treated as one pseudo-method.
    FieldInit,
    Constructor(Signature),
}

impl fmt::Display for BodyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyId::Method(s) => write!(f, "{s}"),
            BodyId::FieldInit => f.write_str("<init-fields>"),
            BodyId::Constructor(s) => write!(f, "<init>({})", s.params.join(",")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AccessEdge {
    pub class: String,
    pub source: BodyId,
    pub target: MemberRef,
    pub kind: AccessKind,
    pub basis: Basis,
    pub span: Span,
}

impl fmt::Display for AccessEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{} -> {} ({}", self.class, self.source, self.target, self.kind)?;
        match self.basis {
            Basis::ViaSuper => f.write_str(", via-super)"),
            Basis::ViaThis => f.write_str(", via-this)"),
            Basis::ViaOwnClass | Basis::ViaOtherClass => f.write_str(", via-class)"),
            Basis::ViaReceiver => f.write_str(", via-receiver)"),
            Basis::Bare => f.write_str(")"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AccessGraph {
    pub edges: Vec<AccessEdge>,
}

impl AccessGraph {
    pub fn from_class(&self, class: &str) -> impl Iterator<Item = &AccessEdge> {
        let class = class.to_string();
        self.edges.iter().filter(move |e| e.class == class)
    }
}

/// Everything the resolver learned about one class's bodies.
#[derive(Debug, Clone, Default)]
pub struct ClassAccess {
    pub edges: Vec<AccessEdge>,
    /// Model classes used as receiver types or instantiated with `new`.
    pub used_classes: BTreeSet<String>,
}

struct Collector {
    class: String,
    source: BodyId,
    edges: Vec<AccessEdge>,
    used: BTreeSet<String>,
}

impl Visitor for Collector {
    fn reference(&mut self, r: &Reference<'_>) -> Option<super::resolve::Rewrite> {
        let kinds: &[AccessKind] = match r.access {
            Access::Read => &[AccessKind::Read],
            Access::Write => &[AccessKind::Write],
            Access::ReadWrite => &[AccessKind::Read, AccessKind::Write],
            Access::Call => &[AccessKind::Call],
        };
        for &kind in kinds {
            self.edges.push(AccessEdge {
                class: self.class.clone(),
                source: self.source.clone(),
                target: r.target.member_ref(),
                kind,
                basis: r.basis,
                span: r.span,
            });
        }
        None
    }

    fn class_use(&mut self, class: &str, _how: ClassUse) {
        self.used.insert(class.to_string());
    }
}

/// Resolves every body of `decl` in `scope`. The declaration is cloned
/// internally; nothing is rewritten.
pub fn analyze_class(
    decl: &ClassDecl,
    scope: &ClassScope<'_>,
    env: &dyn TypeEnv,
    own_classes: &[String],
) -> Result<ClassAccess, ResolveError> {
    let class = decl.name.name.clone();
    let mut out = ClassAccess::default();
    let mut decl = decl.clone();
    let mut run = |source: BodyId, member: &mut Member| -> Result<(), ResolveError> {
        let mut c = Collector {
            class: class.clone(),
            source,
            edges: Vec::new(),
            used: BTreeSet::new(),
        };
        let mut w = Walker::new(scope, env, own_classes, &mut c);
        match member {
            Member::Field(f) => w.field_init(f)?,
            Member::Method(m) => w.method(m)?,
            Member::Constructor(k) => w.constructor(k)?,
        }
        out.edges.extend(c.edges);
        out.used_classes.extend(c.used);
        Ok(())
    };
    for member in &mut decl.members {
        let source = match member {
            Member::Field(f) if f.init.is_some() => BodyId::FieldInit,
            Member::Field(_) => continue,
            Member::Method(m) => BodyId::Method(m.signature()),
            Member::Constructor(c) => BodyId::Constructor(c.signature()),
        };
        run(source, member)?;
    }
    out.edges.sort();
    Ok(out)
}

impl TypeEnv for ClassModel {
    fn scope_of(&self, class: &str) -> Option<ClassScope<'_>> {
        let info = self.class(class)?;
        let mut layers = vec![Layer {
            table: &info.members,
            visible_only: false,
        }];
        for anc in self.ancestors(class) {
            layers.push(Layer {
                table: &anc.members,
                visible_only: true,
            });
        }
        Some(ClassScope { layers })
    }
}

impl ClassModel {
    /// The class plus all its superclasses, for `C.m` qualifiers.
    pub fn own_classes(&self, class: &str) -> Vec<String> {
        std::iter::once(class.to_string())
            .chain(self.ancestors(class).iter().map(|c| c.name.clone()))
            .collect()
    }

    pub fn analyze(&self, class: &str) -> Result<ClassAccess, ResolveError> {
        let info = self.class(class).expect("class registered in model");
        let scope = self.scope_of(class).expect("class registered in model");
        analyze_class(&info.decl, &scope, self, &self.own_classes(class))
    }
}

/// Resolves the bodies of every class in topological order, stopping at the
/// first resolution error.
pub fn compute_access_graph(model: &ClassModel) -> Result<AccessGraph, ResolveError> {
    let mut edges = Vec::new();
    for class in model.topological_order() {
        edges.extend(model.analyze(class)?.edges);
    }
    Ok(AccessGraph { edges })
}
