//! Pulls superclass members down into each subclass.
//!
//! Classes are processed superclass-first. A subclass is flattened against
//! the already-flattened form of its direct superclass, so members of the
//! whole chain arrive through one step. For every superclass member the
//! rule table in [`rules`] picks a fate; overridden members that are kept
//! get a fresh `name$Owner` name and every reference to them is rewritten.

mod ctor;
pub mod plan;
pub mod rename;
pub mod rules;

use crate::diag::{DiagCode, Diagnostic};
use crate::emit::{emit_class, EmitOptions};
use crate::model::resolve::{Reference, Rewrite, Visitor, Walker};
use crate::model::{
    access::analyze_class, override_legality, AccessKind, Basis, BodyId, ClassModel, ClassScope, Layer, MemberKey,
    MemberKind, MemberTable, ResolveError, TypeEnv,
};
use crate::syntax::*;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub use plan::{plans_to_json, FlattenPlan, MemberFate, RefForm, RewriteDirective, PLAN_SCHEMA};
pub use rename::fresh_name;
pub use rules::{decide, Decision, MemberFacts, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlattenError {
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error("{span}: {class} refers to super member {member}, which is not pulled down")]
    DanglingSuperRef { class: String, member: String, span: Span },
    #[error("{span}: cannot flatten {class}: {reason}")]
    Unsupported { class: String, reason: String, span: Span },
    #[error("{span}: {superclass} has no constructor taking {arity} argument(s), needed by {class}")]
    NoMatchingConstructor {
        class: String,
        superclass: String,
        arity: usize,
        span: Span,
    },
    #[error("{class} is not flattened because its superclass {superclass} could not be")]
    SuperclassFailed { class: String, superclass: String },
    #[error("no class named {0}")]
    UnknownClass(String),
}

impl FlattenError {
    pub fn span(&self) -> Option<Span> {
        match self {
            FlattenError::Resolve(e) => Some(e.span()),
            FlattenError::DanglingSuperRef { span, .. }
            | FlattenError::Unsupported { span, .. }
            | FlattenError::NoMatchingConstructor { span, .. } => Some(*span),
            FlattenError::SuperclassFailed { .. } | FlattenError::UnknownClass(_) => None,
        }
    }
}

/// A class with everything it inherits folded in. It has no `extends`
/// clause; `provenance[i]` names the class member `i` came from.
#[derive(Debug, Clone, PartialEq)]
pub struct FlattenedClass {
    pub package: Option<QualifiedName>,
    pub decl: ClassDecl,
    pub provenance: Vec<Option<String>>,
    /// Original name of each renamed member.
    pub renamed_from: Vec<Option<String>>,
}

impl FlattenedClass {
    /// A superclass-free class, unchanged.
    pub fn identity(package: Option<QualifiedName>, decl: ClassDecl) -> Self {
        let n = decl.members.len();
        FlattenedClass {
            package,
            decl,
            provenance: vec![None; n],
            renamed_from: vec![None; n],
        }
    }

    pub fn name(&self) -> &str {
        &self.decl.name.name
    }

    pub fn table(&self) -> MemberTable {
        MemberTable::from_decl(&self.decl).expect("flattened classes have unique members")
    }

    pub fn emit(&self, opts: &EmitOptions) -> String {
        let prov: Vec<Option<&str>> = self.provenance.iter().map(|p| p.as_deref()).collect();
        emit_class(self.package.as_ref(), &self.decl, &prov, opts)
    }

    /// Members that came from a superclass.
    pub fn pulled(&self) -> impl Iterator<Item = (&Member, &str)> {
        self.decl
            .members
            .iter()
            .zip(&self.provenance)
            .filter_map(|(m, p)| p.as_deref().map(|p| (m, p)))
    }
}

#[derive(Debug, Clone)]
pub struct Flattened {
    pub class: FlattenedClass,
    pub plan: FlattenPlan,
}

/// Superclasses before subclasses, siblings by name.
pub fn flatten_order(model: &ClassModel) -> Vec<String> {
    model.topological_order().to_vec()
}

#[derive(Debug, Clone, Default)]
pub struct FlattenOutcome {
    pub classes: BTreeMap<String, FlattenedClass>,
    pub plans: BTreeMap<String, FlattenPlan>,
    pub errors: BTreeMap<String, FlattenError>,
}

impl FlattenOutcome {
    pub fn diagnostics(&self) -> impl Iterator<Item = &Diagnostic> {
        self.plans.values().flat_map(|p| p.diagnostics.iter())
    }
}

/// Flattens every class. A failure is recorded per class; subclasses of a
/// failed class fail with [`FlattenError::SuperclassFailed`].
pub fn flatten_all(model: &ClassModel) -> FlattenOutcome {
    let mut out = FlattenOutcome::default();
    for name in flatten_order(model) {
        let sup = model.class(&name).and_then(|c| c.superclass.clone());
        let flat_super = match &sup {
            Some(s) => match out.classes.get(s) {
                Some(f) => Some(f),
                None => {
                    out.errors.insert(
                        name.clone(),
                        FlattenError::SuperclassFailed {
                            class: name.clone(),
                            superclass: s.clone(),
                        },
                    );
                    continue;
                }
            },
            None => None,
        };
        match flatten_class(model, &name, flat_super) {
            Ok(r) => {
                out.classes.insert(name.clone(), r.class);
                out.plans.insert(name, r.plan);
            }
            Err(e) => {
                out.errors.insert(name, e);
            }
        }
    }
    out
}

fn package_name(pkg: &Option<String>, span: Span) -> Option<QualifiedName> {
    pkg.as_ref().map(|p| QualifiedName {
        parts: p.split('.').map(|s| Ident::new(s, span)).collect(),
        span,
    })
}

/// Flattens `class` against `flat_super`, the flattened form of its direct
/// superclass (required when the class has one).
pub fn flatten_class(model: &ClassModel, class: &str, flat_super: Option<&FlattenedClass>) -> Result<Flattened, FlattenError> {
    let info = model.class(class).ok_or_else(|| FlattenError::UnknownClass(class.to_string()))?;
    model.analyze(class)?;
    let package = package_name(&info.package, info.decl.span);
    let Some(superclass) = &info.superclass else {
        return Ok(Flattened {
            class: FlattenedClass::identity(package, info.decl.clone()),
            plan: FlattenPlan::empty(class),
        });
    };
    let f = flat_super.ok_or_else(|| FlattenError::SuperclassFailed {
        class: class.to_string(),
        superclass: superclass.clone(),
    })?;
    Flattener::new(model, info.decl.clone(), &info.members, f)?.run(package)
}

struct Flattener<'a> {
    model: &'a ClassModel,
    sub: ClassDecl,
    sub_table: &'a MemberTable,
    sup: &'a FlattenedClass,
    sup_table: MemberTable,
    /// Provenance of each superclass member key.
    owner: BTreeMap<MemberKey, String>,
}

impl<'a> Flattener<'a> {
    fn new(model: &'a ClassModel, sub: ClassDecl, sub_table: &'a MemberTable, sup: &'a FlattenedClass) -> Result<Self, FlattenError> {
        let sup_table = sup.table();
        let mut owner = BTreeMap::new();
        for (m, p) in sup.decl.members.iter().zip(&sup.provenance) {
            let key = match m {
                Member::Field(f) => MemberKey::attribute(&f.name.name),
                Member::Method(m) => MemberKey::method(&m.signature()),
                Member::Constructor(_) => continue,
            };
            owner.insert(key, p.clone().unwrap_or_else(|| sup.name().to_string()));
        }
        Ok(Flattener {
            model,
            sub,
            sub_table,
            sup,
            sup_table,
            owner,
        })
    }

    fn class(&self) -> &str {
        &self.sub.name.name
    }

    fn sup_own_classes(&self) -> Vec<String> {
        self.model.own_classes(self.sup.name())
    }

    fn run(self, package: Option<QualifiedName>) -> Result<Flattened, FlattenError> {
        let class = self.class().to_string();
        let sup_name = self.sup.name().to_string();
        let sup_ctors: Vec<&ConstructorDecl> = self.sup.decl.constructors().collect();
        let links = ctor::link(&self.sub, &sup_ctors, &sup_name)?;

        let own = self.sup_own_classes();
        let scope = ClassScope::standalone(&self.sup_table);
        let access = analyze_class(&self.sup.decl, &scope, self.model, &own)?;
        let edges: Vec<_> = access
            .edges
            .iter()
            .filter(|e| e.basis.is_self() && e.target.class == sup_name)
            .collect();

        // bodies whose accesses keep members alive
        let mut live: BTreeSet<BodyId> = BTreeSet::new();
        live.insert(BodyId::FieldInit);
        for l in &links {
            if let Some(t) = l.target {
                live.insert(BodyId::Constructor(sup_ctors[t].signature()));
            }
        }

        let facts = |m: &crate::model::MemberInfo, used: bool| {
            let sub = self.sub_table.get(&m.key);
            MemberFacts {
                kind: m.kind(),
                visible: m.is_visible(),
                overridden: sub.is_some(),
                legal: sub.is_none_or(|s| override_legality(s, m).is_ok()),
                used,
            }
        };

        let mut reached: BTreeSet<MemberKey> = BTreeSet::new();
        for m in &self.sup_table.methods {
            if m.is_visible() && decide(&facts(m, false)).1.is_pulled() {
                live.insert(BodyId::Method(m.key.signature().expect("method key")));
            }
        }
        loop {
            let mut grew = false;
            let calls: Vec<&MemberKey> = edges
                .iter()
                .filter(|e| e.kind == AccessKind::Call && live.contains(&e.source))
                .map(|e| &e.target.member)
                .collect();
            for key in calls {
                let Some(m) = self.sup_table.method(key) else { continue };
                if m.is_visible() || !reached.insert(key.clone()) {
                    continue;
                }
                grew = true;
                if decide(&facts(m, true)).1.is_pulled() {
                    live.insert(BodyId::Method(key.signature().expect("method key")));
                }
            }
            if !grew {
                break;
            }
        }
        let touched: BTreeSet<&MemberKey> = edges
            .iter()
            .filter(|e| e.kind != AccessKind::Call && live.contains(&e.source))
            .map(|e| &e.target.member)
            .collect();

        let mut decided: Vec<(&crate::model::MemberInfo, Rule, Decision)> = Vec::new();
        for m in self.sup_table.iter() {
            let used = match m.kind() {
                MemberKind::Attribute => touched.contains(&m.key),
                MemberKind::Method => reached.contains(&m.key),
            };
            let (rule, decision) = decide(&facts(m, used));
            decided.push((m, rule, decision));
        }

        // final names, attributes first, then methods, in superclass order
        let mut taken: BTreeSet<String> = self.sub_table.iter().map(|m| m.name().to_string()).collect();
        for (m, _, d) in &decided {
            if *d == Decision::PullDown {
                taken.insert(m.name().to_string());
            }
        }
        let mut names: BTreeMap<MemberKey, String> = BTreeMap::new();
        let mut fates = Vec::new();
        let mut diagnostics = Vec::new();
        for (m, rule, decision) in &decided {
            let owner = self.owner[&m.key].clone();
            let new_name = match decision {
                Decision::PullDownRenamed => {
                    let n = fresh_name(m.name(), &owner, &taken);
                    taken.insert(n.clone());
                    Some(n)
                }
                _ => None,
            };
            if decision.is_pulled() {
                names.insert(m.key.clone(), new_name.clone().unwrap_or_else(|| m.name().to_string()));
            }
            if *decision == Decision::DropAnomaly {
                diagnostics.push(Diagnostic {
                    code: DiagCode::Anomaly,
                    class: class.clone(),
                    message: format!(
                        "private {} {}.{} is unreachable from anything pulled down; dropped ({rule})",
                        m.kind(),
                        owner,
                        m.key
                    ),
                    span: Some(m.span),
                });
            }
            fates.push(MemberFate {
                kind: m.kind(),
                owner,
                member: m.key.clone(),
                rule: *rule,
                decision: *decision,
                new_name,
            });
        }

        let mut rewrites = Vec::new();
        let sup_decl = self.rewrite_super(&scope, &own, &names, &mut rewrites)?;
        let mut sub_decl = self.rewrite_sub(&names, &mut rewrites)?;

        // constructors
        let mut sup_attrs: BTreeSet<String> = self.sup_table.attributes.iter().map(|a| a.name().to_string()).collect();
        sup_attrs.extend(names.iter().filter(|(k, _)| k.kind == MemberKind::Attribute).map(|(_, n)| n.clone()));
        let rewritten_ctors: Vec<&ConstructorDecl> = sup_decl.constructors().collect();
        let mut synthesized = None;
        for l in &links {
            let Some(t) = l.target else { continue };
            let target = rewritten_ctors[t];
            let stmts = ctor::field_assignments(target, &sup_attrs, &class)?;
            match l.member {
                Some(i) => {
                    let Member::Constructor(c) = &mut sub_decl.members[i] else {
                        unreachable!("link points at a constructor")
                    };
                    let shadow = c.params.iter().map(|p| p.name.name.clone()).collect();
                    let stmts = ctor::instantiate(&stmts, &target.params, &l.args, &shadow);
                    if l.explicit {
                        if stmts.is_empty() {
                            let span = c.body.stmts[0].span();
                            c.body.stmts[0] = Stmt::CtorCall {
                                target: CtorTarget::Super,
                                args: Vec::new(),
                                span,
                            };
                        } else {
                            c.body.stmts.splice(0..1, stmts);
                        }
                    } else {
                        c.body.stmts.splice(0..0, stmts);
                    }
                }
                None if !stmts.is_empty() => {
                    let span = self.sub.name.span;
                    synthesized = Some(Member::Constructor(ConstructorDecl {
                        visibility: self.sub.visibility,
                        name: Ident::new(class.clone(), span),
                        params: Vec::new(),
                        body: Block { stmts, span },
                        span,
                    }));
                }
                None => {}
            }
        }

        // assemble
        let n_own = sub_decl.members.len();
        let mut members = std::mem::take(&mut sub_decl.members);
        let mut provenance = vec![None; n_own];
        let mut renamed_from = vec![None; n_own];
        if let Some(s) = synthesized {
            members.push(s);
            provenance.push(None);
            renamed_from.push(None);
        }
        let mut chain: Vec<String> = self.model.ancestors(&class).iter().rev().map(|c| c.name.clone()).collect();
        for o in self.owner.values() {
            if !chain.contains(o) {
                chain.push(o.clone());
            }
        }
        for group in &chain {
            for member in &sup_decl.members {
                let key = match member {
                    Member::Field(f) => MemberKey::attribute(&f.name.name),
                    Member::Method(m) => MemberKey::method(&m.signature()),
                    Member::Constructor(_) => continue,
                };
                if &self.owner[&key] != group {
                    continue;
                }
                let Some(new) = names.get(&key) else { continue };
                let mut member = member.clone();
                let old = key.name.clone();
                match &mut member {
                    Member::Field(f) => f.name.name = new.clone(),
                    Member::Method(m) => m.name.name = new.clone(),
                    Member::Constructor(_) => unreachable!(),
                }
                members.push(member);
                provenance.push(Some(group.clone()));
                renamed_from.push((new != &old).then_some(old));
            }
        }

        let decl = ClassDecl {
            visibility: sub_decl.visibility,
            name: sub_decl.name.clone(),
            extends: None,
            members,
            span: sub_decl.span,
        };
        diagnostics.sort();
        Ok(Flattened {
            class: FlattenedClass {
                package,
                decl,
                provenance,
                renamed_from,
            },
            plan: FlattenPlan {
                class,
                superclass: Some(sup_name),
                fates,
                rewrites,
                diagnostics,
            },
        })
    }

    /// Renames references inside the superclass bodies that will be pulled.
    fn rewrite_super(
        &self,
        scope: &ClassScope<'_>,
        own: &[String],
        names: &BTreeMap<MemberKey, String>,
        rewrites: &mut Vec<RewriteDirective>,
    ) -> Result<ClassDecl, FlattenError> {
        let mut decl = self.sup.decl.clone();
        let mut v = SuperBodies {
            sub: self.class(),
            sup: self.sup.name(),
            names,
            owner: &self.owner,
            rewrites: Vec::new(),
        };
        for member in &mut decl.members {
            let mut w = Walker::new(scope, self.model, own, &mut v);
            walk_member(&mut w, member)?;
        }
        rewrites.append(&mut v.rewrites);
        Ok(decl)
    }

    /// Retargets `super.` and superclass-qualified references in the
    /// subclass's own bodies.
    fn rewrite_sub(&self, names: &BTreeMap<MemberKey, String>, rewrites: &mut Vec<RewriteDirective>) -> Result<ClassDecl, FlattenError> {
        let scope = ClassScope {
            layers: vec![
                Layer {
                    table: self.sub_table,
                    visible_only: false,
                },
                Layer {
                    table: &self.sup_table,
                    visible_only: true,
                },
            ],
        };
        let own = self.model.own_classes(self.class());
        let mut decl = self.sub.clone();
        let mut v = SubBodies {
            sub: self.class(),
            names,
            owner: &self.owner,
            rewrites: Vec::new(),
            errors: Vec::new(),
        };
        for member in &mut decl.members {
            let mut w = Walker::new(&scope, self.model as &dyn TypeEnv, &own, &mut v);
            walk_member(&mut w, member)?;
        }
        if let Some(e) = v.errors.into_iter().next() {
            return Err(e);
        }
        rewrites.append(&mut v.rewrites);
        Ok(decl)
    }
}

fn walk_member<V: Visitor>(w: &mut Walker<'_, '_, V>, member: &mut Member) -> Result<(), ResolveError> {
    match member {
        Member::Field(f) => w.field_init(f),
        Member::Method(m) => w.method(m),
        Member::Constructor(c) => w.constructor(c),
    }
}

fn form(basis: Basis) -> RefForm {
    match basis {
        Basis::Bare => RefForm::Bare,
        Basis::ViaThis => RefForm::This,
        Basis::ViaSuper => RefForm::Super,
        _ => RefForm::Class,
    }
}

struct SuperBodies<'x> {
    sub: &'x str,
    sup: &'x str,
    names: &'x BTreeMap<MemberKey, String>,
    owner: &'x BTreeMap<MemberKey, String>,
    rewrites: Vec<RewriteDirective>,
}

impl Visitor for SuperBodies<'_> {
    fn reference(&mut self, r: &Reference<'_>) -> Option<Rewrite> {
        if !r.basis.is_self() || r.target.owner != self.sup {
            return None;
        }
        let new = self.names.get(&r.target.key)?;
        let rw = match r.basis {
            Basis::ViaOwnClass | Basis::ViaSuper => Rewrite::Unqualify(new.clone()),
            _ if new != r.target.name() => Rewrite::Rename(new.clone()),
            _ => return None,
        };
        self.rewrites.push(RewriteDirective {
            class: self.sub.to_string(),
            in_pulled_body: true,
            site: r.span,
            form: form(r.basis),
            kind: r.target.kind(),
            old: r.target.name().to_string(),
            new: new.clone(),
            owner: self.owner[&r.target.key].clone(),
        });
        Some(rw)
    }
}

struct SubBodies<'x> {
    sub: &'x str,
    names: &'x BTreeMap<MemberKey, String>,
    owner: &'x BTreeMap<MemberKey, String>,
    rewrites: Vec<RewriteDirective>,
    errors: Vec<FlattenError>,
}

impl Visitor for SubBodies<'_> {
    fn reference(&mut self, r: &Reference<'_>) -> Option<Rewrite> {
        if !r.basis.is_self() || r.layer == 0 {
            return None;
        }
        let Some(new) = self.names.get(&r.target.key) else {
            self.errors.push(FlattenError::DanglingSuperRef {
                class: self.sub.to_string(),
                member: r.target.key.to_string(),
                span: r.span,
            });
            return None;
        };
        let rw = match r.basis {
            Basis::ViaSuper | Basis::ViaOwnClass => Rewrite::Unqualify(new.clone()),
            _ if new != r.target.name() => Rewrite::Rename(new.clone()),
            _ => return None,
        };
        self.rewrites.push(RewriteDirective {
            class: self.sub.to_string(),
            in_pulled_body: false,
            site: r.span,
            form: form(r.basis),
            kind: r.target.kind(),
            old: r.target.name().to_string(),
            new: new.clone(),
            owner: self.owner[&r.target.key].clone(),
        });
        Some(rw)
    }
}
