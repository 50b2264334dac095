//! Static name resolution inside method, constructor and initializer
//! bodies.
//!
//! Names resolve in order: locals and parameters, then members of the
//! current class, then visible members of its superclasses (nearest
//! first). `super.m` starts the search one class up. Calls pick an overload
//! by exact arity and exact declared parameter type names.
//!
//! The walker can also rewrite the references it resolves, which is how the
//! flattener renames and unqualifies member accesses.

use super::{MemberInfo, MemberKind, MemberTable};
use crate::syntax::*;
use thiserror::Error;

/// `java.lang.Object` methods that may be called without any declaration
/// in the model.
pub const OBJECT_METHODS: &[&str] = &[
    "equals", "hashCode", "toString", "getClass", "clone", "finalize", "notify", "notifyAll",
    "wait",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("{span}: cannot resolve `{name}` in {class}")]
    UnresolvedName {
        class: String,
        name: String,
        span: Span,
    },
    #[error("{span}: call to `{name}` in {class} matches {candidates} overloads exactly (need one)")]
    AmbiguousCall {
        class: String,
        name: String,
        candidates: usize,
        span: Span,
    },
}

impl ResolveError {
    pub fn span(&self) -> Span {
        match self {
            ResolveError::UnresolvedName { span, .. } | ResolveError::AmbiguousCall { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Layer<'a> {
    pub table: &'a MemberTable,
    /// Superclass layers only expose non-private members.
    pub visible_only: bool,
}

/// Member lookup context of one class: its own table first, then each
/// superclass table, nearest first.
#[derive(Debug, Clone)]
pub struct ClassScope<'a> {
    pub layers: Vec<Layer<'a>>,
}

impl<'a> ClassScope<'a> {
    pub fn standalone(table: &'a MemberTable) -> Self {
        ClassScope {
            layers: vec![Layer {
                table,
                visible_only: false,
            }],
        }
    }

    pub fn class(&self) -> &'a str {
        &self.layers[0].table.class
    }

    fn layer_members(layer: &Layer<'a>, kind: MemberKind) -> impl Iterator<Item = &'a MemberInfo> {
        let list = match kind {
            MemberKind::Attribute => &layer.table.attributes,
            MemberKind::Method => &layer.table.methods,
        };
        let visible_only = layer.visible_only;
        list.iter().filter(move |m| !visible_only || m.is_visible())
    }

    /// Layers starting at `from` (0 = own class).
    fn from(&self, from: usize) -> &[Layer<'a>] {
        self.layers.get(from..).unwrap_or(&[])
    }

    /// Index of the layer holding class `name`.
    pub fn layer_of(&self, name: &str) -> Option<usize> {
        self.layers.iter().position(|l| l.table.class == name)
    }

    pub fn attribute(&self, from: usize, name: &str) -> Option<(usize, &'a MemberInfo)> {
        for (i, layer) in self.from(from).iter().enumerate() {
            if let Some(m) = Self::layer_members(layer, MemberKind::Attribute).find(|m| m.key.name == name) {
                return Some((from + i, m));
            }
        }
        None
    }

    /// Methods called `name`, one per signature, nearest declaration first.
    pub fn methods_named(&self, from: usize, name: &str) -> Vec<(usize, &'a MemberInfo)> {
        let mut out: Vec<(usize, &'a MemberInfo)> = Vec::new();
        for (i, layer) in self.from(from).iter().enumerate() {
            for m in Self::layer_members(layer, MemberKind::Method).filter(|m| m.key.name == name) {
                if !out.iter().any(|(_, o)| o.key.params == m.key.params) {
                    out.push((from + i, m));
                }
            }
        }
        out
    }
}

/// Gives the resolver access to classes other than the one being walked,
/// for `receiver.member` and `ClassName.member` forms.
pub trait TypeEnv {
    fn scope_of(&self, class: &str) -> Option<ClassScope<'_>>;

    fn is_class(&self, name: &str) -> bool {
        self.scope_of(name).is_some()
    }
}

/// An environment with no classes at all.
pub struct EmptyEnv;

impl TypeEnv for EmptyEnv {
    fn scope_of(&self, _: &str) -> Option<ClassScope<'_>> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Access {
    Read,
    Write,
    ReadWrite,
    Call,
}

/// How a member reference was spelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Unqualified name.
    Bare,
    ViaThis,
    ViaSuper,
    /// `C.m` where `C` is the current class or one of its superclasses.
    ViaOwnClass,
    /// `C.m` for some other class.
    ViaOtherClass,
    /// `expr.m` on an object of a model class.
    ViaReceiver,
}

impl Basis {
    /// References that reach the member through the current object (or its
    /// class), as opposed to through some other object.
    pub fn is_self(self) -> bool {
        matches!(self, Basis::Bare | Basis::ViaThis | Basis::ViaSuper | Basis::ViaOwnClass)
    }
}

#[derive(Debug, Clone)]
pub struct Reference<'m> {
    pub target: &'m MemberInfo,
    /// Scope layer the target was found in; 0 is the walked class itself.
    /// Meaningless for `ViaReceiver` / `ViaOtherClass`.
    pub layer: usize,
    pub access: Access,
    pub basis: Basis,
    /// Span of the member name at the reference site.
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rewrite {
    /// Keep the qualifier, change the name.
    Rename(String),
    /// Drop a `super.` or `C.` qualifier and use this name bare (falls back
    /// to `this.name` when a local would shadow it).
    Unqualify(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassUse {
    Receiver,
    New,
}

pub trait Visitor {
    fn reference(&mut self, _r: &Reference<'_>) -> Option<Rewrite> {
        None
    }

    fn class_use(&mut self, _class: &str, _how: ClassUse) {}
}

/// Static type of an expression, as far as the subset needs it.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Ty {
    Known(String),
    Null,
    Unknown,
    /// The expression is a class name (only meaningful as a qualifier).
    TypeName(String),
    Void,
}

impl Ty {
    fn known(s: &str) -> Ty {
        Ty::Known(s.to_string())
    }

    fn from_decl(ty: Option<&String>) -> Ty {
        match ty {
            Some(t) => Ty::Known(t.clone()),
            None => Ty::Void,
        }
    }

    fn matches_param(&self, param: &str) -> bool {
        match self {
            Ty::Unknown => true,
            Ty::Null => !matches!(param, "int" | "long" | "double" | "boolean"),
            Ty::Known(t) => t == param,
            Ty::TypeName(_) | Ty::Void => false,
        }
    }

    fn is(&self, name: &str) -> bool {
        matches!(self, Ty::Known(t) if t == name)
    }
}

fn literal_ty(kind: crate::syntax::lexer::LiteralKind) -> Ty {
    match crate::syntax::parser::literal_type(kind) {
        Some(t) => Ty::known(t),
        None => Ty::Null,
    }
}

pub struct Walker<'s, 'm, V: Visitor> {
    scope: &'s ClassScope<'m>,
    env: &'s dyn TypeEnv,
    /// Class names whose `C.m` qualifier refers to the walked class or a
    /// superclass in `scope`.
    own_classes: &'s [String],
    visitor: &'s mut V,
    locals: Vec<Vec<(String, String)>>,
}

impl<'s, 'm, V: Visitor> Walker<'s, 'm, V> {
    pub fn new(
        scope: &'s ClassScope<'m>,
        env: &'s dyn TypeEnv,
        own_classes: &'s [String],
        visitor: &'s mut V,
    ) -> Self {
        Walker {
            scope,
            env,
            own_classes,
            visitor,
            locals: Vec::new(),
        }
    }

    fn class(&self) -> String {
        self.scope.class().to_string()
    }

    fn unresolved<T>(&self, name: &str, span: Span) -> Result<T, ResolveError> {
        Err(ResolveError::UnresolvedName {
            class: self.class(),
            name: name.to_string(),
            span,
        })
    }

    fn local(&self, name: &str) -> Option<&str> {
        self.locals
            .iter()
            .rev()
            .flat_map(|s| s.iter().rev())
            .find(|(n, _)| n == name)
            .map(|(_, t)| t.as_str())
    }

    fn declare(&mut self, name: &str, ty: String) {
        if let Some(top) = self.locals.last_mut() {
            top.push((name.to_string(), ty));
        }
    }

    pub fn method(&mut self, m: &mut MethodDecl) -> Result<(), ResolveError> {
        self.locals.push(m.params.iter().map(|p| (p.name.name.clone(), p.ty.to_string())).collect());
        let r = self.block(&mut m.body);
        self.locals.clear();
        r
    }

    pub fn constructor(&mut self, c: &mut ConstructorDecl) -> Result<(), ResolveError> {
        self.locals.push(c.params.iter().map(|p| (p.name.name.clone(), p.ty.to_string())).collect());
        let r = self.block(&mut c.body);
        self.locals.clear();
        r
    }

    pub fn field_init(&mut self, f: &mut FieldDecl) -> Result<(), ResolveError> {
        self.locals.clear();
        if let Some(init) = &mut f.init {
            self.expr(init)?;
        }
        Ok(())
    }

    /// Walks a statement list with the given names already in scope (used
    /// for constructor statements being moved into another body).
    pub fn stmts_with_locals(
        &mut self,
        stmts: &mut [Stmt],
        locals: Vec<(String, String)>,
    ) -> Result<(), ResolveError> {
        self.locals.push(locals);
        let mut r = Ok(());
        for s in stmts {
            r = self.stmt(s);
            if r.is_err() {
                break;
            }
        }
        self.locals.clear();
        r
    }

    fn block(&mut self, b: &mut Block) -> Result<(), ResolveError> {
        self.locals.push(Vec::new());
        for s in &mut b.stmts {
            self.stmt(s)?;
        }
        self.locals.pop();
        Ok(())
    }

    fn nested(&mut self, s: &mut Stmt) -> Result<(), ResolveError> {
        self.locals.push(Vec::new());
        let r = self.stmt(s);
        self.locals.pop();
        r
    }

    fn stmt(&mut self, s: &mut Stmt) -> Result<(), ResolveError> {
        match s {
            Stmt::Local { ty, name, init, .. } => {
                if let Some(e) = init {
                    self.expr(e)?;
                }
                self.declare(&name.name, ty.to_string());
            }
            Stmt::Expr { expr, .. } => {
                self.expr(expr)?;
            }
            Stmt::If {
                cond,
                then_branch,
                else_branch,
                ..
            } => {
                self.expr(cond)?;
                self.nested(then_branch)?;
                if let Some(e) = else_branch {
                    self.nested(e)?;
                }
            }
            Stmt::While { cond, body, .. } => {
                self.expr(cond)?;
                self.nested(body)?;
            }
            Stmt::Return { value, .. } => {
                if let Some(v) = value {
                    self.expr(v)?;
                }
            }
            Stmt::Block(b) => self.block(b)?,
            Stmt::CtorCall { args, .. } => {
                for a in args {
                    self.expr(a)?;
                }
            }
        }
        Ok(())
    }

    fn report(&mut self, r: Reference<'m>) -> Option<Rewrite> {
        self.visitor.reference(&r)
    }

    fn expr(&mut self, e: &mut Expr) -> Result<Ty, ResolveError> {
        self.expr_as(e, Access::Read)
    }

    /// Resolves `e`; `access` describes how a member named directly by `e`
    /// is used (read, written, or both).
    fn expr_as(&mut self, e: &mut Expr, access: Access) -> Result<Ty, ResolveError> {
        let span = e.span;
        let ty = match &mut e.kind {
            ExprKind::Literal { kind, .. } => literal_ty(*kind),
            ExprKind::This => Ty::Known(self.class()),
            ExprKind::Super => self.unresolved("super", span)?,
            ExprKind::Name(id) => {
                if let Some(t) = self.local(&id.name) {
                    return Ok(Ty::known(t));
                }
                if let Some((layer, target)) = self.scope.attribute(0, &id.name) {
                    let ty = Ty::from_decl(target.ty.as_ref());
                    if let Some(rw) = self.report(Reference {
                        target,
                        layer,
                        access,
                        basis: Basis::Bare,
                        span: id.span,
                    }) {
                        let (Rewrite::Rename(n) | Rewrite::Unqualify(n)) = rw;
                        id.name = n;
                    }
                    return Ok(ty);
                }
                if self.env.is_class(&id.name) || self.own_classes.contains(&id.name) {
                    return Ok(Ty::TypeName(id.name.clone()));
                }
                return self.unresolved(&id.name, id.span);
            }
            ExprKind::FieldAccess { .. } => return self.field_access(e, access),
            ExprKind::Call { .. } => return self.call(e),
            ExprKind::New { class, args } => {
                for a in args.iter_mut() {
                    self.expr(a)?;
                }
                if self.env.is_class(&class.name) {
                    self.visitor.class_use(&class.name, ClassUse::New);
                }
                Ty::Known(class.name.clone())
            }
            ExprKind::Index { target, index } => {
                let t = self.expr(target)?;
                self.expr(index)?;
                match t {
                    Ty::Known(s) if s.ends_with("[]") => Ty::Known(s.trim_end_matches("[]").to_string()),
                    _ => Ty::Unknown,
                }
            }
            ExprKind::Unary { op, operand } => {
                let t = if op.mutates() {
                    self.expr_as(operand, Access::ReadWrite)?
                } else {
                    self.expr(operand)?
                };
                if *op == UnaryOp::Not {
                    Ty::known("boolean")
                } else {
                    t
                }
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let l = self.expr(lhs)?;
                let r = self.expr(rhs)?;
                binary_type(*op, &l, &r)
            }
            ExprKind::Assign { op, target, value } => {
                let mode = if *op == AssignOp::Assign {
                    Access::Write
                } else {
                    Access::ReadWrite
                };
                let t = self.expr_as(target, mode)?;
                self.expr(value)?;
                t
            }
            ExprKind::Paren(inner) => self.expr_as(inner, access)?,
        };
        Ok(ty)
    }

    /// Type of a qualifier. Unlike a plain name, an unresolvable identifier
    /// here is taken to be a class outside the model (e.g. `System`).
    fn qualifier(&mut self, q: &mut Expr) -> Result<Ty, ResolveError> {
        if let ExprKind::Name(id) = &q.kind {
            if self.local(&id.name).is_none() && self.scope.attribute(0, &id.name).is_none() {
                return Ok(Ty::TypeName(id.name.clone()));
            }
        }
        self.expr(q)
    }

    /// Scope and starting layer for `C.m` when `C` is one of our own
    /// classes.
    fn own_class_layer(&self, class: &str) -> Option<usize> {
        if !self.own_classes.iter().any(|c| c == class) {
            return None;
        }
        if class == self.scope.class() {
            return Some(0);
        }
        // an ancestor folded into a flattened layer lives in the last one
        Some(self.scope.layer_of(class).unwrap_or(self.scope.layers.len() - 1))
    }

    fn field_access(&mut self, e: &mut Expr, access: Access) -> Result<Ty, ResolveError> {
        let ExprKind::FieldAccess { target, name } = &mut e.kind else {
            unreachable!()
        };
        let name_span = name.span;
        match &target.kind {
            ExprKind::This | ExprKind::Super => {
                let via_super = matches!(target.kind, ExprKind::Super);
                let from = usize::from(via_super);
                let Some((layer, member)) = self.scope.attribute(from, &name.name) else {
                    return self.unresolved(&name.name, name_span);
                };
                let ty = Ty::from_decl(member.ty.as_ref());
                let basis = if via_super { Basis::ViaSuper } else { Basis::ViaThis };
                let rw = self.report(Reference {
                    target: member,
                    layer,
                    access,
                    basis,
                    span: name_span,
                });
                self.apply_qualified(e, rw, true);
                return Ok(ty);
            }
            _ => {}
        }
        let qty = self.qualifier(target)?;
        match qty {
            Ty::TypeName(class) => {
                if let Some(from) = self.own_class_layer(&class) {
                    if let Some((layer, member)) = self.scope.attribute(from, &name.name) {
                        let ty = Ty::from_decl(member.ty.as_ref());
                        let rw = self.report(Reference {
                            target: member,
                            layer,
                            access,
                            basis: Basis::ViaOwnClass,
                            span: name_span,
                        });
                        self.apply_qualified(e, rw, false);
                        return Ok(ty);
                    }
                }
                self.foreign_attribute(&class, e, access, Basis::ViaOtherClass)
            }
            Ty::Known(class) => {
                if class.ends_with("[]") && name.name == "length" {
                    return Ok(Ty::known("int"));
                }
                self.foreign_attribute(&class, e, access, Basis::ViaReceiver)
            }
            _ => Ok(Ty::Unknown),
        }
    }

    fn foreign_attribute(&mut self, class: &str, e: &mut Expr, access: Access, basis: Basis) -> Result<Ty, ResolveError> {
        let ExprKind::FieldAccess { name, .. } = &mut e.kind else {
            unreachable!()
        };
        let Some(scope) = self.env.scope_of(class) else {
            return Ok(Ty::Unknown);
        };
        self.visitor.class_use(class, ClassUse::Receiver);
        let Some((layer, member)) = scope.attribute(0, &name.name) else {
            return Ok(Ty::Unknown);
        };
        let ty = Ty::from_decl(member.ty.as_ref());
        let member = member.clone();
        let span = name.span;
        let rw = self.visitor.reference(&Reference {
            target: &member,
            layer,
            access,
            basis,
            span,
        });
        if let Some(Rewrite::Rename(n)) = rw {
            name.name = n;
        }
        Ok(ty)
    }

    /// Applies a rewrite to `this.x`, `super.x`, `C.x`, `super.f(..)` or
    /// `C.f(..)`.
    fn apply_qualified(&mut self, e: &mut Expr, rw: Option<Rewrite>, keep_this: bool) {
        let Some(rw) = rw else { return };
        let span = e.span;
        let shadowed = |w: &Self, n: &str| w.local(n).is_some();
        match &mut e.kind {
            ExprKind::FieldAccess { target, name } => match rw {
                Rewrite::Rename(n) => name.name = n,
                Rewrite::Unqualify(n) => {
                    let is_this = matches!(target.kind, ExprKind::This);
                    if (keep_this && is_this) || shadowed(self, &n) {
                        let this = Expr::new(ExprKind::This, target.span);
                        let id = Ident::new(n, name.span);
                        e.kind = ExprKind::FieldAccess {
                            target: Box::new(this),
                            name: id,
                        };
                    } else {
                        e.kind = ExprKind::Name(Ident::new(n, name.span));
                    }
                    e.span = span;
                }
            },
            ExprKind::Call { receiver, name, .. } => match rw {
                Rewrite::Rename(n) => name.name = n,
                Rewrite::Unqualify(n) => {
                    if !(keep_this && matches!(receiver.as_deref().map(|r| &r.kind), Some(ExprKind::This))) {
                        *receiver = None;
                    }
                    name.name = n;
                }
            },
            _ => {}
        }
    }

    fn select<'x>(
        &self,
        candidates: Vec<(usize, &'x MemberInfo)>,
        args: &[Ty],
        name: &str,
        span: Span,
        strict: bool,
    ) -> Result<Option<(usize, &'x MemberInfo)>, ResolveError> {
        let applicable: Vec<_> = candidates
            .into_iter()
            .filter(|(_, m)| {
                m.key.params.len() == args.len()
                    && m.key.params.iter().zip(args).all(|(p, a)| a.matches_param(p))
            })
            .collect();
        if applicable.len() == 1 {
            return Ok(applicable.into_iter().next());
        }
        if !strict {
            return Ok(None);
        }
        Err(ResolveError::AmbiguousCall {
            class: self.class(),
            name: name.to_string(),
            candidates: applicable.len(),
            span,
        })
    }

    fn call(&mut self, e: &mut Expr) -> Result<Ty, ResolveError> {
        let ExprKind::Call { receiver, name, args } = &mut e.kind else {
            unreachable!()
        };
        let mut arg_tys = Vec::with_capacity(args.len());
        for a in args.iter_mut() {
            arg_tys.push(self.expr(a)?);
        }
        let name_span = name.span;
        let method_name = name.name.clone();
        let (from, basis) = match receiver.as_deref_mut() {
            None => (0, Basis::Bare),
            Some(Expr { kind: ExprKind::This, .. }) => (0, Basis::ViaThis),
            Some(Expr { kind: ExprKind::Super, .. }) => (1, Basis::ViaSuper),
            Some(r) => {
                let qty = self.qualifier(r)?;
                return match qty {
                    Ty::TypeName(class) => {
                        if let Some(from) = self.own_class_layer(&class) {
                            let candidates = self.scope.methods_named(from, &method_name);
                            if let Some((layer, m)) = self.select(candidates, &arg_tys, &method_name, name_span, false)? {
                                let ty = Ty::from_decl(m.ty.as_ref());
                                let rw = self.report(Reference {
                                    target: m,
                                    layer,
                                    access: Access::Call,
                                    basis: Basis::ViaOwnClass,
                                    span: name_span,
                                });
                                self.apply_qualified(e, rw, false);
                                return Ok(ty);
                            }
                        }
                        self.foreign_call(&class, e, &arg_tys, Basis::ViaOtherClass)
                    }
                    Ty::Known(class) => self.foreign_call(&class, e, &arg_tys, Basis::ViaReceiver),
                    _ => Ok(Ty::Unknown),
                };
            }
        };
        let candidates = self.scope.methods_named(from, &method_name);
        if candidates.is_empty() {
            if OBJECT_METHODS.contains(&method_name.as_str()) {
                return Ok(Ty::Unknown);
            }
            return self.unresolved(&method_name, name_span);
        }
        let Some((layer, m)) = self.select(candidates, &arg_tys, &method_name, name_span, true)? else {
            unreachable!("strict selection returns a match or an error")
        };
        let ty = Ty::from_decl(m.ty.as_ref());
        let rw = self.report(Reference {
            target: m,
            layer,
            access: Access::Call,
            basis,
            span: name_span,
        });
        match basis {
            Basis::Bare => {
                if let Some(Rewrite::Rename(n) | Rewrite::Unqualify(n)) = rw {
                    if let ExprKind::Call { name, .. } = &mut e.kind {
                        name.name = n;
                    }
                }
            }
            _ => self.apply_qualified(e, rw, true),
        }
        Ok(ty)
    }

    fn foreign_call(&mut self, class: &str, e: &mut Expr, args: &[Ty], basis: Basis) -> Result<Ty, ResolveError> {
        let ExprKind::Call { name, .. } = &mut e.kind else {
            unreachable!()
        };
        let Some(scope) = self.env.scope_of(class) else {
            return Ok(Ty::Unknown);
        };
        self.visitor.class_use(class, ClassUse::Receiver);
        let candidates = scope.methods_named(0, &name.name);
        let Some((layer, m)) = self.select(candidates, args, &name.name, name.span, false)? else {
            return Ok(Ty::Unknown);
        };
        let ty = Ty::from_decl(m.ty.as_ref());
        let member = m.clone();
        let rw = self.visitor.reference(&Reference {
            target: &member,
            layer,
            access: Access::Call,
            basis,
            span: name.span,
        });
        if let Some(Rewrite::Rename(n)) = rw {
            name.name = n;
        }
        Ok(ty)
    }
}

fn binary_type(op: BinaryOp, l: &Ty, r: &Ty) -> Ty {
    use BinaryOp::*;
    match op {
        Or | And | Eq | Ne | Lt | Le | Gt | Ge => Ty::known("boolean"),
        Add if l.is("String") || r.is("String") => Ty::known("String"),
        _ => {
            if matches!(l, Ty::Unknown) || matches!(r, Ty::Unknown) {
                Ty::Unknown
            } else if l.is("double") || r.is("double") {
                Ty::known("double")
            } else if l.is("long") || r.is("long") {
                Ty::known("long")
            } else if (l.is("int") || l.is("char")) && (r.is("int") || r.is("char")) {
                Ty::known("int")
            } else {
                Ty::Unknown
            }
        }
    }
}
