//! Folding superclass constructor bodies into subclass constructors.
//!
//! Only constructors whose bodies are plain field assignments can be
//! folded; anything else is reported as unsupported.

use super::FlattenError;
use crate::syntax::*;
use std::collections::BTreeSet;

/// One subclass constructor (or the implicit default one) and the
/// superclass constructor it invokes.
#[derive(Debug, Clone)]
pub(super) struct CtorLink {
    /// Index into the subclass members; `None` for the implicit default
    /// constructor.
    pub member: Option<usize>,
    /// The first statement is an explicit `super(...)`.
    pub explicit: bool,
    /// Index into the superclass constructors; `None` when the superclass
    /// declares none.
    pub target: Option<usize>,
    pub args: Vec<Expr>,
}

pub(super) fn link(sub: &ClassDecl, super_ctors: &[&ConstructorDecl], superclass: &str) -> Result<Vec<CtorLink>, FlattenError> {
    let class = &sub.name.name;
    let mut links = Vec::new();
    for (i, member) in sub.members.iter().enumerate() {
        let Member::Constructor(c) = member else { continue };
        let (explicit, args, span) = match c.body.stmts.first() {
            Some(Stmt::CtorCall {
                target: CtorTarget::This,
                ..
            }) => continue,
            Some(Stmt::CtorCall {
                target: CtorTarget::Super,
                args,
                span,
            }) => (true, args.clone(), *span),
            _ => (false, Vec::new(), c.name.span),
        };
        let target = select(super_ctors, args.len(), class, superclass, span)?;
        check_pure(&args, class)?;
        links.push(CtorLink {
            member: Some(i),
            explicit,
            target,
            args,
        });
    }
    if !sub.members.iter().any(|m| matches!(m, Member::Constructor(_))) {
        let target = select(super_ctors, 0, class, superclass, sub.name.span)?;
        links.push(CtorLink {
            member: None,
            explicit: false,
            target,
            args: Vec::new(),
        });
    }
    Ok(links)
}

fn select(
    ctors: &[&ConstructorDecl],
    nargs: usize,
    class: &str,
    superclass: &str,
    span: Span,
) -> Result<Option<usize>, FlattenError> {
    if ctors.is_empty() {
        if nargs == 0 {
            return Ok(None);
        }
    } else {
        let hits: Vec<usize> = (0..ctors.len()).filter(|&i| ctors[i].params.len() == nargs).collect();
        match hits.as_slice() {
            [one] => return Ok(Some(*one)),
            [] => {}
            _ => {
                return Err(FlattenError::Unsupported {
                    class: class.to_string(),
                    reason: format!("{superclass} has several constructors taking {nargs} arguments"),
                    span,
                })
            }
        }
    }
    Err(FlattenError::NoMatchingConstructor {
        class: class.to_string(),
        superclass: superclass.to_string(),
        arity: nargs,
        span,
    })
}

fn has_effects(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Assign { .. } | ExprKind::Call { .. } | ExprKind::New { .. } => true,
        ExprKind::Unary { op, operand } => op.mutates() || has_effects(operand),
        ExprKind::Literal { .. } | ExprKind::Name(_) | ExprKind::This | ExprKind::Super => false,
        ExprKind::FieldAccess { target, .. } => has_effects(target),
        ExprKind::Index { target, index } => has_effects(target) || has_effects(index),
        ExprKind::Binary { lhs, rhs, .. } => has_effects(lhs) || has_effects(rhs),
        ExprKind::Paren(inner) => has_effects(inner),
    }
}

fn check_pure(args: &[Expr], class: &str) -> Result<(), FlattenError> {
    match args.iter().find(|a| has_effects(a)) {
        Some(a) => Err(FlattenError::Unsupported {
            class: class.to_string(),
            reason: "superclass constructor argument has side effects".into(),
            span: a.span,
        }),
        None => Ok(()),
    }
}

/// The statements of a superclass constructor, which must all assign one
/// of `attrs`. A leftover argument-less `super();` is skipped.
pub(super) fn field_assignments(
    ctor: &ConstructorDecl,
    attrs: &BTreeSet<String>,
    class: &str,
) -> Result<Vec<Stmt>, FlattenError> {
    let params: BTreeSet<&str> = ctor.params.iter().map(|p| p.name.name.as_str()).collect();
    let mut out = Vec::new();
    for s in &ctor.body.stmts {
        match s {
            Stmt::CtorCall {
                target: CtorTarget::Super,
                args,
                ..
            } if args.is_empty() => continue,
            Stmt::Expr {
                expr:
                    Expr {
                        kind:
                            ExprKind::Assign {
                                op: AssignOp::Assign,
                                target,
                                ..
                            },
                        ..
                    },
                ..
            } => {
                let name = match &target.kind {
                    ExprKind::Name(id) if !params.contains(id.name.as_str()) => Some(&id.name),
                    ExprKind::FieldAccess { target: t, name } if matches!(t.kind, ExprKind::This) => Some(&name.name),
                    _ => None,
                };
                if name.is_some_and(|n| attrs.contains(n)) {
                    out.push(s.clone());
                    continue;
                }
            }
            _ => {}
        }
        return Err(FlattenError::Unsupported {
            class: class.to_string(),
            reason: format!("constructor {} does more than assign fields", ctor.name.name),
            span: s.span(),
        });
    }
    Ok(out)
}

fn is_atomic(e: &Expr) -> bool {
    matches!(
        e.kind,
        ExprKind::Literal { .. }
            | ExprKind::Name(_)
            | ExprKind::This
            | ExprKind::FieldAccess { .. }
            | ExprKind::Call { .. }
            | ExprKind::New { .. }
            | ExprKind::Index { .. }
            | ExprKind::Paren(_)
    )
}

/// Copies `stmts` with each parameter replaced by its argument. Field names
/// that a parameter of the receiving constructor would shadow get `this.`.
pub(super) fn instantiate(stmts: &[Stmt], params: &[Param], args: &[Expr], shadow: &BTreeSet<String>) -> Vec<Stmt> {
    let subst: Vec<(&str, &Expr)> = params.iter().map(|p| p.name.name.as_str()).zip(args).collect();
    let mut out = stmts.to_vec();
    for s in &mut out {
        if let Stmt::Expr { expr, .. } = s {
            substitute(expr, &subst, shadow);
        }
    }
    out
}

fn substitute(e: &mut Expr, subst: &[(&str, &Expr)], shadow: &BTreeSet<String>) {
    match &mut e.kind {
        ExprKind::Name(id) => {
            if let Some((_, arg)) = subst.iter().find(|(p, _)| *p == id.name) {
                *e = if is_atomic(arg) {
                    (*arg).clone()
                } else {
                    Expr::new(ExprKind::Paren(Box::new((*arg).clone())), arg.span)
                };
            } else if shadow.contains(&id.name) {
                let this = Expr::new(ExprKind::This, id.span);
                e.kind = ExprKind::FieldAccess {
                    target: Box::new(this),
                    name: id.clone(),
                };
            }
        }
        ExprKind::Literal { .. } | ExprKind::This | ExprKind::Super => {}
        ExprKind::FieldAccess { target, .. } => substitute(target, subst, shadow),
        ExprKind::Call { receiver, args, .. } => {
            if let Some(r) = receiver {
                substitute(r, subst, shadow);
            }
            for a in args {
                substitute(a, subst, shadow);
            }
        }
        ExprKind::New { args, .. } => {
            for a in args {
                substitute(a, subst, shadow);
            }
        }
        ExprKind::Index { target, index } => {
            substitute(target, subst, shadow);
            substitute(index, subst, shadow);
        }
        ExprKind::Unary { operand, .. } => substitute(operand, subst, shadow),
        ExprKind::Binary { lhs, rhs, .. } => {
            substitute(lhs, subst, shadow);
            substitute(rhs, subst, shadow);
        }
        ExprKind::Assign { target, value, .. } => {
            substitute(target, subst, shadow);
            substitute(value, subst, shadow);
        }
        ExprKind::Paren(inner) => substitute(inner, subst, shadow),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emit::expr;

    fn class(src: &str) -> ClassDecl {
        parse_source(FileId(0), src).unwrap().class
    }

    fn attrs(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn substitutes_and_parenthesizes() {
        let a = class("class A { int x; int y; A(int v, int w) { x = v * 2; this.y = w; } }");
        let c = a.constructors().next().unwrap();
        let stmts = field_assignments(c, &attrs(&["x", "y"]), "B").unwrap();
        let b = class("class B extends A { B(int x) { super(x + 1, 3); } }");
        let Some(Stmt::CtorCall { args, .. }) = b.constructors().next().unwrap().body.stmts.first() else {
            panic!()
        };
        let out = instantiate(&stmts, &c.params, args, &attrs(&["x"]));
        let text: Vec<String> = out
            .iter()
            .map(|s| match s {
                Stmt::Expr { expr: e, .. } => expr(e),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(text, ["this.x = (x + 1) * 2", "this.y = 3"]);
    }

    #[test]
    fn rejects_effects() {
        let a = class("class A { int x; A() { x = 1; run(); } void run() {} }");
        let err = field_assignments(a.constructors().next().unwrap(), &attrs(&["x"]), "B").unwrap_err();
        assert!(matches!(err, FlattenError::Unsupported { .. }));
        let a = class("class A { int x; A(int x) { x = 1; } }");
        assert!(field_assignments(a.constructors().next().unwrap(), &attrs(&["x"]), "B").is_err());
    }

    #[test]
    fn linking() {
        let a = class("class A { A(int v) {} }");
        let ctors: Vec<_> = a.constructors().collect();
        let b = class("class B extends A { B() { super(1); } B(int q) { this(); } }");
        let links = link(&b, &ctors, "A").unwrap();
        assert_eq!(links.len(), 1);
        assert_eq!(links[0].target, Some(0));
        let bare = class("class B extends A { }");
        assert!(matches!(
            link(&bare, &ctors, "A"),
            Err(FlattenError::NoMatchingConstructor { arity: 0, .. })
        ));
        let effect = class("class B extends A { B() { super(next()); } int next() { return 1; } }");
        assert!(link(&effect, &ctors, "A").is_err());
    }
}
