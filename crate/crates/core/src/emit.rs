//! Canonical pretty-printer for original and flattened classes.
//!
//! Formatting is fixed (K&R braces, one member per line group, single
//! spaces around binary operators) so that golden files stay stable.
//! Comments from the input are not carried over.

use crate::syntax::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Indent {
    Two,
    #[default]
    Four,
}

impl Indent {
    pub fn width(self) -> usize {
        match self {
            Indent::Two => 2,
            Indent::Four => 4,
        }
    }

    pub fn from_width(width: usize) -> Option<Indent> {
        match width {
            2 => Some(Indent::Two),
            4 => Some(Indent::Four),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Newline {
    #[default]
    Lf,
    CrLf,
}

impl Newline {
    fn as_str(self) -> &'static str {
        match self {
            Newline::Lf => "\n",
            Newline::CrLf => "\r\n",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EmitOptions {
    /// Write a `// pulled from <Owner>` line above every inherited member.
    pub provenance: bool,
    pub indent: Indent,
    pub newline: Newline,
}

impl EmitOptions {
    pub fn with_provenance(mut self, on: bool) -> Self {
        self.provenance = on;
        self
    }
}

/// Emits a parsed compilation unit.
pub fn emit_unit(unit: &SourceUnit, opts: &EmitOptions) -> String {
    emit_class(unit.package.as_ref(), &unit.class, &[], opts)
}

/// Emits `class`, optionally preceded by its package. `provenance[i]`, when
/// present and `opts.provenance` is set, names the class member `i` was
/// pulled from.
pub fn emit_class(
    package: Option<&QualifiedName>,
    class: &ClassDecl,
    provenance: &[Option<&str>],
    opts: &EmitOptions,
) -> String {
    let mut w = Writer {
        lines: Vec::new(),
        depth: 0,
        indent: opts.indent.width(),
    };
    if let Some(pkg) = package {
        w.line(format!("package {pkg};"));
        w.line(String::new());
    }
    let mut head = String::new();
    if let Some(kw) = class.visibility.keyword() {
        head.push_str(kw);
        head.push(' ');
    }
    head.push_str("class ");
    head.push_str(&class.name.name);
    if let Some(sup) = &class.extends {
        head.push_str(" extends ");
        head.push_str(&sup.name);
    }
    head.push_str(" {");
    w.line(head);
    w.depth += 1;
    for (i, member) in class.members.iter().enumerate() {
        if opts.provenance {
            if let Some(Some(owner)) = provenance.get(i) {
                w.line(format!("// pulled from {owner}"));
            }
        }
        w.member(member);
    }
    w.depth -= 1;
    w.line("}".to_string());
    let nl = opts.newline.as_str();
    let mut out = w.lines.join(nl);
    out.push_str(nl);
    out
}

struct Writer {
    lines: Vec<String>,
    depth: usize,
    indent: usize,
}

impl Writer {
    fn line(&mut self, text: String) {
        if text.is_empty() {
            self.lines.push(text);
        } else {
            self.lines.push(format!("{}{}", " ".repeat(self.depth * self.indent), text));
        }
    }

    fn member(&mut self, member: &Member) {
        match member {
            Member::Field(f) => {
                let mut s = modifiers(&f.modifiers);
                s.push_str(&format!("{} {}", f.ty, f.name.name));
                if let Some(init) = &f.init {
                    s.push_str(" = ");
                    s.push_str(&expr(init));
                }
                s.push(';');
                self.line(s);
            }
            Member::Method(m) => {
                let mut s = modifiers(&m.modifiers);
                match &m.return_type {
                    Some(t) => s.push_str(&t.to_string()),
                    None => s.push_str("void"),
                }
                s.push_str(&format!(" {}({}) {{", m.name.name, params(&m.params)));
                self.line(s);
                self.block_body(&m.body);
                self.line("}".into());
            }
            Member::Constructor(c) => {
                let mut s = String::new();
                if let Some(kw) = c.visibility.keyword() {
                    s.push_str(kw);
                    s.push(' ');
                }
                s.push_str(&format!("{}({}) {{", c.name.name, params(&c.params)));
                self.line(s);
                self.block_body(&c.body);
                self.line("}".into());
            }
        }
    }

    fn block_body(&mut self, block: &Block) {
        self.depth += 1;
        for s in &block.stmts {
            self.stmt(s);
        }
        self.depth -= 1;
    }

    fn indented(&mut self, s: &Stmt) {
        self.depth += 1;
        self.stmt(s);
        self.depth -= 1;
    }

    fn stmt(&mut self, s: &Stmt) {
        match s {
            Stmt::Local { ty, name, init, .. } => {
                let mut out = format!("{ty} {}", name.name);
                if let Some(e) = init {
                    out.push_str(" = ");
                    out.push_str(&expr(e));
                }
                out.push(';');
                self.line(out);
            }
            Stmt::Expr { expr: e, .. } => self.line(format!("{};", expr(e))),
            Stmt::Return { value, .. } => match value {
                Some(v) => self.line(format!("return {};", expr(v))),
                None => self.line("return;".into()),
            },
            Stmt::CtorCall { target, args, .. } => {
                let kw = match target {
                    CtorTarget::This => "this",
                    CtorTarget::Super => "super",
                };
                self.line(format!("{kw}({});", arg_list(args)));
            }
            Stmt::Block(b) => {
                self.line("{".into());
                self.block_body(b);
                self.line("}".into());
            }
            Stmt::If {
                cond,
                then_branch,
                else_branch,
                ..
            } => self.if_stmt("", cond, then_branch, else_branch.as_deref()),
            Stmt::While { cond, body, .. } => {
                let head = format!("while ({})", expr(cond));
                match body.as_ref() {
                    Stmt::Block(b) => {
                        self.line(format!("{head} {{"));
                        self.block_body(b);
                        self.line("}".into());
                    }
                    other => {
                        self.line(head);
                        self.indented(other);
                    }
                }
            }
        }
    }

    fn if_stmt(&mut self, prefix: &str, cond: &Expr, then: &Stmt, els: Option<&Stmt>) {
        let head = format!("{prefix}if ({})", expr(cond));
        match then {
            Stmt::Block(b) => {
                self.line(format!("{head} {{"));
                self.block_body(b);
                match els {
                    None => self.line("}".into()),
                    Some(e) => self.else_branch("} ", e),
                }
            }
            other => {
                self.line(head);
                self.indented(other);
                if let Some(e) = els {
                    self.else_branch("", e);
                }
            }
        }
    }

    fn else_branch(&mut self, prefix: &str, e: &Stmt) {
        match e {
            Stmt::If {
                cond,
                then_branch,
                else_branch,
                ..
            } => self.if_stmt(&format!("{prefix}else "), cond, then_branch, else_branch.as_deref()),
            Stmt::Block(b) => {
                self.line(format!("{prefix}else {{"));
                self.block_body(b);
                self.line("}".into());
            }
            other => {
                self.line(format!("{prefix}else"));
                self.indented(other);
            }
        }
    }
}

fn modifiers(m: &Modifiers) -> String {
    let mut s = String::new();
    if let Some(kw) = m.visibility.keyword() {
        s.push_str(kw);
        s.push(' ');
    }
    if m.is_static {
        s.push_str("static ");
    }
    if m.is_final {
        s.push_str("final ");
    }
    s
}

fn params(ps: &[Param]) -> String {
    ps.iter()
        .map(|p| format!("{} {}", p.ty, p.name.name))
        .collect::<Vec<_>>()
        .join(", ")
}

fn arg_list(args: &[Expr]) -> String {
    args.iter().map(expr).collect::<Vec<_>>().join(", ")
}

/// Renders one expression on a single line.
pub fn expr(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Literal { text, .. } => text.clone(),
        ExprKind::Name(id) => id.name.clone(),
        ExprKind::This => "this".into(),
        ExprKind::Super => "super".into(),
        ExprKind::FieldAccess { target, name } => format!("{}.{}", expr(target), name.name),
        ExprKind::Call {
            receiver,
            name,
            args,
        } => match receiver {
            Some(r) => format!("{}.{}({})", expr(r), name.name, arg_list(args)),
            None => format!("{}({})", name.name, arg_list(args)),
        },
        ExprKind::New { class, args } => format!("new {}({})", class.name, arg_list(args)),
        ExprKind::Index { target, index } => format!("{}[{}]", expr(target), expr(index)),
        ExprKind::Unary { op, operand } => {
            let inner = expr(operand);
            if op.is_postfix() {
                format!("{inner}{}", op.symbol())
            } else {
                let sym = op.symbol();
                // keep `- -x` from fusing into `--x`
                let last = sym.chars().last().unwrap_or(' ');
                if (last == '-' || last == '+') && inner.starts_with(last) {
                    format!("{sym} {inner}")
                } else {
                    format!("{sym}{inner}")
                }
            }
        }
        ExprKind::Binary { op, lhs, rhs } => {
            format!("{} {} {}", expr(lhs), op.symbol(), expr(rhs))
        }
        ExprKind::Assign { op, target, value } => {
            format!("{} {} {}", expr(target), op.symbol(), expr(value))
        }
        ExprKind::Paren(inner) => format!("({})", expr(inner)),
    }
}
