//! Recursive-descent parser for the Java subset, one token of lookahead
//! (two where a local declaration must be told apart from an expression).
//! Stops at the first error.

use super::ast::*;
use super::lexer::{tokenize_file, LexError, LiteralKind, Token, TokenKind};
use super::span::{FileId, SourceFile, Span};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("{span}: expected {}, found {found}", expected.join(" or "))]
    Parse {
        span: Span,
        expected: Vec<String>,
        found: String,
    },
    #[error("{span}: unsupported feature: {feature}")]
    Unsupported { feature: String, span: Span },
}

impl SyntaxError {
    pub fn span(&self) -> Span {
        match self {
            SyntaxError::Lex(e) => e.span,
            SyntaxError::Parse { span, .. } | SyntaxError::Unsupported { span, .. } => *span,
        }
    }
}

type PResult<T> = Result<T, SyntaxError>;

/// Keywords that belong to Java but not to the subset, with the feature
/// name reported when one is met.
fn unsupported_keyword(kw: &str) -> Option<&'static str> {
    Some(match kw {
        "implements" => "implements clause",
        "interface" => "interfaces",
        "enum" => "enums",
        "abstract" => "abstract modifier",
        "synchronized" => "synchronized",
        "native" => "native modifier",
        "transient" => "transient modifier",
        "volatile" => "volatile modifier",
        "strictfp" => "strictfp modifier",
        "import" => "import declarations",
        "try" | "catch" | "finally" => "exception handling",
        "throw" | "throws" => "exceptions",
        "switch" | "case" | "default" => "switch statements",
        "for" => "for loops",
        "do" => "do-while loops",
        "break" | "continue" => "break/continue",
        "instanceof" => "instanceof",
        "assert" => "assert statements",
        "char" | "byte" | "short" | "float" => "primitive types outside int/long/double/boolean",
        "goto" | "const" => "reserved keywords",
        _ => return None,
    })
}

pub struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    last: Span,
    class_name: String,
}

/// Tokenizes and parses a whole file.
pub fn parse_file(file: &SourceFile) -> PResult<SourceUnit> {
    parse_source(file.id, &file.text)
}

pub fn parse_source(file: FileId, text: &str) -> PResult<SourceUnit> {
    let tokens = tokenize_file(file, text)?;
    parse(&tokens)
}

/// Parses a token stream produced by the lexer into one compilation unit.
pub fn parse(tokens: &[Token]) -> PResult<SourceUnit> {
    assert!(
        tokens.last().is_some_and(|t| t.kind == TokenKind::Eoi),
        "token stream must end with EOI"
    );
    let mut p = Parser {
        tokens,
        pos: 0,
        last: tokens[0].span,
        class_name: String::new(),
    };
    p.unit()
}

impl<'t> Parser<'t> {
    fn peek(&self) -> &'t Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, n: usize) -> &'t Token {
        let idx = (self.pos + n).min(self.tokens.len() - 1);
        &self.tokens[idx]
    }

    fn bump(&mut self) -> &'t Token {
        let t = &self.tokens[self.pos];
        if t.kind != TokenKind::Eoi {
            self.pos += 1;
        }
        self.last = t.span;
        t
    }

    fn since(&self, start: Span) -> Span {
        start.to(self.last)
    }

    fn found(t: &Token) -> String {
        if t.kind == TokenKind::Eoi {
            "end of input".into()
        } else {
            format!("`{}`", t.lexeme)
        }
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let t = self.peek();
        if let Some(err) = self.unsupported_at(t) {
            return Err(err);
        }
        Err(SyntaxError::Parse {
            span: t.span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: Self::found(t),
        })
    }

    fn unsupported<T>(&self, feature: &str, span: Span) -> PResult<T> {
        Err(SyntaxError::Unsupported {
            feature: feature.to_string(),
            span,
        })
    }

    fn unsupported_at(&self, t: &Token) -> Option<SyntaxError> {
        let feature = match t.kind {
            TokenKind::Keyword => unsupported_keyword(&t.lexeme)?,
            TokenKind::Punctuation if t.lexeme == "@" => "annotations",
            TokenKind::Operator => match t.lexeme.as_str() {
                "->" => "lambda expressions",
                "::" => "method references",
                "?" => "conditional expressions",
                "&" | "|" | "^" | "~" | "<<" | ">>" | ">>>" | "&=" | "|=" | "^=" | "<<=" | ">>="
                | ">>>=" => "bitwise operators",
                _ => return None,
            },
            _ => return None,
        };
        Some(SyntaxError::Unsupported {
            feature: feature.to_string(),
            span: t.span,
        })
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.peek().is_punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek().is_keyword(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: &str) -> PResult<Span> {
        if self.peek().is_punct(p) {
            Ok(self.bump().span)
        } else {
            self.error(&[&format!("`{p}`")])
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<Span> {
        if self.peek().is_keyword(kw) {
            Ok(self.bump().span)
        } else {
            self.error(&[&format!("`{kw}`")])
        }
    }

    fn expect_ident(&mut self) -> PResult<Ident> {
        let t = self.peek();
        if t.kind == TokenKind::Identifier {
            self.bump();
            Ok(Ident::new(t.lexeme.clone(), t.span))
        } else {
            self.error(&["identifier"])
        }
    }

    fn reject_generics(&self) -> PResult<()> {
        let t = self.peek();
        if t.is_op("<") {
            return self.unsupported("generics", t.span);
        }
        Ok(())
    }

    fn unit(&mut self) -> PResult<SourceUnit> {
        let start = self.peek().span;
        let package = if self.peek().is_keyword("package") {
            let kw = self.bump().span;
            let mut parts = vec![self.expect_ident()?];
            while self.eat_punct(".") {
                parts.push(self.expect_ident()?);
            }
            let span = kw.to(self.last);
            self.expect_punct(";")?;
            Some(QualifiedName { parts, span })
        } else {
            None
        };
        let class = self.class_decl()?;
        let t = self.peek();
        if t.kind != TokenKind::Eoi {
            if t.is_keyword("class") || t.is_keyword("public") || t.is_keyword("interface") {
                return self.unsupported("more than one top-level class per file", t.span);
            }
            return self.error(&["end of input"]);
        }
        Ok(SourceUnit {
            package,
            class,
            span: self.since(start),
        })
    }

    fn visibility(&mut self) -> Option<Visibility> {
        let v = match self.peek().lexeme.as_str() {
            "public" => Visibility::Public,
            "protected" => Visibility::Protected,
            "private" => Visibility::Private,
            _ => return None,
        };
        if self.peek().kind != TokenKind::Keyword {
            return None;
        }
        self.bump();
        Some(v)
    }

    fn class_decl(&mut self) -> PResult<ClassDecl> {
        let start = self.peek().span;
        let visibility = self.visibility().unwrap_or(Visibility::Package);
        if self.peek().is_keyword("static") || self.peek().is_keyword("final") {
            return self.unsupported("class modifiers other than visibility", self.peek().span);
        }
        self.expect_keyword("class")?;
        let name = self.expect_ident()?;
        self.reject_generics()?;
        self.class_name = name.name.clone();
        let extends = if self.eat_keyword("extends") {
            let sup = self.expect_ident()?;
            self.reject_generics()?;
            if self.peek().is_punct(".") {
                return self.unsupported("qualified superclass names", self.peek().span);
            }
            Some(sup)
        } else {
            None
        };
        self.expect_punct("{")?;
        let mut members = Vec::new();
        while !self.peek().is_punct("}") {
            if self.peek().kind == TokenKind::Eoi {
                return self.error(&["`}`", "member declaration"]);
            }
            members.push(self.member()?);
        }
        self.bump();
        Ok(ClassDecl {
            visibility,
            name,
            extends,
            members,
            span: self.since(start),
        })
    }

    fn modifiers(&mut self) -> PResult<Modifiers> {
        let mut mods = Modifiers::default();
        let mut seen_vis = false;
        let mut stage = 0; // 0: visibility allowed, 1: static allowed, 2: final allowed
        loop {
            let t = self.peek();
            if t.kind != TokenKind::Keyword {
                break;
            }
            match t.lexeme.as_str() {
                "public" | "protected" | "private" => {
                    if seen_vis {
                        return Err(SyntaxError::Parse {
                            span: t.span,
                            expected: vec!["at most one visibility modifier".into()],
                            found: Self::found(t),
                        });
                    }
                    if stage > 0 {
                        return Err(SyntaxError::Parse {
                            span: t.span,
                            expected: vec!["modifiers in the order visibility, static, final".into()],
                            found: Self::found(t),
                        });
                    }
                    seen_vis = true;
                    mods.visibility = self.visibility().expect("checked above");
                    stage = 1;
                }
                "static" => {
                    if stage > 1 {
                        return Err(SyntaxError::Parse {
                            span: t.span,
                            expected: vec!["modifiers in the order visibility, static, final".into()],
                            found: Self::found(t),
                        });
                    }
                    self.bump();
                    mods.is_static = true;
                    stage = 2;
                }
                "final" => {
                    if mods.is_final {
                        return self.error(&["type"]);
                    }
                    self.bump();
                    mods.is_final = true;
                    stage = 3;
                }
                other => {
                    if let Some(feature) = unsupported_keyword(other) {
                        return self.unsupported(feature, t.span);
                    }
                    break;
                }
            }
        }
        Ok(mods)
    }

    fn member(&mut self) -> PResult<Member> {
        let start = self.peek().span;
        if self.peek().is_punct("@") {
            return self.unsupported("annotations", start);
        }
        let mods = self.modifiers()?;
        let t = self.peek();
        if t.is_keyword("class") || t.is_keyword("interface") || t.is_keyword("enum") {
            return self.unsupported("nested classes", t.span);
        }
        if t.is_punct("{") {
            return self.unsupported("initializer blocks", t.span);
        }
        self.reject_generics()?;
        if t.kind == TokenKind::Identifier && t.lexeme == self.class_name && self.peek_at(1).is_punct("(") {
            if mods.is_static || mods.is_final {
                return self.error(&["constructor without static/final"]);
            }
            let name = self.expect_ident()?;
            let params = self.params()?;
            self.reject_throws()?;
            let body = self.block(true)?;
            return Ok(Member::Constructor(ConstructorDecl {
                visibility: mods.visibility,
                name,
                params,
                body,
                span: self.since(start),
            }));
        }
        let return_type = if self.eat_keyword("void") {
            None
        } else {
            Some(self.type_ref()?)
        };
        let name = self.expect_ident()?;
        if self.peek().is_punct("(") {
            let params = self.params()?;
            self.reject_throws()?;
            if self.peek().is_punct(";") {
                return self.unsupported("methods without a body", self.peek().span);
            }
            let body = self.block(false)?;
            return Ok(Member::Method(MethodDecl {
                modifiers: mods,
                return_type,
                name,
                params,
                body,
                span: self.since(start),
            }));
        }
        let Some(ty) = return_type else {
            return self.error(&["`(`"]);
        };
        let init = if self.peek().is_op("=") {
            self.bump();
            if self.peek().is_punct("{") {
                return self.unsupported("array initializers", self.peek().span);
            }
            Some(self.expr()?)
        } else {
            None
        };
        if self.peek().is_punct(",") {
            return self.unsupported("multiple declarators in one field declaration", self.peek().span);
        }
        self.expect_punct(";")?;
        Ok(Member::Field(FieldDecl {
            modifiers: mods,
            ty,
            name,
            init,
            span: self.since(start),
        }))
    }

    fn reject_throws(&self) -> PResult<()> {
        if self.peek().is_keyword("throws") {
            return self.unsupported("exceptions", self.peek().span);
        }
        Ok(())
    }

    fn type_ref(&mut self) -> PResult<TypeRef> {
        let t = self.peek();
        let base = match (t.kind, t.lexeme.as_str()) {
            (TokenKind::Keyword, "int") => BaseType::Int,
            (TokenKind::Keyword, "long") => BaseType::Long,
            (TokenKind::Keyword, "double") => BaseType::Double,
            (TokenKind::Keyword, "boolean") => BaseType::Boolean,
            (TokenKind::Identifier, "String") => BaseType::String,
            (TokenKind::Identifier, name) => BaseType::Named(name.to_string()),
            _ => return self.error(&["type"]),
        };
        self.bump();
        let start = t.span;
        self.reject_generics()?;
        if self.peek().is_punct(".") && t.kind == TokenKind::Identifier {
            return self.unsupported("qualified type names", self.peek().span);
        }
        let mut array = false;
        if self.peek().is_punct("[") && self.peek_at(1).is_punct("]") {
            self.bump();
            self.bump();
            array = true;
            if self.peek().is_punct("[") {
                return self.unsupported("multi-dimensional arrays", self.peek().span);
            }
        }
        Ok(TypeRef {
            base,
            array,
            span: self.since(start),
        })
    }

    fn params(&mut self) -> PResult<Vec<Param>> {
        self.expect_punct("(")?;
        let mut params = Vec::new();
        if self.eat_punct(")") {
            return Ok(params);
        }
        loop {
            if self.peek().is_keyword("final") {
                return self.unsupported("parameter modifiers", self.peek().span);
            }
            let start = self.peek().span;
            let ty = self.type_ref()?;
            let name = self.expect_ident()?;
            params.push(Param {
                ty,
                name,
                span: self.since(start),
            });
            if self.eat_punct(")") {
                return Ok(params);
            }
            if !self.peek().is_punct(",") {
                return self.error(&["`,`", "`)`"]);
            }
            self.bump();
        }
    }

    fn block(&mut self, in_ctor: bool) -> PResult<Block> {
        let start = self.expect_punct("{")?;
        let mut stmts = Vec::new();
        while !self.peek().is_punct("}") {
            if self.peek().kind == TokenKind::Eoi {
                return self.error(&["`}`", "statement"]);
            }
            let first = in_ctor && stmts.is_empty();
            stmts.push(self.stmt(first)?);
        }
        self.bump();
        Ok(Block {
            stmts,
            span: self.since(start),
        })
    }

    fn looks_like_local(&self) -> bool {
        let t = self.peek();
        match t.kind {
            TokenKind::Keyword => matches!(t.lexeme.as_str(), "int" | "long" | "double" | "boolean"),
            TokenKind::Identifier => {
                let next = self.peek_at(1);
                next.kind == TokenKind::Identifier
                    || (next.is_punct("[") && self.peek_at(2).is_punct("]"))
            }
            _ => false,
        }
    }

    fn stmt(&mut self, ctor_call_allowed: bool) -> PResult<Stmt> {
        let t = self.peek();
        let start = t.span;
        if t.is_punct("{") {
            return Ok(Stmt::Block(self.block(false)?));
        }
        if t.is_keyword("if") {
            self.bump();
            self.expect_punct("(")?;
            let cond = self.expr()?;
            self.expect_punct(")")?;
            let then_branch = Box::new(self.stmt(false)?);
            let else_branch = if self.eat_keyword("else") {
                Some(Box::new(self.stmt(false)?))
            } else {
                None
            };
            return Ok(Stmt::If {
                cond,
                then_branch,
                else_branch,
                span: self.since(start),
            });
        }
        if t.is_keyword("while") {
            self.bump();
            self.expect_punct("(")?;
            let cond = self.expr()?;
            self.expect_punct(")")?;
            let body = Box::new(self.stmt(false)?);
            return Ok(Stmt::While {
                cond,
                body,
                span: self.since(start),
            });
        }
        if t.is_keyword("return") {
            self.bump();
            let value = if self.peek().is_punct(";") {
                None
            } else {
                Some(self.expr()?)
            };
            self.expect_punct(";")?;
            return Ok(Stmt::Return {
                value,
                span: self.since(start),
            });
        }
        if (t.is_keyword("this") || t.is_keyword("super")) && self.peek_at(1).is_punct("(") {
            if !ctor_call_allowed {
                return Err(SyntaxError::Parse {
                    span: t.span,
                    expected: vec!["statement (constructor calls must open a constructor body)".into()],
                    found: Self::found(t),
                });
            }
            let target = if t.is_keyword("this") {
                CtorTarget::This
            } else {
                CtorTarget::Super
            };
            self.bump();
            let args = self.args()?;
            self.expect_punct(";")?;
            return Ok(Stmt::CtorCall {
                target,
                args,
                span: self.since(start),
            });
        }
        if t.kind == TokenKind::Keyword {
            if let Some(feature) = unsupported_keyword(&t.lexeme) {
                return self.unsupported(feature, t.span);
            }
            if t.is_keyword("class") {
                return self.unsupported("local classes", t.span);
            }
        }
        if t.kind == TokenKind::Identifier && self.peek_at(1).is_op("<") {
            return self.unsupported("generics", self.peek_at(1).span);
        }
        if self.looks_like_local() {
            let ty = self.type_ref()?;
            let name = self.expect_ident()?;
            let init = if self.peek().is_op("=") {
                self.bump();
                Some(self.expr()?)
            } else {
                None
            };
            if self.peek().is_punct(",") {
                return self.unsupported("multiple declarators in one local declaration", self.peek().span);
            }
            self.expect_punct(";")?;
            return Ok(Stmt::Local {
                ty,
                name,
                init,
                span: self.since(start),
            });
        }
        let expr = self.expr()?;
        let is_statement = match &expr.kind {
            ExprKind::Assign { .. } | ExprKind::Call { .. } | ExprKind::New { .. } => true,
            ExprKind::Unary { op, .. } => op.mutates(),
            _ => false,
        };
        if !is_statement {
            return Err(SyntaxError::Parse {
                span: expr.span,
                expected: vec!["assignment, increment, call or object creation".into()],
                found: "expression".into(),
            });
        }
        self.expect_punct(";")?;
        Ok(Stmt::Expr {
            expr,
            span: self.since(start),
        })
    }

    fn args(&mut self) -> PResult<Vec<Expr>> {
        self.expect_punct("(")?;
        let mut args = Vec::new();
        if self.eat_punct(")") {
            return Ok(args);
        }
        loop {
            args.push(self.expr()?);
            if self.eat_punct(")") {
                return Ok(args);
            }
            if !self.peek().is_punct(",") {
                return self.error(&["`,`", "`)`"]);
            }
            self.bump();
        }
    }

    pub fn expr(&mut self) -> PResult<Expr> {
        let lhs = self.binary(1)?;
        let t = self.peek();
        if t.kind == TokenKind::Operator {
            if let Some(op) = AssignOp::from_symbol(&t.lexeme) {
                if !matches!(
                    lhs.kind,
                    ExprKind::Name(_) | ExprKind::FieldAccess { .. } | ExprKind::Index { .. }
                ) {
                    return Err(SyntaxError::Parse {
                        span: lhs.span,
                        expected: vec!["assignable expression".into()],
                        found: "expression".into(),
                    });
                }
                self.bump();
                let value = self.expr()?;
                let span = lhs.span.to(value.span);
                return Ok(Expr::new(
                    ExprKind::Assign {
                        op,
                        target: Box::new(lhs),
                        value: Box::new(value),
                    },
                    span,
                ));
            }
            if let Some(err) = self.unsupported_at(t) {
                return Err(err);
            }
        }
        if t.is_keyword("instanceof") {
            return self.unsupported("instanceof", t.span);
        }
        Ok(lhs)
    }

    fn binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let t = self.peek();
            if t.kind != TokenKind::Operator {
                break;
            }
            let Some(op) = BinaryOp::from_symbol(&t.lexeme) else {
                if let Some(err) = self.unsupported_at(t) {
                    return Err(err);
                }
                break;
            };
            if op.precedence() < min_prec {
                break;
            }
            self.bump();
            let rhs = self.binary(op.precedence() + 1)?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(
                ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span,
            );
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        let t = self.peek();
        if t.kind == TokenKind::Operator {
            let op = match t.lexeme.as_str() {
                "-" => Some(UnaryOp::Neg),
                "+" => Some(UnaryOp::Plus),
                "!" => Some(UnaryOp::Not),
                "++" => Some(UnaryOp::PreInc),
                "--" => Some(UnaryOp::PreDec),
                _ => None,
            };
            if let Some(op) = op {
                self.bump();
                let operand = self.unary()?;
                let span = t.span.to(operand.span);
                return Ok(Expr::new(
                    ExprKind::Unary {
                        op,
                        operand: Box::new(operand),
                    },
                    span,
                ));
            }
        }
        if t.is_punct("(") {
            let next = self.peek_at(1);
            if next.kind == TokenKind::Keyword
                && matches!(next.lexeme.as_str(), "int" | "long" | "double" | "boolean" | "char" | "byte" | "short" | "float")
            {
                return self.unsupported("casts", t.span);
            }
        }
        self.postfix()
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut expr = self.primary()?;
        loop {
            let t = self.peek();
            if t.is_punct(".") {
                self.bump();
                let nt = self.peek();
                if nt.kind == TokenKind::Keyword {
                    return self.unsupported("qualified this/new/class expressions", nt.span);
                }
                let name = self.expect_ident()?;
                if self.peek().is_punct("(") {
                    let args = self.args()?;
                    let span = expr.span.to(self.last);
                    expr = Expr::new(
                        ExprKind::Call {
                            receiver: Some(Box::new(expr)),
                            name,
                            args,
                        },
                        span,
                    );
                } else {
                    let span = expr.span.to(name.span);
                    expr = Expr::new(
                        ExprKind::FieldAccess {
                            target: Box::new(expr),
                            name,
                        },
                        span,
                    );
                }
            } else if t.is_punct("[") {
                if matches!(expr.kind, ExprKind::Super) {
                    return self.error(&["`.`"]);
                }
                self.bump();
                let index = self.expr()?;
                self.expect_punct("]")?;
                let span = expr.span.to(self.last);
                expr = Expr::new(
                    ExprKind::Index {
                        target: Box::new(expr),
                        index: Box::new(index),
                    },
                    span,
                );
            } else if t.is_op("++") || t.is_op("--") {
                if !matches!(
                    expr.kind,
                    ExprKind::Name(_) | ExprKind::FieldAccess { .. } | ExprKind::Index { .. }
                ) {
                    break;
                }
                self.bump();
                let op = if t.lexeme == "++" {
                    UnaryOp::PostInc
                } else {
                    UnaryOp::PostDec
                };
                let span = expr.span.to(t.span);
                expr = Expr::new(
                    ExprKind::Unary {
                        op,
                        operand: Box::new(expr),
                    },
                    span,
                );
            } else {
                break;
            }
        }
        Ok(expr)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let t = self.peek();
        match t.kind {
            TokenKind::Literal(kind) => {
                self.bump();
                Ok(Expr::new(
                    ExprKind::Literal {
                        kind,
                        text: t.lexeme.clone(),
                    },
                    t.span,
                ))
            }
            TokenKind::Identifier => {
                let name = self.expect_ident()?;
                if self.peek().is_punct("(") {
                    let args = self.args()?;
                    let span = name.span.to(self.last);
                    return Ok(Expr::new(
                        ExprKind::Call {
                            receiver: None,
                            name,
                            args,
                        },
                        span,
                    ));
                }
                let span = name.span;
                Ok(Expr::new(ExprKind::Name(name), span))
            }
            TokenKind::Keyword if t.lexeme == "this" => {
                self.bump();
                Ok(Expr::new(ExprKind::This, t.span))
            }
            TokenKind::Keyword if t.lexeme == "super" => {
                self.bump();
                if !self.peek().is_punct(".") {
                    return self.error(&["`.`"]);
                }
                Ok(Expr::new(ExprKind::Super, t.span))
            }
            TokenKind::Keyword if t.lexeme == "new" => {
                self.bump();
                let nt = self.peek();
                if nt.kind == TokenKind::Keyword {
                    return self.unsupported("array creation", nt.span);
                }
                let class = self.expect_ident()?;
                self.reject_generics()?;
                if self.peek().is_punct("[") {
                    return self.unsupported("array creation", self.peek().span);
                }
                let args = self.args()?;
                if self.peek().is_punct("{") {
                    return self.unsupported("anonymous classes", self.peek().span);
                }
                let span = t.span.to(self.last);
                Ok(Expr::new(ExprKind::New { class, args }, span))
            }
            TokenKind::Punctuation if t.lexeme == "(" => {
                self.bump();
                let inner = self.expr()?;
                self.expect_punct(")")?;
                let span = t.span.to(self.last);
                Ok(Expr::new(ExprKind::Paren(Box::new(inner)), span))
            }
            TokenKind::Punctuation if t.lexeme == "{" => self.unsupported("array initializers", t.span),
            _ => self.error(&["expression"]),
        }
    }
}

/// Returns the literal kind's natural static type name.
pub fn literal_type(kind: LiteralKind) -> Option<&'static str> {
    Some(match kind {
        LiteralKind::Int => "int",
        LiteralKind::Long => "long",
        LiteralKind::Double => "double",
        LiteralKind::Char => "char",
        LiteralKind::String => "String",
        LiteralKind::Boolean => "boolean",
        LiteralKind::Null => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_str(src: &str) -> PResult<SourceUnit> {
        parse_source(FileId(0), src)
    }

    #[test]
    fn single_private_attribute() {
        let unit = parse_str("class A { private int x; }").unwrap();
        assert_eq!(unit.class.name.name, "A");
        let fields: Vec<_> = unit.class.fields().collect();
        assert_eq!(fields.len(), 1);
        let x = fields[0];
        assert_eq!(x.name.name, "x");
        assert_eq!(
            x.modifiers,
            Modifiers {
                visibility: Visibility::Private,
                is_static: false,
                is_final: false
            }
        );
        assert_eq!(x.ty.base, BaseType::Int);
        assert!(x.init.is_none());
    }

    #[test]
    fn super_call_in_subclass() {
        let unit = parse_str("class B extends A { void f() { super.g(); } }").unwrap();
        assert_eq!(unit.class.extends.as_ref().unwrap().name, "A");
        let f = unit.class.methods().next().unwrap();
        let Stmt::Expr { expr, .. } = &f.body.stmts[0] else {
            panic!("expected expression statement");
        };
        let ExprKind::Call { receiver, name, args } = &expr.kind else {
            panic!("expected call");
        };
        assert_eq!(name.name, "g");
        assert!(args.is_empty());
        assert!(matches!(receiver.as_deref().map(|r| &r.kind), Some(ExprKind::Super)));
    }

    #[test]
    fn implements_is_unsupported() {
        let err = parse_str("class C implements I {}").unwrap_err();
        match err {
            SyntaxError::Unsupported { feature, span } => {
                assert_eq!(feature, "implements clause");
                assert_eq!((span.line, span.column), (1, 9));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn generics_nested_classes_and_annotations_are_unsupported() {
        for src in [
            "class A { List<String> xs; }",
            "class A<T> {}",
            "class A { class B {} }",
            "class A { @Override public String toString() { return \"\"; } }",
            "class A { void f() { for (;;) {} } }",
            "class A { void f() throws E {} }",
            "import x.Y; class A {}",
            "class A {} class B {}",
        ] {
            assert!(
                matches!(parse_str(src), Err(SyntaxError::Unsupported { .. })),
                "{src}"
            );
        }
    }

    #[test]
    fn constructor_and_ctor_call() {
        let unit = parse_str("class B extends A { public B(int v) { super(v); } }").unwrap();
        let ctor = unit.class.constructors().next().unwrap();
        assert_eq!(ctor.visibility, Visibility::Public);
        assert!(matches!(
            ctor.body.stmts[0],
            Stmt::CtorCall {
                target: CtorTarget::Super,
                ..
            }
        ));
        assert!(parse_str("class B { void f() { super(); } }").is_err());
    }

    #[test]
    fn precedence_and_assignment() {
        let unit = parse_str("class A { int x; void f() { x = 1 + 2 * 3; } }").unwrap();
        let f = unit.class.methods().next().unwrap();
        let Stmt::Expr { expr, .. } = &f.body.stmts[0] else { panic!() };
        let ExprKind::Assign { value, .. } = &expr.kind else { panic!() };
        let ExprKind::Binary { op, rhs, .. } = &value.kind else { panic!() };
        assert_eq!(*op, BinaryOp::Add);
        assert!(matches!(rhs.kind, ExprKind::Binary { op: BinaryOp::Mul, .. }));
    }

    #[test]
    fn local_declaration_versus_expression() {
        let unit = parse_str(
            "class A { void f(A a) { A b = a; int[] xs; b.g(); xs[0] = 1; } void g() {} }",
        )
        .unwrap();
        let f = unit.class.methods().next().unwrap();
        assert!(matches!(f.body.stmts[0], Stmt::Local { .. }));
        assert!(matches!(f.body.stmts[1], Stmt::Local { .. }));
        assert!(matches!(f.body.stmts[2], Stmt::Expr { .. }));
        assert!(matches!(f.body.stmts[3], Stmt::Expr { .. }));
    }

    #[test]
    fn not_a_statement() {
        let err = parse_str("class A { void f() { 1 + 2; } }").unwrap_err();
        assert!(matches!(err, SyntaxError::Parse { .. }));
    }

    #[test]
    fn parse_error_reports_expected_set_and_position() {
        let err = parse_str("class A {\n  int x\n}").unwrap_err();
        match err {
            SyntaxError::Parse { span, expected, found } => {
                assert_eq!((span.line, span.column), (3, 1));
                assert!(expected.iter().any(|e| e == "`;`"));
                assert_eq!(found, "`}`");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn modifier_order_is_enforced() {
        assert!(parse_str("class A { static public int x; }").is_err());
        assert!(parse_str("class A { public private int x; }").is_err());
        let unit = parse_str("class A { protected static final int X = 1; }").unwrap();
        let m = unit.class.fields().next().unwrap().modifiers;
        assert!(m.is_static && m.is_final && m.visibility == Visibility::Protected);
    }

    #[test]
    fn package_declaration() {
        let unit = parse_str("package a.b.c;\nclass A {}").unwrap();
        assert_eq!(unit.package.unwrap().to_string(), "a.b.c");
    }

    #[test]
    fn spans_cover_their_source() {
        let src = "class A { int x; int get() { return this.x; } }";
        let unit = parse_str(src).unwrap();
        let m = unit.class.methods().next().unwrap();
        assert_eq!(&src[m.span.start..m.span.end], "int get() { return this.x; }");
        let Stmt::Return { value: Some(v), .. } = &m.body.stmts[0] else { panic!() };
        assert_eq!(&src[v.span.start..v.span.end], "this.x");
        assert_eq!(&src[unit.class.span.start..unit.class.span.end], src);
    }
}
