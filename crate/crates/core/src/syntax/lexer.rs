//! Tokenizer for the supported Java subset.
//!
//! Every byte of the input ends up either in a token lexeme or in a piece of
//! trivia (whitespace or a comment) attached to the following token, so the
//! original text can always be rebuilt from the token stream.

use super::span::{FileId, Span};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenKind {
    Keyword,
    Identifier,
    Literal(LiteralKind),
    Operator,
    Punctuation,
    Eoi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiteralKind {
    Int,
    Long,
    Double,
    Char,
    String,
    Boolean,
    Null,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriviaKind {
    Whitespace,
    LineComment,
    BlockComment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trivia {
    pub kind: TriviaKind,
    pub text: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub span: Span,
    /// Whitespace and comments immediately before this token.
    pub leading: Vec<Trivia>,
}

impl Token {
    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        self.is(TokenKind::Keyword, kw)
    }

    pub fn is_punct(&self, p: &str) -> bool {
        self.is(TokenKind::Punctuation, p)
    }

    pub fn is_op(&self, op: &str) -> bool {
        self.is(TokenKind::Operator, op)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexErrorKind {
    UnterminatedString,
    UnterminatedChar,
    UnterminatedComment,
    IllegalCharacter(char),
    MalformedNumber,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {}", describe(.kind))]
pub struct LexError {
    pub kind: LexErrorKind,
    pub span: Span,
}

fn describe(kind: &LexErrorKind) -> String {
    match kind {
        LexErrorKind::UnterminatedString => "unterminated string literal".into(),
        LexErrorKind::UnterminatedChar => "unterminated character literal".into(),
        LexErrorKind::UnterminatedComment => "unterminated block comment".into(),
        LexErrorKind::IllegalCharacter(c) => format!("illegal character {c:?}"),
        LexErrorKind::MalformedNumber => "malformed numeric literal".into(),
    }
}

/// Every reserved word of Java. Words outside the subset still lex as
/// keywords so the parser can reject them with a precise diagnostic.
pub const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
];

// Longest first so maximal munch is a simple prefix scan.
const OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=",
    "/=", "%=", "&=", "|=", "^=", "<<", ">>", "->", "::", "=", "<", ">", "+", "-", "*", "/", "%",
    "!", "~", "&", "|", "^", "?", ":",
];

const PUNCTUATION: &[char] = &['(', ')', '{', '}', '[', ']', ';', ',', '.', '@'];

pub fn is_identifier_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

pub fn is_identifier_part(c: char) -> bool {
    is_identifier_start(c) || c.is_numeric()
}

/// True when `text` lexes as exactly one identifier token.
pub fn is_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) if is_identifier_start(c) => {}
        _ => return false,
    }
    chars.all(is_identifier_part) && !KEYWORDS.contains(&text) && !matches!(text, "true" | "false" | "null")
}

struct Lexer<'a> {
    src: &'a str,
    file: FileId,
    pos: usize,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span_from(&self, start: usize, line: u32, column: u32) -> Span {
        Span::new(self.file, start, self.pos, line, column)
    }

    fn trivia(&mut self) -> Result<Option<Trivia>, LexError> {
        let (start, line, column) = (self.pos, self.line, self.column);
        let kind = match (self.peek(), self.peek_at(1)) {
            (Some(c), _) if c.is_whitespace() => {
                while self.peek().is_some_and(char::is_whitespace) {
                    self.bump();
                }
                TriviaKind::Whitespace
            }
            (Some('/'), Some('/')) => {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
                TriviaKind::LineComment
            }
            (Some('/'), Some('*')) => {
                self.bump();
                self.bump();
                loop {
                    match self.peek() {
                        None => {
                            return Err(LexError {
                                kind: LexErrorKind::UnterminatedComment,
                                span: self.span_from(start, line, column),
                            })
                        }
                        Some('*') if self.peek_at(1) == Some('/') => {
                            self.bump();
                            self.bump();
                            break;
                        }
                        Some(_) => {
                            self.bump();
                        }
                    }
                }
                TriviaKind::BlockComment
            }
            _ => return Ok(None),
        };
        Ok(Some(Trivia {
            kind,
            text: self.src[start..self.pos].to_string(),
            span: self.span_from(start, line, column),
        }))
    }

    fn quoted(&mut self, quote: char, start: usize, line: u32, column: u32) -> Result<(), LexError> {
        let kind = if quote == '"' {
            LexErrorKind::UnterminatedString
        } else {
            LexErrorKind::UnterminatedChar
        };
        self.bump();
        loop {
            match self.peek() {
                None | Some('\n') => {
                    return Err(LexError {
                        kind,
                        span: self.span_from(start, line, column),
                    })
                }
                Some('\\') => {
                    self.bump();
                    if self.peek().is_none_or(|c| c == '\n') {
                        return Err(LexError {
                            kind,
                            span: self.span_from(start, line, column),
                        });
                    }
                    self.bump();
                }
                Some(c) if c == quote => {
                    self.bump();
                    return Ok(());
                }
                Some(_) => {
                    self.bump();
                }
            }
        }
    }

    fn number(&mut self) -> Result<LiteralKind, LexError> {
        let (start, line, column) = (self.pos, self.line, self.column);
        let mut kind = LiteralKind::Int;
        if self.peek() == Some('0') && matches!(self.peek_at(1), Some('x' | 'X')) {
            self.bump();
            self.bump();
            let digits_start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_hexdigit() || c == '_') {
                self.bump();
            }
            if self.pos == digits_start {
                return Err(LexError {
                    kind: LexErrorKind::MalformedNumber,
                    span: self.span_from(start, line, column),
                });
            }
        } else {
            while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '_') {
                self.bump();
            }
            if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                kind = LiteralKind::Double;
                self.bump();
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '_') {
                    self.bump();
                }
            }
            if matches!(self.peek(), Some('e' | 'E')) {
                kind = LiteralKind::Double;
                self.bump();
                if matches!(self.peek(), Some('+' | '-')) {
                    self.bump();
                }
                if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(LexError {
                        kind: LexErrorKind::MalformedNumber,
                        span: self.span_from(start, line, column),
                    });
                }
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
            }
        }
        match self.peek() {
            Some('l' | 'L') if kind == LiteralKind::Int => {
                self.bump();
                kind = LiteralKind::Long;
            }
            Some('d' | 'D' | 'f' | 'F') => {
                self.bump();
                kind = LiteralKind::Double;
            }
            _ => {}
        }
        if self.peek().is_some_and(is_identifier_part) {
            while self.peek().is_some_and(is_identifier_part) {
                self.bump();
            }
            return Err(LexError {
                kind: LexErrorKind::MalformedNumber,
                span: self.span_from(start, line, column),
            });
        }
        Ok(kind)
    }

    fn next_token(&mut self) -> Result<Token, LexError> {
        let mut leading = Vec::new();
        while let Some(t) = self.trivia()? {
            leading.push(t);
        }
        let (start, line, column) = (self.pos, self.line, self.column);
        let Some(c) = self.peek() else {
            return Ok(Token {
                kind: TokenKind::Eoi,
                lexeme: String::new(),
                span: self.span_from(start, line, column),
                leading,
            });
        };
        let kind = if is_identifier_start(c) {
            while self.peek().is_some_and(is_identifier_part) {
                self.bump();
            }
            let word = &self.src[start..self.pos];
            match word {
                "true" | "false" => TokenKind::Literal(LiteralKind::Boolean),
                "null" => TokenKind::Literal(LiteralKind::Null),
                w if KEYWORDS.contains(&w) => TokenKind::Keyword,
                _ => TokenKind::Identifier,
            }
        } else if c.is_ascii_digit() || (c == '.' && self.peek_at(1).is_some_and(|d| d.is_ascii_digit())) {
            if c == '.' {
                // ".5" style literal
                self.bump();
                while self.peek().is_some_and(|d| d.is_ascii_digit()) {
                    self.bump();
                }
                if matches!(self.peek(), Some('d' | 'D' | 'f' | 'F')) {
                    self.bump();
                }
                TokenKind::Literal(LiteralKind::Double)
            } else {
                TokenKind::Literal(self.number()?)
            }
        } else if c == '"' {
            self.quoted('"', start, line, column)?;
            TokenKind::Literal(LiteralKind::String)
        } else if c == '\'' {
            self.quoted('\'', start, line, column)?;
            TokenKind::Literal(LiteralKind::Char)
        } else if PUNCTUATION.contains(&c) {
            self.bump();
            TokenKind::Punctuation
        } else if let Some(op) = OPERATORS.iter().find(|op| self.src[self.pos..].starts_with(**op)) {
            for _ in 0..op.len() {
                self.bump();
            }
            TokenKind::Operator
        } else {
            self.bump();
            return Err(LexError {
                kind: LexErrorKind::IllegalCharacter(c),
                span: self.span_from(start, line, column),
            });
        };
        Ok(Token {
            kind,
            lexeme: self.src[start..self.pos].to_string(),
            span: self.span_from(start, line, column),
            leading,
        })
    }
}

/// Tokenizes `source` as file 0.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    tokenize_file(FileId::default(), source)
}

/// Tokenizes `source`, tagging every span with `file`. The last token is
/// always [`TokenKind::Eoi`] and carries any trailing trivia.
pub fn tokenize_file(file: FileId, source: &str) -> Result<Vec<Token>, LexError> {
    let mut lexer = Lexer {
        src: source,
        file,
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    loop {
        let token = lexer.next_token()?;
        let done = token.kind == TokenKind::Eoi;
        tokens.push(token);
        if done {
            return Ok(tokens);
        }
    }
}

/// Rebuilds the exact source text from a token stream.
pub fn reconstruct(tokens: &[Token]) -> String {
    let mut out = String::new();
    for token in tokens {
        for t in &token.leading {
            out.push_str(&t.text);
        }
        out.push_str(&token.lexeme);
    }
    out
}
