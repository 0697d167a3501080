//! A small arithmetic language over `x` and `t`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?          right-associative
//! primary := number | 'x' | 't' | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | sinh | cosh | exp
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`.

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("function `{name}` at byte {offset} takes 1 argument, got {got}")]
    Arity { offset: usize, name: String, got: usize },
}

impl ExprError {
    pub fn offset(&self) -> usize {
        match self {
            ExprError::Syntax { offset, .. }
            | ExprError::UnknownIdentifier { offset, .. }
            | ExprError::Arity { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
}

impl Func {
    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "exp" => Func::Exp,
            _ => return None,
        })
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Sinh => v.sinh(),
            Func::Cosh => v.cosh(),
            Func::Exp => v.exp(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Num(f64),
    X,
    T,
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, Box<Ast>),
    Call(Func, Box<Ast>),
}

impl Ast {
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        match self {
            Ast::Num(v) => *v,
            Ast::X => x,
            Ast::T => t,
            Ast::Neg(a) => -a.eval(x, t),
            Ast::Add(a, b) => a.eval(x, t) + b.eval(x, t),
            Ast::Sub(a, b) => a.eval(x, t) - b.eval(x, t),
            Ast::Mul(a, b) => a.eval(x, t) * b.eval(x, t),
            Ast::Div(a, b) => a.eval(x, t) / b.eval(x, t),
            Ast::Pow(a, b) => pow(a.eval(x, t), b.eval(x, t)),
            Ast::Call(f, a) => f.apply(a.eval(x, t)),
        }
    }
}

/// Integer exponents go through `powi` so negative bases behave.
fn pow(a: f64, b: f64) -> f64 {
    if b.fract() == 0.0 && b.abs() <= i32::MAX as f64 {
        a.powi(b as i32)
    } else {
        a.powf(b)
    }
}

/// Parsed expression together with its source text.
#[derive(Clone)]
pub struct Expr {
    src: String,
    ast: Arc<Ast>,
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({:?})", self.src)
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src
    }
}

impl Expr {
    pub fn source(&self) -> &str {
        &self.src
    }

    pub fn ast(&self) -> &Ast {
        &self.ast
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        self.ast.eval(x, t)
    }

    /// `(x, t) ↦ value` as a shareable closure.
    pub fn to_fn2(&self) -> Arc<dyn Fn(f64, f64) -> f64 + Send + Sync> {
        let ast = self.ast.clone();
        Arc::new(move |x, t| ast.eval(x, t))
    }
}

pub fn parse_expression(src: &str) -> Result<Expr, ExprError> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0, len: src.len() };
    if p.tokens.is_empty() {
        return Err(ExprError::Syntax {
            offset: 0,
            message: "empty expression".into(),
        });
    }
    let ast = p.expr()?;
    if let Some(tok) = p.peek() {
        return Err(ExprError::Syntax {
            offset: tok.offset,
            message: format!("unexpected {}", tok.kind),
        });
    }
    Ok(Expr {
        src: src.to_string(),
        ast: Arc::new(ast),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Num(v) => write!(f, "number {v}"),
            Kind::Ident(s) => write!(f, "identifier `{s}`"),
            Kind::Op(c) => write!(f, "`{c}`"),
            Kind::LParen => f.write_str("`(`"),
            Kind::RParen => f.write_str("`)`"),
            Kind::Comma => f.write_str("`,`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    offset: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push(Token { kind: Kind::Op(c as char), offset: start });
                i += 1;
            }
            b'(' => {
                out.push(Token { kind: Kind::LParen, offset: start });
                i += 1;
            }
            b')' => {
                out.push(Token { kind: Kind::RParen, offset: start });
                i += 1;
            }
            b',' => {
                out.push(Token { kind: Kind::Comma, offset: start });
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v: f64 = text.parse().map_err(|_| ExprError::Syntax {
                    offset: start,
                    message: format!("malformed number `{text}`"),
                })?;
                out.push(Token { kind: Kind::Num(v), offset: start });
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    kind: Kind::Ident(src[start..i].to_string()),
                    offset: start,
                });
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ExprError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat_op(&mut self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Token { kind: Kind::Op(c), .. }) if ops.contains(c) => {
                let c = *c;
                self.pos += 1;
                Some(c)
            }
            _ => None,
        }
    }

    fn eof_error(&self, what: &str) -> ExprError {
        ExprError::Syntax {
            offset: self.len,
            message: format!("unexpected end of input, expected {what}"),
        }
    }

    fn expr(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.term()?;
        while let Some(op) = self.eat_op(&['+', '-']) {
            let rhs = self.term()?;
            lhs = if op == '+' {
                Ast::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Ast::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.eat_op(&['*', '/']) {
            let rhs = self.unary()?;
            lhs = if op == '*' {
                Ast::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Ast::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast, ExprError> {
        if self.eat_op(&['-']).is_some() {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, ExprError> {
        let base = self.primary()?;
        if self.eat_op(&['^']).is_some() {
            let exp = self.unary()?;
            return Ok(Ast::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Ast, ExprError> {
        let tok = self.next().ok_or_else(|| self.eof_error("a value"))?;
        match tok.kind {
            Kind::Num(v) => Ok(Ast::Num(v)),
            Kind::LParen => {
                let e = self.expr()?;
                self.expect_rparen(tok.offset)?;
                Ok(e)
            }
            Kind::Ident(name) => match name.as_str() {
                "x" => Ok(Ast::X),
                "t" => Ok(Ast::T),
                _ => {
                    let f = Func::from_name(&name).ok_or(ExprError::UnknownIdentifier {
                        offset: tok.offset,
                        name: name.clone(),
                    })?;
                    self.call(f, name, tok.offset)
                }
            },
            other => Err(ExprError::Syntax {
                offset: tok.offset,
                message: format!("unexpected {other}, expected a value"),
            }),
        }
    }

    fn call(&mut self, f: Func, name: String, offset: usize) -> Result<Ast, ExprError> {
        match self.next() {
            Some(Token { kind: Kind::LParen, offset: open }) => {
                if matches!(self.peek(), Some(Token { kind: Kind::RParen, .. })) {
                    return Err(ExprError::Arity { offset, name, got: 0 });
                }
                let arg = self.expr()?;
                let mut got = 1;
                while matches!(self.peek(), Some(Token { kind: Kind::Comma, .. })) {
                    self.pos += 1;
                    self.expr()?;
                    got += 1;
                }
                if got != 1 {
                    return Err(ExprError::Arity { offset, name, got });
                }
                self.expect_rparen(open)?;
                Ok(Ast::Call(f, Box::new(arg)))
            }
            Some(t) => Err(ExprError::Syntax {
                offset: t.offset,
                message: format!("expected `(` after `{name}`"),
            }),
            None => Err(self.eof_error("`(`")),
        }
    }

    fn expect_rparen(&mut self, open: usize) -> Result<(), ExprError> {
        match self.next() {
            Some(Token { kind: Kind::RParen, .. }) => Ok(()),
            Some(t) => Err(ExprError::Syntax {
                offset: t.offset,
                message: format!("expected `)` to close `(` at byte {open}, found {}", t.kind),
            }),
            None => Err(self.eof_error("`)`")),
        }
    }
}
