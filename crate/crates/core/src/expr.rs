//! A small real-valued expression language in one variable.
//!
//! Grammar (see `docs/GRAMMAR.md` for the EBNF):
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := primary ("^" unary)?
//! primary := number | constant | variable | function "(" expr ")" | "(" expr ")"
//! ```
//!
//! Expressions evaluate to [`Jet2`] values so that the first and second
//! derivatives with respect to the variable are available without finite
//! differences.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::jet::Jet2;

/// Largest integer exponent evaluated by repeated multiplication.
const MAX_INTEGER_EXPONENT: f64 = 1024.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("function `{function}` takes 1 argument, found {found} (byte {offset})")]
    Arity {
        function: String,
        found: usize,
        offset: usize,
    },
    #[error("`{0}` cannot be used as the variable name")]
    InvalidVariable(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("domain error in `{subexpression}` at t = {t}: {reason}")]
pub struct DomainError {
    pub subexpression: String,
    pub t: f64,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        match name {
            "pi" => Some(Constant::Pi),
            "e" => Some(Constant::E),
            _ => None,
        }
    }
}

/// Expression tree. Numeric literals are always non-negative; a negative
/// number is a [`Node::Neg`] of a literal.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Number(f64),
    Constant(Constant),
    Var,
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

impl Node {
    /// A literal, encoding negative values as a negated literal.
    pub fn number(c: f64) -> Node {
        if c < 0.0 {
            Node::Neg(Box::new(Node::Number(-c)))
        } else {
            // normalizes -0.0
            Node::Number(c.abs())
        }
    }

    /// The value of a literal or negated literal.
    pub fn as_number(&self) -> Option<f64> {
        match self {
            Node::Number(c) => Some(*c),
            Node::Neg(inner) => match inner.as_ref() {
                Node::Number(c) => Some(-c),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Node::Var => true,
            Node::Number(_) | Node::Constant(_) => false,
            Node::Neg(a) | Node::Call(_, a) => a.contains_var(),
            Node::Binary(_, a, b) => a.contains_var() || b.contains_var(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Node::Binary(op, _, _) => op.precedence(),
            Node::Neg(_) => 3,
            _ => 5,
        }
    }

    // Folding constructors used for syntactic transformations. The parser
    // never folds, so parsed trees round-trip verbatim.

    pub fn negate(a: Node) -> Node {
        if let Some(c) = a.as_number() {
            return Node::number(-c);
        }
        match a {
            Node::Neg(inner) => *inner,
            other => Node::Neg(Box::new(other)),
        }
    }

    pub fn sum(a: Node, b: Node) -> Node {
        match (a.as_number(), b.as_number()) {
            (Some(x), Some(y)) if (x + y).is_finite() => Node::number(x + y),
            (Some(0.0), _) => b,
            (_, Some(0.0)) => a,
            (_, Some(y)) if y < 0.0 => {
                Node::Binary(BinOp::Sub, Box::new(a), Box::new(Node::number(-y)))
            }
            _ => Node::Binary(BinOp::Add, Box::new(a), Box::new(b)),
        }
    }

    pub fn difference(a: Node, b: Node) -> Node {
        match (a.as_number(), b.as_number()) {
            (Some(x), Some(y)) if (x - y).is_finite() => Node::number(x - y),
            (Some(0.0), _) => Node::negate(b),
            (_, Some(0.0)) => a,
            (_, Some(y)) if y < 0.0 => {
                Node::Binary(BinOp::Add, Box::new(a), Box::new(Node::number(-y)))
            }
            _ => Node::Binary(BinOp::Sub, Box::new(a), Box::new(b)),
        }
    }

    pub fn product(a: Node, b: Node) -> Node {
        match (a.as_number(), b.as_number()) {
            (Some(x), Some(y)) if (x * y).is_finite() => Node::number(x * y),
            (Some(x), _) | (_, Some(x)) if x == 0.0 => Node::Number(0.0),
            (Some(1.0), _) => b,
            (_, Some(1.0)) => a,
            (Some(-1.0), _) => Node::negate(b),
            (_, Some(-1.0)) => Node::negate(a),
            _ => Node::Binary(BinOp::Mul, Box::new(a), Box::new(b)),
        }
    }

    pub fn quotient(a: Node, b: Node) -> Node {
        match (a.as_number(), b.as_number()) {
            (Some(x), Some(y)) if y != 0.0 && (x / y).is_finite() => Node::number(x / y),
            (_, Some(1.0)) => a,
            (_, Some(-1.0)) => Node::negate(a),
            _ => Node::Binary(BinOp::Div, Box::new(a), Box::new(b)),
        }
    }

    pub fn power(a: Node, b: Node) -> Node {
        match (a.as_number(), b.as_number()) {
            (Some(x), Some(y)) if y.fract() == 0.0 && y.abs() <= MAX_INTEGER_EXPONENT => {
                let v = x.powi(y as i32);
                if v.is_finite() {
                    Node::number(v)
                } else {
                    Node::Binary(BinOp::Pow, Box::new(a), Box::new(b))
                }
            }
            (_, Some(1.0)) => a,
            (_, Some(0.0)) => Node::Number(1.0),
            _ => Node::Binary(BinOp::Pow, Box::new(a), Box::new(b)),
        }
    }

    pub fn call(func: Func, a: Node) -> Node {
        Node::Call(func, Box::new(a))
    }

    fn write(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Number(c) => write!(f, "{c}"),
            Node::Constant(c) => f.write_str(c.name()),
            Node::Var => f.write_str(var),
            Node::Neg(a) => {
                f.write_str("-")?;
                write_wrapped(a, var, a.precedence() < 3, f)
            }
            Node::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.write(var, f)?;
                f.write_str(")")
            }
            Node::Binary(op, a, b) => {
                let p = op.precedence();
                let wrap_left = match op {
                    BinOp::Pow => a.precedence() <= p,
                    _ => a.precedence() < p,
                };
                let wrap_right = match op {
                    BinOp::Pow => b.precedence() < 3,
                    _ => b.precedence() <= p,
                };
                write_wrapped(a, var, wrap_left, f)?;
                f.write_str(op.symbol())?;
                write_wrapped(b, var, wrap_right, f)
            }
        }
    }

    fn eval(&self, t: f64, var: &str) -> Result<Jet2, DomainError> {
        let fail = |node: &Node, reason| DomainError {
            subexpression: Rendered(node, var).to_string(),
            t,
            reason,
        };
        let out = match self {
            Node::Number(c) => Jet2::constant(*c),
            Node::Constant(c) => Jet2::constant(c.value()),
            Node::Var => Jet2::variable(t),
            Node::Neg(a) => -a.eval(t, var)?,
            Node::Binary(op, a, b) => {
                let x = a.eval(t, var)?;
                match op {
                    BinOp::Add => x + b.eval(t, var)?,
                    BinOp::Sub => x - b.eval(t, var)?,
                    BinOp::Mul => x * b.eval(t, var)?,
                    BinOp::Div => {
                        let y = b.eval(t, var)?;
                        if y.v == 0.0 {
                            return Err(fail(self, "division by zero"));
                        }
                        x / y
                    }
                    BinOp::Pow => {
                        let y = b.eval(t, var)?;
                        let integral = !b.contains_var()
                            && y.v.fract() == 0.0
                            && y.v.abs() <= MAX_INTEGER_EXPONENT;
                        if integral {
                            if x.v == 0.0 && y.v < 0.0 {
                                return Err(fail(self, "zero raised to a negative power"));
                            }
                            x.powi(y.v as i32)
                        } else {
                            if x.v <= 0.0 {
                                return Err(fail(
                                    self,
                                    "non-positive base with non-integer exponent",
                                ));
                            }
                            x.powf(y)
                        }
                    }
                }
            }
            Node::Call(func, a) => {
                let x = a.eval(t, var)?;
                match func {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Tan => {
                        if x.v.cos() == 0.0 {
                            return Err(fail(self, "pole of tan"));
                        }
                        x.tan()
                    }
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                    Func::Tanh => x.tanh(),
                    Func::Exp => x.exp(),
                    Func::Ln => {
                        if x.v <= 0.0 {
                            return Err(fail(self, "logarithm of a non-positive value"));
                        }
                        x.ln()
                    }
                    Func::Sqrt => {
                        if x.v <= 0.0 {
                            return Err(fail(self, "square root of a non-positive value"));
                        }
                        x.sqrt()
                    }
                    Func::Abs => {
                        if x.v == 0.0 {
                            return Err(fail(self, "abs is not differentiable at 0"));
                        }
                        x.abs()
                    }
                }
            }
        };
        if !out.is_finite() {
            return Err(fail(self, "non-finite result"));
        }
        Ok(out)
    }
}

fn write_wrapped(node: &Node, var: &str, wrap: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if wrap {
        f.write_str("(")?;
        node.write(var, f)?;
        f.write_str(")")
    } else {
        node.write(var, f)
    }
}

struct Rendered<'a>(&'a Node, &'a str);

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write(self.1, f)
    }
}

/// A parsed expression in a single named variable.
#[derive(Debug, Clone)]
pub struct Expression {
    ast: Arc<Node>,
    source: Arc<str>,
    variable: Arc<str>,
}

impl PartialEq for Expression {
    /// Structural equality of the trees; the source text is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.ast == other.ast
    }
}

impl Expression {
    pub fn parse(source: &str, variable: &str) -> Result<Self, ParseError> {
        validate_variable(variable)?;
        let ast = Parser::new(source, variable).parse()?;
        Ok(Self {
            ast: Arc::new(ast),
            source: source.into(),
            variable: variable.into(),
        })
    }

    /// Builds an expression from a tree; the source is its rendering.
    pub fn from_node(ast: Node, variable: &str) -> Self {
        let source = Rendered(&ast, variable).to_string();
        Self {
            ast: Arc::new(ast),
            source: source.into(),
            variable: variable.into(),
        }
    }

    pub fn constant(c: f64, variable: &str) -> Self {
        Self::from_node(Node::number(c), variable)
    }

    pub fn ast(&self) -> &Node {
        &self.ast
    }

    /// The text this expression was parsed from.
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn eval_jet2(&self, t: f64) -> Result<Jet2, DomainError> {
        self.ast.eval(t, &self.variable)
    }

    pub fn eval(&self, t: f64) -> Result<f64, DomainError> {
        self.eval_jet2(t).map(|j| j.v)
    }

    fn map(&self, ast: Node) -> Self {
        Self::from_node(ast, &self.variable)
    }

    pub fn neg(&self) -> Self {
        self.map(Node::negate(self.ast().clone()))
    }

    pub fn add(&self, other: &Expression) -> Self {
        self.map(Node::sum(self.ast().clone(), other.ast().clone()))
    }

    pub fn sub(&self, other: &Expression) -> Self {
        self.map(Node::difference(self.ast().clone(), other.ast().clone()))
    }

    pub fn mul(&self, other: &Expression) -> Self {
        self.map(Node::product(self.ast().clone(), other.ast().clone()))
    }

    pub fn div(&self, other: &Expression) -> Self {
        self.map(Node::quotient(self.ast().clone(), other.ast().clone()))
    }

    pub fn scale(&self, k: f64) -> Self {
        self.map(Node::product(Node::number(k), self.ast().clone()))
    }

    pub fn offset(&self, k: f64) -> Self {
        self.map(Node::sum(self.ast().clone(), Node::number(k)))
    }

    pub fn powi(&self, n: i32) -> Self {
        self.map(Node::power(self.ast().clone(), Node::number(n as f64)))
    }
}

impl fmt::Display for Expression {
    /// Canonical rendering of the tree (not necessarily the original source).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ast.write(&self.variable, f)
    }
}

impl serde::Serialize for Expression {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn is_reserved(name: &str) -> bool {
    Func::from_name(name).is_some() || Constant::from_name(name).is_some()
}

fn validate_variable(name: &str) -> Result<(), ParseError> {
    let mut chars = name.chars();
    let ok_start = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    let ok_rest = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok_start || !ok_rest || is_reserved(name) {
        return Err(ParseError::InvalidVariable(name.to_string()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
}

fn tokenize(src: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push((Token::Op(c as char), i));
                i += 1;
            }
            b'(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            b',' => {
                out.push((Token::Comma, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // exponent only when digits follow, so "2e" stays "2" "e"
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
                let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("malformed number `{text}`"),
                })?;
                if !value.is_finite() {
                    return Err(ParseError::Syntax {
                        offset: start,
                        message: format!("number `{text}` is out of range"),
                    });
                }
                out.push((Token::Number(value), start));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Token::Ident(src[start..i].to_string()), start));
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    variable: &'a str,
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, variable: &'a str) -> Self {
        Self {
            src,
            variable,
            tokens: Vec::new(),
            pos: 0,
        }
    }

    fn parse(mut self) -> Result<Node, ParseError> {
        if self.src.trim().is_empty() {
            return Err(ParseError::Empty);
        }
        self.tokens = tokenize(self.src)?;
        let node = self.expr()?;
        if let Some((tok, offset)) = self.tokens.get(self.pos) {
            let message = match tok {
                Token::RParen => "unmatched `)`".to_string(),
                _ => "expected an operator".to_string(),
            };
            return Err(ParseError::Syntax {
                offset: *offset,
                message,
            });
        }
        Ok(node)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, o)| *o)
            .unwrap_or(self.src.len())
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Token::Op(c @ ('*' | '/'))) = self.peek() {
            let op = if *c == '*' { BinOp::Mul } else { BinOp::Div };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if let Some(Token::Op('-')) = self.peek() {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Node::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.primary()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(Node::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        let offset = self.offset();
        let Some((tok, _)) = self.tokens.get(self.pos).cloned() else {
            return Err(ParseError::Syntax {
                offset,
                message: "unexpected end of input".into(),
            });
        };
        self.pos += 1;
        match tok {
            Token::Number(v) => Ok(Node::Number(v)),
            Token::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Token::Ident(name) => {
                if let Some(func) = Func::from_name(&name) {
                    return self.call(func, offset);
                }
                if let Some(c) = Constant::from_name(&name) {
                    return Ok(Node::Constant(c));
                }
                if name == self.variable {
                    return Ok(Node::Var);
                }
                Err(ParseError::UnknownIdentifier { name, offset })
            }
            Token::Op(c) => Err(ParseError::Syntax {
                offset,
                message: format!("unexpected operator `{c}`"),
            }),
            Token::RParen => Err(ParseError::Syntax {
                offset,
                message: "unexpected `)`".into(),
            }),
            Token::Comma => Err(ParseError::Syntax {
                offset,
                message: "unexpected `,`".into(),
            }),
        }
    }

    fn call(&mut self, func: Func, offset: usize) -> Result<Node, ParseError> {
        let arity = |found| ParseError::Arity {
            function: func.name().to_string(),
            found,
            offset,
        };
        if self.peek() != Some(&Token::LParen) {
            return Err(arity(0));
        }
        self.pos += 1;
        if self.peek() == Some(&Token::RParen) {
            return Err(arity(0));
        }
        let mut args = vec![self.expr()?];
        while self.peek() == Some(&Token::Comma) {
            self.pos += 1;
            args.push(self.expr()?);
        }
        self.expect_rparen()?;
        if args.len() != 1 {
            return Err(arity(args.len()));
        }
        Ok(Node::Call(
            func,
            Box::new(args.pop().expect("one argument")),
        ))
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(&Token::RParen) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax {
                offset: self.offset(),
                message: "expected `)`".into(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expression {
        Expression::parse(s, "t").unwrap()
    }

    #[test]
    fn evaluates_simple_forms() {
        assert_eq!(p("2*t+1").eval(1.0).unwrap(), 3.0);
        assert_eq!(p("sinh(t)").eval(0.0).unwrap(), 0.0);
        assert_eq!(
            p("exp(t)").eval_jet2(0.0).unwrap(),
            Jet2::new(1.0, 1.0, 1.0)
        );
        assert_eq!(p("t^3").eval_jet2(2.0).unwrap(), Jet2::new(8.0, 12.0, 12.0));
        assert!((p("pi").eval(0.0).unwrap() - std::f64::consts::PI).abs() < 1e-15);
        assert!((p("e^t").eval(1.0).unwrap() - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn missing_operator_is_a_syntax_error() {
        match Expression::parse("2t", "t") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Expression::parse("2e", "t"),
            Err(ParseError::Syntax { offset: 1, .. })
        ));
        assert!(matches!(
            Expression::parse("(t", "t"),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            Expression::parse("t)", "t"),
            Err(ParseError::Syntax { offset: 1, .. })
        ));
        assert!(matches!(
            Expression::parse("t +", "t"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            Expression::parse("t # 2", "t"),
            Err(ParseError::Syntax { offset: 2, .. })
        ));
        assert_eq!(Expression::parse("  ", "t"), Err(ParseError::Empty));
    }

    #[test]
    fn identifier_and_arity_errors() {
        assert_eq!(
            Expression::parse("x + 1", "t"),
            Err(ParseError::UnknownIdentifier {
                name: "x".into(),
                offset: 0
            })
        );
        assert!(matches!(
            Expression::parse("sin(t, t)", "t"),
            Err(ParseError::Arity { found: 2, .. })
        ));
        assert!(matches!(
            Expression::parse("cos()", "t"),
            Err(ParseError::Arity { found: 0, .. })
        ));
        assert!(matches!(
            Expression::parse("exp + 1", "t"),
            Err(ParseError::Arity { found: 0, .. })
        ));
        assert!(matches!(
            Expression::parse("t", "sin"),
            Err(ParseError::InvalidVariable(_))
        ));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(p("2^3^2").eval(0.0).unwrap(), 512.0);
        assert_eq!(p("-t^2").eval(3.0).unwrap(), -9.0);
        assert_eq!(p("(-t)^2").eval(3.0).unwrap(), 9.0);
        assert_eq!(p("8/4/2").eval(0.0).unwrap(), 1.0);
        assert_eq!(p("1 - 2 - 3").eval(0.0).unwrap(), -4.0);
        assert_eq!(p("2^-1").eval(0.0).unwrap(), 0.5);
        assert_eq!(p("1e-3*t").eval(2.0).unwrap(), 0.002);
    }

    #[test]
    fn domain_errors_name_the_subexpression() {
        let err = p("1/(t-1)").eval_jet2(1.0).unwrap_err();
        assert_eq!(err.subexpression, "1/(t - 1)");
        assert_eq!(err.t, 1.0);
        assert!(p("ln(t)").eval(0.0).is_err());
        assert!(p("sqrt(t)").eval(-1.0).is_err());
        assert!(p("abs(t)").eval(0.0).is_err());
        assert!(p("t^0.5").eval(-1.0).is_err());
        assert!(p("t^-2").eval(0.0).is_err());
        // integer exponents accept negative bases
        assert_eq!(p("t^3").eval(-2.0).unwrap(), -8.0);
    }

    #[test]
    fn rendering_round_trips() {
        for s in [
            "t - (2 - t)",
            "t - (t - 1)",
            "-(t*2) + --t",
            "2^3^t",
            "(2^3)^t",
            "t*-t/(t + 1)",
            "sin(cos(t))^2 - 1/t^-3",
            "(-t)^2 - -t^2",
            "t/(t*2)",
            "0.1 + 1e21 + 1e-7*pi - e",
        ] {
            let Ok(e) = Expression::parse(s, "t") else {
                continue;
            };
            let again = Expression::parse(&e.to_string(), "t").unwrap();
            assert_eq!(e, again, "{s} -> {e}");
        }
    }

    #[test]
    fn folding_constructors_simplify_identities() {
        let g = p("t^2");
        let one = Expression::constant(1.0, "t");
        let zero = Expression::constant(0.0, "t");
        let ghat = one.mul(&g).add(&one).div(&zero.mul(&g).add(&one));
        assert_eq!(ghat, p("t^2 + 1"));
        let f = p("exp(t)");
        assert_eq!(f.mul(&zero.mul(&g).add(&one).powi(2)), f);
        assert_eq!(g.neg().neg(), g);
        assert_eq!(Expression::constant(-2.0, "t"), p("-2"));
    }
}
