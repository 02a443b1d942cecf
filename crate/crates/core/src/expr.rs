//! Expressions in `x`: a small recursive-descent parser, evaluation, symbolic
//! differentiation, and a fully parenthesized printer whose output parses back to the
//! same tree.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (("+" | "-") product)*
//! product := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" unary)?          right associative, binds tighter than "-"
//! atom    := number | "x" | "pi" | "e" | func "(" sum ")" | "(" sum ")"
//! func    := sin | cos | ln | exp | sqrt | abs
//! ```

use std::fmt;

use thiserror::Error;

use crate::operators::FuncSpec;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("unexpected character {ch:?} at column {}", .pos + 1)]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected {found} at column {}, expected {expected}", .pos + 1)]
    Unexpected {
        found: String,
        expected: &'static str,
        pos: usize,
    },
    #[error("unknown identifier {name:?} at column {}", .pos + 1)]
    UnknownIdentifier { name: String, pos: usize },
    #[error("invalid number {text:?} at column {}", .pos + 1)]
    BadNumber { text: String, pos: usize },
}

impl ParseError {
    /// Byte offset of the problem in the input, if there is one.
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::UnexpectedChar { pos, .. }
            | ParseError::Unexpected { pos, .. }
            | ParseError::UnknownIdentifier { pos, .. }
            | ParseError::BadNumber { pos, .. } => Some(*pos),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Ln,
    Exp,
    Sqrt,
    Abs,
}

impl Func {
    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "ln" => Func::Ln,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Ln => "ln",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Ln => v.ln(),
            Func::Exp => v.exp(),
            Func::Sqrt => v.sqrt(),
            Func::Abs => v.abs(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Pi,
    E,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn describe(t: Option<&(Tok, usize)>) -> String {
    match t {
        None => "end of input".into(),
        Some((Tok::Num(v), _)) => format!("number {v}"),
        Some((Tok::Ident(s), _)) => format!("identifier {s:?}"),
        Some((Tok::Op(c), _)) => format!("{c:?}"),
        Some((Tok::LParen, _)) => "'('".into(),
        Some((Tok::RParen, _)) => "')'".into(),
    }
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // exponent only when digits follow, so "2e" stays a number and a name
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
                let text = &s[start..i];
                match text.parse::<f64>() {
                    Ok(v) if v.is_finite() => out.push((Tok::Num(v), start)),
                    _ => {
                        return Err(ParseError::BadNumber {
                            text: text.into(),
                            pos: start,
                        })
                    }
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(s[start..i].into()), start));
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push((Tok::Op(c as char), i));
                i += 1;
            }
            b'(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            _ => {
                let ch = s[i..].chars().next().expect("in bounds");
                return Err(ParseError::UnexpectedChar { ch, pos: i });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |t| t.1)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            found: describe(self.toks.get(self.at)),
            expected,
            pos: self.pos(),
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.at += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.product()?));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek() {
            let op = if *c == '*' { BinOp::Mul } else { BinOp::Div };
            self.at += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.at += 1;
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if let Some(Tok::RParen) = self.peek() {
            self.at += 1;
            Ok(())
        } else {
            Err(self.unexpected("')'"))
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.at += 1;
                Ok(Expr::Num(v))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.sum()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match name.as_str() {
                    "x" => return Ok(Expr::X),
                    "pi" => return Ok(Expr::Pi),
                    "e" => return Ok(Expr::E),
                    _ => {}
                }
                let func = Func::from_name(&name)
                    .ok_or(ParseError::UnknownIdentifier { name, pos })?;
                if self.peek() != Some(&Tok::LParen) {
                    return Err(self.unexpected("'(' after function name"));
                }
                self.at += 1;
                let arg = self.sum()?;
                self.expect_rparen()?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            _ => Err(self.unexpected("a number, x, pi, e, a function or '('")),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser {
        toks,
        at: 0,
        len: s.len(),
    };
    let e = p.sum()?;
    if p.at != p.toks.len() {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

fn num(v: f64) -> Expr {
    Expr::Num(v)
}

fn is_num(e: &Expr, v: f64) -> bool {
    matches!(e, Expr::Num(w) if *w == v)
}

// Constructors with the obvious simplifications, so derivative trees stay readable.
fn add(a: Expr, b: Expr) -> Expr {
    if is_num(&a, 0.0) {
        b
    } else if is_num(&b, 0.0) {
        a
    } else {
        Expr::Bin(BinOp::Add, Box::new(a), Box::new(b))
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    if is_num(&b, 0.0) {
        a
    } else if is_num(&a, 0.0) {
        neg(b)
    } else {
        Expr::Bin(BinOp::Sub, Box::new(a), Box::new(b))
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    if is_num(&a, 0.0) || is_num(&b, 0.0) {
        num(0.0)
    } else if is_num(&a, 1.0) {
        b
    } else if is_num(&b, 1.0) {
        a
    } else {
        Expr::Bin(BinOp::Mul, Box::new(a), Box::new(b))
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_num(&a, 0.0) {
        num(0.0)
    } else if is_num(&b, 1.0) {
        a
    } else {
        Expr::Bin(BinOp::Div, Box::new(a), Box::new(b))
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(v) if v == 0.0 => num(0.0),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

fn pow(a: Expr, b: Expr) -> Expr {
    Expr::Bin(BinOp::Pow, Box::new(a), Box::new(b))
}

fn call(f: Func, a: Expr) -> Expr {
    Expr::Call(f, Box::new(a))
}

impl Expr {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::X => x,
            Expr::Pi => std::f64::consts::PI,
            Expr::E => std::f64::consts::E,
            Expr::Neg(a) => -a.eval(x),
            Expr::Bin(op, a, b) => {
                let (u, v) = (a.eval(x), b.eval(x));
                match op {
                    BinOp::Add => u + v,
                    BinOp::Sub => u - v,
                    BinOp::Mul => u * v,
                    BinOp::Div => u / v,
                    BinOp::Pow => u.powf(v),
                }
            }
            Expr::Call(f, a) => f.apply(a.eval(x)),
        }
    }

    pub fn depends_on_x(&self) -> bool {
        match self {
            Expr::X => true,
            Expr::Num(_) | Expr::Pi | Expr::E => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.depends_on_x(),
            Expr::Bin(_, a, b) => a.depends_on_x() || b.depends_on_x(),
        }
    }

    /// `d/dx` of the expression.
    pub fn derivative(&self) -> Expr {
        match self {
            Expr::Num(_) | Expr::Pi | Expr::E => num(0.0),
            Expr::X => num(1.0),
            Expr::Neg(a) => neg(a.derivative()),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.as_ref(), b.as_ref());
                match op {
                    BinOp::Add => add(a.derivative(), b.derivative()),
                    BinOp::Sub => sub(a.derivative(), b.derivative()),
                    BinOp::Mul => add(
                        mul(a.derivative(), b.clone()),
                        mul(a.clone(), b.derivative()),
                    ),
                    BinOp::Div => div(
                        sub(
                            mul(a.derivative(), b.clone()),
                            mul(a.clone(), b.derivative()),
                        ),
                        pow(b.clone(), num(2.0)),
                    ),
                    BinOp::Pow if !b.depends_on_x() => mul(
                        mul(b.clone(), pow(a.clone(), sub(b.clone(), num(1.0)))),
                        a.derivative(),
                    ),
                    BinOp::Pow if !a.depends_on_x() => mul(
                        mul(self.clone(), call(Func::Ln, a.clone())),
                        b.derivative(),
                    ),
                    BinOp::Pow => mul(
                        self.clone(),
                        add(
                            mul(b.derivative(), call(Func::Ln, a.clone())),
                            div(mul(b.clone(), a.derivative()), a.clone()),
                        ),
                    ),
                }
            }
            Expr::Call(f, a) => {
                let inner = a.derivative();
                let outer = match f {
                    Func::Sin => call(Func::Cos, (**a).clone()),
                    Func::Cos => neg(call(Func::Sin, (**a).clone())),
                    Func::Ln => div(num(1.0), (**a).clone()),
                    Func::Exp => self.clone(),
                    Func::Sqrt => div(num(1.0), mul(num(2.0), self.clone())),
                    Func::Abs => div((**a).clone(), self.clone()),
                };
                mul(outer, inner)
            }
        }
    }

    /// Fully parenthesized text; parsing it gives back an identical tree.
    pub fn unparse(&self) -> String {
        match self {
            // Debug formatting is the shortest text that reads back as the same double
            Expr::Num(v) => format!("{v:?}"),
            Expr::X => "x".into(),
            Expr::Pi => "pi".into(),
            Expr::E => "e".into(),
            Expr::Neg(a) => format!("(-{})", a.unparse()),
            Expr::Bin(op, a, b) => format!("({} {} {})", a.unparse(), op.symbol(), b.unparse()),
            Expr::Call(f, a) => format!("{}({})", f.name(), a.unparse()),
        }
    }

    /// A [`FuncSpec`] with the symbolic derivative attached. The function is flagged
    /// endpoint-singular when its derivative is not finite at 0 or at 1.
    pub fn to_func_spec(&self, label: &str) -> FuncSpec {
        let d = self.derivative();
        let singular = !(d.eval(0.0).is_finite() && d.eval(1.0).is_finite());
        let (f, g) = (self.clone(), d);
        FuncSpec::new(move |x| f.eval(x))
            .with_derivative(move |x| g.eval(x))
            .endpoint_singular(singular)
            .with_label(label)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unparse())
    }
}

/// Parses `s` and wraps it as a [`FuncSpec`] labelled with the source text.
pub fn func_spec_from_str(s: &str) -> Result<FuncSpec, ParseError> {
    Ok(parse_expr(s)?.to_func_spec(s.trim()))
}
