//! Real-valued expressions in `x` and `y`.
//!
//! Grammar, lowest precedence first (all binary operators left-associative):
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | primary
//! primary := number | 'x' | 'y' | 'pi' | func '(' sum ')' | '(' sum ')'
//! func    := 'sin' | 'cos' | 'exp'
//! ```

use std::fmt;

/// Nesting beyond this is rejected rather than risking the stack.
pub const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        match name {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "exp" => Some(Func::Exp),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
        }
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Exp => v.exp(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Pi,
    X,
    Y,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Pi => std::f64::consts::PI,
            Expr::X => x,
            Expr::Y => y,
            Expr::Neg(e) => -e.eval(x, y),
            Expr::Add(a, b) => a.eval(x, y) + b.eval(x, y),
            Expr::Sub(a, b) => a.eval(x, y) - b.eval(x, y),
            Expr::Mul(a, b) => a.eval(x, y) * b.eval(x, y),
            Expr::Div(a, b) => a.eval(x, y) / b.eval(x, y),
            Expr::Call(f, e) => f.apply(e.eval(x, y)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            _ => 4,
        }
    }
}

/// Prints with the fewest parentheses that still parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool| {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            // `{:?}` is the shortest representation that reads back to the same bits.
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Pi => f.write_str("pi"),
            Expr::X => f.write_str("x"),
            Expr::Y => f.write_str("y"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                child(f, e, e.precedence() < 3)
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let op = match self {
                    Expr::Add(..) => " + ",
                    Expr::Sub(..) => " - ",
                    Expr::Mul(..) => "*",
                    _ => "/",
                };
                let p = self.precedence();
                child(f, a, a.precedence() < p)?;
                f.write_str(op)?;
                child(f, b, b.precedence() <= p)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Unexpected input; `found` is `None` at end of input.
    Syntax {
        found: Option<String>,
        expected: Vec<&'static str>,
    },
    UnknownIdentifier(String),
    FunctionNeedsParens(&'static str),
    LiteralOutOfRange(String),
    TooDeep,
    InvalidUtf8,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax { found, expected } => {
                match found {
                    Some(tok) => write!(f, "syntax error: unexpected `{tok}`")?,
                    None => write!(f, "syntax error: unexpected end of input")?,
                }
                if !expected.is_empty() {
                    write!(f, ", expected {}", expected.join(" or "))?;
                }
                Ok(())
            }
            ParseErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier `{name}`"),
            ParseErrorKind::FunctionNeedsParens(name) => {
                write!(f, "syntax error: function `{name}` requires parentheses")
            }
            ParseErrorKind::LiteralOutOfRange(lit) => write!(f, "numeric literal `{lit}` out of range"),
            ParseErrorKind::TooDeep => write!(f, "expression nested deeper than {MAX_DEPTH}"),
            ParseErrorKind::InvalidUtf8 => write!(f, "invalid UTF-8"),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, depth: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected(&["operator", "end of input"]));
    }
    Ok(e)
}

/// Entry point for untrusted bytes.
pub fn parse_bytes(bytes: &[u8]) -> Result<Expr, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_expression(text),
        Err(e) => {
            // Report the syntax error if there is one before the bad byte.
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("validated prefix");
            match parse_expression(valid) {
                Err(err) if err.offset < e.valid_up_to() => Err(err),
                _ => Err(ParseError { offset: e.valid_up_to(), kind: ParseErrorKind::InvalidUtf8 }),
            }
        }
    }
}

const OPERAND: &[&str] = &["number", "`x`", "`y`", "`pi`", "function", "`(`", "`-`"];

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&mut self, expected: &[&'static str]) -> ParseError {
        self.skip_ws();
        let found = self.src.get(self.pos).map(|_| {
            // Slice out one whole character for the message.
            let rest = String::from_utf8_lossy(&self.src[self.pos..]);
            rest.chars().next().map(String::from).unwrap_or_default()
        });
        ParseError { offset: self.pos, kind: ParseErrorKind::Syntax { found, expected: expected.to_vec() } }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError { offset: self.pos, kind: ParseErrorKind::TooDeep });
        }
        Ok(())
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            self.enter()?;
            let e = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(e)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.enter()?;
                let e = self.sum()?;
                self.depth -= 1;
                self.expect_close()?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            _ => Err(self.unexpected(OPERAND)),
        }
    }

    fn expect_close(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(b')') {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&["operator", "`)`"]))
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let from = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - from
        };
        let mut mantissa = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            mantissa += digits(self);
        }
        if mantissa == 0 {
            self.pos = start;
            return Err(self.unexpected(&["number"]));
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                // `2e` is a literal followed by an identifier, which is a syntax error below.
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ASCII literal");
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Expr::Num(v)),
            _ => Err(ParseError { offset: start, kind: ParseErrorKind::LiteralOutOfRange(text.to_string()) }),
        }
    }

    fn identifier(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ASCII identifier");
        match name {
            "x" => return Ok(Expr::X),
            "y" => return Ok(Expr::Y),
            "pi" => return Ok(Expr::Pi),
            _ => {}
        }
        let Some(func) = Func::from_name(name) else {
            return Err(ParseError { offset: start, kind: ParseErrorKind::UnknownIdentifier(name.to_string()) });
        };
        let after_name = self.pos;
        if self.peek() != Some(b'(') {
            return Err(ParseError { offset: after_name, kind: ParseErrorKind::FunctionNeedsParens(func.name()) });
        }
        self.pos += 1;
        self.enter()?;
        let arg = self.sum()?;
        self.depth -= 1;
        self.expect_close()?;
        Ok(Expr::Call(func, Box::new(arg)))
    }
}
