//! Scalar-field expressions in the chart variables (x, y, z, t).
//!
//! Expressions parse from and print to plain infix strings such as
//! `exp(-x) * (1 + y^2)`, and evaluate over any [`Scalar`].

use std::fmt;
use std::ops;

use serde::{Deserialize, Serialize};

use crate::error::{InstanceError, JetError};
use crate::scalar::Scalar;

pub const VAR_NAMES: [&str; 4] = ["x", "y", "z", "t"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Expr {
    Const(f64),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Powi(Box<Expr>, i32),
    Func(Func, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Sqrt,
    Sin,
    Cos,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "ln" | "log" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            _ => return None,
        })
    }
}

impl Expr {
    pub fn c(v: f64) -> Expr {
        Expr::Const(v)
    }

    pub fn var(i: usize) -> Expr {
        assert!(i < 4);
        Expr::Var(i)
    }

    pub fn x() -> Expr {
        Expr::Var(0)
    }

    pub fn y() -> Expr {
        Expr::Var(1)
    }

    pub fn func(f: Func, e: Expr) -> Expr {
        Expr::Func(f, Box::new(e))
    }

    pub fn powi(self, n: i32) -> Expr {
        Expr::Powi(Box::new(self), n)
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(v) => Some(*v),
            _ => None,
        }
    }

    /// True when the expression only involves x and y.
    pub fn is_planar(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var(i) => *i < 2,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_planar() && b.is_planar()
            }
            Expr::Neg(a) | Expr::Powi(a, _) | Expr::Func(_, a) => a.is_planar(),
        }
    }

    pub fn eval<S: Scalar>(&self, vars: &[S; 4]) -> Result<S, JetError> {
        Ok(match self {
            Expr::Const(v) => vars[0].constant_like(*v),
            Expr::Var(i) => vars[*i].clone(),
            Expr::Add(a, b) => a.eval(vars)?.add(&b.eval(vars)?),
            Expr::Sub(a, b) => a.eval(vars)?.sub(&b.eval(vars)?),
            Expr::Mul(a, b) => a.eval(vars)?.mul(&b.eval(vars)?),
            Expr::Div(a, b) => a.eval(vars)?.div(&b.eval(vars)?)?,
            Expr::Neg(a) => a.eval(vars)?.neg(),
            Expr::Powi(a, n) => a.eval(vars)?.powi(*n)?,
            Expr::Func(f, a) => {
                let v = a.eval(vars)?;
                match f {
                    Func::Exp => v.exp(),
                    Func::Ln => v.ln()?,
                    Func::Sqrt => v.sqrt()?,
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                }
            }
        })
    }

    pub fn parse(src: &str) -> Result<Expr, InstanceError> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr(0)?;
        if p.pos != p.tokens.len() {
            return Err(InstanceError::Parse(format!(
                "unexpected trailing input in `{src}`"
            )));
        }
        Ok(e)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Powi(..) => 4,
            Expr::Const(v) if *v < 0.0 => 3,
            _ => 5,
        }
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(0.0), _) => rhs,
            (_, Some(0.0)) => self,
            (Some(a), Some(b)) => Expr::Const(a + b),
            _ => Expr::Add(Box::new(self), Box::new(rhs)),
        }
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (_, Some(0.0)) => self,
            (Some(a), Some(b)) => Expr::Const(a - b),
            _ => Expr::Sub(Box::new(self), Box::new(rhs)),
        }
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(0.0), _) | (_, Some(0.0)) => Expr::Const(0.0),
            (Some(1.0), _) => rhs,
            (_, Some(1.0)) => self,
            (Some(a), Some(b)) => Expr::Const(a * b),
            _ => Expr::Mul(Box::new(self), Box::new(rhs)),
        }
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        match rhs.as_const() {
            Some(1.0) => self,
            _ => Expr::Div(Box::new(self), Box::new(rhs)),
        }
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self {
            Expr::Const(v) => Expr::Const(-v),
            Expr::Neg(a) => *a,
            e => Expr::Neg(Box::new(e)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Const(v) => write!(f, "{v:?}"),
            Expr::Var(i) => f.write_str(VAR_NAMES[*i]),
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(" * ")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(" / ")?;
                wrap(f, b, 3)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 4)
            }
            Expr::Powi(a, n) => {
                wrap(f, a, 5)?;
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
            Expr::Func(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl From<Expr> for String {
    fn from(e: Expr) -> String {
        e.to_string()
    }
}

impl TryFrom<String> for Expr {
    type Error = InstanceError;
    fn try_from(s: String) -> Result<Expr, InstanceError> {
        Expr::parse(&s)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Token>, InstanceError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let v = text
                    .parse::<f64>()
                    .map_err(|_| InstanceError::Parse(format!("bad number `{text}`")))?;
                out.push(Token::Num(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push(Token::Op(c));
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            _ => return Err(InstanceError::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
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

    fn expect_rparen(&mut self) -> Result<(), InstanceError> {
        match self.next() {
            Some(Token::RParen) => Ok(()),
            _ => Err(InstanceError::Parse("expected `)`".into())),
        }
    }

    /// Precedence climbing over binary + - * /.
    fn expr(&mut self, min_prec: u8) -> Result<Expr, InstanceError> {
        let mut lhs = self.unary()?;
        loop {
            let (op, prec) = match self.peek() {
                Some(Token::Op(c @ ('+' | '-'))) => (*c, 1),
                Some(Token::Op(c @ ('*' | '/'))) => (*c, 2),
                _ => break,
            };
            if prec < min_prec.max(1) {
                break;
            }
            self.next();
            let rhs = self.expr(prec + 1)?;
            lhs = match op {
                '+' => Expr::Add(Box::new(lhs), Box::new(rhs)),
                '-' => Expr::Sub(Box::new(lhs), Box::new(rhs)),
                '*' => Expr::Mul(Box::new(lhs), Box::new(rhs)),
                _ => Expr::Div(Box::new(lhs), Box::new(rhs)),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, InstanceError> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.next();
                let inner = self.unary()?;
                Ok(match inner {
                    Expr::Const(v) => Expr::Const(-v),
                    e => Expr::Neg(Box::new(e)),
                })
            }
            Some(Token::Op('+')) => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, InstanceError> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.next();
            let n = match self.next() {
                Some(Token::Num(v)) => v,
                Some(Token::LParen) => {
                    let neg = matches!(self.peek(), Some(Token::Op('-')));
                    if neg {
                        self.next();
                    }
                    let v = match self.next() {
                        Some(Token::Num(v)) => v,
                        _ => return Err(InstanceError::Parse("expected integer exponent".into())),
                    };
                    self.expect_rparen()?;
                    if neg {
                        -v
                    } else {
                        v
                    }
                }
                _ => return Err(InstanceError::Parse("expected integer exponent".into())),
            };
            if n.fract() != 0.0 || n.abs() > 64.0 {
                return Err(InstanceError::Parse(format!("exponent {n} is not a small integer")));
            }
            return Ok(Expr::Powi(Box::new(base), n as i32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, InstanceError> {
        match self.next() {
            Some(Token::Num(v)) => Ok(Expr::Const(v)),
            Some(Token::LParen) => {
                let e = self.expr(0)?;
                self.expect_rparen()?;
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                if let Some(i) = VAR_NAMES.iter().position(|v| *v == name) {
                    return Ok(Expr::Var(i));
                }
                if name == "pi" {
                    return Ok(Expr::Const(std::f64::consts::PI));
                }
                let func = Func::from_name(&name).ok_or(InstanceError::UnknownVariable(name))?;
                match self.next() {
                    Some(Token::LParen) => {}
                    _ => return Err(InstanceError::Parse(format!("expected `(` after {}", func.name()))),
                }
                let arg = self.expr(0)?;
                self.expect_rparen()?;
                Ok(Expr::Func(func, Box::new(arg)))
            }
            other => Err(InstanceError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::{Jet, MultiIndex};
    use approx::assert_relative_eq;

    #[test]
    fn parses_and_evaluates() {
        let e = Expr::parse("exp(-x) * (1 + y^2) - 3/z + t").unwrap();
        let v = e.eval(&[0.5, 2.0, 1.5, -1.0]).unwrap();
        assert_relative_eq!(v, (-0.5f64).exp() * 5.0 - 2.0 - 1.0, epsilon = 1e-15);
    }

    #[test]
    fn precedence_and_associativity() {
        let e = Expr::parse("2 - 3 - 4 * x / 2").unwrap();
        assert_relative_eq!(e.eval(&[1.0, 0.0, 0.0, 0.0]).unwrap(), -3.0);
        let e = Expr::parse("-x^2").unwrap();
        assert_relative_eq!(e.eval(&[3.0, 0.0, 0.0, 0.0]).unwrap(), -9.0);
        let e = Expr::parse("x^(-2)").unwrap();
        assert_relative_eq!(e.eval(&[2.0, 0.0, 0.0, 0.0]).unwrap(), 0.25);
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "exp(-x) * (1 + y^2) - 3 / z + t",
            "(x - y) - (z - t)",
            "x / (y * z)",
            "-(x + 1)^3",
            "sqrt(x^2 + 0.1) * cos(t) / sin(y + 2)",
            "x^(-3) * -0.25",
        ] {
            let e = Expr::parse(src).unwrap();
            let again = Expr::parse(&e.to_string()).unwrap();
            assert_eq!(e, again, "{src} -> {e}");
        }
    }

    #[test]
    fn errors_are_reported() {
        assert!(matches!(Expr::parse("x +"), Err(InstanceError::Parse(_))));
        assert!(matches!(Expr::parse("w * 2"), Err(InstanceError::UnknownVariable(_))));
        assert!(matches!(Expr::parse("x^0.5"), Err(InstanceError::Parse(_))));
        assert!(matches!(Expr::parse("(x"), Err(InstanceError::Parse(_))));
    }

    #[test]
    fn evaluates_on_jets() {
        let p = [1.0, 0.5, 0.0, 0.0];
        let vars = Jet::coordinates(p);
        let e = Expr::parse("ln(x) * y").unwrap();
        let j = e.eval(&vars).unwrap();
        let d = j.partial(MultiIndex::new([1, 1, 0, 0]).unwrap()).unwrap();
        assert_relative_eq!(d, 1.0, epsilon = 1e-14);
        assert!(Expr::parse("ln(x - 2)").unwrap().eval(&vars).is_err());
    }

    #[test]
    fn serde_uses_strings() {
        let e = Expr::parse("x * y + 1").unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, "\"x * y + 1.0\"");
        let back: Expr = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<Expr>("\"x +\"").is_err());
    }

    #[test]
    fn planarity() {
        assert!(Expr::parse("exp(x) / y").unwrap().is_planar());
        assert!(!Expr::parse("x + z").unwrap().is_planar());
    }
}
