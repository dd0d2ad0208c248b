//! Small arithmetic expressions over the catalog parameters.
//!
//! Bracket coefficients, admissibility constraints and every closed-form
//! claim are stored as [`Expr`] trees, so exact and float evaluation share
//! one source of truth. The grammar is the usual one:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := number | ident | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! so `-A^2` is `-(A^2)`. Identifiers are `A`..`F` (with `T` read as `D`),
//! `eps`/`epsilon`, `del`/`delta`, and the vector coordinates `a`..`d`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A named input of an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A,
    B,
    C,
    D,
    E,
    F,
    Eps,
    Del,
    /// Vector coordinates `a, b, c, d`.
    Coord(usize),
}

impl Var {
    pub const PARAMS: [Var; 8] = [
        Var::A,
        Var::B,
        Var::C,
        Var::D,
        Var::E,
        Var::F,
        Var::Eps,
        Var::Del,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Var::A => "A",
            Var::B => "B",
            Var::C => "C",
            Var::D => "D",
            Var::E => "E",
            Var::F => "F",
            Var::Eps => "eps",
            Var::Del => "del",
            Var::Coord(0) => "a",
            Var::Coord(1) => "b",
            Var::Coord(2) => "c",
            Var::Coord(3) => "d",
            Var::Coord(_) => "?",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Some(match name {
            "A" => Var::A,
            "B" => Var::B,
            "C" => Var::C,
            "D" | "T" => Var::D,
            "E" => Var::E,
            "F" => Var::F,
            "eps" | "epsilon" => Var::Eps,
            "del" | "delta" => Var::Del,
            "a" => Var::Coord(0),
            "b" => Var::Coord(1),
            "c" => Var::Coord(2),
            "d" => Var::Coord(3),
            _ => return None,
        })
    }

    /// Slot in [`Var::PARAMS`], or `None` for coordinates.
    pub fn param_index(self) -> Option<usize> {
        Var::PARAMS.iter().position(|&v| v == self)
    }

    pub fn is_sign(self) -> bool {
        matches!(self, Var::Eps | Var::Del)
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Values available while evaluating an expression.
pub trait Env {
    fn lookup(&self, var: Var) -> Option<Scalar>;
}

/// Environment with no bindings; only constant expressions evaluate.
pub struct NoVars;

impl Env for NoVars {
    fn lookup(&self, _: Var) -> Option<Scalar> {
        None
    }
}

impl<F: Fn(Var) -> Option<Scalar>> Env for F {
    fn lookup(&self, var: Var) -> Option<Scalar> {
        self(var)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Scalar),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Sqrt(Box<Expr>),
}

/// Side condition collected from an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Constraint {
    /// The radicand of a square root must be nonnegative.
    NonNegative(Expr),
    /// A divisor must be nonzero.
    NonZero(Expr),
}

impl Constraint {
    pub fn expr(&self) -> &Expr {
        match self {
            Constraint::NonNegative(e) | Constraint::NonZero(e) => e,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::NonNegative(e) => write!(f, "{e} >= 0"),
            Constraint::NonZero(e) => write!(f, "{e} != 0"),
        }
    }
}

impl Expr {
    pub fn parse(input: &str) -> Result<Expr> {
        let mut p = Parser {
            input,
            bytes: input.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn num(n: i64) -> Expr {
        Expr::Num(Scalar::int(n))
    }

    pub fn zero() -> Expr {
        Expr::num(0)
    }

    pub fn eval(&self, env: &dyn Env) -> Result<Scalar> {
        Ok(match self {
            Expr::Num(x) => x.clone(),
            Expr::Var(v) => env
                .lookup(*v)
                .ok_or_else(|| Error::UnboundVariable(v.name().to_string()))?,
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => a.eval(env)?.checked_div(&b.eval(env)?)?,
            Expr::Pow(a, k) => a.eval(env)?.powi(*k)?,
            Expr::Sqrt(a) => a.eval(env)?.sqrt()?,
        })
    }

    /// Every variable mentioned, in a stable order.
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::Var(v) = e {
                out.insert(*v);
            }
        });
        out
    }

    pub fn is_constant(&self) -> bool {
        self.vars().is_empty()
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Num(x) if x.is_zero())
    }

    /// Radicands and divisors appearing anywhere in the expression.
    pub fn constraints(&self) -> Vec<Constraint> {
        let mut out = Vec::new();
        self.walk(&mut |e| match e {
            Expr::Sqrt(a) if !a.is_constant() => out.push(Constraint::NonNegative((**a).clone())),
            Expr::Div(_, b) if !b.is_constant() => out.push(Constraint::NonZero((**b).clone())),
            Expr::Pow(b, k) if *k < 0 && !b.is_constant() => {
                out.push(Constraint::NonZero((**b).clone()))
            }
            _ => {}
        });
        out
    }

    fn walk(&self, f: &mut dyn FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Num(_) | Expr::Var(_) => {}
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Sqrt(a) => a.walk(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.walk(f);
                b.walk(f);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(x) if x.signum() < 0 || !x.as_rational().is_some_and(|r| r.is_integer()) => 2,
            _ => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if e.precedence() < min || matches!(e, Expr::Neg(_)) && min > 1 {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Num(x) => write!(f, "{x}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                if a.precedence() < 3 {
                    write!(f, "({a})")
                } else {
                    write!(f, "{a}")
                }
            }
            Expr::Add(a, b) => {
                write!(f, "{a} + ")?;
                child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write!(f, "{a} - ")?;
                child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                child(f, a, 2)?;
                f.write_str("*")?;
                child(f, b, 3)
            }
            Expr::Div(a, b) => {
                child(f, a, 2)?;
                f.write_str("/")?;
                child(f, b, 3)
            }
            Expr::Pow(a, k) => {
                child(f, a, 5)?;
                write!(f, "^{k}")
            }
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Expr> {
        Expr::parse(s)
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Expr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Expr::parse(&s).map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let k: i32 = self.input[start..self.pos]
            .parse()
            .map_err(|_| self.error("exponent must be an integer literal"))?;
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let lit = &self.input[start..self.pos];
                lit.parse::<Scalar>()
                    .map(Expr::Num)
                    .map_err(|_| Error::Parse {
                        input: self.input.to_string(),
                        offset: start,
                        message: format!("bad number `{lit}`"),
                    })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.input[start..self.pos];
                if name == "sqrt" {
                    if !self.eat(b'(') {
                        return Err(self.error("expected `(` after sqrt"));
                    }
                    let e = self.expr()?;
                    if !self.eat(b')') {
                        return Err(self.error("expected `)`"));
                    }
                    return Ok(Expr::Sqrt(Box::new(e)));
                }
                Var::from_name(name)
                    .map(Expr::Var)
                    .ok_or_else(|| Error::Parse {
                        input: self.input.to_string(),
                        offset: start,
                        message: format!("unknown identifier `{name}`"),
                    })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Shorthand used by the catalog tables; panics on malformed literals.
pub fn e(src: &str) -> Expr {
    Expr::parse(src).unwrap_or_else(|err| panic!("bad built-in expression: {err}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(vals: &[(Var, Scalar)]) -> impl Fn(Var) -> Option<Scalar> + '_ {
        move |v| vals.iter().find(|(k, _)| *k == v).map(|(_, x)| x.clone())
    }

    #[test]
    fn precedence_and_unary_minus() {
        let x = e("-A^2 + 3*A*B/2");
        let vals = [(Var::A, Scalar::int(2)), (Var::B, Scalar::int(5))];
        assert_eq!(x.eval(&env(&vals)).unwrap(), Scalar::int(11));
    }

    #[test]
    fn sqrt_of_perfect_square_is_exact() {
        let x = e("eps*sqrt(A^2 - B^2)");
        let vals = [
            (Var::A, Scalar::int(5)),
            (Var::B, Scalar::int(3)),
            (Var::Eps, Scalar::int(-1)),
        ];
        assert_eq!(x.eval(&env(&vals)).unwrap(), Scalar::int(-4));
    }

    #[test]
    fn errors_are_reported() {
        assert!(matches!(
            e("1/(A-A)").eval(&env(&[(Var::A, Scalar::one())])),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            e("A").eval(&NoVars),
            Err(Error::UnboundVariable(_))
        ));
        assert!(matches!(Expr::parse("A +"), Err(Error::Parse { .. })));
        assert!(matches!(
            Expr::parse("Q"),
            Err(Error::Parse { offset: 0, .. })
        ));
    }

    #[test]
    fn constraints_are_collected() {
        let c = e("A*sqrt(A^2-B^2)/B").constraints();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].to_string(), "B != 0");
        assert_eq!(c[1].to_string(), "A^2 - B^2 >= 0");
        assert!(e("sqrt(2)*A").constraints().is_empty());
    }

    #[test]
    fn t_is_an_alias_for_d() {
        assert_eq!(e("T+1"), e("D+1"));
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "-A^2 + 3*A*B",
            "((C + D)^2 - B^2)/(4*A)",
            "A - (B - C)",
            "-(A + B)^2",
            "2 - 589/324*A^2*c^2",
            "eps*sqrt(A^2 + A*B + B^2)",
            "A*(-B)",
            "(A + B)^-2",
        ] {
            let x = e(src);
            let again = e(&x.to_string());
            assert_eq!(x, again, "{src} -> {x}");
        }
    }
}
