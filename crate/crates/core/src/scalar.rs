//! Numbers that are either exact rationals or doubles.
//!
//! Exact values stay exact under `+ - * /`. Mixing an exact value with a
//! float yields a float. `sqrt` stays exact only when the radicand is the
//! square of a rational; otherwise it falls over to a float, and callers
//! detect the fallback through [`Scalar::is_exact`].

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arithmetic mode requested for a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse {
                input: other.to_string(),
                offset: 0,
                message: "mode must be `exact` or `float`".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as an exact rational. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn float(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Converts to the requested mode. Exact conversion of a float goes
    /// through its shortest decimal representation, so `0.1` becomes `1/10`.
    pub fn to_mode(&self, mode: Mode) -> Scalar {
        match (mode, self) {
            (Mode::Float, Scalar::Exact(r)) => Scalar::Float(rational_to_f64(r)),
            (Mode::Exact, Scalar::Float(x)) => {
                Scalar::from_f64_decimal(*x).unwrap_or(Scalar::Float(*x))
            }
            _ => self.clone(),
        }
    }

    /// Exact rational equal to the shortest decimal that round-trips `x`.
    pub fn from_f64_decimal(x: f64) -> Option<Scalar> {
        if !x.is_finite() {
            return None;
        }
        parse_decimal(&format!("{x}")).map(Scalar::Exact)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (_, Scalar::Exact(r)) if r.is_zero() => Err(Error::DivisionByZero),
            (_, Scalar::Float(x)) if *x == 0.0 => Err(Error::DivisionByZero),
            _ => Ok(self / rhs),
        }
    }

    /// Square root. Exact when the argument is the square of a rational.
    pub fn sqrt(&self) -> Result<Scalar> {
        match self {
            Scalar::Exact(r) => {
                if r.is_negative() {
                    return Err(Error::NegativeRadicand {
                        value: self.to_string(),
                    });
                }
                match exact_sqrt(r) {
                    Some(root) => Ok(Scalar::Exact(root)),
                    None => Ok(Scalar::Float(rational_to_f64(r).sqrt())),
                }
            }
            Scalar::Float(x) => {
                if *x < 0.0 {
                    Err(Error::NegativeRadicand {
                        value: self.to_string(),
                    })
                } else {
                    Ok(Scalar::Float(x.sqrt()))
                }
            }
        }
    }

    pub fn powi(&self, exp: i32) -> Result<Scalar> {
        if exp < 0 {
            return Scalar::one().checked_div(&self.powi(-exp)?);
        }
        let mut out = Scalar::one();
        for _ in 0..exp {
            out = &out * self;
        }
        Ok(out)
    }

    pub fn signum(&self) -> i8 {
        match self {
            Scalar::Exact(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Float(x) => {
                if *x == 0.0 {
                    0
                } else if *x > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Total order on values, comparing mixed pairs as floats.
    pub fn compare(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn exact_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Parses `[-]digits[.digits]` exactly.
fn parse_decimal(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    let value = BigRational::new(numer, denom);
    Some(if neg { -value } else { value })
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q`, integers and plain decimals (all exact), and anything
    /// else `f64` understands (as a float).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = |message: &str| Error::Parse {
            input: s.to_string(),
            offset: 0,
            message: message.to_string(),
        };
        if let Some((p, q)) = t.split_once('/') {
            let p = parse_decimal(p.trim()).ok_or_else(|| err("bad numerator"))?;
            let q = parse_decimal(q.trim()).ok_or_else(|| err("bad denominator"))?;
            if q.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(Scalar::Exact(p / q));
        }
        if let Some(r) = parse_decimal(t) {
            return Ok(Scalar::Exact(r));
        }
        t.parse::<f64>()
            .map(Scalar::Float)
            .map_err(|_| err("not a number"))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(_) => serializer.serialize_str(&self.to_string()),
            Scalar::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(n) => Ok(Scalar::int(n)),
            Raw::Num(x) => Ok(Scalar::from_f64_decimal(x).unwrap_or(Scalar::Float(x))),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                &self $op rhs
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

// Division by an exact zero panics, mirroring `BigRational`; use
// `checked_div` where the divisor is not known to be nonzero.
binop!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Relative/absolute tolerance pair used by every float comparison.
///
/// A quantity is negligible at a given `scale` when its magnitude does not
/// exceed `max(abs, rel * scale)`. Exact quantities are negligible only when
/// they are exactly zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn bound(&self, scale: f64) -> f64 {
        self.abs.max(self.rel * scale)
    }

    pub fn is_negligible(&self, x: &Scalar, scale: f64) -> bool {
        match x {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(v) => v.abs() <= self.bound(scale),
        }
    }

    /// Float-only test, for residuals that were already reduced to `f64`.
    pub fn is_small(&self, magnitude: f64, scale: f64) -> bool {
        magnitude <= self.bound(scale)
    }

    pub fn approx_eq(&self, a: &Scalar, b: &Scalar) -> bool {
        let scale = 1.0 + a.abs_f64().max(b.abs_f64());
        self.is_negligible(&(a - b), scale)
    }

    pub fn scaled(&self, factor: f64) -> Tolerance {
        Tolerance {
            rel: self.rel * factor,
            abs: self.abs * factor,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let x = Scalar::ratio(1, 3) + Scalar::ratio(1, 6);
        assert_eq!(x, Scalar::ratio(1, 2));
        assert!(x.is_exact());
        let y = &x * &Scalar::int(4);
        assert_eq!(y, Scalar::int(2));
    }

    #[test]
    fn mixing_with_float_gives_float() {
        let x = Scalar::ratio(1, 2) + Scalar::float(0.25);
        assert_eq!(x, Scalar::Float(0.75));
    }

    #[test]
    fn sqrt_of_rational_square_is_exact() {
        assert_eq!(Scalar::int(16).sqrt().unwrap(), Scalar::int(4));
        assert_eq!(Scalar::ratio(9, 49).sqrt().unwrap(), Scalar::ratio(3, 7));
        assert_eq!(Scalar::zero().sqrt().unwrap(), Scalar::zero());
    }

    #[test]
    fn sqrt_of_non_square_falls_back_to_float() {
        let r = Scalar::int(2).sqrt().unwrap();
        assert!(!r.is_exact());
        assert!((r.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn sqrt_of_negative_is_an_error() {
        assert!(matches!(
            Scalar::int(-1).sqrt(),
            Err(Error::NegativeRadicand { .. })
        ));
        assert!(Scalar::float(-0.5).sqrt().is_err());
    }

    #[test]
    fn checked_div_rejects_zero() {
        assert_eq!(
            Scalar::one().checked_div(&Scalar::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            Scalar::int(3).checked_div(&Scalar::int(6)).unwrap(),
            Scalar::ratio(1, 2)
        );
    }

    #[test]
    fn parses_rationals_and_decimals_exactly() {
        assert_eq!("3/4".parse::<Scalar>().unwrap(), Scalar::ratio(3, 4));
        assert_eq!("-2".parse::<Scalar>().unwrap(), Scalar::int(-2));
        assert_eq!("0.125".parse::<Scalar>().unwrap(), Scalar::ratio(1, 8));
        assert_eq!("1e-3".parse::<Scalar>().unwrap(), Scalar::Float(1e-3));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn display_and_serde_round_trip() {
        let x = Scalar::ratio(-5, 3);
        assert_eq!(x.to_string(), "-5/3");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "\"-5/3\"");
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        let f: Scalar = serde_json::from_str("0.5").unwrap();
        assert_eq!(f, Scalar::ratio(1, 2));
        let i: Scalar = serde_json::from_str("7").unwrap();
        assert_eq!(i, Scalar::int(7));
    }

    #[test]
    fn tolerance_uses_floor_and_relative_part() {
        let tol = Tolerance::default();
        assert_eq!(tol.bound(0.0), 1e-12);
        assert_eq!(tol.bound(1e4), 1e-5);
        assert!(tol.is_negligible(&Scalar::float(5e-13), 1.0));
        assert!(!tol.is_negligible(&Scalar::float(5e-9), 1.0));
        assert!(!tol.is_negligible(&Scalar::ratio(1, 1_000_000_000_000_000), 1.0));
    }
}
