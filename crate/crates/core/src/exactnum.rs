//! Exact scalars for every field the engine computes over.
//!
//! Three concrete fields are supported:
//!
//! * the rationals, backed by [`num_rational::BigRational`];
//! * prime fields `F_p` for the small primes in [`SUPPORTED_PRIMES`];
//! * the Eisenstein rationals `Q(ω)`, with `ω² = −1 − ω`.
//!
//! [`Scalar`] is the tagged union used by the geometry layer. Arithmetic
//! between scalars of different fields is an error, never a coercion.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::NumError;

/// Primes accepted for `F_p` arithmetic and plane construction.
pub const SUPPORTED_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// Names the field a scalar (or a whole configuration) lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawField")]
pub enum FieldDescriptor {
    Rational,
    Prime { p: u32 },
    Eisenstein,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawField {
    Rational,
    Prime { p: u32 },
    Eisenstein,
}

impl TryFrom<RawField> for FieldDescriptor {
    type Error = NumError;

    fn try_from(raw: RawField) -> Result<Self, NumError> {
        match raw {
            RawField::Rational => Ok(FieldDescriptor::Rational),
            RawField::Eisenstein => Ok(FieldDescriptor::Eisenstein),
            RawField::Prime { p } => FieldDescriptor::prime(p),
        }
    }
}

impl FieldDescriptor {
    /// Prime field descriptor; rejects composites and primes outside the supported set.
    pub fn prime(p: u32) -> Result<Self, NumError> {
        if !is_prime(p) {
            return Err(NumError::NotPrime(p));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(NumError::UnsupportedPrime(p));
        }
        Ok(FieldDescriptor::Prime { p })
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldDescriptor::Prime { p } => *p,
            _ => 0,
        }
    }

    pub fn is_char_zero(&self) -> bool {
        self.characteristic() == 0
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    /// Image of an integer under the canonical ring map `Z → K`.
    pub fn from_int(&self, n: i64) -> Scalar {
        match *self {
            FieldDescriptor::Rational => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldDescriptor::Prime { p } => Scalar::Prime(Fp::from_i64(n, p)),
            FieldDescriptor::Eisenstein => Scalar::Eisenstein(Eisenstein::from_int(n)),
        }
    }

    /// Short name used on the command line: `q`, `eisenstein`, `f3`, ...
    pub fn short_name(&self) -> String {
        match self {
            FieldDescriptor::Rational => "Q".to_string(),
            FieldDescriptor::Prime { p } => format!("F{p}"),
            FieldDescriptor::Eisenstein => "Q(w)".to_string(),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_name())
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Element of `F_p`, stored as its least non-negative residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    residue: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(residue: u32, modulus: u32) -> Self {
        Fp {
            residue: residue % modulus,
            modulus,
        }
    }

    pub fn from_i64(n: i64, modulus: u32) -> Self {
        Fp {
            residue: n.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn residue(&self) -> u32 {
        self.residue
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn pow(self, mut e: u32) -> Fp {
        let mut base = self;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Fermat inverse; `None` for zero.
    pub fn inverse(self) -> Option<Fp> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp::new(self.residue + rhs.residue, self.modulus)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp::new(self.residue + self.modulus - rhs.residue, self.modulus)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let r = (self.residue as u64 * rhs.residue as u64) % self.modulus as u64;
        Fp::new(r as u32, self.modulus)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::new(self.modulus - self.residue, self.modulus)
    }
}

/// `a + bω` with rational `a`, `b` and `ω² = −1 − ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub a: BigRational,
    pub b: BigRational,
}

impl Eisenstein {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Eisenstein { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        Eisenstein::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Eisenstein::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    /// The primitive cube root of unity `ω`.
    pub fn omega() -> Self {
        Eisenstein::from_ints(0, 1)
    }

    /// `ω^k` for any integer `k`.
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Eisenstein::from_int(1),
            1 => Eisenstein::omega(),
            _ => Eisenstein::from_ints(-1, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Field norm `a² − ab + b²`, positive for every nonzero element.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Complex conjugate: `ω ↦ ω² = −1 − ω`.
    pub fn conjugate(&self) -> Eisenstein {
        Eisenstein::new(&self.a - &self.b, -&self.b)
    }

    pub fn inverse(&self) -> Option<Eisenstein> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Eisenstein::new(c.a / &n, c.b / &n))
    }
}

impl Add for &Eisenstein {
    type Output = Eisenstein;
    fn add(self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Eisenstein {
    type Output = Eisenstein;
    fn sub(self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &Eisenstein {
    type Output = Eisenstein;
    fn mul(self, rhs: &Eisenstein) -> Eisenstein {
        // (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω
        let bd = &self.b * &rhs.b;
        Eisenstein::new(
            &self.a * &rhs.a - &bd,
            &self.a * &rhs.b + &self.b * &rhs.a - bd,
        )
    }
}

impl Neg for &Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein::new(-&self.a, -&self.b)
    }
}

/// An exact element of one of the supported fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(Fp),
    Eisenstein(Eisenstein),
}

impl Scalar {
    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rational,
            Scalar::Prime(x) => FieldDescriptor::Prime { p: x.modulus },
            Scalar::Eisenstein(_) => FieldDescriptor::Eisenstein,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Prime(x) => x.is_zero(),
            Scalar::Eisenstein(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field().one()
    }

    fn mismatch(&self, other: &Scalar) -> NumError {
        NumError::FieldMismatch {
            left: self.field(),
            right: other.field(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, NumError> {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x + y)),
            (Scalar::Prime(x), Scalar::Prime(y)) if x.modulus == y.modulus => {
                Ok(Scalar::Prime(*x + *y))
            }
            (Scalar::Eisenstein(x), Scalar::Eisenstein(y)) => Ok(Scalar::Eisenstein(x + y)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, NumError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, NumError> {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x * y)),
            (Scalar::Prime(x), Scalar::Prime(y)) if x.modulus == y.modulus => {
                Ok(Scalar::Prime(*x * *y))
            }
            (Scalar::Eisenstein(x), Scalar::Eisenstein(y)) => Ok(Scalar::Eisenstein(x * y)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Prime(x) => Scalar::Prime(-*x),
            Scalar::Eisenstein(x) => Scalar::Eisenstein(-x),
        }
    }

    pub fn inverse(&self) -> Result<Scalar, NumError> {
        let inv = match self {
            Scalar::Rational(x) if !x.is_zero() => Some(Scalar::Rational(x.recip())),
            Scalar::Rational(_) => None,
            Scalar::Prime(x) => x.inverse().map(Scalar::Prime),
            Scalar::Eisenstein(x) => x.inverse().map(Scalar::Eisenstein),
        };
        inv.ok_or(NumError::DivisionByZero)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, NumError> {
        self.mul(&other.inverse()?)
    }

    /// JSON encoding used by certificates.
    pub fn encode(&self) -> Value {
        match self {
            Scalar::Rational(x) => Value::String(format_rational(x)),
            Scalar::Prime(x) => Value::from(x.residue),
            Scalar::Eisenstein(x) => Value::Array(vec![
                Value::String(format_rational(&x.a)),
                Value::String(format_rational(&x.b)),
            ]),
        }
    }

    /// Inverse of [`Scalar::encode`], validated against the expected field.
    pub fn decode(field: FieldDescriptor, value: &Value) -> Result<Scalar, NumError> {
        let bad = || NumError::Parse(format!("{value} is not a valid {field} scalar"));
        match field {
            FieldDescriptor::Rational => {
                let s = value.as_str().ok_or_else(bad)?;
                Ok(Scalar::Rational(parse_rational(s)?))
            }
            FieldDescriptor::Prime { p } => {
                let r = value.as_u64().ok_or_else(bad)?;
                if r >= p as u64 {
                    return Err(NumError::Parse(format!(
                        "residue {r} out of range for F{p}"
                    )));
                }
                Ok(Scalar::Prime(Fp::new(r as u32, p)))
            }
            FieldDescriptor::Eisenstein => {
                let arr = value.as_array().ok_or_else(bad)?;
                if arr.len() != 2 {
                    return Err(bad());
                }
                let a = parse_rational(arr[0].as_str().ok_or_else(bad)?)?;
                let b = parse_rational(arr[1].as_str().ok_or_else(bad)?)?;
                Ok(Scalar::Eisenstein(Eisenstein::new(a, b)))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{}", format_rational(x)),
            Scalar::Prime(x) => write!(f, "{}", x.residue),
            Scalar::Eisenstein(x) => {
                write!(f, "{} + {}w", format_rational(&x.a), format_rational(&x.b))
            }
        }
    }
}

/// Parses `"n/d"` or `"n"`; the result is always reduced with a positive denominator.
pub fn parse_rational(s: &str) -> Result<BigRational, NumError> {
    let s = s.trim();
    let bad = || NumError::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(NumError::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

/// `"n/d"`, or `"n"` when the denominator is one.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal rendering rounded half away from zero to `places` digits.
pub fn format_decimal(x: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor();
    let digits = rounded.to_integer();
    let int_part = &digits / &scale;
    let frac_part = &digits % &scale;
    let sign = if x.is_negative() && !digits.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = places as usize
    )
}

/// Mixed-number rendering such as `-1 5/7`; integers render plainly.
pub fn format_mixed(x: &BigRational) -> String {
    if x.is_integer() {
        return x.numer().to_string();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let ax = x.abs();
    let whole = ax.trunc().to_integer();
    let frac = ax.fract();
    if whole.is_zero() {
        format!("{sign}{}/{}", frac.numer(), frac.denom())
    } else {
        format!("{sign}{whole} {}/{}", frac.numer(), frac.denom())
    }
}
