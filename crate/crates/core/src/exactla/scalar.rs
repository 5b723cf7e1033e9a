use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Ground field: the rationals or a prime field 𝔽_p.
///
/// Primes are restricted to `p < 2^32` so that residue products fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    // 0 encodes ℚ.
    modulus: u64,
}

impl Field {
    pub const RATIONALS: Field = Field { modulus: 0 };

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) {
            return Err(Error::InvalidField(format!("modulus {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field { modulus: p })
    }

    pub fn is_rational(self) -> bool {
        self.modulus == 0
    }

    /// 0 for ℚ, otherwise p.
    pub fn characteristic(self) -> u64 {
        self.modulus
    }
}

/// Accepts `Q`, `Fp:p`, `Fp` followed by the prime, or `F` followed by it (`F5`).
impl std::str::FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(Field::RATIONALS);
        }
        let digits = t.strip_prefix("Fp:").or_else(|| t.strip_prefix("Fp")).or_else(|| t.strip_prefix('F'));
        let p = digits
            .and_then(|d| d.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidField(format!("cannot parse field {s:?}; use Q or Fp:p")))?;
        Field::prime(p)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "Q")
        } else {
            write!(f, "F{}", self.modulus)
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rational in lowest terms with positive denominator; machine words until they overflow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rat {
    fn from_i128(mut n: i128, mut d: i128) -> Rat {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::Small(n, d),
            _ => Rat::Big(Box::new(BigRational::new_raw(n.into(), d.into()))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(r) => (**r).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    fn add(&self, other: &Rat) -> Rat {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * d + c * b, b * d)
            }
            _ => Rat::from_big(self.to_big() + other.to_big()),
        }
    }

    fn mul(&self, other: &Rat) -> Rat {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) if *n != i64::MIN => Rat::Small(-n, *d),
            _ => Rat::from_big(-self.to_big()),
        }
    }

    fn inv(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rat::Small(n, d) => Rat::from_i128(*d as i128, *n as i128),
            Rat::Big(r) => Rat::from_big(r.recip()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Q(Rat),
    Fp { p: u64, v: u64 },
}

/// An exact element of a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero(field: Field) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: Field) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: Field, n: i64) -> Self {
        if field.is_rational() {
            Scalar(Repr::Q(Rat::Small(n, 1)))
        } else {
            let p = field.modulus;
            Scalar(Repr::Fp { p, v: (n as i128).rem_euclid(p as i128) as u64 })
        }
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Self {
        if field.is_rational() {
            Scalar(Repr::Q(Rat::from_big(BigRational::from_integer(n.clone()))))
        } else {
            let p = BigInt::from(field.modulus);
            let v = n.mod_floor(&p).to_u64().expect("residue fits in u64");
            Scalar(Repr::Fp { p: field.modulus, v })
        }
    }

    /// `num/den` in the given field; fails when `den` is not invertible there.
    pub fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<Self> {
        let d = Self::from_bigint(field, den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::Parse(format!("denominator {den} is not invertible in {field}")))?;
        Ok(&Self::from_bigint(field, num) * &inv)
    }

    pub fn from_big_rational(r: &BigRational) -> Self {
        Scalar(Repr::Q(Rat::from_big(r.clone())))
    }

    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Q(_) => Field::RATIONALS,
            Repr::Fp { p, .. } => Field { modulus: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Q(r) => r.is_zero(),
            Repr::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Q(r) => matches!(r, Rat::Small(1, 1)),
            Repr::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        match &self.0 {
            Repr::Q(r) => r.inv().map(|r| Scalar(Repr::Q(r))),
            Repr::Fp { p, v } => {
                if *v == 0 {
                    None
                } else {
                    Some(Scalar(Repr::Fp { p: *p, v: pow_mod(*v, p - 2, *p) }))
                }
            }
        }
    }

    /// Exact division; `None` when dividing by zero.
    pub fn checked_div(&self, other: &Scalar) -> Option<Self> {
        other.inv().map(|inv| self * &inv)
    }

    /// The value as a rational; for 𝔽_p the canonical residue.
    pub fn to_big_rational(&self) -> BigRational {
        match &self.0 {
            Repr::Q(r) => r.to_big(),
            Repr::Fp { v, .. } => BigRational::from_integer(BigInt::from(*v)),
        }
    }

    /// Parses `"n"` or `"n/d"` into the given field.
    pub fn parse(field: Field, text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Parse(format!("invalid scalar {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Self::from_ratio(field, &num, &den)
    }

    pub fn from_json(field: Field, value: &Value) -> Result<Self> {
        match value {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Self::from_int(field, i))
                } else if let Some(u) = n.as_u64() {
                    Ok(Self::from_bigint(field, &BigInt::from(u)))
                } else {
                    Err(Error::Parse(format!("non-integer number {n} (use \"num/den\")")))
                }
            }
            Value::String(s) => Self::parse(field, s),
            other => Err(Error::Parse(format!("expected scalar, found {other}"))),
        }
    }

    /// Integers become JSON numbers when they fit in an `i64`; everything else a string.
    pub fn to_json(&self) -> Value {
        match &self.0 {
            Repr::Q(Rat::Small(n, 1)) => Value::from(*n),
            Repr::Fp { v, .. } => Value::from(*v),
            _ => Value::String(self.to_string()),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(Rat::Small(n, 1)) => write!(f, "{n}"),
            Repr::Q(Rat::Small(n, d)) => write!(f, "{n}/{d}"),
            Repr::Q(Rat::Big(r)) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn same_field(a: &Scalar, b: &Scalar) {
    assert_eq!(a.field(), b.field(), "scalar field mismatch");
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a.add(b))),
            (Repr::Fp { p, v: a }, Repr::Fp { p: q, v: b }) if p == q => {
                Scalar(Repr::Fp { p: *p, v: (a + b) % p })
            }
            _ => {
                same_field(self, rhs);
                unreachable!()
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Q(a) => Scalar(Repr::Q(a.neg())),
            Repr::Fp { p, v } => Scalar(Repr::Fp { p: *p, v: (p - v) % p }),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a.mul(b))),
            (Repr::Fp { p, v: a }, Repr::Fp { p: q, v: b }) if p == q => {
                Scalar(Repr::Fp { p: *p, v: a * b % p })
            }
            _ => {
                same_field(self, rhs);
                unreachable!()
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}
