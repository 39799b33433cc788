//! Exact arithmetic in the real quadratic field Q(√2).

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An element `rat + root2 * √2` of Q(√2).
///
/// Both parts are reduced big rationals with positive denominators, so
/// structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    rat: BigRational,
    root2: BigRational,
}

impl ExactScalar {
    pub fn new(rat: BigRational, root2: BigRational) -> Self {
        Self { rat, root2 }
    }

    pub fn from_rational(rat: BigRational) -> Self {
        Self { rat, root2: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `rat + root2·√2` from small integer fractions.
    pub fn from_parts(rat: (i64, i64), root2: (i64, i64)) -> Self {
        Self {
            rat: BigRational::new(rat.0.into(), rat.1.into()),
            root2: BigRational::new(root2.0.into(), root2.1.into()),
        }
    }

    pub fn sqrt2() -> Self {
        Self { rat: BigRational::zero(), root2: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn root2_part(&self) -> &BigRational {
        &self.root2
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.root2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.root2.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.root2.is_zero()
    }

    /// Galois conjugate `rat - root2·√2`.
    pub fn conjugate(&self) -> Self {
        Self { rat: self.rat.clone(), root2: -&self.root2 }
    }

    /// Field norm `rat² - 2·root2²`, zero only for zero.
    pub fn field_norm(&self) -> BigRational {
        &self.rat * &self.rat - BigRational::from_integer(2.into()) * &self.root2 * &self.root2
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let a = rational_sign(&self.rat);
        let b = rational_sign(&self.root2);
        if b == 0 {
            return a;
        }
        if a == 0 || a == b {
            return b;
        }
        // opposite signs: the part with the larger square wins
        let a2 = &self.rat * &self.rat;
        let b2 = BigRational::from_integer(2.into()) * &self.root2 * &self.root2;
        match a2.cmp(&b2) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => unreachable!("√2 is irrational"),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.field_norm();
        Some(Self { rat: &self.rat / &n, root2: -&self.root2 / &n })
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        let b = self.root2.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }
}

fn rational_sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &'a ExactScalar) -> ExactScalar {
        ExactScalar { rat: &self.rat + &rhs.rat, root2: &self.root2 + &rhs.root2 }
    }
}

impl<'a> Sub<&'a ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &'a ExactScalar) -> ExactScalar {
        ExactScalar { rat: &self.rat - &rhs.rat, root2: &self.root2 - &rhs.root2 }
    }
}

impl<'a> Mul<&'a ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &'a ExactScalar) -> ExactScalar {
        if self.root2.is_zero() && rhs.root2.is_zero() {
            return ExactScalar::from_rational(&self.rat * &rhs.rat);
        }
        let two = BigRational::from_integer(2.into());
        ExactScalar {
            rat: &self.rat * &rhs.rat + two * &self.root2 * &rhs.root2,
            root2: &self.rat * &rhs.root2 + &self.root2 * &rhs.rat,
        }
    }
}

impl<'a> Div<&'a ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero, like the rational types it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a ExactScalar) -> ExactScalar {
        let inv = rhs.recip().expect("division by zero in Q(√2)");
        self * &inv
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { rat: -&self.rat, root2: -&self.root2 }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { rat: -self.rat, root2: -self.root2 }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &'a ExactScalar) -> ExactScalar { (&self).$m(rhs) }
        }
        impl $tr<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.rat += &rhs.rat;
        self.root2 += &rhs.root2;
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.rat -= &rhs.rat;
        self.root2 -= &rhs.root2;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |acc, x| &acc * &x)
    }
}

/// `"a/b"` (or `"a"` for integers), and `"a/b+c/d*r2"` when the √2 part is nonzero.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root2.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if self.root2.is_negative() {
            write!(f, "{}-{}*r2", self.rat, -&self.root2)
        } else {
            write!(f, "{}+{}*r2", self.rat, self.root2)
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str, full: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::ScalarParse(full.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self, Error> {
        let s = input.trim();
        let Some(body) = s.strip_suffix("r2") else {
            return Ok(Self::from_rational(parse_rational(s, input)?));
        };
        let body = body.trim_end();
        let (body, had_star) = match body.strip_suffix('*') {
            Some(b) => (b.trim_end(), true),
            None => (body, false),
        };
        // split at the last sign that is not leading and not part of a fraction
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/');
        let (rat, coeff) = match split {
            Some(i) => (parse_rational(&body[..i], input)?, &body[i..]),
            None => (BigRational::zero(), body),
        };
        let coeff = coeff.trim();
        let coeff = coeff.strip_prefix('+').unwrap_or(coeff);
        let root2 = match coeff {
            "" if !had_star => BigRational::one(),
            "-" if !had_star => -BigRational::one(),
            c => parse_rational(c, input)?,
        };
        Ok(Self { rat, root2 })
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
