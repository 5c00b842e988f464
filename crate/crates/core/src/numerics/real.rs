//! Precision-parameterized scalars.
//!
//! [`Real`] abstracts over hardware doubles and [`BigReal`], an MPFR-backed
//! float whose mantissa width is chosen per computation. Every constructor
//! takes an explicit [`Precision`]; there is no ambient precision state.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::float::Constant;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mantissa width in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Precision(u32);

impl Precision {
    /// IEEE double.
    pub const DOUBLE: Precision = Precision(53);

    pub fn new(bits: u32) -> Result<Self> {
        if !(2..=1 << 20).contains(&bits) {
            return Err(Error::Domain(format!("precision of {bits} bits is out of range")));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn doubled(self) -> Self {
        Precision(self.0 * 2)
    }

    /// Precision with `extra` guard bits added.
    pub fn with_guard(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }

    /// `2^-(bits - slack)` as an f64 exponent, i.e. `-(bits - slack)`.
    pub fn tolerance_log2(self, slack: i32) -> i32 {
        -(self.0 as i32) + slack
    }

    pub fn is_double(self) -> bool {
        self.0 == 53
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DOUBLE
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

/// Real scalar usable by every numerical routine in the crate.
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    fn from_f64(x: f64, prec: Precision) -> Self;
    fn from_i64(n: i64, prec: Precision) -> Self;
    fn from_rational(r: &Rational, prec: Precision) -> Self;
    fn pi(prec: Precision) -> Self;

    fn precision(&self) -> Precision;
    fn to_f64(&self) -> f64;
    /// Exact conversion; `None` for non-finite values.
    fn to_rational(&self) -> Option<Rational>;
    /// Scientific decimal string that parses back to the same value.
    fn to_decimal(&self) -> String;

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn log10(&self) -> Self;
    fn asinh(&self) -> Self;
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;
    fn tanh(&self) -> Self;

    fn is_zero(&self) -> bool;
    fn is_finite(&self) -> bool;
    fn is_sign_negative(&self) -> bool;

    /// `x <- c*x - s*y`, `y <- s*x + c*y` (plane rotation applied to a pair).
    fn rotate(x: &mut Self, y: &mut Self, c: &Self, s: &Self) {
        let xs = x.clone();
        *x *= c;
        *x -= &(s.clone() * &*y);
        *y *= c;
        *y += &(s.clone() * &xs);
    }

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += &(a.clone() * b);
    }

    fn zero(prec: Precision) -> Self {
        Self::from_i64(0, prec)
    }

    fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    /// A constant at the precision of `self`.
    fn lit(&self, x: f64) -> Self {
        Self::from_f64(x, self.precision())
    }

    fn int(&self, n: i64) -> Self {
        Self::from_i64(n, self.precision())
    }

    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 { self.int(1) / self } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn total_cmp_real(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }
}

impl Real for f64 {
    fn from_f64(x: f64, _: Precision) -> Self {
        x
    }
    fn from_i64(n: i64, _: Precision) -> Self {
        n as f64
    }
    fn from_rational(r: &Rational, _: Precision) -> Self {
        r.to_f64()
    }
    fn pi(_: Precision) -> Self {
        std::f64::consts::PI
    }
    fn precision(&self) -> Precision {
        Precision::DOUBLE
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> Option<Rational> {
        Rational::from_f64(*self)
    }
    fn to_decimal(&self) -> String {
        format!("{self:e}")
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn log10(&self) -> Self {
        f64::log10(*self)
    }
    fn asinh(&self) -> Self {
        f64::asinh(*self)
    }
    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }
    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }
    fn tanh(&self) -> Self {
        f64::tanh(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn is_sign_negative(&self) -> bool {
        *self < 0.0
    }
    fn rotate(x: &mut Self, y: &mut Self, c: &Self, s: &Self) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
}

/// Arbitrary-precision real number backed by MPFR.
///
/// Binary operators take the precision of their left operand.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigReal(Float);

impl BigReal {
    pub fn from_float(f: Float) -> Self {
        BigReal(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    /// Parse a decimal (or `inf`/`nan`) string at the given precision.
    pub fn parse(s: &str, prec: Precision) -> Result<Self> {
        let parsed = Float::parse(s.trim())
            .map_err(|e| Error::Domain(format!("cannot parse '{s}' as a real number: {e}")))?;
        Ok(BigReal(Float::with_val(prec.bits(), parsed)))
    }

    /// Decimal string carrying enough digits to read the value back exactly.
    pub fn to_decimal_string(&self) -> String {
        self.0.to_string_radix(10, None)
    }

    /// Base-2 exponent `e` with `self = m * 2^e`, `0.5 <= |m| < 1`.
    pub fn exponent(&self) -> Option<i32> {
        self.0.get_exp()
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({}, {} bits)", self.to_decimal_string(), self.0.prec())
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

impl FromStr for BigReal {
    type Err = Error;

    /// Parses at 512 bits; use [`BigReal::parse`] to choose the precision.
    fn from_str(s: &str) -> Result<Self> {
        BigReal::parse(s, Precision(512))
    }
}

macro_rules! bigreal_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident) => {
        impl $trait for BigReal {
            type Output = BigReal;
            fn $method(mut self, rhs: BigReal) -> BigReal {
                $assign_trait::$assign(&mut self.0, &rhs.0);
                self
            }
        }
        impl<'a> $trait<&'a BigReal> for BigReal {
            type Output = BigReal;
            fn $method(mut self, rhs: &'a BigReal) -> BigReal {
                $assign_trait::$assign(&mut self.0, &rhs.0);
                self
            }
        }
        impl<'a, 'b> $trait<&'b BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &'b BigReal) -> BigReal {
                BigReal(Float::with_val(self.0.prec(), $trait::$method(&self.0, &rhs.0)))
            }
        }
        impl<'a> $assign_trait<&'a BigReal> for BigReal {
            fn $assign(&mut self, rhs: &'a BigReal) {
                $assign_trait::$assign(&mut self.0, &rhs.0);
            }
        }
        impl $assign_trait for BigReal {
            fn $assign(&mut self, rhs: BigReal) {
                $assign_trait::$assign(&mut self.0, &rhs.0);
            }
        }
    };
}

bigreal_binop!(Add, add, AddAssign, add_assign);
bigreal_binop!(Sub, sub, SubAssign, sub_assign);
bigreal_binop!(Mul, mul, MulAssign, mul_assign);
bigreal_binop!(Div, div, DivAssign, div_assign);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

impl<'a> Sum<&'a BigReal> for BigReal {
    /// Panics on an empty iterator, which carries no precision.
    fn sum<I: Iterator<Item = &'a BigReal>>(mut iter: I) -> BigReal {
        let mut acc = iter.next().expect("sum of an empty BigReal iterator").clone();
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl Real for BigReal {
    fn from_f64(x: f64, prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), x))
    }
    fn from_i64(n: i64, prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), n))
    }
    fn from_rational(r: &Rational, prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), r))
    }
    fn pi(prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), Constant::Pi))
    }
    fn precision(&self) -> Precision {
        Precision(self.0.prec())
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn to_rational(&self) -> Option<Rational> {
        self.0.to_rational()
    }
    fn to_decimal(&self) -> String {
        self.to_decimal_string()
    }
    fn abs(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.abs_ref()))
    }
    fn sqrt(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.sqrt_ref()))
    }
    fn exp(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.exp_ref()))
    }
    fn ln(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.ln_ref()))
    }
    fn log10(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.log10_ref()))
    }
    fn asinh(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.asinh_ref()))
    }
    fn sinh(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.sinh_ref()))
    }
    fn cosh(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.cosh_ref()))
    }
    fn tanh(&self) -> Self {
        BigReal(Float::with_val(self.0.prec(), self.0.tanh_ref()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn is_sign_negative(&self) -> bool {
        !self.0.is_zero() && self.0.is_sign_negative()
    }
    fn rotate(x: &mut Self, y: &mut Self, c: &Self, s: &Self) {
        // x' = c x - s y ; y' = s x + c y, with one temporary and fused updates
        let prec = x.0.prec();
        let mut sx = Float::with_val(prec, &s.0 * &x.0);
        x.0 *= &c.0;
        x.0 -= &s.0 * &y.0;
        std::mem::swap(&mut sx, &mut y.0);
        // y.0 holds s*x_old, sx holds y_old
        y.0 += &c.0 * &sx;
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.0 += &a.0 * &b.0;
    }
}
