//! Exact algebra: coefficient-ring traits, rationals, sparse multivariate
//! and dense univariate polynomials, resultants and first-order jets.
//!
//! Everything above this module is written against the small trait tower
//! [`Ring`] ⊂ [`IntegralDomain`] ⊂ [`Field`], plus [`QAlgebra`] for rings
//! that contain the rationals. The same Igusa or resultant code therefore
//! runs on `Rational`, on symbolic `MultiPoly` coefficients, on `Jet1`
//! values carrying exact partial derivatives, and on `Fp`.
//!
//! `num_traits::Zero`/`One` are not used as the base because several
//! carriers need context to build a constant (a variable list, a modulus,
//! a jet dimension); [`Ring::zero_like`] takes that context from `self`.

pub mod expr;
pub mod jet;
pub mod linalg;
pub mod multipoly;
pub mod rational;
pub mod resultant;
pub mod unipoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// The image of the integer `n` under the unique ring map from Z.
    fn from_int_like(&self, n: i64) -> Self {
        let one = self.one_like();
        let mut acc = self.zero_like();
        let mut base = one;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc + base.clone();
            }
            base = base.clone() + base;
            k >>= 1;
        }
        if n < 0 {
            -acc
        } else {
            acc
        }
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut result = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        result
    }
}

/// A commutative ring without zero divisors in which exact quotients can be
/// computed. `div_exact` returns `None` when the divisor does not divide.
pub trait IntegralDomain: Ring {
    fn div_exact(&self, divisor: &Self) -> Option<Self>;
}

pub trait Field: IntegralDomain {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }
}

/// Rings containing Q, so rational constants can be multiplied in.
pub trait QAlgebra: Ring {
    fn scale(&self, c: &Rational) -> Self;

    fn from_rational_like(&self, c: &Rational) -> Self {
        self.one_like().scale(c)
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int_like(&self, n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl IntegralDomain for Rational {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        Field::div(self, divisor)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl QAlgebra for Rational {
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
}

impl IntegralDomain for BigInt {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Ring for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_int_like(&self, n: i64) -> Self {
        n as f64
    }
}

impl IntegralDomain for f64 {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        (*divisor != 0.0).then(|| self / divisor)
    }
}

impl Field for f64 {
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
}

impl QAlgebra for f64 {
    fn scale(&self, c: &Rational) -> Self {
        self * c.to_f64().unwrap_or(f64::NAN)
    }
}

/// Squarefree part of a nonzero integer, sign included.
///
/// Trial division runs up to 10^6; a cofactor left over is either prime or
/// a perfect square times a prime-free part, decided by an integer square
/// root check.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!Zero::is_zero(n), "squarefree part of zero");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &d * &d <= m && d <= limit {
        let mut e = 0u32;
        while Zero::is_zero(&(&m % &d)) {
            m /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &d;
        }
        d += 1u32;
    }
    if !One::is_one(&m) {
        let r = m.sqrt();
        if &r * &r != m {
            out *= m;
        }
    }
    out * sign
}

/// Whether `n` is the square of an integer.
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Whether the rational `q` is the square of a rational.
pub fn is_rational_square(q: &Rational) -> bool {
    is_square(q.numer()) && is_square(q.denom())
}
