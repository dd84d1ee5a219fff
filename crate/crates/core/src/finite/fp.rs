use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::algebra::{Field, IntegralDomain, Ring};
use crate::error::{Error, Result};
use crate::Rational;

/// Upper bound (exclusive) on supported characteristics.
pub const MAX_PRIME: u64 = 1 << 31;

/// Element of the prime field F_p, `value` in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Checks that `p` is an odd prime below 2^31.
pub fn check_prime(p: u64) -> Result<u64> {
    if p > 2 && p < MAX_PRIME && is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Self {
        let v = value.rem_euclid(p as i64) as u64;
        Fp { value: v, p }
    }

    pub fn from_u64(value: u64, p: u64) -> Self {
        Fp {
            value: value % p,
            p,
        }
    }

    pub fn zero(p: u64) -> Self {
        Fp { value: 0, p }
    }

    pub fn one(p: u64) -> Self {
        Fp { value: 1 % p, p }
    }

    /// Reduction of a rational whose denominator is prime to `p`.
    pub fn from_rational(q: &Rational, p: u64) -> Result<Self> {
        let pb = BigInt::from(p);
        let den = q.denom().mod_floor(&pb);
        if den == BigInt::from(0) {
            return Err(Error::BadReduction {
                p,
                reason: format!("denominator {} divisible by p", q.denom()),
            });
        }
        let num = q.numer().mod_floor(&pb);
        let n = Fp::from_u64(num.to_u64().expect("reduced"), p);
        let d = Fp::from_u64(den.to_u64().expect("reduced"), p);
        Ok(n * d.inv().expect("nonzero"))
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Signed representative in `(-p/2, p/2]`.
    pub fn centered(self) -> i64 {
        let v = self.value as i64;
        if v > (self.p / 2) as i64 {
            v - self.p as i64
        } else {
            v
        }
    }

    pub fn pow_u64(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Quadratic character by Euler's criterion: `a^((p-1)/2)`.
    pub fn legendre(self) -> i8 {
        if self.value == 0 {
            return 0;
        }
        if self.pow_u64((self.p - 1) / 2).value == 1 {
            1
        } else {
            -1
        }
    }
}

/// Quadratic character of `a` in F_p: 0, +1 or -1.
pub fn quadratic_character(a: Fp) -> i8 {
    a.legendre()
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.value + rhs.value;
        Fp {
            value: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            value: if self.value >= rhs.value {
                self.value - rhs.value
            } else {
                self.value + self.p - rhs.value
            },
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            value: self.value * rhs.value % self.p,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.p - self.value
            },
            p: self.p,
        }
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp::zero(self.p)
    }
    fn one_like(&self) -> Self {
        Fp::one(self.p)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn from_int_like(&self, n: i64) -> Self {
        Fp::new(n, self.p)
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let e = num_integer::Integer::extended_gcd(&(self.value as i64), &(self.p as i64));
        Some(Fp::new(e.x, self.p))
    }
}

impl IntegralDomain for Fp {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.div(divisor)
    }
}

/// Integer lift helper used when reducing integer data.
pub fn reduce_int(n: &BigInt, p: u64) -> Fp {
    if n.is_negative() {
        let m = (-n).mod_floor(&BigInt::from(p));
        -Fp::from_u64(m.to_u64().expect("reduced"), p)
    } else {
        Fp::from_u64(n.mod_floor(&BigInt::from(p)).to_u64().expect("reduced"), p)
    }
}
