use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp::Fp;
use crate::algebra::{Field, IntegralDomain, Ring};

/// Smallest positive quadratic non-residue mod an odd prime `p`.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&n| Fp::from_u64(n, p).legendre() == -1)
        .expect("odd primes have non-residues")
}

/// `a + b·z` in F_{p²} = F_p[z]/(z² - n).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub a: Fp,
    pub b: Fp,
    n: Fp,
}

impl Fp2 {
    /// `n` must be a non-residue mod `p`; this is a debug assertion only.
    pub fn new(a: Fp, b: Fp, n: Fp) -> Self {
        debug_assert_eq!(n.legendre(), -1, "z^2 = n needs a non-residue");
        Fp2 { a, b, n }
    }

    pub fn from_base(a: Fp, n: Fp) -> Self {
        Fp2::new(a, Fp::zero(a.modulus()), n)
    }

    pub fn nonresidue(&self) -> Fp {
        self.n
    }

    /// `N(a + bz) = a² - n·b²`.
    pub fn norm(&self) -> Fp {
        self.a * self.a - self.n * self.b * self.b
    }

    /// Conjugation `a + bz ↦ a - bz`, which is the Frobenius `w ↦ w^p`.
    pub fn conjugate(&self) -> Self {
        Fp2 {
            a: self.a,
            b: -self.b,
            n: self.n,
        }
    }

    pub fn pow_u64(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Quadratic character on F_{p²}: `w` is a square iff its norm is a
    /// square in F_p.
    pub fn legendre(&self) -> i8 {
        self.norm().legendre()
    }
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*z (z^2 = {}, mod {})",
            self.a,
            self.b,
            self.n,
            self.a.modulus()
        )
    }
}

impl Add for Fp2 {
    type Output = Fp2;
    fn add(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            n: self.n,
        }
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    fn sub(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            n: self.n,
        }
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    fn mul(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            a: self.a * rhs.a + self.n * (self.b * rhs.b),
            b: self.a * rhs.b + self.b * rhs.a,
            n: self.n,
        }
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    fn neg(self) -> Fp2 {
        Fp2 {
            a: -self.a,
            b: -self.b,
            n: self.n,
        }
    }
}

impl Ring for Fp2 {
    fn zero_like(&self) -> Self {
        Fp2::from_base(self.a.zero_like(), self.n)
    }
    fn one_like(&self) -> Self {
        Fp2::from_base(self.a.one_like(), self.n)
    }
    fn is_zero(&self) -> bool {
        self.a.value() == 0 && self.b.value() == 0
    }
    fn from_int_like(&self, k: i64) -> Self {
        Fp2::from_base(Fp::new(k, self.a.modulus()), self.n)
    }
}

impl Field for Fp2 {
    fn inv(&self) -> Option<Self> {
        let ninv = self.norm().inv()?;
        let c = self.conjugate();
        Some(Fp2 {
            a: c.a * ninv,
            b: c.b * ninv,
            n: self.n,
        })
    }
}

impl IntegralDomain for Fp2 {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        Field::div(self, divisor)
    }
}
