//! Dense univariate polynomials over any [`Ring`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, IntegralDomain, QAlgebra, Ring};
use crate::error::{Error, Result};
use crate::Rational;

/// Univariate degree bound shared by the whole crate.
pub const MAX_DEGREE: usize = 64;

/// `coeffs[i]` is the coefficient of `x^i`; no trailing zeros are kept.
/// A zero prototype is stored so the polynomial can mint coefficients in
/// the right ring even when it is itself zero.
#[derive(Clone, PartialEq)]
pub struct UniPoly<R: Ring> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>, zero: R) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let zero = zero.zero_like();
        UniPoly { coeffs, zero }
    }

    /// Like [`UniPoly::new`] but enforces [`MAX_DEGREE`].
    pub fn try_new(coeffs: Vec<R>, zero: R) -> Result<Self> {
        let p = Self::new(coeffs, zero);
        match p.degree() {
            Some(d) if d > MAX_DEGREE => Err(Error::DegreeBound(d)),
            _ => Ok(p),
        }
    }

    pub fn zero_poly(zero: R) -> Self {
        Self::new(Vec::new(), zero)
    }

    pub fn constant(c: R) -> Self {
        let z = c.zero_like();
        Self::new(vec![c], z)
    }

    /// The polynomial `x`.
    pub fn x(zero: R) -> Self {
        let one = zero.one_like();
        Self::new(vec![zero.zero_like(), one], zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn zero(&self) -> &R {
        &self.zero
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> R {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.from_int_like(i as i64) * c.clone())
            .collect();
        Self::new(coeffs, self.zero.clone())
    }

    pub fn map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), zero)
    }

    pub fn try_map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> Result<S>) -> Result<UniPoly<S>> {
        Ok(UniPoly::new(
            self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?,
            zero,
        ))
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            self.zero.clone(),
        )
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.zero.clone(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs, self.zero.clone())
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero_poly(self.zero.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc * g.clone() + Self::constant(c.clone());
        }
        acc
    }

    /// `den^total · self(num/den)` as a polynomial, i.e.
    /// `Σ c_k num^k den^(total-k)`. Requires `total >= deg self`.
    pub fn compose_fraction(&self, num: &Self, den: &R, total: usize) -> Self {
        let d = self.degree().unwrap_or(0);
        assert!(total >= d, "total degree below polynomial degree");
        let mut acc = Self::zero_poly(self.zero.clone());
        let mut num_pow = Self::constant(self.zero.one_like());
        for (k, c) in self.coeffs.iter().enumerate() {
            let weight = den.pow((total - k) as u32) * c.clone();
            acc = acc + num_pow.scale(&weight);
            num_pow = num_pow * num.clone();
        }
        acc
    }

    /// `x^deg · self(1/x)`, the reversal.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut coeffs = vec![self.zero.clone(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            assert!(i <= deg, "reversal degree below polynomial degree");
            coeffs[deg - i] = c.clone();
        }
        Self::new(coeffs, self.zero.clone())
    }
}

impl<R: QAlgebra> UniPoly<R> {
    pub fn scale_rational(&self, c: &Rational) -> Self {
        Self::new(
            self.coeffs.iter().map(|a| a.scale(c)).collect(),
            self.zero.clone(),
        )
    }
}

impl<R: Field> UniPoly<R> {
    /// Euclidean division; `None` when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lc_inv = d.lc().inv()?;
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return Some((Self::zero_poly(self.zero.clone()), self.clone()));
        }
        let mut q = vec![self.zero.clone(); n - dd];
        for k in (0..n - dd).rev() {
            let c = r[k + dd].clone() * lc_inv.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Some((
            Self::new(q, self.zero.clone()),
            Self::new(r, self.zero.clone()),
        ))
    }

    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(i) if !self.is_zero() => self.scale(&i),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<R: Ring> Add for UniPoly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (i, c) in short.coeffs.into_iter().enumerate() {
            long.coeffs[i] = long.coeffs[i].clone() + c;
        }
        Self::new(long.coeffs, long.zero)
    }
}

impl<R: Ring> Neg for UniPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect(), self.zero)
    }
}

impl<R: Ring> Sub for UniPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for UniPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero_poly(self.zero);
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out, self.zero)
    }
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    fn zero_like(&self) -> Self {
        Self::zero_poly(self.zero.clone())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::constant(self.zero.from_int_like(n))
    }
}

impl<R: Field> IntegralDomain for UniPoly<R> {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }
}

impl<R: QAlgebra> QAlgebra for UniPoly<R> {
    fn scale(&self, c: &Rational) -> Self {
        self.scale_rational(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn q(v: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(v.iter().map(|&c| int(c)).collect(), int(0))
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(q(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(q(&[0, 0]).is_zero());
        assert!(UniPoly::try_new(vec![int(1); 70], int(0)).is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = q(&[-1, 0, 1]); // x^2 - 1
        let b = q(&[1, 1]); // x + 1
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(qq, q(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&q(&[1, 2, 1])), q(&[1, 1]));
    }

    #[test]
    fn fraction_composition() {
        // f = x^2, x = (v+1)/2, total 2 -> (v+1)^2
        let f = q(&[0, 0, 1]);
        let num = q(&[1, 1]);
        assert_eq!(f.compose_fraction(&num, &int(2), 2), q(&[1, 2, 1]));
        // total 3 multiplies by another factor of the denominator
        assert_eq!(f.compose_fraction(&num, &int(2), 3), q(&[2, 4, 2]));
    }
}
