//! Genus-2 curves `y² = f(x)` with `deg f ∈ {5, 6}`.

use std::fmt;

use crate::algebra::resultant::discriminant;
use crate::algebra::unipoly::UniPoly;
use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::finite::fp::{check_prime, Fp};
use crate::Rational;

#[derive(Clone, PartialEq)]
pub struct HyperellipticCurve<F: Field> {
    f: UniPoly<F>,
}

impl<F: Field> HyperellipticCurve<F> {
    /// Rejects degrees other than 5 or 6 and repeated roots.
    pub fn new(f: UniPoly<F>) -> Result<Self> {
        match f.degree() {
            Some(5) | Some(6) => {}
            Some(d) => return Err(Error::Invalid(format!("degree {d} is not 5 or 6"))),
            None => return Err(Error::ZeroPolynomial),
        }
        // f' can vanish identically in small characteristic
        match discriminant(&f) {
            Ok(d) if !d.is_zero() => {}
            Ok(_) | Err(Error::ZeroPolynomial) => {
                return Err(Error::Degenerate("f has a repeated root".into()))
            }
            Err(e) => return Err(e),
        }
        Ok(HyperellipticCurve { f })
    }

    pub fn f(&self) -> &UniPoly<F> {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().expect("validated on construction")
    }

    pub fn genus(&self) -> usize {
        2
    }

    pub fn discriminant(&self) -> F {
        discriminant(&self.f).expect("validated on construction")
    }
}

impl HyperellipticCurve<Rational> {
    /// Coefficient-wise reduction; fails if a denominator is divisible by
    /// `p` or the reduced discriminant vanishes.
    pub fn reduce_mod_p(&self, p: u64) -> Result<HyperellipticCurve<Fp>> {
        if p != 2 {
            check_prime(p)?;
        }
        let g = self.f.try_map(Fp::zero(p), |c| Fp::from_rational(c, p))?;
        if g.degree() != self.f.degree() {
            return Err(Error::BadReduction {
                p,
                reason: "leading coefficient vanishes mod p".into(),
            });
        }
        match HyperellipticCurve::new(g) {
            Ok(c) => Ok(c),
            Err(Error::Degenerate(_)) => Err(Error::BadReduction {
                p,
                reason: "discriminant vanishes mod p".into(),
            }),
            Err(e) => Err(e),
        }
    }
}

impl HyperellipticCurve<Fp> {
    pub fn characteristic(&self) -> u64 {
        self.f.zero().modulus()
    }

    /// Coefficients as integers in `[0, p)`, constant term first.
    pub fn coefficient_values(&self) -> Vec<u64> {
        self.f.coeffs().iter().map(|c| c.value()).collect()
    }
}

impl<F: Field + fmt::Display> fmt::Display for HyperellipticCurve<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "y^2 = ")?;
        let mut first = true;
        for (i, c) in self.f.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            match i {
                0 => write!(out, "{c}")?,
                1 => write!(out, "({c})*x")?,
                _ => write!(out, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for HyperellipticCurve<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "HyperellipticCurve({:?})", self.f.coeffs())
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
    fn rejects_bad_degree_and_repeated_roots() {
        assert!(matches!(
            HyperellipticCurve::new(q(&[1, 0, 0, 0, 1])),
            Err(Error::Invalid(_))
        ));
        // (x - 1)^2 (x^4 + 1)
        let sq = q(&[1, -2, 1]);
        let g = q(&[1, 0, 0, 0, 1]);
        assert!(matches!(
            HyperellipticCurve::new(sq * g),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn characteristic_two_is_bad_reduction() {
        let c = HyperellipticCurve::new(q(&[1, 0, 0, 0, 0, 0, 1])).unwrap();
        assert!(matches!(
            c.reduce_mod_p(2),
            Err(Error::BadReduction { p: 2, .. })
        ));
    }

    #[test]
    fn reduction_keeps_coefficients() {
        let c = HyperellipticCurve::new(q(&[-1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(
            c.reduce_mod_p(7).unwrap().coefficient_values(),
            vec![6, 0, 0, 0, 0, 1]
        );
    }
}
