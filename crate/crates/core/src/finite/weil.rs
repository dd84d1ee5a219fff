//! Zeta numerators and Frobenius characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::count::PointCount;
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::{QPoly, Rational};

/// `P(t) = t⁴ - a1 t³ + a2 t² - p a1 t + p²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeilPolynomial {
    pub p: u64,
    pub a1: i64,
    pub a2: i64,
}

/// `a1 = p + 1 - N1`, `a2 = (N2 + N1²)/2 - (p + 1) N1 + p`.
pub fn weil_polynomial(counts: PointCount, p: u64) -> Result<WeilPolynomial> {
    let (n1, n2, pp) = (counts.n1 as i128, counts.n2 as i128, p as i128);
    if (n2 + n1 * n1) % 2 != 0 {
        return Err(Error::InconsistentCounts(format!(
            "N2 + N1^2 = {} is odd",
            n2 + n1 * n1
        )));
    }
    let a1 = pp + 1 - n1;
    let a2 = (n2 + n1 * n1) / 2 - (pp + 1) * n1 + pp;
    let conv = |v: i128| {
        i64::try_from(v).map_err(|_| Error::InconsistentCounts(format!("{v} out of range")))
    };
    Ok(WeilPolynomial {
        p,
        a1: conv(a1)?,
        a2: conv(a2)?,
    })
}

impl WeilPolynomial {
    /// Coefficients of P(t), constant term first.
    pub fn frobenius_coeffs(&self) -> [BigInt; 5] {
        let p = BigInt::from(self.p);
        let a1 = BigInt::from(self.a1);
        [
            &p * &p,
            -(&p * &a1),
            BigInt::from(self.a2),
            -a1,
            BigInt::from(1),
        ]
    }

    /// Coefficients of L(t) = t⁴ P(1/t), constant term first.
    pub fn zeta_numerator_coeffs(&self) -> [BigInt; 5] {
        let mut c = self.frobenius_coeffs();
        c.reverse();
        c
    }

    pub fn frobenius_poly(&self) -> QPoly {
        to_qpoly(&self.frobenius_coeffs())
    }

    pub fn zeta_numerator(&self) -> QPoly {
        to_qpoly(&self.zeta_numerator_coeffs())
    }

    /// Point counts recovered from the polynomial (inverse of
    /// `weil_polynomial`).
    pub fn counts(&self) -> PointCount {
        let (p, a1, a2) = (self.p as i128, self.a1 as i128, self.a2 as i128);
        let n1 = p + 1 - a1;
        let n2 = 2 * (a2 + (p + 1) * n1 - p) - n1 * n1;
        PointCount {
            n1: n1 as u64,
            n2: n2 as u64,
        }
    }

    /// Coefficient bounds implied by the Weil bounds.
    pub fn within_coefficient_bounds(&self) -> bool {
        let p = self.p as f64;
        (self.a1 as f64).abs() <= 4.0 * p.sqrt() + 1e-9 && (self.a2 as f64).abs() <= 6.0 * p + 1e-9
    }
}

fn to_qpoly(c: &[BigInt]) -> QPoly {
    UniPoly::new(
        c.iter()
            .map(|v| Rational::from_integer(v.clone()))
            .collect(),
        Rational::from_integer(0.into()),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaForm {
    pub p: u64,
    /// L(t), constant term first.
    pub numerator: Vec<BigInt>,
    /// (1 - t)(1 - p t), constant term first.
    pub denominator: Vec<BigInt>,
}

/// `Z(C, t) = L(t) / ((1 - t)(1 - p t))`.
pub fn zeta_rational_form(w: &WeilPolynomial) -> ZetaForm {
    let p = BigInt::from(w.p);
    ZetaForm {
        p: w.p,
        numerator: w.zeta_numerator_coeffs().to_vec(),
        denominator: vec![BigInt::from(1), -(&p + 1u32), p],
    }
}

fn write_int_poly(out: &mut fmt::Formatter<'_>, c: &[BigInt], var: &str) -> fmt::Result {
    let mut first = true;
    for (i, v) in c.iter().enumerate().rev() {
        if v.sign() == num_bigint::Sign::NoSign {
            continue;
        }
        let neg = v.sign() == num_bigint::Sign::Minus;
        let mag = v.magnitude();
        match (first, neg) {
            (true, true) => write!(out, "-")?,
            (true, false) => {}
            (false, true) => write!(out, " - ")?,
            (false, false) => write!(out, " + ")?,
        }
        first = false;
        let one = *mag == num_bigint::BigUint::from(1u32);
        match i {
            0 => write!(out, "{mag}")?,
            1 if one => write!(out, "{var}")?,
            1 => write!(out, "{mag}*{var}")?,
            _ if one => write!(out, "{var}^{i}")?,
            _ => write!(out, "{mag}*{var}^{i}")?,
        }
    }
    if first {
        write!(out, "0")?;
    }
    Ok(())
}

impl fmt::Display for WeilPolynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_int_poly(out, &self.frobenius_coeffs(), "t")
    }
}

impl fmt::Display for ZetaForm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "(")?;
        write_int_poly(out, &self.numerator, "t")?;
        write!(out, ") / (")?;
        write_int_poly(out, &self.denominator, "t")?;
        write!(out, ")")
    }
}
