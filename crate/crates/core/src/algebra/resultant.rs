//! Resultants and discriminants via Sylvester determinants.

use super::linalg::bareiss_det;
use super::unipoly::{UniPoly, MAX_DEGREE};
use super::IntegralDomain;
use crate::error::{Error, Result};

/// The `(m+n) × (m+n)` Sylvester matrix of `f` (degree m) and `g` (degree
/// n), coefficients listed from the leading one down.
pub fn sylvester_matrix<R: IntegralDomain>(f: &UniPoly<R>, g: &UniPoly<R>) -> Vec<Vec<R>> {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let zero = f.zero().clone();
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res(f, g) = lc(f)^deg g · Π_{f(α)=0} g(α)`.
pub fn resultant<R: IntegralDomain>(f: &UniPoly<R>, g: &UniPoly<R>) -> Result<R> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    for d in [m, n] {
        if d > MAX_DEGREE {
            return Err(Error::DegreeBound(d));
        }
    }
    if m == 0 {
        return Ok(f.lc().pow(n as u32));
    }
    if n == 0 {
        return Ok(g.lc().pow(m as u32));
    }
    Ok(bareiss_det(sylvester_matrix(f, g), f.zero()))
}

/// `disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f)`.
pub fn discriminant<R: IntegralDomain>(f: &UniPoly<R>) -> Result<R> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    let res = resultant(f, &f.derivative())?;
    let q = res
        .div_exact(&f.lc())
        .ok_or_else(|| Error::Structure("leading coefficient does not divide Res(f, f')".into()))?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}
