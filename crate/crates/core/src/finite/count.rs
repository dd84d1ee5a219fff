//! Point counts on genus-2 curves over F_p and F_{p²}.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fp::Fp;
use super::fp2::{smallest_nonresidue, Fp2};
use crate::algebra::unipoly::UniPoly;
use crate::algebra::Ring;
use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCount {
    #[serde(rename = "N1")]
    pub n1: u64,
    #[serde(rename = "N2")]
    pub n2: u64,
}

impl PointCount {
    /// `|N_m - (p^m + 1)| ≤ 4 p^{m/2}` for m = 1, 2.
    pub fn within_weil_bounds(&self, p: u64) -> bool {
        let p = p as f64;
        let d1 = (self.n1 as f64 - (p + 1.0)).abs();
        let d2 = (self.n2 as f64 - (p * p + 1.0)).abs();
        d1 <= 4.0 * p.sqrt() + 1e-9 && d2 <= 4.0 * p + 1e-9
    }
}

fn horner_fp(f: &[Fp], x: Fp) -> Fp {
    f.iter()
        .rev()
        .fold(Fp::zero(x.modulus()), |acc, &c| acc * x + c)
}

fn horner_fp2(f: &[Fp], x: Fp2) -> Fp2 {
    let n = x.nonresidue();
    f.iter()
        .rev()
        .fold(x.zero_like(), |acc, &c| acc * x + Fp2::from_base(c, n))
}

/// `Σ_x (1 + χ(f(x)))` over F_{p^ext}. `nonresidue` picks the model of
/// F_{p²}; by default the smallest non-residue.
pub fn affine_points(f: &UniPoly<Fp>, ext: u32, nonresidue: Option<u64>) -> Result<u64> {
    let p = f.zero().modulus();
    let coeffs = f.coeffs();
    let total: i64 = match ext {
        1 => (0..p)
            .into_par_iter()
            .map(|x| 1 + horner_fp(coeffs, Fp::from_u64(x, p)).legendre() as i64)
            .sum(),
        2 => {
            let n = nonresidue.unwrap_or_else(|| smallest_nonresidue(p));
            let nf = Fp::from_u64(n, p);
            if nf.legendre() != -1 {
                return Err(Error::Invalid(format!("{n} is not a non-residue mod {p}")));
            }
            (0..p)
                .into_par_iter()
                .map(|a| {
                    let a = Fp::from_u64(a, p);
                    (0..p)
                        .map(|b| {
                            let x = Fp2::new(a, Fp::from_u64(b, p), nf);
                            1 + horner_fp2(coeffs, x).legendre() as i64
                        })
                        .sum::<i64>()
                })
                .sum()
        }
        e => {
            return Err(Error::Invalid(format!(
                "extension degree {e} not supported"
            )))
        }
    };
    Ok(total as u64)
}

/// Points at infinity on the smooth model of `y² = f(x)`.
pub fn points_at_infinity(f: &UniPoly<Fp>, ext: u32) -> u64 {
    match f.degree() {
        Some(5) => 1,
        Some(6)
            // every element of F_p is a square in F_{p²}
            if (ext == 2 || f.lc().legendre() == 1) => {
                2
            }
        _ => 0,
    }
}

pub fn count_points(curve: &HyperellipticCurve<Fp>, ext: u32) -> Result<u64> {
    count_points_with(curve, ext, None)
}

pub fn count_points_with(
    curve: &HyperellipticCurve<Fp>,
    ext: u32,
    nonresidue: Option<u64>,
) -> Result<u64> {
    Ok(affine_points(curve.f(), ext, nonresidue)? + points_at_infinity(curve.f(), ext))
}

pub fn point_counts(curve: &HyperellipticCurve<Fp>) -> Result<PointCount> {
    Ok(PointCount {
        n1: count_points(curve, 1)?,
        n2: count_points(curve, 2)?,
    })
}
