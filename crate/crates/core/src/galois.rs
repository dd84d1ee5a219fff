//! Quartic factorization over Q, Galois groups of quartics, quadratic
//! subfields of Weil fields, and the root-ratio test.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::resultant::{discriminant, resultant};
use crate::algebra::unipoly::UniPoly;
use crate::algebra::{is_square, squarefree_part};
use crate::error::{Error, Result};
use crate::finite::WeilPolynomial;
use crate::{QPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GaloisGroup {
    S4,
    A4,
    D4,
    C4,
    V4,
}

impl fmt::Display for GaloisGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Monic integer quartic `t⁴ + a t³ + b t² + c t + d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quartic {
    /// Constant term first; `coeffs[4] == 1`.
    coeffs: [BigInt; 5],
}

impl Quartic {
    pub fn new(ascending: [BigInt; 5]) -> Result<Self> {
        if !ascending[4].is_one() {
            return Err(Error::Invalid("quartic must be monic".into()));
        }
        Ok(Quartic { coeffs: ascending })
    }

    /// From `[c4, c3, c2, c1, c0]`, leading coefficient first.
    pub fn from_descending(desc: &[i64]) -> Result<Self> {
        if desc.len() != 5 {
            return Err(Error::Invalid(format!(
                "expected 5 coefficients, got {}",
                desc.len()
            )));
        }
        let mut c: Vec<BigInt> = desc.iter().rev().map(|&v| BigInt::from(v)).collect();
        let arr: [BigInt; 5] = [
            std::mem::take(&mut c[0]),
            std::mem::take(&mut c[1]),
            std::mem::take(&mut c[2]),
            std::mem::take(&mut c[3]),
            std::mem::take(&mut c[4]),
        ];
        Quartic::new(arr)
    }

    pub fn frobenius(w: &WeilPolynomial) -> Self {
        Quartic {
            coeffs: w.frobenius_coeffs(),
        }
    }

    pub fn coeffs(&self) -> &[BigInt; 5] {
        &self.coeffs
    }

    fn abcd(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (
            &self.coeffs[3],
            &self.coeffs[2],
            &self.coeffs[1],
            &self.coeffs[0],
        )
    }

    pub fn to_qpoly(&self) -> QPoly {
        int_poly(&self.coeffs)
    }

    pub fn discriminant(&self) -> BigInt {
        let d = discriminant(&self.to_qpoly()).expect("degree 4");
        d.to_integer()
    }

    /// `R(x) = x³ - b x² + (ac - 4d) x - (a²d - 4bd + c²)`, whose roots are
    /// `x1x2 + x3x4`, `x1x3 + x2x4`, `x1x4 + x2x3`.
    pub fn resolvent_cubic(&self) -> [BigInt; 4] {
        let (a, b, c, d) = self.abcd();
        [
            -(a * a * d - BigInt::from(4) * b * d + c * c),
            a * c - BigInt::from(4) * d,
            -b.clone(),
            BigInt::one(),
        ]
    }
}

impl fmt::Display for Quartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_qpoly_display())
    }
}

impl Quartic {
    fn to_qpoly_display(&self) -> String {
        display_int_poly(&self.coeffs)
    }
}

pub fn display_int_poly(c: &[BigInt]) -> String {
    let mut s = String::new();
    for (i, v) in c.iter().enumerate().rev() {
        if v.is_zero() {
            continue;
        }
        let mag = v.abs();
        if s.is_empty() {
            if v.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if v.is_negative() { " - " } else { " + " });
        }
        let coef = if mag.is_one() && i > 0 {
            String::new()
        } else if i > 0 {
            format!("{mag}*")
        } else {
            mag.to_string()
        };
        s.push_str(&coef);
        match i {
            0 => {}
            1 => s.push('t'),
            _ => s.push_str(&format!("t^{i}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn int_poly(c: &[BigInt]) -> QPoly {
    UniPoly::new(
        c.iter()
            .map(|v| Rational::from_integer(v.clone()))
            .collect(),
        Rational::zero(),
    )
}

fn to_int_coeffs(p: &QPoly) -> Vec<BigInt> {
    p.coeffs()
        .iter()
        .map(|c| {
            assert!(
                c.is_integer(),
                "monic factors of monic integer polynomials are integral"
            );
            c.to_integer()
        })
        .collect()
}

/// Positive divisors of `n ≠ 0` not exceeding `bound`.
fn divisors_up_to(n: &BigInt, bound: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = BTreeSet::new();
    let mut i = BigInt::one();
    while &i * &i <= n && &i <= bound {
        if (&n % &i).is_zero() {
            out.insert(i.clone());
            let j = &n / &i;
            if &j <= bound {
                out.insert(j);
            }
        }
        i += 1u32;
    }
    out.into_iter().collect()
}

/// Integer roots of a monic integer polynomial (constant term first).
pub fn integer_roots(c: &[BigInt]) -> Vec<BigInt> {
    let p = int_poly(c);
    let mut roots = Vec::new();
    let Some(deg) = p.degree() else {
        return roots;
    };
    if deg == 0 {
        return roots;
    }
    // strip zero roots
    let k = c.iter().take_while(|v| v.is_zero()).count();
    if k > 0 {
        roots.push(BigInt::zero());
    }
    let rest = &c[k..];
    if rest.len() <= 1 {
        return roots;
    }
    let bound = BigInt::one() + rest.iter().map(|v| v.abs()).max().unwrap_or_default();
    for r in divisors_up_to(&rest[0], &bound) {
        for cand in [r.clone(), -r] {
            if p.eval(&Rational::from_integer(cand.clone())).is_zero() {
                roots.push(cand);
            }
        }
    }
    roots.sort();
    roots
}

fn rational_quadratic_roots(sum: &BigInt, prod: &BigInt) -> Option<(Rational, Rational)> {
    // z² - sum z + prod
    let disc = sum * sum - BigInt::from(4) * prod;
    if !is_square(&disc) {
        return None;
    }
    let r = disc.sqrt();
    let two = BigInt::from(2);
    Some((
        Rational::new(sum + &r, two.clone()),
        Rational::new(sum - r, two),
    ))
}

/// Factors `q` into two rational monic quadratics, if possible.
fn quadratic_split(q: &Quartic) -> Option<(QPoly, QPoly)> {
    let (a, b, _, d) = q.abcd();
    let target = q.to_qpoly();
    for theta in integer_roots(&q.resolvent_cubic()) {
        let Some((v1, v2)) = rational_quadratic_roots(&theta, d) else {
            continue;
        };
        let Some((u1, u2)) = rational_quadratic_roots(a, &(b - &theta)) else {
            continue;
        };
        for (u, w) in [(u1.clone(), u2.clone()), (u2, u1)] {
            let f = UniPoly::new(vec![v1.clone(), u, Rational::one()], Rational::zero());
            let g = UniPoly::new(vec![v2.clone(), w, Rational::one()], Rational::zero());
            if f.clone() * g.clone() == target {
                return Some((f, g));
            }
        }
    }
    None
}

fn factor_monic(c: &[BigInt]) -> Vec<Vec<BigInt>> {
    let p = int_poly(c);
    let deg = p.degree().unwrap_or(0);
    if deg <= 1 {
        return vec![c.to_vec()];
    }
    if let Some(r) = integer_roots(c).into_iter().next() {
        let lin = UniPoly::new(
            vec![Rational::from_integer(-r.clone()), Rational::one()],
            Rational::zero(),
        );
        let (quo, rem) = p.div_rem(&lin).expect("nonzero divisor");
        debug_assert!(rem.is_zero());
        let mut out = vec![vec![-r, BigInt::one()]];
        out.extend(factor_monic(&to_int_coeffs(&quo)));
        return out;
    }
    if deg == 4 {
        let q = Quartic::new(c.to_vec().try_into().expect("length 5")).expect("monic");
        if let Some((f, g)) = quadratic_split(&q) {
            return vec![to_int_coeffs(&f), to_int_coeffs(&g)];
        }
    }
    vec![c.to_vec()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticAnalysis {
    /// Constant term first.
    #[serde(with = "crate::serde_int::vec")]
    pub polynomial: Vec<BigInt>,
    pub irreducible: bool,
    /// Monic irreducible factors, each constant term first.
    #[serde(with = "crate::serde_int::vec2")]
    pub factorization: Vec<Vec<BigInt>>,
    pub galois_group: Option<GaloisGroup>,
    #[serde(with = "crate::serde_int::int")]
    pub discriminant: BigInt,
}

/// Complete factorization into monic irreducible factors over Q.
pub fn factor_quartic(q: &Quartic) -> Vec<Vec<BigInt>> {
    let mut f = factor_monic(&q.coeffs);
    f.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    f
}

pub fn is_irreducible(q: &Quartic) -> bool {
    factor_quartic(q).len() == 1
}

/// Whether a quadratic with discriminant `delta` splits over Q(√disc).
fn splits_over(delta: &BigInt, disc: &BigInt) -> bool {
    delta.is_zero() || is_square(delta) || is_square(&(delta * disc))
}

/// Resolvent-cubic classification, with the Kappe–Warren test separating D4
/// from C4.
pub fn galois_group(q: &Quartic) -> Result<GaloisGroup> {
    if !is_irreducible(q) {
        return Err(Error::Reducible);
    }
    let disc = q.discriminant();
    let roots = integer_roots(&q.resolvent_cubic());
    Ok(match roots.len() {
        0 => {
            if is_square(&disc) {
                GaloisGroup::A4
            } else {
                GaloisGroup::S4
            }
        }
        1 => {
            let (a, b, _, d) = q.abcd();
            let theta = &roots[0];
            let d1 = theta * theta - BigInt::from(4) * d;
            let d2 = a * a - BigInt::from(4) * (b - theta);
            if splits_over(&d1, &disc) && splits_over(&d2, &disc) {
                GaloisGroup::C4
            } else {
                GaloisGroup::D4
            }
        }
        _ => GaloisGroup::V4,
    })
}

pub fn analyze_quartic(q: &Quartic) -> QuarticAnalysis {
    let factorization = factor_quartic(q);
    let irreducible = factorization.len() == 1;
    QuarticAnalysis {
        polynomial: q.coeffs.to_vec(),
        irreducible,
        galois_group: if irreducible {
            galois_group(q).ok()
        } else {
            None
        },
        factorization,
        discriminant: q.discriminant(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSubfieldCertificate {
    pub defined: bool,
    pub galois_group: GaloisGroup,
    /// `d` with subfield Q(√d); present iff `defined`.
    #[serde(with = "crate::serde_int::opt")]
    pub squarefree_discriminant: Option<BigInt>,
    /// `t² - a1 t + (a2 - 2p)`, constant term first.
    #[serde(with = "crate::serde_int::vec")]
    pub minimal_polynomial: Vec<BigInt>,
    /// For biquadratic fields, the three quadratic subfields.
    #[serde(with = "crate::serde_int::vec")]
    pub all_discriminants: Vec<BigInt>,
}

/// Quadratic subfields of the biquadratic field cut out by a V4 quartic.
fn biquadratic_subfields(q: &Quartic) -> Vec<BigInt> {
    let (a, b, _, d) = q.abcd();
    let mut out = BTreeSet::new();
    for theta in integer_roots(&q.resolvent_cubic()) {
        let eps = a * a - BigInt::from(4) * b + BigInt::from(4) * &theta;
        let delta = &theta * &theta - BigInt::from(4) * d;
        for v in [eps, delta] {
            if !v.is_zero() && !is_square(&v) {
                out.insert(squarefree_part(&v));
                break;
            }
        }
    }
    out.into_iter().collect()
}

pub fn quadratic_subfield(w: &WeilPolynomial) -> Result<QuadraticSubfieldCertificate> {
    let q = Quartic::frobenius(w);
    let group = galois_group(&q)?;
    let p = BigInt::from(w.p);
    let a1 = BigInt::from(w.a1);
    let c0 = BigInt::from(w.a2) - BigInt::from(2) * &p;
    let minimal_polynomial = vec![c0.clone(), -a1.clone(), BigInt::one()];
    match group {
        GaloisGroup::S4 | GaloisGroup::A4 => Err(Error::Structure(format!(
            "Galois group {group} leaves no quadratic subfield"
        ))),
        GaloisGroup::V4 => Ok(QuadraticSubfieldCertificate {
            defined: false,
            galois_group: group,
            squarefree_discriminant: None,
            minimal_polynomial,
            all_discriminants: biquadratic_subfields(&q),
        }),
        GaloisGroup::D4 | GaloisGroup::C4 => {
            let disc = &a1 * &a1 - BigInt::from(4) * &c0;
            if disc.is_zero() || is_square(&disc) {
                return Err(Error::Structure(
                    "alpha + p/alpha is rational for an irreducible P".into(),
                ));
            }
            let d = squarefree_part(&disc);
            Ok(QuadraticSubfieldCertificate {
                defined: true,
                galois_group: group,
                squarefree_discriminant: Some(d.clone()),
                minimal_polynomial,
                all_discriminants: vec![d],
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TateVerdict {
    GeneratedByFrobenius,
    Fails,
}

/// Squarefreeness of P(t).
pub fn tate_condition(w: &WeilPolynomial) -> TateVerdict {
    if Quartic::frobenius(w).discriminant().is_zero() {
        TateVerdict::Fails
    } else {
        TateVerdict::GeneratedByFrobenius
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Φ_1, …, Φ_max over Q; index 0 is unused.
pub fn cyclotomic_polynomials(max: usize) -> Vec<QPoly> {
    let zero = Rational::zero();
    let mut out: Vec<QPoly> = vec![UniPoly::zero_poly(zero.clone())];
    for n in 1..=max {
        let mut c = vec![Rational::zero(); n + 1];
        c[0] = -Rational::one();
        c[n] = Rational::one();
        let mut num = UniPoly::new(c, zero.clone());
        for d in (1..n).filter(|d| n % d == 0) {
            num = num.div_rem(&out[d]).expect("nonzero").0;
        }
        out.push(num);
    }
    out
}

pub const ROOT_RATIO_MAX_ORDER: u64 = 90;
pub const ROOT_RATIO_MAX_PHI: u64 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum RootRatioVerdict {
    NoUnityRatios,
    /// Largest order found, and every order found.
    UnityRatioFound {
        order: u64,
        orders: Vec<u64>,
    },
}

/// `R(u) = Res_t(P(t), P(u t))`, as a polynomial in `u`.
pub fn root_ratio_resultant(p: &QPoly) -> Result<QPoly> {
    let zero = Rational::zero();
    let uzero = UniPoly::zero_poly(zero.clone());
    let lift = |c: &Rational| UniPoly::constant(c.clone());
    let pt = p.map(uzero.clone(), lift);
    // coefficient of t^k in P(u t) is c_k u^k
    let put = UniPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| UniPoly::constant(c.clone()).shift(k))
            .collect(),
        uzero,
    );
    resultant(&pt, &put)
}

/// Looks for pairs of roots of P whose ratio is a root of unity of order
/// 2 ≤ n ≤ 90 with φ(n) ≤ 24.
pub fn root_ratio_cyclotomic_test(w: &WeilPolynomial) -> Result<RootRatioVerdict> {
    root_ratio_test_poly(&w.frobenius_poly())
}

pub fn root_ratio_test_poly(p: &QPoly) -> Result<RootRatioVerdict> {
    let disc = discriminant(p)?;
    if disc.is_zero() {
        return Err(Error::Degenerate("P(t) has repeated roots".into()));
    }
    let deg = p.degree().expect("nonzero");
    let r = root_ratio_resultant(p)?;
    let zero = Rational::zero();
    let u_minus_1 = UniPoly::new(vec![-Rational::one(), Rational::one()], zero.clone());
    let mut rest = r;
    for _ in 0..deg {
        let (q, rem) = rest.div_rem(&u_minus_1).expect("nonzero divisor");
        if !rem.is_zero() {
            return Err(Error::Structure("(u - 1)^deg does not divide R(u)".into()));
        }
        rest = q;
    }
    let phis = cyclotomic_polynomials(ROOT_RATIO_MAX_ORDER as usize);
    let mut orders = Vec::new();
    for n in 2..=ROOT_RATIO_MAX_ORDER {
        if euler_phi(n) > ROOT_RATIO_MAX_PHI {
            continue;
        }
        // Φ_n is irreducible, so a common factor means Φ_n | rest
        let (_, rem) = rest.div_rem(&phis[n as usize]).expect("nonzero divisor");
        if rem.is_zero() {
            orders.push(n);
        }
    }
    Ok(match orders.last() {
        None => RootRatioVerdict::NoUnityRatios,
        Some(&order) => RootRatioVerdict::UnityRatioFound { order, orders },
    })
}

impl QuarticAnalysis {
    /// Product of the factorization, constant term first.
    pub fn product(&self) -> Vec<BigInt> {
        let mut acc = int_poly(&[BigInt::one()]);
        for f in &self.factorization {
            acc = acc * int_poly(f);
        }
        to_int_coeffs(&acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic(desc: &[i64]) -> Quartic {
        Quartic::from_descending(desc).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn factor_difference_of_squares() {
        let f = factor_quartic(&quartic(&[1, 0, 0, 0, -1]));
        assert_eq!(f, vec![ints(&[-1, 1]), ints(&[1, 1]), ints(&[1, 0, 1])]);
    }

    #[test]
    fn factor_sophie_germain() {
        let f = factor_quartic(&quartic(&[1, 0, 0, 0, 4]));
        assert_eq!(f, vec![ints(&[2, -2, 1]), ints(&[2, 2, 1])]);
    }

    #[test]
    fn small_groups() {
        assert_eq!(
            galois_group(&quartic(&[1, 0, 0, 0, 1])).unwrap(),
            GaloisGroup::V4
        );
        assert_eq!(
            galois_group(&quartic(&[1, 0, 0, -1, -1])).unwrap(),
            GaloisGroup::S4
        );
        assert_eq!(
            quartic(&[1, 0, 0, -1, -1]).discriminant(),
            BigInt::from(-283)
        );
        // x^4 - 2: D4; x^4 + x^3 + x^2 + x + 1: C4; x^4 + 8x + 12: A4
        assert_eq!(
            galois_group(&quartic(&[1, 0, 0, 0, -2])).unwrap(),
            GaloisGroup::D4
        );
        assert_eq!(
            galois_group(&quartic(&[1, 1, 1, 1, 1])).unwrap(),
            GaloisGroup::C4
        );
        assert_eq!(
            galois_group(&quartic(&[1, 0, 0, 8, 12])).unwrap(),
            GaloisGroup::A4
        );
        assert!(matches!(
            galois_group(&quartic(&[1, 0, 0, 0, -1])),
            Err(Error::Reducible)
        ));
    }

    #[test]
    fn biquadratic_subfields_of_zeta8() {
        assert_eq!(
            biquadratic_subfields(&quartic(&[1, 0, 0, 0, 1])),
            ints(&[-2, -1, 2])
        );
    }

    #[test]
    fn cyclotomics() {
        let phi = cyclotomic_polynomials(12);
        assert_eq!(phi[12].degree(), Some(4));
        assert_eq!(phi[6], int_poly(&ints(&[1, -1, 1])));
        assert_eq!(euler_phi(90), 24);
        assert_eq!(euler_phi(37), 36);
    }

    #[test]
    fn tate_on_square() {
        // (t^2 - 2t + 2)^2 = t^4 - 4t^3 + 8t^2 - 8t + 4, i.e. p = 2, a1 = 4, a2 = 8
        let w = WeilPolynomial { p: 2, a1: 4, a2: 8 };
        assert_eq!(tate_condition(&w), TateVerdict::Fails);
    }

    #[test]
    fn rotated_roots_are_detected() {
        let w = WeilPolynomial { p: 5, a1: 0, a2: 0 };
        match root_ratio_cyclotomic_test(&w).unwrap() {
            RootRatioVerdict::UnityRatioFound { order, orders } => {
                assert_eq!(order, 4);
                assert_eq!(orders, vec![2, 4]);
            }
            v => panic!("unexpected {v:?}"),
        }
    }
}
