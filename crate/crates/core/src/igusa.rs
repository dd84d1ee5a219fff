//! Igusa invariants of binary sextics via transvectants, absolute
//! invariants, and the Jacobian-rank independence test.
//!
//! The route is Clebsch invariants A, B, C, D, then Igusa–Clebsch
//! I2, I4, I6, I10, then Igusa's J2..J10. The normalization
//! used throughout is that of J evaluated on `4f`:
//!
//! | weight | constant |
//! |--------|----------|
//! | J2     | 16       |
//! | J4     | 256      |
//! | J6     | 4096     |
//! | J10    | I10 itself (the discriminant) |
//!
//! J8 is always `(J2 J6 - J4²) / 4` in the normalized values.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::jet::{jet_eval, Jet1};
use crate::algebra::linalg::rank;
use crate::algebra::rational::{int, rat};
use crate::algebra::unipoly::UniPoly;
use crate::algebra::{Field, QAlgebra};
use crate::error::{Error, Result};
use crate::{ParamPoly, Rational};

pub const C2: i64 = 16;
pub const C4: i64 = 256;
pub const C6: i64 = 4096;

/// Binary form `Σ c[i] X^i Z^(n-i)`.
#[derive(Debug, Clone)]
struct Form<R> {
    c: Vec<R>,
}

impl<R: QAlgebra> Form<R> {
    fn deg(&self) -> usize {
        self.c.len() - 1
    }

    /// `∂^a/∂X^a ∂^b/∂Z^b`.
    fn partial(&self, a: usize, b: usize) -> Form<R> {
        let n = self.deg();
        let m = n - a - b;
        let zero = self.c[0].zero_like();
        let mut out = vec![zero; m + 1];
        for (i, ci) in self.c.iter().enumerate() {
            if i < a || n - i < b {
                continue;
            }
            let k = falling(i, a) * falling(n - i, b);
            if k != 0 {
                out[i - a] = out[i - a].clone() + ci.from_int_like(k) * ci.clone();
            }
        }
        Form { c: out }
    }

    fn mul(&self, other: &Form<R>) -> Form<R> {
        let zero = self.c[0].zero_like();
        let mut out = vec![zero; self.deg() + other.deg() + 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Form { c: out }
    }

    fn add(&self, other: &Form<R>) -> Form<R> {
        Form {
            c: self
                .c
                .iter()
                .zip(&other.c)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    fn scale(&self, q: &Rational) -> Form<R> {
        Form {
            c: self.c.iter().map(|a| a.scale(q)).collect(),
        }
    }

    fn value(&self) -> R {
        debug_assert_eq!(self.deg(), 0);
        self.c[0].clone()
    }
}

fn falling(n: usize, k: usize) -> i64 {
    (0..k).map(|j| (n - j) as i64).product()
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn binom(n: usize, k: usize) -> i64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(F, G)_k = (m-k)!(n-k)!/(m! n!) Σ_i (-1)^i C(k,i) ∂^k F/∂X^(k-i)∂Z^i · ∂^k G/∂X^i∂Z^(k-i)`.
fn transvectant<R: QAlgebra>(f: &Form<R>, g: &Form<R>, k: usize) -> Form<R> {
    let (m, n) = (f.deg(), g.deg());
    let mut acc: Option<Form<R>> = None;
    for i in 0..=k {
        let term = f.partial(k - i, i).mul(&g.partial(i, k - i));
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let term = term.scale(&int(sign * binom(k, i)));
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    let norm = rat(
        factorial(m - k) * factorial(n - k),
        factorial(m) * factorial(n),
    );
    acc.expect("k >= 0").scale(&norm)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClebschInvariants<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IgusaClebsch<R> {
    pub i2: R,
    pub i4: R,
    pub i6: R,
    pub i10: R,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IgusaInvariants<R> {
    pub j2: R,
    pub j4: R,
    pub j6: R,
    pub j8: R,
    pub j10: R,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbsoluteInvariants<R> {
    pub i1: R,
    pub i2: R,
    pub i3: R,
}

fn sextic_form<R: QAlgebra>(f: &UniPoly<R>) -> Result<Form<R>> {
    match f.degree() {
        Some(5) | Some(6) => {}
        Some(d) => return Err(Error::Invalid(format!("degree {d} is not 5 or 6"))),
        None => return Err(Error::ZeroPolynomial),
    }
    Ok(Form {
        c: (0..=6).map(|i| f.coeff(i)).collect(),
    })
}

pub fn clebsch<R: QAlgebra>(f: &UniPoly<R>) -> Result<ClebschInvariants<R>> {
    let f = sextic_form(f)?;
    let i = transvectant(&f, &f, 4);
    let delta = transvectant(&i, &i, 2);
    let y1 = transvectant(&f, &i, 4);
    let y2 = transvectant(&i, &y1, 2);
    let y3 = transvectant(&i, &y2, 2);
    Ok(ClebschInvariants {
        a: transvectant(&f, &f, 6).value(),
        b: transvectant(&i, &i, 4).value(),
        c: transvectant(&i, &delta, 4).value(),
        d: transvectant(&y3, &y1, 2).value(),
    })
}

fn lin<R: QAlgebra>(terms: &[(i64, R)]) -> R {
    let mut it = terms.iter();
    let (c0, t0) = it.next().expect("nonempty");
    it.fold(t0.scale(&int(*c0)), |acc, (c, t)| acc + t.scale(&int(*c)))
}

pub fn igusa_clebsch<R: QAlgebra>(f: &UniPoly<R>) -> Result<IgusaClebsch<R>> {
    let ClebschInvariants { a, b, c, d } = clebsch(f)?;
    let a2 = a.clone() * a.clone();
    let a3 = a2.clone() * a.clone();
    let a5 = a3.clone() * a2.clone();
    Ok(IgusaClebsch {
        i2: a.scale(&int(-120)),
        i4: lin(&[(-720, a2.clone()), (6750, b.clone())]),
        i6: lin(&[
            (8640, a3.clone()),
            (-108000, a.clone() * b.clone()),
            (202500, c.clone()),
        ]),
        i10: lin(&[
            (-62208, a5),
            (972000, a3 * b.clone()),
            (1620000, a2 * c.clone()),
            (-3037500, a.clone() * b.clone() * b.clone()),
            (-6075000, b * c),
            (-4556250, d),
        ]),
    })
}

/// Igusa invariants of `4f`. Fails on repeated
/// roots (J10 = 0).
pub fn igusa<R: QAlgebra>(f: &UniPoly<R>) -> Result<IgusaInvariants<R>> {
    let inv = igusa_unchecked(f)?;
    if inv.j10.is_zero() {
        return Err(Error::Degenerate("J10 vanishes: repeated roots".into()));
    }
    Ok(inv)
}

/// Same as [`igusa`] without the J10 check.
pub fn igusa_unchecked<R: QAlgebra>(f: &UniPoly<R>) -> Result<IgusaInvariants<R>> {
    let IgusaClebsch { i2, i4, i6, i10 } = igusa_clebsch(f)?;
    // Igusa's J: J2 = I2/8, J4 = (4J2² - I4)/96, J6 = (8J2³ - 160 J2 J4 - I6)/576
    let j2 = i2.scale(&rat(1, 8));
    let j4 = (j2.clone() * j2.clone()).scale(&int(4)) - i4;
    let j4 = j4.scale(&rat(1, 96));
    let j6 = (j2.clone() * j2.clone() * j2.clone()).scale(&int(8))
        - (j2.clone() * j4.clone()).scale(&int(160))
        - i6;
    let j6 = j6.scale(&rat(1, 576));
    let j2 = j2.scale(&int(C2));
    let j4 = j4.scale(&int(C4));
    let j6 = j6.scale(&int(C6));
    let j8 = (j2.clone() * j6.clone() - j4.clone() * j4.clone()).scale(&rat(1, 4));
    Ok(IgusaInvariants {
        j2,
        j4,
        j6,
        j8,
        j10: i10,
    })
}

/// `I1 = J4/J2²`, `I2 = J6/J2³`, `I3 = J10/J2⁵`.
pub fn absolute<F: Field>(inv: &IgusaInvariants<F>) -> Result<AbsoluteInvariants<F>> {
    let r = inv.j2.inv().ok_or(Error::UndefinedChart)?;
    let r2 = r.clone() * r.clone();
    let r3 = r2.clone() * r.clone();
    let r5 = r3.clone() * r2.clone();
    Ok(AbsoluteInvariants {
        i1: inv.j4.clone() * r2,
        i2: inv.j6.clone() * r3,
        i3: inv.j10.clone() * r5,
    })
}

impl<R: QAlgebra> IgusaInvariants<R> {
    pub fn j8_identity_holds(&self) -> bool {
        let lhs = self.j8.scale(&int(4));
        let rhs = self.j2.clone() * self.j6.clone() - self.j4.clone() * self.j4.clone();
        (lhs - rhs).is_zero()
    }
}

/// Draws a rational with numerator in [-100, 100] and denominator in
/// [1, 100].
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-100..=100), rng.gen_range(1..=100))
}

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    pub trials: usize,
    pub rejected: usize,
    /// Point at which the maximal rank was first reached.
    #[serde(with = "witness_json")]
    pub witness: Option<BTreeMap<String, Rational>>,
    pub seed: u64,
}

mod witness_json {
    use super::*;
    use crate::algebra::rational::RationalJson;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &Option<BTreeMap<String, Rational>>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|m| {
                m.iter()
                    .map(|(k, q)| (k.clone(), RationalJson::from(q)))
                    .collect::<BTreeMap<_, _>>()
            })
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<BTreeMap<String, Rational>>, D::Error> {
        use serde::de::Error as _;
        let raw = Option::<BTreeMap<String, RationalJson>>::deserialize(d)?;
        raw.map(|m| {
            m.into_iter()
                .map(|(k, v)| {
                    Rational::try_from(&v)
                        .map(|q| (k, q))
                        .map_err(D::Error::custom)
                })
                .collect()
        })
        .transpose()
    }
}

/// Outcome at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub enum PointRank {
    Rank(usize),
    /// Discriminant locus or J2 = 0.
    Rejected,
}

/// Rank of `[∂I_i/∂param_j]` at `point`, by exact first-order jets.
pub fn jacobian_rank_at(
    f: &ParamPoly,
    params: &[String],
    point: &BTreeMap<String, Rational>,
) -> Result<PointRank> {
    let dim = params.len();
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| jet_eval(c, point, params))
        .collect::<Result<Vec<_>>>()?;
    let g = UniPoly::new(coeffs, Jet1::constant(int(0)));
    if !matches!(g.degree(), Some(5) | Some(6)) {
        return Ok(PointRank::Rejected);
    }
    let inv = igusa_unchecked(&g)?;
    if num_traits::Zero::is_zero(&inv.j10.value) || num_traits::Zero::is_zero(&inv.j2.value) {
        return Ok(PointRank::Rejected);
    }
    let abs = absolute(&inv)?;
    let rows: Vec<Vec<Rational>> = [abs.i1, abs.i2, abs.i3]
        .iter()
        .map(|j| (0..dim).map(|k| j.partial(k)).collect())
        .collect();
    Ok(PointRank::Rank(rank(&rows)))
}

/// Maximum Jacobian rank over `trials` random points drawn from a seeded
/// ChaCha stream. Points are drawn sequentially and evaluated in parallel,
/// so the report does not depend on the thread count.
pub fn independence_rank(
    f: &ParamPoly,
    params: &[String],
    trials: usize,
    seed: u64,
) -> Result<RankReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<BTreeMap<String, Rational>> = (0..trials)
        .map(|_| {
            params
                .iter()
                .map(|p| (p.clone(), random_rational(&mut rng)))
                .collect()
        })
        .collect();
    let outcomes = points
        .par_iter()
        .map(|pt| jacobian_rank_at(f, params, pt))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(usize, usize)> = None;
    let mut rejected = 0;
    for (i, o) in outcomes.iter().enumerate() {
        match o {
            PointRank::Rejected => rejected += 1,
            PointRank::Rank(r) => {
                if best.is_none_or(|(b, _)| *r > b) {
                    best = Some((*r, i));
                }
            }
        }
    }
    let Some((rank, idx)) = best else {
        return Err(Error::Inconclusive(trials));
    };
    Ok(RankReport {
        rank,
        trials,
        rejected,
        witness: Some(points[idx].clone()),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::expr::parse_poly;
    use crate::algebra::multipoly::symbols;
    use crate::algebra::resultant::discriminant;
    use crate::MultiPoly;

    fn q(v: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(v.iter().map(|&c| int(c)).collect(), int(0))
    }

    #[test]
    fn j10_is_the_sextic_discriminant() {
        let f = q(&[3, -1, 0, 2, 5, 1, 7]);
        let inv = igusa(&f).unwrap();
        assert_eq!(inv.j10, discriminant(&f).unwrap());
    }

    #[test]
    fn quintic_j10_is_scaled_discriminant() {
        // a5^2 disc5
        let f = q(&[1, 2, 0, -3, 0, 2]);
        let inv = igusa(&f).unwrap();
        assert_eq!(inv.j10, int(4) * discriminant(&f).unwrap());
    }

    #[test]
    fn absolute_ratio_arithmetic() {
        let inv = IgusaInvariants {
            j2: int(2),
            j4: int(4),
            j6: int(8),
            j8: int(0),
            j10: int(32),
        };
        let a = absolute(&inv).unwrap();
        assert_eq!((a.i1, a.i2, a.i3), (int(1), int(1), int(1)));
        let zero = IgusaInvariants { j2: int(0), ..inv };
        assert!(matches!(absolute(&zero), Err(Error::UndefinedChart)));
    }

    #[test]
    fn repeated_roots_flagged() {
        let f = q(&[0, 0, 1, 1, 1, 1]);
        assert!(matches!(igusa(&f), Err(Error::Degenerate(_))));
    }

    #[test]
    fn symbolic_quintic_j2() {
        // y^2 = x^5 + s x^3 + h: the x^3 coefficient alone drives J2
        let vars = symbols(&["s", "h"]);
        let c = |e: &str| parse_poly(e, &vars).unwrap();
        let f = UniPoly::new(
            vec![c("h"), c("0"), c("0"), c("s"), c("0"), c("1")],
            MultiPoly::zero(&vars),
        );
        let inv = igusa(&f).unwrap();
        assert!(inv.j8_identity_holds());
        assert_eq!(inv.j2.total_degree(), 2);
    }

    #[test]
    fn constant_family_has_rank_zero() {
        let vars = symbols(&["a", "b", "c"]);
        let f: ParamPoly = UniPoly::new(
            [1, 1, 0, 0, 0, 1]
                .iter()
                .map(|&v| MultiPoly::constant(&vars, int(v)))
                .collect(),
            MultiPoly::zero(&vars),
        );
        let names: Vec<String> = vars.iter().cloned().collect();
        let r = independence_rank(&f, &names, 3, 1).unwrap();
        assert_eq!(r.rank, 0);
    }
}
