//! First-order jets: a rational value together with exact partial
//! derivatives with respect to a list of tracked parameters.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::multipoly::MultiPoly;
use super::{Field, IntegralDomain, QAlgebra, Ring};
use crate::error::{Error, Result};
use crate::Rational;

/// An empty `partials` vector means "all partials zero" and combines with a
/// jet of any dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet1 {
    pub value: Rational,
    pub partials: Vec<Rational>,
}

impl Jet1 {
    pub fn constant(value: Rational) -> Self {
        Jet1 {
            value,
            partials: Vec::new(),
        }
    }

    /// The jet of the `idx`-th tracked coordinate at `value`.
    pub fn variable(value: Rational, idx: usize, dim: usize) -> Self {
        let mut partials = vec![Rational::zero(); dim];
        partials[idx] = Rational::one();
        Jet1 { value, partials }
    }

    pub fn partial(&self, j: usize) -> Rational {
        self.partials.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    fn zip_partials(
        a: &[Rational],
        b: &[Rational],
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let zero = Rational::zero();
        (0..n)
            .map(|i| f(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect()
    }
}

impl Add for Jet1 {
    type Output = Jet1;
    fn add(self, rhs: Jet1) -> Jet1 {
        Jet1 {
            value: self.value + rhs.value,
            partials: Jet1::zip_partials(&self.partials, &rhs.partials, |a, b| a + b),
        }
    }
}

impl Sub for Jet1 {
    type Output = Jet1;
    fn sub(self, rhs: Jet1) -> Jet1 {
        Jet1 {
            value: self.value - rhs.value,
            partials: Jet1::zip_partials(&self.partials, &rhs.partials, |a, b| a - b),
        }
    }
}

impl Mul for Jet1 {
    type Output = Jet1;
    fn mul(self, rhs: Jet1) -> Jet1 {
        // (fg)' = f'g + fg'
        let partials = Jet1::zip_partials(&self.partials, &rhs.partials, |da, db| {
            da * &rhs.value + &self.value * db
        });
        Jet1 {
            value: self.value * rhs.value,
            partials,
        }
    }
}

impl Neg for Jet1 {
    type Output = Jet1;
    fn neg(self) -> Jet1 {
        Jet1 {
            value: -self.value,
            partials: self.partials.into_iter().map(|d| -d).collect(),
        }
    }
}

impl Ring for Jet1 {
    fn zero_like(&self) -> Self {
        Jet1::constant(Rational::zero())
    }
    fn one_like(&self) -> Self {
        Jet1::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.value) && self.partials.iter().all(Zero::is_zero)
    }
    fn from_int_like(&self, n: i64) -> Self {
        Jet1::constant(Rational::from_integer(n.into()))
    }
}

impl Field for Jet1 {
    /// `(1/f)' = -f'/f²`; undefined where the value vanishes.
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(&self.value) {
            return None;
        }
        let inv = self.value.recip();
        let inv2 = &inv * &inv;
        Some(Jet1 {
            value: inv,
            partials: self.partials.iter().map(|d| -(d * &inv2)).collect(),
        })
    }
}

impl IntegralDomain for Jet1 {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.div(divisor)
    }
}

impl QAlgebra for Jet1 {
    fn scale(&self, c: &Rational) -> Self {
        Jet1 {
            value: &self.value * c,
            partials: self.partials.iter().map(|d| d * c).collect(),
        }
    }
}

/// Value and exact gradient of `p` at `point` with respect to `tracked`.
pub fn jet_eval(
    p: &MultiPoly,
    point: &BTreeMap<String, Rational>,
    tracked: &[String],
) -> Result<Jet1> {
    let dim = tracked.len();
    let values = p
        .vars()
        .iter()
        .map(|v| {
            let value = point
                .get(v)
                .cloned()
                .ok_or_else(|| Error::MissingVariable(v.clone()))?;
            Ok(match tracked.iter().position(|t| t == v) {
                Some(j) => Jet1::variable(value, j, dim),
                None => Jet1::constant(value),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = if values.is_empty() {
        Jet1::constant(p.constant_term())
    } else {
        p.eval_with(&values)
    };
    out.partials.resize(dim, Rational::zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::expr::parse_poly;
    use crate::algebra::multipoly::symbols;
    use crate::algebra::rational::{int, rat};

    fn point(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn power_rule() {
        let vars = symbols(&["h1"]);
        let p = parse_poly("h1^2", &vars).unwrap();
        let j = jet_eval(&p, &point(&[("h1", int(3))]), &["h1".into()]).unwrap();
        assert_eq!(j.value, int(9));
        assert_eq!(j.partials, vec![int(6)]);
    }

    #[test]
    fn constant_has_zero_gradient() {
        let vars = symbols(&["a", "b"]);
        let p = parse_poly("7/3", &vars).unwrap();
        let pt = point(&[("a", int(1)), ("b", int(2))]);
        let j = jet_eval(&p, &pt, &["a".into(), "b".into()]).unwrap();
        assert_eq!(j.value, rat(7, 3));
        assert_eq!(j.partials, vec![int(0), int(0)]);
    }

    #[test]
    fn missing_assignment_is_an_error() {
        let vars = symbols(&["a", "b"]);
        let p = parse_poly("a*b", &vars).unwrap();
        assert!(matches!(
            jet_eval(&p, &point(&[("a", int(1))]), &["a".into()]),
            Err(Error::MissingVariable(v)) if v == "b"
        ));
    }

    #[test]
    fn quotient_rule() {
        let x = Jet1::variable(int(2), 0, 1);
        let q = (x.clone() * x.clone()).inv().unwrap(); // 1/x^2 -> -2/x^3
        assert_eq!(q.value, rat(1, 4));
        assert_eq!(q.partials, vec![rat(-1, 4)]);
    }
}
