//! Helpers around [`Rational`]: construction, parsing and the JSON wire form.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"`, `"-a"` or `"a/b"` with decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: `{s}`"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad("bad numerator"))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad("bad denominator"))?;
            if d == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(s)
            .map(Rational::from_integer)
            .map_err(|_| bad("bad integer")),
    }
}

/// Exact rational as decimal strings: `{"num": "...", "den": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(q: &Rational) -> Self {
        RationalJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalJson> for Rational {
    type Error = Error;

    fn try_from(j: &RationalJson) -> Result<Rational> {
        parse_rational(&format!("{}/{}", j.num, j.den))
    }
}
