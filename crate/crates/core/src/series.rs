//! Truncated Laurent series in `t` with polynomial coefficients, and the
//! Hamiltonian-flow checks on the Gar 9/2 Laurent solution.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::expr::parse_poly;
use crate::algebra::multipoly::MultiPoly;
use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::Rational;

/// `Σ_{k ≥ lowest} c_k t^k + O(t^order)`; `order = None` means the sum is
/// exact (a Laurent polynomial).
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: Arc<Vec<String>>,
    lowest: i32,
    coeffs: Vec<MultiPoly>,
    order: Option<i32>,
}

impl TruncatedSeries {
    /// Coefficients at or beyond `order` are dropped.
    pub fn new(
        vars: &Arc<Vec<String>>,
        lowest: i32,
        coeffs: Vec<MultiPoly>,
        order: Option<i32>,
    ) -> Result<Self> {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.align(vars))
            .collect::<Result<Vec<_>>>()?;
        Self::build(vars, lowest, coeffs, order)
    }

    fn build(
        vars: &Arc<Vec<String>>,
        lowest: i32,
        mut coeffs: Vec<MultiPoly>,
        order: Option<i32>,
    ) -> Result<Self> {
        if let Some(n) = order {
            if n <= lowest {
                return Err(Error::VacuousSeries { lowest, order: n });
            }
            coeffs.truncate((n - lowest) as usize);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(TruncatedSeries {
            vars: Arc::clone(vars),
            lowest,
            coeffs,
            order,
        })
    }

    pub fn from_terms(
        vars: &Arc<Vec<String>>,
        terms: &BTreeMap<i32, MultiPoly>,
        order: Option<i32>,
    ) -> Result<Self> {
        let lowest = terms
            .keys()
            .next()
            .copied()
            .unwrap_or_else(|| order.map_or(0, |n| n - 1));
        let hi = terms.keys().next_back().copied().unwrap_or(lowest - 1);
        let mut coeffs = vec![MultiPoly::zero(vars); (hi - lowest + 1).max(0) as usize];
        for (k, c) in terms {
            coeffs[(k - lowest) as usize] = c.align(vars)?;
        }
        Self::build(vars, lowest, coeffs, order)
    }

    /// `c t^k`, exact.
    pub fn monomial(c: MultiPoly, k: i32) -> Self {
        let vars = Arc::clone(c.vars());
        TruncatedSeries {
            vars,
            lowest: k,
            coeffs: vec![c],
            order: None,
        }
    }

    pub fn constant(c: MultiPoly) -> Self {
        Self::monomial(c, 0)
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn lowest_exponent(&self) -> i32 {
        self.lowest
    }

    pub fn order(&self) -> Option<i32> {
        self.order
    }

    /// Coefficient of `t^k`; `None` when `k` lies at or beyond the
    /// truncation order.
    pub fn coeff(&self, k: i32) -> Option<MultiPoly> {
        if self.order.is_some_and(|n| k >= n) {
            return None;
        }
        let i = k - self.lowest;
        if i < 0 || i as usize >= self.coeffs.len() {
            return Some(MultiPoly::zero(&self.vars));
        }
        Some(self.coeffs[i as usize].clone())
    }

    /// Exponents whose coefficients are known, in increasing order. For an
    /// exact series, up to the last nonzero term.
    pub fn known_exponents(&self) -> std::ops::Range<i32> {
        let end = self.order.unwrap_or(self.lowest + self.coeffs.len() as i32);
        self.lowest..end
    }

    /// First exponent with a nonzero coefficient; for a truncated series
    /// with no known nonzero term, the truncation order. `None` only for
    /// the exact zero series.
    pub fn valuation(&self) -> Option<i32> {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Some(self.lowest + i as i32),
            None => self.order,
        }
    }

    /// Drops the O-term, reading unprinted coefficients as zero.
    pub fn as_exact(&self) -> Self {
        TruncatedSeries {
            order: None,
            ..self.clone()
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.order.is_none() && self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::Alignment {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self> {
        self.check_vars(other)?;
        let lowest = self.lowest.min(other.lowest);
        let order = opt_min(self.order, other.order);
        let hi =
            (self.lowest + self.coeffs.len() as i32).max(other.lowest + other.coeffs.len() as i32);
        let mut coeffs = vec![MultiPoly::zero(&self.vars); (hi - lowest).max(0) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = (self.lowest - lowest) as usize + i;
            coeffs[k] = &coeffs[k] + c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let k = (other.lowest - lowest) as usize + i;
            coeffs[k] = if subtract {
                &coeffs[k] - c
            } else {
                &coeffs[k] + c
            };
        }
        Self::build(&self.vars, lowest, coeffs, order)
    }

    /// Product, known modulo `t^N` with `N = min(N_a + val(b), N_b + val(a))`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Self::constant(MultiPoly::zero(&self.vars)));
        }
        let bound = |n: Option<i32>, v: Option<i32>| match (n, v) {
            (Some(n), Some(v)) => Some(n + v),
            _ => None,
        };
        let order = opt_min(
            bound(self.order, other.valuation()),
            bound(other.order, self.valuation()),
        );
        if let (Some(n), Some(va), Some(vb)) = (order, self.valuation(), other.valuation()) {
            if n <= va + vb {
                return Err(Error::VacuousSeries {
                    lowest: va + vb,
                    order: n,
                });
            }
        }
        let lowest = self.lowest + other.lowest;
        let len = self.coeffs.len() + other.coeffs.len();
        let mut coeffs = vec![MultiPoly::zero(&self.vars); len.saturating_sub(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some(n) = order {
                    if lowest + (i + j) as i32 >= n {
                        break;
                    }
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self::build(&self.vars, lowest, coeffs, order)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::constant(MultiPoly::one(&self.vars));
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// `c t^k ↦ k c t^(k-1)`, lowering the truncation order by one.
    pub fn differentiate(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&Rational::from_integer((self.lowest + i as i32).into())))
            .collect();
        Self::build(
            &self.vars,
            self.lowest - 1,
            coeffs,
            self.order.map(|n| n - 1),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|m| m.scale(c)).collect(),
            ..self.clone()
        }
    }

    /// Substitutes rationals into the coefficient variables.
    pub fn specialize(&self, point: &BTreeMap<String, Rational>) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|m| m.specialize(point)).collect(),
            ..self.clone()
        }
    }
}

fn opt_min(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let k = self.lowest + i as i32;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        match self.order {
            Some(n) => {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "O(t^{n})")
            }
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub const PHASE_VARIABLES: [&str; 4] = ["q1", "p1", "q2", "p2"];

/// Series for `(q1, p1, q2, p2)` over the parameters `(α, β, γ, s1, s2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSolution {
    pub vars: Arc<Vec<String>>,
    pub q1: TruncatedSeries,
    pub p1: TruncatedSeries,
    pub q2: TruncatedSeries,
    pub p2: TruncatedSeries,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesFile {
    pub schema_version: u32,
    #[serde(default)]
    pub system: String,
    pub variables: Vec<String>,
    pub series: BTreeMap<String, SeriesEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub order: i32,
    /// Exponent (as a decimal string) to coefficient expression.
    pub terms: BTreeMap<String, String>,
}

pub const SERIES_SCHEMA_VERSION: u32 = 1;
const GAR92_DATA: &str = include_str!("../data/gar92_laurent.json");

impl LaurentSolution {
    pub fn from_json(src: &str) -> Result<Self> {
        let file: SeriesFile =
            serde_json::from_str(src).map_err(|e| Error::Invalid(format!("series file: {e}")))?;
        if file.schema_version != SERIES_SCHEMA_VERSION {
            return Err(Error::Invalid(format!(
                "unsupported series schema version {}",
                file.schema_version
            )));
        }
        let vars = Arc::new(file.variables.clone());
        let read = |name: &str| -> Result<TruncatedSeries> {
            let entry = file
                .series
                .get(name)
                .ok_or_else(|| Error::Invalid(format!("series `{name}` missing")))?;
            let mut terms = BTreeMap::new();
            for (k, expr) in &entry.terms {
                let k: i32 = k
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad exponent `{k}` in `{name}`")))?;
                terms.insert(k, parse_poly(expr, &vars)?);
            }
            TruncatedSeries::from_terms(&vars, &terms, Some(entry.order))
        };
        Ok(LaurentSolution {
            q1: read("q1")?,
            p1: read("p1")?,
            q2: read("q2")?,
            p2: read("p2")?,
            vars: Arc::clone(&vars),
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        Self::from_json(&src)
    }

    /// The shipped Gar 9/2 transcription.
    pub fn gar92() -> Self {
        Self::from_json(GAR92_DATA).expect("shipped series data parses")
    }

    pub fn series(&self) -> [&TruncatedSeries; 4] {
        [&self.q1, &self.p1, &self.q2, &self.p2]
    }

    pub fn series_mut(&mut self, name: &str) -> Option<&mut TruncatedSeries> {
        match name {
            "q1" => Some(&mut self.q1),
            "p1" => Some(&mut self.p1),
            "q2" => Some(&mut self.q2),
            "p2" => Some(&mut self.p2),
            _ => None,
        }
    }

    /// All four series with their O-terms dropped.
    pub fn as_printed(&self) -> Self {
        LaurentSolution {
            vars: Arc::clone(&self.vars),
            q1: self.q1.as_exact(),
            p1: self.p1.as_exact(),
            q2: self.q2.as_exact(),
            p2: self.p2.as_exact(),
        }
    }
}

/// How truncation is handled when composing a Hamiltonian with series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubstitutionMode {
    /// Track O-terms; only provably correct coefficients are reported.
    Certified,
    /// Read each series as the exact sum of its printed terms.
    AsPrinted,
}

/// Composes `h` (in `q1, p1, q2, p2` and parameters shared with the
/// solution) with the series.
pub fn substitute_hamiltonian(
    h: &MultiPoly,
    sol: &LaurentSolution,
    mode: SubstitutionMode,
) -> Result<TruncatedSeries> {
    let sol = match mode {
        SubstitutionMode::Certified => sol.clone(),
        SubstitutionMode::AsPrinted => sol.as_printed(),
    };
    let images: Vec<TruncatedSeries> = h
        .vars()
        .iter()
        .map(|v| match PHASE_VARIABLES.iter().position(|p| p == v) {
            Some(i) => Ok(sol.series()[i].clone()),
            None => Ok(TruncatedSeries::constant(
                MultiPoly::var(&sol.vars, v).map_err(|_| Error::UnknownVariable(v.clone()))?,
            )),
        })
        .collect::<Result<_>>()?;
    let mut powers: Vec<Vec<TruncatedSeries>> = images
        .iter()
        .map(|s| {
            vec![
                TruncatedSeries::constant(MultiPoly::one(&sol.vars)),
                s.clone(),
            ]
        })
        .collect();
    let mut acc = TruncatedSeries::constant(MultiPoly::zero(&sol.vars));
    for (e, c) in h.terms() {
        let mut term = TruncatedSeries::constant(MultiPoly::constant(&sol.vars, c.clone()));
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                let next = powers[i].last().expect("nonempty").try_mul(&images[i])?;
                powers[i].push(next);
            }
            term = term.try_mul(&powers[i][k as usize])?;
        }
        acc = acc.try_add(&term)?;
    }
    if let Some(n) = acc.order() {
        if n <= 0 {
            return Err(Error::InsufficientTruncation { order: n });
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualCoefficient {
    pub exponent: i32,
    pub value: String,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowResidual {
    /// `dq_i/dt - ∂H/∂p_i` is labelled `q_i`, `dp_i/dt + ∂H/∂q_i` is `p_i`.
    pub variable: String,
    /// Truncation order of the residual: coefficients below it were
    /// checked; the rest are unchecked.
    pub checked_below: Option<i32>,
    pub coefficients: Vec<ResidualCoefficient>,
}

impl FlowResidual {
    pub fn vanishes(&self) -> bool {
        self.coefficients.iter().all(|c| c.vanishes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowReport {
    pub residuals: Vec<FlowResidual>,
    pub all_vanish: bool,
}

/// Residuals of Hamilton's equations along the series, to the order each
/// can be certified.
pub fn verify_hamilton_flow(h: &MultiPoly, sol: &LaurentSolution) -> Result<FlowReport> {
    let partial = |name: &str| -> Result<MultiPoly> {
        match h.var_index(name) {
            Ok(_) => h.derivative(name),
            Err(_) => Ok(MultiPoly::zero(h.vars())),
        }
    };
    let mut residuals = Vec::new();
    for (idx, (q, p)) in [("q1", "p1"), ("q2", "p2")].into_iter().enumerate() {
        let (qs, ps) = if idx == 0 {
            (&sol.q1, &sol.p1)
        } else {
            (&sol.q2, &sol.p2)
        };
        let dh_dp = substitute_flow_term(&partial(p)?, sol)?;
        let dh_dq = substitute_flow_term(&partial(q)?, sol)?;
        let rq = qs.differentiate()?.try_sub(&dh_dp)?;
        let rp = ps.differentiate()?.try_add(&dh_dq)?;
        residuals.push(residual_record(q, &rq));
        residuals.push(residual_record(p, &rp));
    }
    let all_vanish = residuals.iter().all(FlowResidual::vanishes);
    Ok(FlowReport {
        residuals,
        all_vanish,
    })
}

fn substitute_flow_term(h: &MultiPoly, sol: &LaurentSolution) -> Result<TruncatedSeries> {
    match substitute_hamiltonian(h, sol, SubstitutionMode::Certified) {
        Err(Error::InsufficientTruncation { .. }) => {
            // residuals need no constant term; redo without that check
            substitute_unchecked(h, sol)
        }
        r => r,
    }
}

fn substitute_unchecked(h: &MultiPoly, sol: &LaurentSolution) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::constant(MultiPoly::zero(&sol.vars));
    for (e, c) in h.terms() {
        let mono = MultiPoly::monomial(h.vars(), e.clone(), c.clone());
        let s = substitute_monomial(&mono, sol)?;
        acc = acc.try_add(&s)?;
    }
    Ok(acc)
}

fn substitute_monomial(m: &MultiPoly, sol: &LaurentSolution) -> Result<TruncatedSeries> {
    let (e, c) = m.terms().next().expect("one term");
    let mut term = TruncatedSeries::constant(MultiPoly::constant(&sol.vars, c.clone()));
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let v = &m.vars()[i];
        let base = match PHASE_VARIABLES.iter().position(|p| p == v) {
            Some(j) => sol.series()[j].clone(),
            None => TruncatedSeries::constant(
                MultiPoly::var(&sol.vars, v).map_err(|_| Error::UnknownVariable(v.clone()))?,
            ),
        };
        term = term.try_mul(&base.pow(k)?)?;
    }
    Ok(term)
}

fn residual_record(name: &str, r: &TruncatedSeries) -> FlowResidual {
    let coefficients = r
        .known_exponents()
        .filter_map(|k| {
            let c = r.coeff(k)?;
            Some(ResidualCoefficient {
                exponent: k,
                vanishes: c.is_zero(),
                value: c.to_string(),
            })
        })
        .collect();
    FlowResidual {
        variable: name.to_string(),
        checked_below: r.order(),
        coefficients,
    }
}

/// Phase-space symbol table `(q1, p1, q2, p2, s1, s2)`.
pub fn phase_symbols() -> Arc<Vec<String>> {
    crate::algebra::multipoly::symbols(&["q1", "p1", "q2", "p2", "s1", "s2"])
}

pub const GAR92_H1: &str = "p1*q2^2 - p1*s1 + p2*s2 + p1^4 + 3*p2*p1^2 + p2^2 - 2*q1*q2";
pub const GAR92_H2: &str = "p1^2*q2^2 - 2*p1*q1*q2 + p2*q2^2 + p1^3*s2 + p1*s2^2 + p2*p1*s2 \
                            + p2*s1 - p2*p1^3 - 2*p2^2*p1 - q2^2*s2 + q1^2";

/// The two Gar 9/2 Hamiltonians over [`phase_symbols`].
pub fn gar92_hamiltonians() -> (MultiPoly, MultiPoly) {
    let vars = phase_symbols();
    (
        parse_poly(GAR92_H1, &vars).expect("H1 parses"),
        parse_poly(GAR92_H2, &vars).expect("H2 parses"),
    )
}
