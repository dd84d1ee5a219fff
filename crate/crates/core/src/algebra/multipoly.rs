//! Sparse multivariate polynomials over Q.
//!
//! A polynomial owns a shared, ordered symbol table and a map from exponent
//! vectors (one entry per symbol) to nonzero rational coefficients. Zero
//! coefficients are never stored. Constants are compatible with any symbol
//! table: arithmetic promotes them, while two non-constant operands must
//! already share the same table (see [`MultiPoly::align`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::unipoly::UniPoly;
use super::{IntegralDomain, QAlgebra, Ring};
use crate::error::{Error, Result};
use crate::Rational;

pub type Monomial = Vec<u32>;

#[derive(Clone)]
pub struct MultiPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// `a op b` over a shared symbol table.
pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    match op {
        PolyOp::Add => a.try_add(b),
        PolyOp::Sub => a.try_sub(b),
        PolyOp::Mul => a.try_mul(b),
    }
}

pub fn symbols(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

impl MultiPoly {
    pub fn zero(vars: &Arc<Vec<String>>) -> Self {
        MultiPoly {
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<Vec<String>>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !Zero::is_zero(&c) {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<Vec<String>>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &Arc<Vec<String>>, name: &str) -> Result<Self> {
        let idx = index_of(vars, name)?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Ok(Self::monomial(vars, e, Rational::one()))
    }

    pub fn monomial(vars: &Arc<Vec<String>>, exps: Monomial, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !Zero::is_zero(&c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(
        vars: &Arc<Vec<String>>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        index_of(&self.vars, name)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.nvars()])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Variables that occur with a positive exponent somewhere.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        if Zero::is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if Zero::is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Re-expresses `self` over `vars`, which must contain every variable
    /// that `self` actually uses.
    pub fn align(&self, vars: &Arc<Vec<String>>) -> Result<MultiPoly> {
        if Arc::ptr_eq(&self.vars, vars) || self.vars == *vars {
            return Ok(MultiPoly {
                vars: Arc::clone(vars),
                terms: self.terms.clone(),
            });
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.iter().enumerate() {
            let target = vars.iter().position(|v| v == name);
            if target.is_none() && self.terms.keys().any(|e| e[i] > 0) {
                return Err(Error::UnknownVariable(name.clone()));
            }
            map.push(target);
        }
        let mut out = MultiPoly::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] += k;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    fn common_vars(&self, other: &MultiPoly) -> Result<Arc<Vec<String>>> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars || other.is_constant() {
            Ok(Arc::clone(&self.vars))
        } else if self.is_constant() {
            Ok(Arc::clone(&other.vars))
        } else {
            Err(Error::Alignment {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    fn pair(&self, other: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        let vars = self.common_vars(other)?;
        Ok((self.align(&vars)?, other.align(&vars)?))
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let (mut a, b) = self.pair(other)?;
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        Ok(a)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let (mut a, b) = self.pair(other)?;
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        Ok(a)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let (a, b) = self.pair(other)?;
        let mut out = MultiPoly::zero(&a.vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if Zero::is_zero(c) {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: Arc::clone(&self.vars),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        Ring::pow(self, e)
    }

    pub fn derivative(&self, name: &str) -> Result<MultiPoly> {
        let idx = self.var_index(name)?;
        Ok(self.derivative_idx(idx))
    }

    pub fn derivative_idx(&self, idx: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] > 0 {
                let mut ne = e.clone();
                ne[idx] -= 1;
                out.add_term(ne, c * Rational::from_integer(e[idx].into()));
            }
        }
        out
    }

    /// Evaluates with `values[i]` standing for variable `i`. The result is
    /// built in whatever Q-algebra the values live in.
    pub fn eval_with<R: QAlgebra>(&self, values: &[R]) -> R {
        assert_eq!(values.len(), self.nvars(), "one value per variable");
        let proto = values
            .first()
            .map(|v| v.zero_like())
            .expect("evaluation needs at least one variable value");
        let mut powers: Vec<Vec<R>> = values.iter().map(|v| vec![v.one_like()]).collect();
        let mut acc = proto;
        for (e, c) in &self.terms {
            let mut t = values[0].from_rational_like(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().clone() * values[i].clone();
                    powers[i].push(next);
                }
                t = t * powers[i][k as usize].clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Exact value at a rational point. Only variables that occur need to be
    /// assigned.
    pub fn eval_rational(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        if self.nvars() == 0 {
            return Ok(self.constant_term());
        }
        let used = self.used_vars();
        let values = self
            .vars
            .iter()
            .map(|v| match point.get(v) {
                Some(q) => Ok(q.clone()),
                None if used.contains(v) => Err(Error::MissingVariable(v.clone())),
                None => Ok(Rational::zero()),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval_with(&values))
    }

    /// Substitutes rationals for the variables named in `point`; the symbol
    /// table is unchanged.
    pub fn specialize(&self, point: &BTreeMap<String, Rational>) -> MultiPoly {
        let fixed: Vec<Option<&Rational>> = self.vars.iter().map(|v| point.get(v)).collect();
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut ne = e.clone();
            for (i, val) in fixed.iter().enumerate() {
                if let Some(v) = val {
                    if e[i] > 0 {
                        coeff *= num_traits::pow::pow((*v).clone(), e[i] as usize);
                        ne[i] = 0;
                    }
                }
            }
            out.add_term(ne, coeff);
        }
        out
    }

    /// Replaces variable `name` by `value` (which must align with `self`).
    pub fn substitute(&self, name: &str, value: &MultiPoly) -> Result<MultiPoly> {
        let idx = self.var_index(name)?;
        let value = value.align(&self.vars)?;
        let as_uni = self.to_univariate_idx(idx);
        let mut acc = MultiPoly::zero(&self.vars);
        for c in as_uni.coeffs().iter().rev() {
            acc = acc.try_mul(&value)?.try_add(c)?;
        }
        Ok(acc)
    }

    /// Maps every variable of `self` to a polynomial over `target`.
    pub fn compose(&self, images: &[MultiPoly], target: &Arc<Vec<String>>) -> Result<MultiPoly> {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let images = images
            .iter()
            .map(|p| p.align(target))
            .collect::<Result<Vec<_>>>()?;
        if images.is_empty() {
            return Ok(MultiPoly::constant(target, self.constant_term()));
        }
        Ok(self.eval_with(&images))
    }

    pub fn to_univariate(&self, name: &str) -> Result<UniPoly<MultiPoly>> {
        Ok(self.to_univariate_idx(self.var_index(name)?))
    }

    /// Collects coefficients of powers of variable `idx`. The coefficients
    /// keep the full symbol table, with exponent zero in `idx`.
    pub fn to_univariate_idx(&self, idx: usize) -> UniPoly<MultiPoly> {
        let deg = self.degree_in(idx) as usize;
        let mut coeffs = vec![MultiPoly::zero(&self.vars); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[idx] as usize;
            ne[idx] = 0;
            coeffs[k].add_term(ne, c.clone());
        }
        UniPoly::new(coeffs, MultiPoly::zero(&self.vars))
    }

    pub fn from_univariate(u: &UniPoly<MultiPoly>, name: &str) -> Result<MultiPoly> {
        let vars = Arc::clone(u.zero().vars());
        let x = MultiPoly::var(&vars, name)?;
        let mut acc = MultiPoly::zero(&vars);
        for c in u.coeffs().iter().rev() {
            acc = acc.try_mul(&x)?.try_add(&c.align(&vars)?)?;
        }
        Ok(acc)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn try_div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (mut r, d) = self.pair(divisor).ok()?;
        let (lead_e, lead_c) = d.terms.iter().next_back()?;
        let (lead_e, lead_c) = (lead_e.clone(), lead_c.clone());
        let mut q = MultiPoly::zero(&r.vars);
        while let Some((re, rc)) = r.terms.iter().next_back() {
            if re.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let e: Monomial = re.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let c = rc / &lead_c;
            let t = MultiPoly::monomial(&r.vars, e, c);
            r = r.try_sub(&t.try_mul(&d).ok()?).ok()?;
            q = q.try_add(&t).ok()?;
        }
        Some(q)
    }
}

fn index_of(vars: &[String], name: &str) -> Result<usize> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let mut names: Vec<String> = self.vars.to_vec();
        for v in other.vars.iter() {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
        let vars = Arc::new(names);
        match (self.align(&vars), other.align(&vars)) {
            (Ok(a), Ok(b)) => a.terms == b.terms,
            _ => false,
        }
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl fmt::Display for MultiPoly {
    /// Highest monomials first; coefficients as exact rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (e, c) in ordered {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if One::is_one(&abs) {
                write!(f, "{}", mono.join("*"))?;
            } else if abs.is_integer() {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            } else {
                write!(f, "({})*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$try(&rhs).expect("misaligned MultiPoly operands")
            }
        }
        impl<'a> $trait<&'a MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                self.$try(rhs).expect("misaligned MultiPoly operands")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(&self.vars)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_int_like(&self, n: i64) -> Self {
        MultiPoly::constant(&self.vars, Rational::from_integer(n.into()))
    }
}

impl IntegralDomain for MultiPoly {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.try_div_exact(divisor)
    }
}

impl QAlgebra for MultiPoly {
    fn scale(&self, c: &Rational) -> Self {
        MultiPoly::scale(self, c)
    }
}
