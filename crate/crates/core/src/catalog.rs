//! Spectral-curve families, the Gar 9/2 Lax matrix, and the reduction of the
//! matrix Painlevé quartics to hyperelliptic form.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::expr::parse_poly;
use crate::algebra::multipoly::symbols;
use crate::algebra::rational::parse_rational;
use crate::algebra::Ring;
use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::{MultiPoly, ParamPoly, Rational, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Gar92,
    Gar52_32,
    MatI,
    MatIII,
    Kfs,
    /// Registered, but its curve must come from a family file.
    Kss,
    User,
}

impl FamilyId {
    pub const BUILT_IN: [FamilyId; 5] = [
        FamilyId::Gar92,
        FamilyId::Gar52_32,
        FamilyId::MatI,
        FamilyId::MatIII,
        FamilyId::Kfs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Gar92 => "Gar9/2",
            FamilyId::Gar52_32 => "Gar5/2+3/2",
            FamilyId::MatI => "MatI",
            FamilyId::MatIII => "MatIII(D8)",
            FamilyId::Kfs => "KFS4/3+4/3",
            FamilyId::Kss => "KSs3/2+5/4",
            FamilyId::User => "user",
        }
    }

    /// Specialization point and prime pair used for the two-prime runs.
    pub fn registered_run(self) -> Option<(&'static str, u64, u64)> {
        match self {
            FamilyId::Kfs => Some(("h1=12,h2=17,s=29", 37, 53)),
            FamilyId::Kss => Some(("h1=12,h2=17,s=29", 37, 31)),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    /// Case-insensitive; punctuation is ignored, so `gar92`, `Gar9/2` and
    /// `GAR 9/2` all name the same family.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(char::is_ascii_alphanumeric)
            .map(|c| c.to_ascii_lowercase())
            .collect();
        Ok(match key.as_str() {
            "gar92" => FamilyId::Gar92,
            "gar5232" => FamilyId::Gar52_32,
            "mati" => FamilyId::MatI,
            "matiii" | "matiiid8" => FamilyId::MatIII,
            "kfs" | "kfs4343" => FamilyId::Kfs,
            "kss" | "kss3254" => FamilyId::Kss,
            "user" => FamilyId::User,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        })
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `y^2 = f(x)` with coefficients polynomial in named parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveFamily {
    id: FamilyId,
    params: Arc<Vec<String>>,
    f: ParamPoly,
    riemann_scheme: Option<String>,
    source: String,
}

impl CurveFamily {
    /// `coeffs` are ascending in `x` and must only use `params`.
    pub fn new(id: FamilyId, params: Arc<Vec<String>>, coeffs: Vec<MultiPoly>) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|c| c.align(&params))
            .collect::<Result<Vec<_>>>()?;
        let f = UniPoly::new(coeffs, MultiPoly::zero(&params));
        match f.degree() {
            Some(5) | Some(6) => {}
            d => {
                return Err(Error::Invalid(format!(
                    "family degree must be 5 or 6, got {}",
                    d.map_or("none".into(), |d| d.to_string())
                )))
            }
        }
        Ok(CurveFamily {
            id,
            params,
            f,
            riemann_scheme: None,
            source: String::new(),
        })
    }

    pub fn from_exprs(id: FamilyId, params: &[&str], coeffs: &[&str]) -> Result<Self> {
        let vars = symbols(params);
        let coeffs = coeffs
            .iter()
            .map(|e| parse_poly(e, &vars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(id, vars, coeffs)
    }

    pub fn with_metadata(mut self, riemann_scheme: Option<&str>, source: &str) -> Self {
        self.riemann_scheme = riemann_scheme.map(str::to_string);
        self.source = source.to_string();
        self
    }

    pub fn id(&self) -> FamilyId {
        self.id
    }

    pub fn params(&self) -> &Arc<Vec<String>> {
        &self.params
    }

    pub fn f(&self) -> &ParamPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().expect("nonzero by construction")
    }

    pub fn riemann_scheme(&self) -> Option<&str> {
        self.riemann_scheme.as_deref()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// `f` as one polynomial over `x` followed by the parameters.
    pub fn f_expanded(&self) -> MultiPoly {
        let mut names = vec!["x".to_string()];
        names.extend(self.params.iter().cloned());
        let vars = Arc::new(names);
        let u = self.f.map(MultiPoly::zero(&vars), |c| {
            c.align(&vars).expect("parameters are a subset")
        });
        MultiPoly::from_univariate(&u, "x").expect("x is present")
    }

    /// Exact substitution of rationals for every parameter.
    pub fn specialize(
        &self,
        point: &BTreeMap<String, Rational>,
    ) -> Result<HyperellipticCurve<Rational>> {
        for p in self.params.iter() {
            if !point.contains_key(p) {
                return Err(Error::MissingVariable(p.clone()));
            }
        }
        if let Some(k) = point.keys().find(|k| !self.params.contains(k)) {
            return Err(Error::UnknownVariable(k.clone()));
        }
        let coeffs = self
            .f
            .coeffs()
            .iter()
            .map(|c| c.eval_rational(point))
            .collect::<Result<Vec<_>>>()?;
        let g = UniPoly::new(coeffs, Rational::zero_like(&Rational::default()));
        if g.degree() != Some(self.degree()) {
            return Err(Error::Degenerate(format!(
                "leading coefficient of {} vanishes at {}",
                self.id,
                format_point(point)
            )));
        }
        HyperellipticCurve::new(g)
    }

    /// Substitutes polynomials over `target` for parameters; parameters not
    /// in `images` map to the same-named variable of `target`.
    pub fn specialize_symbolic(
        &self,
        images: &BTreeMap<String, MultiPoly>,
        target: &Arc<Vec<String>>,
    ) -> Result<CurveFamily> {
        let imgs = self
            .params
            .iter()
            .map(|p| match images.get(p) {
                Some(m) => m.align(target),
                None => MultiPoly::var(target, p),
            })
            .collect::<Result<Vec<_>>>()?;
        let coeffs = self
            .f
            .coeffs()
            .iter()
            .map(|c| c.compose(&imgs, target))
            .collect::<Result<Vec<_>>>()?;
        let mut out = CurveFamily::new(self.id, Arc::clone(target), coeffs)?;
        out.riemann_scheme = self.riemann_scheme.clone();
        out.source = self.source.clone();
        Ok(out)
    }

    pub fn to_file(&self) -> FamilyFile {
        FamilyFile {
            variables: self.params.to_vec(),
            f_coefficients: self.f.coeffs().iter().map(|c| c.to_string()).collect(),
            degree: self.degree(),
        }
    }

    pub fn from_file(id: FamilyId, file: &FamilyFile) -> Result<Self> {
        if !matches!(file.degree, 5 | 6) {
            return Err(Error::Invalid(format!(
                "degree must be 5 or 6, got {}",
                file.degree
            )));
        }
        if file.f_coefficients.len() != file.degree + 1 {
            return Err(Error::Invalid(format!(
                "expected {} coefficients for degree {}, got {}",
                file.degree + 1,
                file.degree,
                file.f_coefficients.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &file.variables {
            if v == "x" || v == "y" || !seen.insert(v) {
                return Err(Error::Invalid(format!("bad parameter name `{v}`")));
            }
        }
        let vars = Arc::new(file.variables.clone());
        let coeffs = file
            .f_coefficients
            .iter()
            .map(|e| parse_poly(e, &vars))
            .collect::<Result<Vec<_>>>()?;
        let fam = Self::new(id, vars, coeffs)?;
        if fam.degree() != file.degree {
            return Err(Error::Invalid("leading coefficient is zero".into()));
        }
        Ok(fam.with_metadata(None, "family file"))
    }

    pub fn from_json(id: FamilyId, src: &str) -> Result<Self> {
        let file: FamilyFile =
            serde_json::from_str(src).map_err(|e| Error::Invalid(format!("family file: {e}")))?;
        Self::from_file(id, &file)
    }

    pub fn from_path(id: FamilyId, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        Self::from_json(id, &src)
    }
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.f_expanded())
    }
}

/// On-disk family format. Coefficients are ascending in `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub variables: Vec<String>,
    pub f_coefficients: Vec<String>,
    pub degree: usize,
}

pub fn specialize(
    family: &CurveFamily,
    point: &BTreeMap<String, Rational>,
) -> Result<HyperellipticCurve<Rational>> {
    family.specialize(point)
}

/// Parses `h1=12,h2=17,s=29`.
pub fn parse_point(src: &str) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected name=value, got `{part}`")))?;
        let k = k.trim().to_string();
        if out.insert(k.clone(), parse_rational(v.trim())?).is_some() {
            return Err(Error::Invalid(format!("`{k}` assigned twice")));
        }
    }
    Ok(out)
}

pub fn format_point(point: &BTreeMap<String, Rational>) -> String {
    point
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

const GAR92_SCHEME: &str = "x=inf (1/2): [1, 0, 0, 0, 3/2 s1, 0, -s2/2, 0], \
                            [-1, 0, 0, 0, -3/2 s1, 0, s2/2, 0]";
const GAR52_32_SCHEME: &str = "x=0 (1/2): [sqrt(s2), 0], [-sqrt(s2), 0]; \
                               x=inf (1/2): [1, 0, -s1/2, 0], [-1, 0, s1/2, 0]";
const MATI_SCHEME: &str = "x=inf (1/2): [1, 0, 0, 0, s/2, theta2/2], [1, 0, 0, 0, s/2, theta3/2], \
                           [-1, 0, 0, 0, s/2, theta2/2], [-1, 0, 0, 0, s/2, theta3/2]; \
                           theta2 + theta3 = 0";
const MATIII_SCHEME: &str = "x=0 (1/2): [sqrt(t), 0], [sqrt(t), 0], [-sqrt(t), 0], [-sqrt(t), 0]; \
                             x=inf (1/2): [1, theta2/2], [1, theta3/2], [-1, theta2/2], [-1, theta3/2]; \
                             theta2 + theta3 = 0";

/// The built-in families. `theta` stands for the formal monodromy exponent
/// `θ₂^∞` of the matrix systems.
pub fn catalog_get(id: FamilyId) -> Result<CurveFamily> {
    let fam = match id {
        FamilyId::Gar92 => CurveFamily::from_exprs(
            id,
            &["h1", "h2", "s1", "s2"],
            &["h2 - s1*s2", "2*s2^2 - h1", "-s1", "3*s2", "0", "1"],
        )?
        .with_metadata(Some(GAR92_SCHEME), "quintic model of det(y I - A(x)) = 0"),
        FamilyId::Gar52_32 => CurveFamily::from_exprs(
            id,
            &["h1", "h2", "s1", "s2"],
            &["0", "s2", "h2", "h1", "-s1", "1"],
        )?
        .with_metadata(Some(GAR52_32_SCHEME), "quintic spectral curve"),
        FamilyId::MatI => CurveFamily::from_exprs(
            id,
            &["h1", "h2", "s", "theta"],
            &[
                "h2^3 + h2*theta^4*s",
                "-h1*theta^4*s - theta^6 - 3*h1*h2^2",
                "3*(h1^2 + h2)*h2 + theta^4*s",
                "-h1^3 - 6*h1*h2",
                "3*(h1^2 + h2)",
                "-3*h1",
                "1",
            ],
        )?
        .with_metadata(
            Some(MATI_SCHEME),
            "printed Weierstrass form of the quartic spectral curve",
        ),
        FamilyId::MatIII => quadratic_resolvent_curve(&mat_iii_quartic())?.with_metadata(
            Some(MATIII_SCHEME),
            "Weierstrass model derived from the quartic with u = y^2 + x y",
        ),
        FamilyId::Kfs => CurveFamily::from_exprs(
            id,
            &["h1", "h2", "s"],
            &[
                "h2^2 - 4*s",
                "2*h1*h2",
                "h1^2 - 2*h2",
                "2*(h2 - h1)",
                "2*h1 + 1",
                "-2",
                "1",
            ],
        )?
        .with_metadata(None, "sextic spectral curve"),
        FamilyId::Kss | FamilyId::User => {
            return Err(Error::NotSupplied(format!(
                "{id} has no built-in curve; load it from a family file"
            )))
        }
    };
    Ok(fam)
}

/// Variables of the Gar 9/2 Lax matrix.
pub fn lax_symbols() -> Arc<Vec<String>> {
    symbols(&["x", "q1", "p1", "q2", "p2", "s1", "s2"])
}

/// A 2×2 matrix with polynomial entries in `x` and phase variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LaxMatrix {
    vars: Arc<Vec<String>>,
    entries: [[MultiPoly; 2]; 2],
}

impl LaxMatrix {
    pub fn new(entries: [[MultiPoly; 2]; 2]) -> Result<Self> {
        let vars = Arc::clone(entries[0][0].vars());
        if !vars.iter().any(|v| v == "x") {
            return Err(Error::MissingVariable("x".into()));
        }
        let entries = [
            [entries[0][0].align(&vars)?, entries[0][1].align(&vars)?],
            [entries[1][0].align(&vars)?, entries[1][1].align(&vars)?],
        ];
        Ok(LaxMatrix { vars, entries })
    }

    pub fn zero(vars: &Arc<Vec<String>>) -> Result<Self> {
        let z = MultiPoly::zero(vars);
        Self::new([[z.clone(), z.clone()], [z.clone(), z]])
    }

    /// `Σ mats[k] x^(n-k)` for `n = mats.len() - 1`, entries given as
    /// expressions over `vars`.
    pub fn from_coefficients(vars: &Arc<Vec<String>>, mats: &[[[&str; 2]; 2]]) -> Result<Self> {
        let x = MultiPoly::var(vars, "x")?;
        let mut acc = [
            [MultiPoly::zero(vars), MultiPoly::zero(vars)],
            [MultiPoly::zero(vars), MultiPoly::zero(vars)],
        ];
        for m in mats {
            for i in 0..2 {
                for j in 0..2 {
                    acc[i][j] = &(&acc[i][j] * &x) + &parse_poly(m[i][j], vars)?;
                }
            }
        }
        Self::new(acc)
    }

    /// `A(x) = A0 x^3 + A1 x^2 + A2 x + A3` exactly as printed.
    pub fn gar92() -> Self {
        Self::from_coefficients(
            &lax_symbols(),
            &[
                [["0", "1"], ["0", "0"]],
                [["0", "p1"], ["1", "0"]],
                [["q2", "p1^2 + p2 + 2*s1"], ["-p1", "-q2"]],
                [
                    ["q1 - p1*q2", "p1^3 + 2*p1*p2 - q2^2 + s1*p1 - s2"],
                    ["-p2 + s1", "-q1 + p1*q2"],
                ],
            ],
        )
        .expect("static matrix")
    }

    /// The printed matrix with `s1` and `s2` exchanged, which is the
    /// labelling used by the Hamiltonians and the quintic.
    pub fn gar92_hamiltonian_labels() -> Self {
        Self::gar92()
            .swap_symbols("s1", "s2")
            .expect("both present")
    }

    pub fn swap_symbols(&self, a: &str, b: &str) -> Result<Self> {
        let ia = self.vars.iter().position(|v| v == a);
        let ib = self.vars.iter().position(|v| v == b);
        let (Some(ia), Some(ib)) = (ia, ib) else {
            return Err(Error::UnknownVariable(format!("{a}/{b}")));
        };
        let images: Vec<MultiPoly> = (0..self.vars.len())
            .map(|i| {
                let j = if i == ia {
                    ib
                } else if i == ib {
                    ia
                } else {
                    i
                };
                MultiPoly::var(&self.vars, &self.vars[j]).expect("own variable")
            })
            .collect();
        let map = |p: &MultiPoly| p.compose(&images, &self.vars);
        Self::new([
            [map(&self.entries[0][0])?, map(&self.entries[0][1])?],
            [map(&self.entries[1][0])?, map(&self.entries[1][1])?],
        ])
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }
}

/// A plane curve `E(x, y) = 0`, quadratic or quartic in `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneSpectralCurve {
    family: FamilyId,
    equation: MultiPoly,
    degree_in_y: u32,
    /// `a(x)` in `u = y^2 + a(x) y`.
    shift: MultiPoly,
}

impl PlaneSpectralCurve {
    /// The symbol table of `equation` must start with `x, y`.
    pub fn new(family: FamilyId, equation: MultiPoly, shift: MultiPoly) -> Result<Self> {
        let vars = Arc::clone(equation.vars());
        if vars.len() < 2 || vars[0] != "x" || vars[1] != "y" {
            return Err(Error::Invalid(format!(
                "plane curve variables must begin with x, y: {:?}",
                vars
            )));
        }
        let shift = shift.align(&vars)?;
        if shift.degree_in(1) > 0 {
            return Err(Error::Invalid("u-shift must not involve y".into()));
        }
        let degree_in_y = equation.degree_in(1);
        if !matches!(degree_in_y, 2 | 4) {
            return Err(Error::Invalid(format!(
                "degree in y must be 2 or 4, got {degree_in_y}"
            )));
        }
        Ok(PlaneSpectralCurve {
            family,
            equation,
            degree_in_y,
            shift,
        })
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn equation(&self) -> &MultiPoly {
        &self.equation
    }

    pub fn degree_in_y(&self) -> u32 {
        self.degree_in_y
    }

    pub fn shift(&self) -> &MultiPoly {
        &self.shift
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        self.equation.vars()
    }

    pub fn params(&self) -> Arc<Vec<String>> {
        Arc::new(self.vars()[2..].to_vec())
    }
}

impl fmt::Display for PlaneSpectralCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.equation)
    }
}

/// `det(y I - A(x))` over `x, y` and the remaining matrix variables.
pub fn lax_spectral_curve(l: &LaxMatrix) -> PlaneSpectralCurve {
    let mut names = vec!["x".to_string(), "y".to_string()];
    names.extend(l.vars.iter().filter(|v| *v != "x" && *v != "y").cloned());
    let vars = Arc::new(names);
    let y = MultiPoly::var(&vars, "y").expect("y present");
    let e = |i: usize, j: usize| l.entries[i][j].align(&vars).expect("subset");
    let det = &(&(&y - &e(0, 0)) * &(&y - &e(1, 1))) - &(&e(0, 1) * &e(1, 0));
    PlaneSpectralCurve::new(FamilyId::User, det, MultiPoly::zero(&vars))
        .expect("monic quadratic in y")
}

fn quartic_vars() -> Arc<Vec<String>> {
    symbols(&["x", "y", "h1", "h2", "s", "theta"])
}

/// The Mat I quartic spectral curve, with `u = y^2`.
pub fn mat_i_quartic() -> PlaneSpectralCurve {
    let vars = quartic_vars();
    let eq = parse_poly(
        "y^4 - (2*x^3 + 2*s*x + h1)*y^2 + x^6 + 2*s*x^4 + h1*x^3 + s^2*x^2 \
         + (h1*s - theta^2)*x + h2",
        &vars,
    )
    .expect("static equation");
    PlaneSpectralCurve::new(FamilyId::MatI, eq, MultiPoly::zero(&vars)).expect("quartic")
}

/// The Mat III(D8) quartic spectral curve, with `u = y^2 + x y`.
pub fn mat_iii_quartic() -> PlaneSpectralCurve {
    let vars = quartic_vars();
    let eq = parse_poly(
        "y^4 + 2*x*y^3 - (-2*x^3 + (h1 + theta^2)*x^2 + 2*s*x)*y*(x + y) + x^2*y^2 \
         + x^6 + h1*x^5 + h2*x^4 + h1*s*x^3 + theta^2*s*x^3 + s^2*x^2",
        &vars,
    )
    .expect("static equation");
    let shift = MultiPoly::var(&vars, "x").expect("x");
    PlaneSpectralCurve::new(FamilyId::MatIII, eq, shift).expect("quartic")
}

/// Writes a quartic as `u^2 - q u + c` with `u = y^2 + a(x) y`; returns
/// `(q, c)`, both free of `y`.
pub fn quadratic_in_u(curve: &PlaneSpectralCurve) -> Result<(MultiPoly, MultiPoly)> {
    if curve.degree_in_y != 4 {
        return Err(Error::Structure("curve is not quartic in y".into()));
    }
    let vars = curve.vars();
    let y = MultiPoly::var(vars, "y")?;
    let u = &(&y * &y) + &(&curve.shift * &y);
    let rest = &curve.equation - &(&u * &u);
    let by_y = rest.to_univariate_idx(1);
    if by_y.degree().unwrap_or(0) > 2 {
        return Err(Error::Structure("leading part is not u^2".into()));
    }
    let q = -&by_y.coeff(2);
    let c = &rest + &(&q * &u);
    if c.degree_in(1) > 0 {
        return Err(Error::Structure(format!(
            "equation is not a quadratic in u = y^2 + ({}) y",
            curve.shift
        )));
    }
    Ok((q, c))
}

/// `q^2 - 4c` for the quadratic in `u`.
pub fn resolvent_discriminant(curve: &PlaneSpectralCurve) -> Result<MultiPoly> {
    let (q, c) = quadratic_in_u(curve)?;
    Ok(&(&q * &q) - &c.scale(&Rational::from_integer(4.into())))
}

/// Hyperelliptic model of a quartic spectral curve `u^2 - q u + c = 0`.
///
/// With `D = q^2 - 4c = x^(2k) L(x)` and `L = l0 + l1 x`, the curve is
/// birational to `v^2 = L(x)`, `W^2 = a^2 + 2q + 2 x^k v` (`W = 2y + a`).
/// Eliminating `x = (v^2 - l0)/l1` and clearing an even power of `l1`
/// gives `W'^2 = F(v)`, returned as a family in `x := v`.
pub fn quadratic_resolvent_curve(curve: &PlaneSpectralCurve) -> Result<CurveFamily> {
    let (q, c) = quadratic_in_u(curve)?;
    let four = Rational::from_integer(4.into());
    let two = Rational::from_integer(2.into());
    let d = &(&q * &q) - &c.scale(&four);
    let params = curve.params();
    let down = |m: &MultiPoly| m.align(&params);

    let du = d.to_univariate_idx(0);
    let Some(top) = du.degree() else {
        return Err(Error::Structure("q^2 - 4c vanishes identically".into()));
    };
    let low = (0..=top)
        .find(|&i| !du.coeff(i).is_zero())
        .expect("nonzero");
    if top != low + 1 || low % 2 != 0 {
        return Err(Error::Structure(format!(
            "q^2 - 4c = {d} is not x^(2k) times a linear polynomial"
        )));
    }
    let k = low / 2;
    let l0 = down(&du.coeff(low))?;
    let l1 = down(&du.coeff(top))?;

    let a = &curve.shift;
    let g0 = &(a * a) + &q.scale(&two);
    let g0u = g0
        .to_univariate_idx(0)
        .try_map(MultiPoly::zero(&params), down)?;
    let m = g0u.degree().unwrap_or(0).max(k);
    let total = m + m % 2;

    let zero = MultiPoly::zero(&params);
    let one = MultiPoly::one(&params);
    let num = UniPoly::new(vec![-&l0, zero.clone(), one.clone()], zero.clone());
    let v = UniPoly::x(zero.clone());
    let part1 = g0u.compose_fraction(&num, &l1, total);
    let mut part2 = v.scale(&l1.pow((total - k) as u32).scale(&two));
    for _ in 0..k {
        part2 = part2 * num.clone();
    }
    let f = part1 + part2;
    CurveFamily::new(curve.family, params, f.into_coeffs())
}

/// Hyperelliptic model of the Mat I quartic, computed rather than printed.
pub fn mat_i_resolvent() -> Result<CurveFamily> {
    Ok(quadratic_resolvent_curve(&mat_i_quartic())?.with_metadata(
        Some(MATI_SCHEME),
        "Weierstrass model derived from the quartic with u = y^2",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn point(s: &str) -> BTreeMap<String, Rational> {
        parse_point(s).unwrap()
    }

    #[test]
    fn family_names_parse() {
        for id in FamilyId::BUILT_IN {
            assert_eq!(id.name().parse::<FamilyId>().unwrap(), id);
        }
        assert_eq!("gar92".parse::<FamilyId>().unwrap(), FamilyId::Gar92);
        assert_eq!("KFS".parse::<FamilyId>().unwrap(), FamilyId::Kfs);
        assert!(matches!(
            "Gar7".parse::<FamilyId>(),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn gar92_matches_display() {
        let fam = catalog_get(FamilyId::Gar92).unwrap();
        let vars = symbols(&["x", "h1", "h2", "s1", "s2"]);
        let want = parse_poly(
            "x^5 + 3*s2*x^3 - s1*x^2 + (2*s2^2 - h1)*x + h2 - s1*s2",
            &vars,
        )
        .unwrap();
        assert_eq!(fam.f_expanded(), want);
    }

    #[test]
    fn kfs_specialization() {
        let fam = catalog_get(FamilyId::Kfs).unwrap();
        let c = fam.specialize(&point("h1=12,h2=17,s=29")).unwrap();
        let want: Vec<Rational> = [173, 408, 110, 10, 25, -2, 1]
            .iter()
            .map(|&v| int(v))
            .collect();
        assert_eq!(c.f().coeffs(), &want[..]);
        let c37 = c.reduce_mod_p(37).unwrap();
        assert_eq!(c37.coefficient_values(), vec![25, 1, 36, 10, 25, 35, 1]);
        let c53 = c.reduce_mod_p(53).unwrap();
        assert_eq!(c53.coefficient_values(), vec![14, 37, 4, 10, 25, 51, 1]);
    }

    #[test]
    fn specialize_checks_point() {
        let fam = catalog_get(FamilyId::Kfs).unwrap();
        assert!(matches!(
            fam.specialize(&point("h1=1,h2=2")),
            Err(Error::MissingVariable(v)) if v == "s"
        ));
        assert!(matches!(
            fam.specialize(&point("h1=1,h2=2,s=3,t=4")),
            Err(Error::UnknownVariable(v)) if v == "t"
        ));
        let gar = catalog_get(FamilyId::Gar92).unwrap();
        assert!(matches!(
            gar.specialize(&point("h1=0,h2=0,s1=0,s2=0")),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn symbolic_identity_is_noop() {
        for id in FamilyId::BUILT_IN {
            let fam = catalog_get(id).unwrap();
            let same = fam
                .specialize_symbolic(&BTreeMap::new(), fam.params())
                .unwrap();
            assert_eq!(same, fam);
        }
    }

    #[test]
    fn family_file_roundtrip() {
        for id in FamilyId::BUILT_IN {
            let fam = catalog_get(id).unwrap();
            let json = serde_json::to_string(&fam.to_file()).unwrap();
            let back = CurveFamily::from_json(id, &json).unwrap();
            assert_eq!(back.f(), fam.f());
        }
        let bad = r#"{"variables":["a"],"f_coefficients":["1","a"],"degree":5}"#;
        assert!(matches!(
            CurveFamily::from_json(FamilyId::User, bad),
            Err(Error::Invalid(_))
        ));
        let unknown =
            r#"{"variables":["a"],"f_coefficients":["b","0","0","0","0","1"],"degree":5}"#;
        assert!(CurveFamily::from_json(FamilyId::User, unknown).is_err());
        assert!(matches!(
            catalog_get(FamilyId::Kss),
            Err(Error::NotSupplied(_))
        ));
    }

    #[test]
    fn trivial_lax_matrices() {
        let vars = lax_symbols();
        let y2 = |c: &PlaneSpectralCurve| {
            let y = MultiPoly::var(c.vars(), "y").unwrap();
            &y * &y
        };
        let z = lax_spectral_curve(&LaxMatrix::zero(&vars).unwrap());
        assert_eq!(z.equation(), &y2(&z));
        let zero = [["0", "0"], ["0", "0"]];
        let n = LaxMatrix::from_coefficients(&vars, &[[["0", "1"], ["0", "0"]], zero, zero, zero])
            .unwrap();
        let c = lax_spectral_curve(&n);
        assert_eq!(c.equation(), &y2(&c));
    }

    #[test]
    fn constant_quadratic_in_u() {
        let vars = symbols(&["x", "y", "b", "c"]);
        let eq = parse_poly("y^4 + b*y^2 + c", &vars).unwrap();
        let curve = PlaneSpectralCurve::new(FamilyId::User, eq, MultiPoly::zero(&vars)).unwrap();
        let d = resolvent_discriminant(&curve).unwrap();
        assert_eq!(d, parse_poly("b^2 - 4*c", &vars).unwrap());
        assert!(matches!(
            quadratic_resolvent_curve(&curve),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn mat_quartic_structure() {
        let vars = quartic_vars();
        let (q, c) = quadratic_in_u(&mat_iii_quartic()).unwrap();
        assert_eq!(
            q,
            parse_poly("-2*x^3 + (h1 + theta^2)*x^2 + 2*s*x", &vars).unwrap()
        );
        assert_eq!(
            c,
            parse_poly(
                "x^6 + h1*x^5 + h2*x^4 + (h1*s + theta^2*s)*x^3 + s^2*x^2",
                &vars
            )
            .unwrap()
        );
        let d = resolvent_discriminant(&mat_i_quartic()).unwrap();
        assert_eq!(d, parse_poly("4*theta^2*x + h1^2 - 4*h2", &vars).unwrap());
    }

    #[test]
    fn non_quadratic_in_u_is_rejected() {
        let vars = quartic_vars();
        let eq = parse_poly("y^4 + x*y^3 + x", &vars).unwrap();
        let curve = PlaneSpectralCurve::new(FamilyId::User, eq, MultiPoly::zero(&vars)).unwrap();
        assert!(matches!(quadratic_in_u(&curve), Err(Error::Structure(_))));
    }

    #[test]
    fn resolvents_are_sextics() {
        assert_eq!(mat_i_resolvent().unwrap().degree(), 6);
        assert_eq!(catalog_get(FamilyId::MatIII).unwrap().degree(), 6);
    }
}
