//! The two certificate routes: the two-prime endomorphism certificate and
//! the Gar 9/2 Painlevé-divisor identity.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::expr::parse_poly;
use crate::algebra::multipoly::symbols;
use crate::algebra::rational::{int, rat};
use crate::algebra::Ring;
use crate::catalog::{catalog_get, format_point, CurveFamily, FamilyId};
use crate::error::{Error, Result};
use crate::finite::count::point_counts;
use crate::finite::fp::check_prime;
use crate::finite::{weil_polynomial, PointCount, WeilPolynomial};
use crate::galois::{
    analyze_quartic, display_int_poly, quadratic_subfield, root_ratio_cyclotomic_test,
    tate_condition, GaloisGroup, Quartic, RootRatioVerdict, TateVerdict,
};
use crate::series::{
    gar92_hamiltonians, substitute_hamiltonian, verify_hamilton_flow, FlowReport, LaurentSolution,
    SubstitutionMode, TruncatedSeries,
};
use crate::{MultiPoly, Rational};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;
pub const DIVISOR_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    TrivialEnd,
    TrivialGeometricEnd,
    Inconclusive,
}

impl Verdict {
    pub fn is_trivial(self) -> bool {
        !matches!(self, Verdict::Inconclusive)
    }
}

/// Stage at which a per-prime run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Reduction,
    PointCount,
    WeilPolynomial,
    Subfield,
    RootRatio,
}

/// Everything computed for one prime; fields stay `None` past a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub p: u64,
    /// Residues mod `p`, constant term first.
    pub curve: Option<Vec<u64>>,
    pub counts: Option<PointCount>,
    pub weil: Option<WeilPolynomial>,
    pub frobenius_polynomial: Option<String>,
    pub irreducible: Option<bool>,
    pub galois_group: Option<GaloisGroup>,
    #[serde(with = "crate::serde_int::opt")]
    pub subfield_discriminant: Option<BigInt>,
    pub tate: Option<TateVerdict>,
    pub root_ratio: Option<RootRatioVerdict>,
    pub failed_stage: Option<Stage>,
    pub error: Option<String>,
}

impl PrimeRecord {
    fn empty(p: u64) -> Self {
        PrimeRecord {
            p,
            curve: None,
            counts: None,
            weil: None,
            frobenius_polynomial: None,
            irreducible: None,
            galois_group: None,
            subfield_discriminant: None,
            tate: None,
            root_ratio: None,
            failed_stage: None,
            error: None,
        }
    }

    fn fail(mut self, stage: Stage, e: Error) -> Self {
        self.failed_stage = Some(stage);
        self.error = Some(e.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoCertificate {
    pub schema_version: u32,
    pub family: FamilyId,
    /// Parameter values as exact rationals, e.g. `"12"` or `"-3/2"`.
    pub point: BTreeMap<String, String>,
    pub primes: [u64; 2],
    pub geometric: bool,
    pub records: [PrimeRecord; 2],
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

impl EndoCertificate {
    /// Whether some prime failed at reduction (bad reduction).
    pub fn bad_reduction(&self) -> bool {
        self.records
            .iter()
            .any(|r| r.failed_stage == Some(Stage::Reduction))
    }
}

fn run_prime(curve: &crate::HyperellipticCurve<Rational>, p: u64, geometric: bool) -> PrimeRecord {
    let mut rec = PrimeRecord::empty(p);
    let reduced = match curve.reduce_mod_p(p) {
        Ok(c) => c,
        Err(e) => return rec.fail(Stage::Reduction, e),
    };
    rec.curve = Some(reduced.coefficient_values());
    let counts = match point_counts(&reduced) {
        Ok(c) => c,
        Err(e) => return rec.fail(Stage::PointCount, e),
    };
    rec.counts = Some(counts);
    let w = match weil_polynomial(counts, p) {
        Ok(w) => w,
        Err(e) => return rec.fail(Stage::WeilPolynomial, e),
    };
    rec.weil = Some(w);
    let coeffs = w.frobenius_coeffs();
    rec.frobenius_polynomial = Some(display_int_poly(&coeffs));
    let analysis = analyze_quartic(&Quartic::frobenius(&w));
    rec.irreducible = Some(analysis.irreducible);
    rec.galois_group = analysis.galois_group;
    rec.tate = Some(tate_condition(&w));
    if analysis.irreducible {
        match quadratic_subfield(&w) {
            Ok(c) => rec.subfield_discriminant = c.squarefree_discriminant,
            Err(e) => return rec.fail(Stage::Subfield, e),
        }
    }
    if geometric && rec.tate == Some(TateVerdict::GeneratedByFrobenius) {
        match root_ratio_cyclotomic_test(&w) {
            Ok(v) => rec.root_ratio = Some(v),
            Err(e) => return rec.fail(Stage::RootRatio, e),
        }
    }
    rec
}

/// Problems with one prime's data that block the certificate.
fn blockers(r: &PrimeRecord) -> Vec<String> {
    let p = r.p;
    if let (Some(stage), Some(e)) = (r.failed_stage, &r.error) {
        return vec![format!("p={p}: stopped at {stage:?}: {e}")];
    }
    let mut out = Vec::new();
    if r.irreducible != Some(true) {
        out.push(format!("p={p}: Frobenius polynomial is reducible"));
    }
    if r.irreducible == Some(true) && r.subfield_discriminant.is_none() {
        out.push(format!(
            "p={p}: Galois group {} has no unique quadratic subfield",
            r.galois_group.map_or("?".into(), |g| g.to_string())
        ));
    }
    if r.tate != Some(TateVerdict::GeneratedByFrobenius) {
        out.push(format!("p={p}: Frobenius polynomial has repeated roots"));
    }
    out
}

fn summary(r: &PrimeRecord) -> String {
    let mut s = format!("p={}", r.p);
    if let Some(c) = r.counts {
        s += &format!(": N1={}, N2={}", c.n1, c.n2);
    }
    if let Some(w) = r.weil {
        s += &format!(", a1={}, a2={}", w.a1, w.a2);
    }
    if let Some(g) = r.galois_group {
        s += &format!(", group {g}");
    }
    if let Some(d) = &r.subfield_discriminant {
        s += &format!(", subfield Q(sqrt({d}))");
    }
    s
}

/// Two-prime certificate that the generic member of `family` has trivial
/// endomorphism ring, specialized at `point`.
pub fn certify_endomorphisms(
    family: &CurveFamily,
    point: &BTreeMap<String, Rational>,
    p1: u64,
    p2: u64,
    geometric: bool,
) -> Result<EndoCertificate> {
    check_prime(p1)?;
    check_prime(p2)?;
    let curve = family.specialize(point)?;
    let (r1, r2) = rayon::join(
        || run_prime(&curve, p1, geometric),
        || run_prime(&curve, p2, geometric),
    );
    let mut reasons: Vec<String> = vec![format!(
        "{} at {}: {}",
        family.id(),
        format_point(point),
        curve
    )];
    reasons.push(summary(&r1));
    reasons.push(summary(&r2));
    let mut blocked: Vec<String> = blockers(&r1);
    blocked.extend(blockers(&r2));

    let verdict = if !blocked.is_empty() {
        reasons.extend(blocked);
        Verdict::Inconclusive
    } else if r1.subfield_discriminant == r2.subfield_discriminant {
        reasons.push(format!(
            "both quadratic subfields are Q(sqrt({})); no disjointness",
            r1.subfield_discriminant.as_ref().expect("checked")
        ));
        Verdict::Inconclusive
    } else {
        reasons
            .push("distinct unique quadratic subfields: the Frobenius fields share only Q".into());
        let unity_free = |r: &PrimeRecord| r.root_ratio == Some(RootRatioVerdict::NoUnityRatios);
        if geometric && unity_free(&r1) && unity_free(&r2) {
            reasons.push("no two Frobenius roots differ by a root of unity at either prime".into());
            Verdict::TrivialGeometricEnd
        } else {
            if geometric {
                reasons.push("root-of-unity ratio found; geometric triviality not shown".into());
            }
            Verdict::TrivialEnd
        }
    };
    Ok(EndoCertificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        family: family.id(),
        point: point
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect(),
        primes: [p1, p2],
        geometric,
        records: [r1, r2],
        verdict,
        reasons,
    })
}

/// `h1` and `h2` as functions of the series constants.
pub const GAR92_H1_LEVEL: &str =
    "405/32*alpha^4 + 81/22*gamma + 648/77*alpha^2*s2 - 150/77*alpha*s1 - 23/110*s2^2";
pub const GAR92_H2_LEVEL: &str = "729/64*alpha^5 + 243/44*alpha*gamma + 81*beta^2 \
    + 1539/616*alpha^3*s2 - 207/308*alpha^2*s1 - 729/220*alpha*s2^2 + s1*s2";
/// The divisor component after eliminating `gamma`.
pub const GAR92_DIVISOR: &str = "-243/32*alpha^5 + 81*beta^2 + 3/2*alpha*h1 - h2 \
    - 81/8*alpha^3*s2 + s1*(9/4*alpha^2 + s2) - 3*alpha*s2^2";

fn divisor_vars() -> Arc<Vec<String>> {
    symbols(&["alpha", "beta", "gamma", "s1", "s2", "h1", "h2"])
}

fn plane_vars() -> Arc<Vec<String>> {
    symbols(&["x", "y", "h1", "h2", "s1", "s2"])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisorStage {
    Flow,
    Levels,
    Elimination,
    ChangeOfVariables,
    Comparison,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorIdentityReport {
    pub schema_version: u32,
    pub flow: FlowReport,
    /// Constant term of `H1` along the series (certified).
    pub h1: String,
    pub h1_matches: bool,
    /// Constant term of `H2`, read from the series as printed.
    pub h2: String,
    pub h2_matches: bool,
    pub h2_mode: String,
    /// Stage (iii): `H2 - h2` with `gamma` eliminated through `H1 = h1`.
    pub eliminated: String,
    pub eliminated_matches: bool,
    /// Stage (iv): right-hand side of `y^2 = ...` after the change of variables.
    pub transformed: String,
    pub spectral_quintic: String,
    /// `transformed - spectral_quintic`.
    pub difference: String,
    pub first_failure: Option<DivisorStage>,
    pub identical: bool,
}

pub fn verify_painleve_divisor_gar92() -> Result<DivisorIdentityReport> {
    verify_painleve_divisor(&LaurentSolution::gar92())
}

struct DivisorTail {
    eliminated: String,
    eliminated_matches: bool,
    transformed: String,
    transformed_ok: bool,
    difference: String,
    identical: bool,
}

/// Stages (iii)–(v). A `Structure` error leaves the stages reached so far
/// filled in.
fn eliminate_and_transform(
    h1_expr: &MultiPoly,
    h2_expr: &MultiPoly,
    quintic: &MultiPoly,
    out: &mut DivisorTail,
) -> Result<()> {
    let vars = divisor_vars();
    // (iii) gamma enters h1 linearly with a constant coefficient
    let by_gamma = h1_expr.to_univariate("gamma")?;
    let lin = by_gamma.coeff(1);
    if by_gamma.degree() != Some(1) || !lin.is_constant() {
        return Err(Error::Structure(format!(
            "h1 = {h1_expr} is not linear in gamma with constant slope"
        )));
    }
    let slope = lin.constant_term();
    let h1v = MultiPoly::var(&vars, "h1")?;
    let h2v = MultiPoly::var(&vars, "h2")?;
    let gamma = (&h1v - &by_gamma.coeff(0)).scale(&(int(1) / slope));
    let eliminated = &h2_expr.substitute("gamma", &gamma)? - &h2v;
    out.eliminated = eliminated.to_string();
    out.eliminated_matches = eliminated == parse_poly(GAR92_DIVISOR, &vars)?;

    // (iv) alpha = 2x/3, beta = y/9
    let pv = plane_vars();
    let x = MultiPoly::var(&pv, "x")?;
    let y = MultiPoly::var(&pv, "y")?;
    let images: Vec<MultiPoly> = vars
        .iter()
        .map(|v| match v.as_str() {
            "alpha" => Ok(x.scale(&rat(2, 3))),
            "beta" => Ok(y.scale(&rat(1, 9))),
            "gamma" => Ok(MultiPoly::zero(&pv)),
            other => MultiPoly::var(&pv, other),
        })
        .collect::<Result<_>>()?;
    let plane = eliminated.compose(&images, &pv)?;
    let by_y = plane.to_univariate("y")?;
    let lead = by_y.coeff(2);
    if by_y.degree() != Some(2) || !by_y.coeff(1).is_zero() || !lead.is_constant() {
        return Err(Error::Structure(format!(
            "{plane} is not of the form c*y^2 + g(x)"
        )));
    }
    let transformed = -&by_y.coeff(0).scale(&(int(1) / lead.constant_term()));
    out.transformed = transformed.to_string();
    out.transformed_ok = true;

    // (v)
    let difference = &transformed - quintic;
    out.difference = difference.to_string();
    out.identical = difference.is_zero();
    Ok(())
}

/// Runs stages (i)–(v) of the divisor identity on `sol`.
pub fn verify_painleve_divisor(sol: &LaurentSolution) -> Result<DivisorIdentityReport> {
    let (h1_ham, h2_ham) = gar92_hamiltonians();
    let flow = verify_hamilton_flow(&h1_ham, sol)?;

    let constant_of =
        |s: &TruncatedSeries| s.coeff(0).unwrap_or_else(|| MultiPoly::zero(&sol.vars));
    let s1 = substitute_hamiltonian(&h1_ham, sol, SubstitutionMode::Certified)?;
    let s2 = substitute_hamiltonian(&h2_ham, sol, SubstitutionMode::AsPrinted)?;
    let nonconstant_vanish = |s: &TruncatedSeries| {
        s.known_exponents()
            .filter(|&k| k != 0)
            .all(|k| s.coeff(k).is_none_or(|c| c.is_zero()))
    };
    let pole_free = |s: &TruncatedSeries| {
        (s.lowest_exponent()..0).all(|k| s.coeff(k).is_none_or(|c| c.is_zero()))
    };

    let vars = divisor_vars();
    let h1_expr = constant_of(&s1).align(&vars)?;
    let h2_expr = constant_of(&s2).align(&vars)?;
    let h1_matches = nonconstant_vanish(&s1) && h1_expr == parse_poly(GAR92_H1_LEVEL, &vars)?;
    let h2_matches = pole_free(&s2) && h2_expr == parse_poly(GAR92_H2_LEVEL, &vars)?;

    let quintic = catalog_get(FamilyId::Gar92)?
        .f_expanded()
        .align(&plane_vars())?;
    let mut tail = DivisorTail {
        eliminated: String::new(),
        eliminated_matches: false,
        transformed: String::new(),
        transformed_ok: false,
        difference: String::new(),
        identical: false,
    };
    match eliminate_and_transform(&h1_expr, &h2_expr, &quintic, &mut tail) {
        Ok(()) => {}
        Err(Error::Structure(msg)) if tail.eliminated.is_empty() => tail.eliminated = msg,
        Err(Error::Structure(msg)) => tail.transformed = msg,
        Err(e) => return Err(e),
    }

    let checks = [
        (DivisorStage::Flow, flow.all_vanish),
        (DivisorStage::Levels, h1_matches && h2_matches),
        (DivisorStage::Elimination, tail.eliminated_matches),
        (DivisorStage::ChangeOfVariables, tail.transformed_ok),
        (DivisorStage::Comparison, tail.identical),
    ];
    let first_failure = checks.iter().find(|(_, ok)| !ok).map(|(s, _)| *s);
    Ok(DivisorIdentityReport {
        schema_version: DIVISOR_SCHEMA_VERSION,
        flow,
        h1: h1_expr.to_string(),
        h1_matches,
        h2: h2_expr.to_string(),
        h2_matches,
        h2_mode: "as-printed".into(),
        eliminated: tail.eliminated,
        eliminated_matches: tail.eliminated_matches,
        transformed: tail.transformed,
        spectral_quintic: quintic.to_string(),
        difference: tail.difference,
        identical: first_failure.is_none(),
        first_failure,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegenerationStatus {
    Identity,
    /// Trusted, not checked by computation.
    Recorded,
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationNote {
    pub from: String,
    pub to: String,
    pub status: DegenerationStatus,
    pub note: String,
}

const INJECTIVITY: &str = "a degeneration P_A -> P_B realizes the generic spectral curve of P_B \
    as the special fiber over a discrete valuation ring whose generic fiber is that of P_A; \
    specialization of endomorphisms under good reduction then makes End(P_A) inject into End(P_B), \
    so triviality for P_B implies triviality for P_A";

/// Audit record for extending a certificate along a degeneration. Nothing
/// is computed.
pub fn degeneration_note(from: &str, to: &str) -> DegenerationNote {
    let terminal = |s: &str| {
        s.parse::<FamilyId>()
            .ok()
            .filter(|id| *id != FamilyId::User)
    };
    let (status, note) = match (terminal(from), terminal(to)) {
        (_, None) => (
            DegenerationStatus::Unverified,
            format!("`{to}` is not one of the six most degenerate systems"),
        ),
        (Some(a), Some(b)) if a == b => (
            DegenerationStatus::Identity,
            format!("{b} is its own terminal case; its certificate applies directly"),
        ),
        (Some(a), Some(b)) => (
            DegenerationStatus::Unverified,
            format!(
                "{a} and {b} are both terminal cases; no degeneration between them is recorded"
            ),
        ),
        (None, Some(b)) if from.trim().is_empty() => (
            DegenerationStatus::Unverified,
            format!("empty source system for target {b}"),
        ),
        (None, Some(b)) => (
            DegenerationStatus::Recorded,
            format!("{from} degenerates to {b}: {INJECTIVITY}"),
        ),
    };
    DegenerationNote {
        from: from.to_string(),
        to: to.to_string(),
        status,
        note,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_point;

    #[test]
    fn kfs_same_prime_is_inconclusive() {
        let fam = catalog_get(FamilyId::Kfs).unwrap();
        let pt = parse_point("h1=12,h2=17,s=29").unwrap();
        let c = certify_endomorphisms(&fam, &pt, 37, 37, false).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(c.records[0], c.records[1]);
    }

    #[test]
    fn bad_reduction_is_recorded() {
        let fam = catalog_get(FamilyId::Kfs).unwrap();
        let pt = parse_point("h1=12,h2=17,s=29").unwrap();
        // disc of the specialization
        let disc = fam.specialize(&pt).unwrap().discriminant();
        let p = (3u64..2000)
            .filter(|&p| crate::finite::fp::is_prime(p))
            .find(|&p| {
                let m = BigInt::from(p);
                (disc.numer() % &m) == BigInt::from(0)
            })
            .expect("some small prime divides the discriminant");
        let c = certify_endomorphisms(&fam, &pt, p, 37, false).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(c.bad_reduction());
    }

    #[test]
    fn non_prime_is_input_error() {
        let fam = catalog_get(FamilyId::Kfs).unwrap();
        let pt = parse_point("h1=12,h2=17,s=29").unwrap();
        assert!(matches!(
            certify_endomorphisms(&fam, &pt, 4, 37, false),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn degeneration_records() {
        assert_eq!(
            degeneration_note("Gar9/2", "gar92").status,
            DegenerationStatus::Identity
        );
        let r = degeneration_note("Gar7/2+3/2", "Gar9/2");
        assert_eq!(r.status, DegenerationStatus::Recorded);
        assert!(r.note.contains("inject"));
        assert_eq!(
            degeneration_note("Gar9/2", "Foo").status,
            DegenerationStatus::Unverified
        );
    }
}
