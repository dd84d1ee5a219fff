//! Command bodies. Each returns a [`CommandResult`]; nothing here writes to
//! standard output.

use std::collections::BTreeMap;
use std::path::Path;

use log::info;
use serde_json::{json, Value};
use spectral_torelli::algebra::rational::RationalJson;
use spectral_torelli::catalog::{catalog_get, format_point, parse_point, CurveFamily, FamilyId};
use spectral_torelli::finite::fp::check_prime;
use spectral_torelli::finite::{count_points as count_over, point_counts, weil_polynomial};
use spectral_torelli::galois::{
    analyze_quartic, display_int_poly, quadratic_subfield, root_ratio_cyclotomic_test,
    tate_condition, Quartic, TateVerdict,
};
use spectral_torelli::igusa::{absolute, igusa, independence_rank};
use spectral_torelli::pipeline::{certify_endomorphisms, verify_painleve_divisor, Verdict};
use spectral_torelli::series::LaurentSolution;
use spectral_torelli::{Error, PointCount, Rational, Result, WeilPolynomial};

use crate::Source;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;
pub const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Debug, Clone)]
pub struct CommandResult {
    pub command: &'static str,
    pub inputs: Value,
    pub outputs: Value,
    pub summary: String,
    pub error: Option<String>,
    pub exit_code: u8,
}

pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Degenerate(_) | Error::BadReduction { .. } | Error::UndefinedChart => {
            EXIT_DEGENERATE
        }
        Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
        Error::Structure(_) | Error::DegreeBound(_) | Error::Alignment { .. } => EXIT_FAILED,
        _ => EXIT_INPUT,
    }
}

fn finish(command: &'static str, inputs: Value, r: Result<(Value, String, u8)>) -> CommandResult {
    match r {
        Ok((outputs, summary, exit_code)) => CommandResult {
            command,
            inputs,
            outputs,
            summary,
            error: None,
            exit_code,
        },
        Err(e) => {
            let code = exit_code_for(&e);
            CommandResult {
                command,
                inputs,
                outputs: json!({ "command": command, "error": e.to_string(), "exit_code": code }),
                summary: String::new(),
                error: Some(e.to_string()),
                exit_code: code,
            }
        }
    }
}

fn rational(q: &Rational) -> Value {
    serde_json::to_value(RationalJson::from(q)).expect("serializable")
}

fn source_inputs(s: &Source) -> Value {
    json!({ "family": s.family, "file": s.file, "at": s.at })
}

fn load_family(s: &Source) -> Result<CurveFamily> {
    let id = s
        .family
        .as_deref()
        .map(str::parse::<FamilyId>)
        .transpose()?;
    match (&s.file, id) {
        (Some(path), id) => CurveFamily::from_path(id.unwrap_or(FamilyId::User), path),
        (None, Some(id)) => catalog_get(id),
        (None, None) => Err(Error::Invalid(
            "one of --family or --file is required".into(),
        )),
    }
}

fn load_point(s: &Source) -> Result<BTreeMap<String, Rational>> {
    s.at.as_deref()
        .map(parse_point)
        .transpose()
        .map(Option::unwrap_or_default)
}

fn family_entry(fam: &CurveFamily) -> Value {
    json!({
        "id": fam.id(),
        "parameters": fam.params().as_slice(),
        "degree": fam.degree(),
        "f": fam.f_expanded().to_string(),
        "riemann_scheme": fam.riemann_scheme(),
        "source": fam.source(),
        "registered_run": fam.id().registered_run().map(|(at, p1, p2)| json!({ "at": at, "p1": p1, "p2": p2 })),
    })
}

pub fn catalog(family: Option<&str>) -> CommandResult {
    let inputs = json!({ "family": family });
    let r = (|| {
        let ids: Vec<FamilyId> = match family {
            Some(name) => vec![name.parse()?],
            None => FamilyId::BUILT_IN
                .iter()
                .copied()
                .chain([FamilyId::Kss])
                .collect(),
        };
        let mut entries = Vec::new();
        let mut lines = Vec::new();
        for id in ids {
            match catalog_get(id) {
                Ok(fam) => {
                    lines.push(format!("{:<12} y^2 = {}", id.name(), fam.f_expanded()));
                    entries.push(family_entry(&fam));
                }
                Err(Error::NotSupplied(why)) if family.is_none() => {
                    lines.push(format!("{:<12} (not supplied: {why})", id.name()));
                    entries.push(json!({ "id": id, "supplied": false, "note": why }));
                }
                Err(e) => return Err(e),
            }
        }
        Ok((Value::Array(entries), lines.join("\n"), EXIT_OK))
    })();
    finish("catalog", inputs, r)
}

pub fn invariants(source: &Source) -> CommandResult {
    let r = (|| {
        let fam = load_family(source)?;
        if source.at.is_none() {
            info!("computing symbolic invariants of {}", fam.id());
            let inv = igusa(fam.f())?;
            let out = json!({
                "family": fam.id(),
                "parameters": fam.params().as_slice(),
                "J2": inv.j2.to_string(),
                "J4": inv.j4.to_string(),
                "J6": inv.j6.to_string(),
                "J8": inv.j8.to_string(),
                "J10": inv.j10.to_string(),
                "j8_identity": inv.j8_identity_holds(),
            });
            let summary = format!(
                "J2 = {}\nJ4 = {}\nJ6 = {}\nJ10 = {}",
                inv.j2, inv.j4, inv.j6, inv.j10
            );
            return Ok((out, summary, EXIT_OK));
        }
        let point = load_point(source)?;
        let curve = fam.specialize(&point)?;
        let inv = igusa(curve.f())?;
        let abs = absolute(&inv).ok();
        let out = json!({
            "family": fam.id(),
            "point": format_point(&point),
            "curve": curve.to_string(),
            "J2": rational(&inv.j2),
            "J4": rational(&inv.j4),
            "J6": rational(&inv.j6),
            "J8": rational(&inv.j8),
            "J10": rational(&inv.j10),
            "absolute": abs.as_ref().map(|a| json!({
                "I1": rational(&a.i1),
                "I2": rational(&a.i2),
                "I3": rational(&a.i3),
            })),
        });
        let mut summary = format!(
            "{curve}\nJ2 = {}\nJ4 = {}\nJ6 = {}\nJ8 = {}\nJ10 = {}",
            inv.j2, inv.j4, inv.j6, inv.j8, inv.j10
        );
        match abs {
            Some(a) => summary += &format!("\nI1 = {}\nI2 = {}\nI3 = {}", a.i1, a.i2, a.i3),
            None => summary += "\nabsolute invariants undefined (J2 = 0)",
        }
        Ok((out, summary, EXIT_OK))
    })();
    finish("invariants", source_inputs(source), r)
}

pub fn independence(source: &Source, trials: usize, seed: u64) -> CommandResult {
    let mut inputs = source_inputs(source);
    inputs["trials"] = json!(trials);
    inputs["seed"] = json!(seed);
    let r = (|| {
        let fam = load_family(source)?;
        let report = independence_rank(fam.f(), fam.params(), trials, seed)?;
        let full = fam.params().len().min(3);
        let summary = format!(
            "{}: rank {} of {} over {} trials ({} rejected), seed {}",
            fam.id(),
            report.rank,
            full,
            report.trials,
            report.rejected,
            report.seed
        );
        let code = if report.rank == full {
            EXIT_OK
        } else {
            EXIT_INCONCLUSIVE
        };
        let mut out = serde_json::to_value(&report).expect("serializable");
        out["family"] = json!(fam.id());
        out["parameters"] = json!(fam.params().as_slice());
        Ok((out, summary, code))
    })();
    finish("independence", inputs, r)
}

fn zeta_payload(w: &WeilPolynomial, c: PointCount) -> Value {
    let (p, a1, a2) = (w.p as i128, w.a1 as i128, w.a2 as i128);
    let frob = [p * p, -p * a1, a2, -a1, 1];
    let mut zeta = frob;
    zeta.reverse();
    json!({
        "p": w.p,
        "N1": c.n1,
        "N2": c.n2,
        "a1": w.a1,
        "a2": w.a2,
        "L": zeta.iter().map(|v| *v as i64).collect::<Vec<_>>(),
        "P": frob.iter().map(|v| *v as i64).collect::<Vec<_>>(),
    })
}

fn zeta_summary(w: &WeilPolynomial, c: PointCount) -> String {
    format!(
        "p = {}: N1 = {}, N2 = {}\na1 = {}, a2 = {}\nP(t) = {}\nL(t) = {}",
        w.p,
        c.n1,
        c.n2,
        w.a1,
        w.a2,
        display_int_poly(&w.frobenius_coeffs()),
        display_int_poly(&w.zeta_numerator_coeffs()),
    )
}

fn weil_from_counts(p: u64, n1: u64, n2: u64) -> Result<(WeilPolynomial, PointCount)> {
    check_prime(p)?;
    let c = PointCount { n1, n2 };
    if !c.within_weil_bounds(p) {
        return Err(Error::InconsistentCounts(format!(
            "N1 = {n1}, N2 = {n2} violate the Weil bounds at p = {p}"
        )));
    }
    Ok((weil_polynomial(c, p)?, c))
}

fn count_points_cmd(source: &Source, p: u64, ext: Option<u32>) -> Result<(Value, String, u8)> {
    check_prime(p)?;
    let fam = load_family(source)?;
    let curve = fam.specialize(&load_point(source)?)?.reduce_mod_p(p)?;
    info!("counting points of {curve} over F_{p}");
    match ext {
        Some(e) => {
            let n = count_over(&curve, e)?;
            let mut out = json!({ "p": p, "ext": e, "curve": curve.coefficient_values() });
            out[format!("N{e}")] = json!(n);
            Ok((out, format!("#C(F_{p}^{e}) = {n}"), EXIT_OK))
        }
        None => {
            let c = point_counts(&curve)?;
            let w = weil_polynomial(c, p)?;
            let mut out = zeta_payload(&w, c);
            out["curve"] = json!(curve.coefficient_values());
            Ok((out, zeta_summary(&w, c), EXIT_OK))
        }
    }
}

pub fn count_points(source: &Source, p: u64, ext: Option<u32>) -> CommandResult {
    let mut inputs = source_inputs(source);
    inputs["p"] = json!(p);
    inputs["ext"] = json!(ext);
    finish("count-points", inputs, count_points_cmd(source, p, ext))
}

pub fn zeta(p: u64, n1: u64, n2: u64) -> CommandResult {
    let r = weil_from_counts(p, n1, n2)
        .map(|(w, c)| (zeta_payload(&w, c), zeta_summary(&w, c), EXIT_OK));
    finish("zeta", json!({ "p": p, "n1": n1, "n2": n2 }), r)
}

pub fn frobenius(p: u64, n1: u64, n2: u64) -> CommandResult {
    let r = (|| {
        let (w, c) = weil_from_counts(p, n1, n2)?;
        let analysis = analyze_quartic(&Quartic::frobenius(&w));
        let subfield = if analysis.irreducible {
            Some(quadratic_subfield(&w)?)
        } else {
            None
        };
        let tate = tate_condition(&w);
        let root_ratio = if tate == TateVerdict::GeneratedByFrobenius {
            Some(root_ratio_cyclotomic_test(&w)?)
        } else {
            None
        };
        let mut out = zeta_payload(&w, c);
        out["analysis"] = serde_json::to_value(&analysis).expect("serializable");
        out["subfield"] = serde_json::to_value(&subfield).expect("serializable");
        out["tate"] = serde_json::to_value(tate).expect("serializable");
        out["root_ratio"] = serde_json::to_value(&root_ratio).expect("serializable");
        let mut summary = zeta_summary(&w, c);
        summary += &format!("\nirreducible: {}", analysis.irreducible);
        if let Some(g) = analysis.galois_group {
            summary += &format!(", Galois group {g:?}");
        }
        if let Some(d) = subfield
            .as_ref()
            .and_then(|s| s.squarefree_discriminant.as_ref())
        {
            summary += &format!("\nquadratic subfield Q(sqrt({d}))");
        }
        Ok((out, summary, EXIT_OK))
    })();
    finish("frobenius", json!({ "p": p, "n1": n1, "n2": n2 }), r)
}

fn parse_coeffs(src: &str) -> Result<Vec<i64>> {
    src.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|e| Error::Invalid(format!("coefficient `{}`: {e}", s.trim())))
        })
        .collect()
}

pub fn galois(poly: &str) -> CommandResult {
    let r = (|| {
        let q = Quartic::from_descending(&parse_coeffs(poly)?)?;
        let a = analyze_quartic(&q);
        let resolvent = q.resolvent_cubic();
        let mut out = serde_json::to_value(&a).expect("serializable");
        out["resolvent_cubic"] = json!(resolvent.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        let summary = match a.galois_group {
            Some(g) => format!(
                "{}: Galois group {g:?}, disc {}",
                display_int_poly(q.coeffs()),
                a.discriminant
            ),
            None => format!(
                "{}: reducible, factors {}",
                display_int_poly(q.coeffs()),
                a.factorization
                    .iter()
                    .map(|f| format!("({})", display_int_poly(f)))
                    .collect::<Vec<_>>()
                    .join("")
            ),
        };
        Ok((out, summary, EXIT_OK))
    })();
    finish("galois", json!({ "poly": poly }), r)
}

pub fn certify_endo(
    source: &Source,
    p1: Option<u64>,
    p2: Option<u64>,
    geometric: bool,
) -> CommandResult {
    let mut inputs = source_inputs(source);
    inputs["p1"] = json!(p1);
    inputs["p2"] = json!(p2);
    inputs["geometric"] = json!(geometric);
    let r = (|| {
        let fam = load_family(source)?;
        let run = fam.id().registered_run();
        let at = source.at.as_deref().or(run.map(|r| r.0));
        let point = at.map(parse_point).transpose()?.unwrap_or_default();
        let missing = || Error::Invalid("--p1 and --p2 are required for this family".into());
        let p1 = p1.or(run.map(|r| r.1)).ok_or_else(missing)?;
        let p2 = p2.or(run.map(|r| r.2)).ok_or_else(missing)?;
        info!(
            "certifying {} at {} with p = {p1}, {p2}",
            fam.id(),
            format_point(&point)
        );
        let cert = certify_endomorphisms(&fam, &point, p1, p2, geometric)?;
        let code = match cert.verdict {
            Verdict::TrivialEnd | Verdict::TrivialGeometricEnd => EXIT_OK,
            Verdict::Inconclusive if cert.bad_reduction() => EXIT_DEGENERATE,
            Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        };
        let verdict = serde_json::to_value(cert.verdict).expect("serializable");
        let mut summary = cert.reasons.join("\n");
        summary += &format!("\nverdict: {}", verdict.as_str().unwrap_or_default());
        Ok((
            serde_json::to_value(&cert).expect("serializable"),
            summary,
            code,
        ))
    })();
    finish("certify-endo", inputs, r)
}

pub fn verify_divisor(system: &str, series: Option<&Path>) -> CommandResult {
    let inputs = json!({ "system": system, "series": series });
    let r = (|| {
        let sol = match series {
            Some(path) => LaurentSolution::from_path(path)?,
            None => LaurentSolution::gar92(),
        };
        let report = verify_painleve_divisor(&sol)?;
        let summary = format!(
            "h1 level: {}\nh2 level: {}\neliminated: {}\nidentical: {}{}",
            if report.h1_matches {
                "matches"
            } else {
                "differs"
            },
            if report.h2_matches {
                "matches (as printed)"
            } else {
                "differs"
            },
            report.eliminated,
            report.identical,
            report
                .first_failure
                .map(|s| format!(" (first failure: {s:?})"))
                .unwrap_or_default(),
        );
        let code = if report.identical {
            EXIT_OK
        } else {
            EXIT_FAILED
        };
        Ok((
            serde_json::to_value(&report).expect("serializable"),
            summary,
            code,
        ))
    })();
    finish("verify-divisor", inputs, r)
}
