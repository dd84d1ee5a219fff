use spectral_torelli::catalog::{catalog_get, parse_point, CurveFamily, FamilyId};
use spectral_torelli::pipeline::{
    certify_endomorphisms, degeneration_note, verify_painleve_divisor,
    verify_painleve_divisor_gar92, DegenerationStatus, DivisorStage, EndoCertificate, Verdict,
};
use spectral_torelli::series::{LaurentSolution, TruncatedSeries};
use spectral_torelli::{Error, MultiPoly};

fn kfs(p1: u64, p2: u64, geometric: bool) -> EndoCertificate {
    let fam = catalog_get(FamilyId::Kfs).unwrap();
    let point = parse_point("h1=12,h2=17,s=29").unwrap();
    certify_endomorphisms(&fam, &point, p1, p2, geometric).unwrap()
}

#[test]
fn certificate_json_is_deterministic() {
    let a = serde_json::to_string(&kfs(37, 53, true)).unwrap();
    let b = serde_json::to_string(&kfs(37, 53, true)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn certificate_round_trips_through_json() {
    let c = kfs(37, 53, false);
    let s = serde_json::to_string_pretty(&c).unwrap();
    let back: EndoCertificate = serde_json::from_str(&s).unwrap();
    assert_eq!(serde_json::to_string_pretty(&back).unwrap(), s);
    assert_eq!(back.verdict, Verdict::TrivialEnd);
}

#[test]
fn swapping_primes_swaps_records() {
    let a = kfs(37, 53, true);
    let b = kfs(53, 37, true);
    assert_eq!(a.verdict, b.verdict);
    assert_eq!(
        serde_json::to_value(&a.records[0]).unwrap(),
        serde_json::to_value(&b.records[1]).unwrap()
    );
    assert_eq!(
        serde_json::to_value(&a.records[1]).unwrap(),
        serde_json::to_value(&b.records[0]).unwrap()
    );
}

#[test]
fn geometric_flag_only_strengthens() {
    assert_eq!(kfs(37, 53, false).verdict, Verdict::TrivialEnd);
    assert_eq!(kfs(37, 53, true).verdict, Verdict::TrivialGeometricEnd);
}

#[test]
fn same_prime_twice_is_inconclusive() {
    let c = kfs(37, 37, false);
    assert_eq!(c.verdict, Verdict::Inconclusive);
    assert!(!c.verdict.is_trivial());
}

#[test]
fn composite_prime_is_rejected() {
    let fam = catalog_get(FamilyId::Kfs).unwrap();
    let point = parse_point("h1=12,h2=17,s=29").unwrap();
    let err = certify_endomorphisms(&fam, &point, 37, 51, false).unwrap_err();
    assert!(matches!(err, Error::NotPrime(51)), "{err:?}");
}

#[test]
fn bad_reduction_is_recorded_not_fatal() {
    let fam = catalog_get(FamilyId::Kfs).unwrap();
    let point = parse_point("h1=12,h2=17,s=29").unwrap();
    let c = certify_endomorphisms(&fam, &point, 3, 53, false).unwrap();
    if c.bad_reduction() {
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }
}

#[test]
fn user_family_file_reproduces_catalog_run() {
    let fam = catalog_get(FamilyId::Kfs).unwrap();
    let json = serde_json::to_string(&fam.to_file()).unwrap();
    let user = CurveFamily::from_json(FamilyId::User, &json).unwrap();
    let point = parse_point("h1=12,h2=17,s=29").unwrap();
    let a = certify_endomorphisms(&fam, &point, 37, 53, true).unwrap();
    let b = certify_endomorphisms(&user, &point, 37, 53, true).unwrap();
    assert_eq!(a.verdict, b.verdict);
    assert_eq!(
        serde_json::to_value(&a.records).unwrap(),
        serde_json::to_value(&b.records).unwrap()
    );
    assert_eq!(b.family, FamilyId::User);
}

#[test]
fn user_file_at_kss_primes_runs() {
    let json = r#"{"variables":["a"],"f_coefficients":["1","a","0","-1","2","0","1"],"degree":6}"#;
    let user = CurveFamily::from_json(FamilyId::User, json).unwrap();
    let good = (1..20)
        .map(|a| {
            let point = parse_point(&format!("a={a}")).unwrap();
            certify_endomorphisms(&user, &point, 37, 31, false).unwrap()
        })
        .find(|c| !c.bad_reduction())
        .expect("some member has good reduction at 37 and 31");
    assert_eq!(good.primes, [37, 31]);
    assert!(good
        .records
        .iter()
        .all(|r| r.counts.is_some() && r.weil.is_some()));
}

#[test]
fn kss_catalog_entry_is_not_supplied() {
    assert!(matches!(
        catalog_get(FamilyId::Kss),
        Err(Error::NotSupplied(_))
    ));
}

#[test]
fn divisor_identity_holds_and_serializes() {
    let r = verify_painleve_divisor_gar92().unwrap();
    assert!(r.identical, "{:?}", r.first_failure);
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["identical"], true);
}

#[test]
fn corrupted_series_breaks_divisor_identity() {
    let mut sol = LaurentSolution::gar92();
    let one = MultiPoly::one(&sol.vars);
    sol.q1 = sol.q1.try_add(&TruncatedSeries::constant(one)).unwrap();
    let r = verify_painleve_divisor(&sol).unwrap();
    assert!(!r.identical);
    assert_eq!(r.first_failure, Some(DivisorStage::Flow));
}

#[test]
fn degeneration_notes_never_claim_an_identity() {
    let n = degeneration_note("Gar9/2", "Gar5/2+3/2");
    assert_eq!(n.status, DegenerationStatus::Unverified);
    let n = degeneration_note("Gar1+1+1+1+1", "Gar9/2");
    assert_eq!(n.status, DegenerationStatus::Recorded);
    assert!(n.note.contains("inject"));
    let n = degeneration_note("Gar9/2", "Gar9/2");
    assert_eq!(n.status, DegenerationStatus::Identity);
}
