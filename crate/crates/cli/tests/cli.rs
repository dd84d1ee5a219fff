use std::process::{Command, Output};

use serde_json::Value;
use spectral_torelli::pipeline::{DivisorIdentityReport, EndoCertificate};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spectral-torelli"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}):\n{stdout}"))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const KFS: [&str; 9] = [
    "certify-endo",
    "--family",
    "KFS",
    "--at",
    "h1=12,h2=17,s=29",
    "--p1",
    "37",
    "--p2",
    "53",
];

#[test]
fn frobenius_from_counts() {
    let out = run(&[
        "--json",
        "frobenius",
        "--p",
        "37",
        "--n1",
        "36",
        "--n2",
        "1442",
    ]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["a1"], 2);
    assert_eq!(v["a2"], 38);
    assert_eq!(v["P"], serde_json::json!([1369, -74, 38, -2, 1]));
    assert_eq!(v["analysis"]["galois_group"], "D4");
}

#[test]
fn certify_kfs_exits_zero() {
    let mut args = vec!["--json"];
    args.extend(KFS);
    let out = run(&args);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["verdict"], "TRIVIAL_END");
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn certify_defaults_to_registered_run() {
    let out = run(&["--json", "certify-endo", "--family", "KFS", "--geometric"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["primes"], serde_json::json!([37, 53]));
    assert_eq!(v["verdict"], "TRIVIAL_GEOMETRIC_END");
}

#[test]
fn certificate_round_trips() {
    let mut args = vec!["--json"];
    args.extend(KFS);
    let v = json_of(&run(&args));
    let cert: EndoCertificate = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&cert).unwrap(), v);
}

#[test]
fn divisor_report_round_trips() {
    let out = run(&["--json", "verify-divisor", "gar92"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["identical"], true);
    let r: DivisorIdentityReport = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&r).unwrap(), v);
}

#[test]
fn unknown_system_is_usage_error() {
    assert_eq!(code(&run(&["verify-divisor", "gar52"])), 2);
}

#[test]
fn composite_prime_exits_two() {
    assert_eq!(code(&run(&["count-points", "--p", "4"])), 2);
    assert_eq!(
        code(&run(&["zeta", "--p", "9", "--n1", "10", "--n2", "82"])),
        2
    );
}

#[test]
fn unknown_command_exits_two() {
    let out = run(&["bogus"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn json_output_has_no_log_lines() {
    let mut args = vec!["--json"];
    args.extend(KFS);
    let out = run_env(&args, &[("RUST_LOG", "debug")]);
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(!stdout.contains("INFO") && !stdout.contains("DEBUG"));
    json_of(&out);
    assert!(String::from_utf8(out.stderr).unwrap().contains("INFO"));
}

#[test]
fn count_points_matches_zeta() {
    let out = run(&[
        "--json",
        "count-points",
        "--p",
        "37",
        "--family",
        "KFS",
        "--at",
        "h1=12,h2=17,s=29",
    ]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!((v["N1"].as_u64(), v["N2"].as_u64()), (Some(36), Some(1442)));
    let z = json_of(&run(&[
        "--json", "zeta", "--p", "37", "--n1", "36", "--n2", "1442",
    ]));
    assert_eq!(v["L"], z["L"]);
    assert_eq!(z["L"], serde_json::json!([1, -2, 38, -74, 1369]));

    let one = json_of(&run(&[
        "--json",
        "count-points",
        "--p",
        "37",
        "--ext",
        "1",
        "--family",
        "KFS",
        "--at",
        "h1=12,h2=17,s=29",
    ]));
    assert_eq!(one["N1"], 36);
}

#[test]
fn bad_reduction_exits_three() {
    let out = run(&[
        "count-points",
        "--p",
        "7",
        "--family",
        "KFS",
        "--at",
        "h1=12,h2=17,s=29",
    ]);
    assert_eq!(code(&out), 3);
    let out = run(&[
        "invariants",
        "--family",
        "Gar92",
        "--at",
        "h1=0,h2=0,s1=0,s2=0",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn galois_command() {
    let v = json_of(&run(&["--json", "galois", "--poly", "1,0,0,-1,-1"]));
    assert_eq!(v["galois_group"], "S4");
    assert_eq!(v["discriminant"], "-283");
    let v = json_of(&run(&["--json", "galois", "--poly", "1,0,0,0,-1"]));
    assert_eq!(v["irreducible"], false);
    assert_eq!(code(&run(&["galois", "--poly", "2,0,0,0,1"])), 2);
}

#[test]
fn invariants_are_exact_rationals() {
    let out = run(&[
        "--json",
        "invariants",
        "--family",
        "Gar92",
        "--at",
        "h1=1,h2=2,s1=3,s2=5",
    ]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["J2"], serde_json::json!({ "num": "6620", "den": "1" }));
    assert!(v["absolute"]["I1"]["den"].is_string());
}

#[test]
fn independence_is_seeded() {
    let a = json_of(&run(&[
        "--json",
        "independence",
        "--family",
        "Gar92",
        "--seed",
        "7",
    ]));
    let b = json_of(&run(&[
        "--json",
        "independence",
        "--family",
        "Gar92",
        "--seed",
        "7",
    ]));
    assert_eq!(a, b);
    assert_eq!(a["rank"], 3);
}

#[test]
fn thread_cap_is_honoured() {
    let mut args = vec!["--json"];
    args.extend(KFS);
    let out = run_env(&args, &[("SPECTRAL_TORELLI_THREADS", "1")]);
    assert_eq!(code(&out), 0);
    let out = run_env(&args, &[("SPECTRAL_TORELLI_THREADS", "many")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn kss_needs_a_family_file() {
    assert_eq!(code(&run(&["certify-endo", "--family", "KSs"])), 2);
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("kss_stand_in.json");
    std::fs::write(
        &path,
        r#"{"variables":["h1","h2","s"],"f_coefficients":["s","h1","h2","1","0","1","1"],"degree":6}"#,
    )
    .unwrap();
    let out = run(&[
        "--json",
        "certify-endo",
        "--family",
        "KSs",
        "--file",
        path.to_str().unwrap(),
    ]);
    let c = code(&out);
    assert!([0, 3, 4].contains(&c), "exit {c}");
    let v = json_of(&out);
    assert_eq!(v["primes"], serde_json::json!([37, 31]));
    assert_eq!(v["family"], "KSs3/2+5/4");
}

#[test]
fn catalog_lists_families() {
    let v = json_of(&run(&["--json", "catalog"]));
    let ids: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].as_str().unwrap())
        .collect();
    assert_eq!(
        ids,
        [
            "Gar9/2",
            "Gar5/2+3/2",
            "MatI",
            "MatIII(D8)",
            "KFS4/3+4/3",
            "KSs3/2+5/4"
        ]
    );
    assert_eq!(code(&run(&["catalog", "--family", "nope"])), 2);
}
