use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use isodual::codes::certify_isodual;
use isodual::LinearCode;
use serde_json::Value;

fn isodual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isodual"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn construct_ex(path: &Path, extra: &[&str]) {
    let p = path.to_str().unwrap();
    let mut args = vec![
        "construct",
        "--family",
        "eab",
        "--p",
        "2",
        "--m-ext",
        "3",
        "--fx",
        "x^3",
        "--out",
        p,
    ];
    args.extend_from_slice(extra);
    assert!(isodual(&args).status.success());
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    construct_ex(&a, &[]);
    construct_ex(&b, &["--threads", "3"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let text = fs::read_to_string(&a).unwrap();
    assert!(!text.trim_end().contains(' '));
}

#[test]
fn round_trip_matches_in_memory_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let out = isodual(&[
        "construct",
        "--family",
        "hermitian",
        "--q",
        "3",
        "--beta",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let parsed: LinearCode = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let fresh = isodual::codes::build_hermitian_isodual(3, 1).unwrap();
    let cli = json_of(&isodual(&["certify", "--in", path.to_str().unwrap()]));
    let mem = certify_isodual(&fresh, None, 0).unwrap();
    assert_eq!(cli["verdict"], mem.verdict.name());
    assert_eq!(cli["x"], serde_json::to_value(&mem.x).unwrap());
    assert_eq!(certify_isodual(&parsed, None, 0).unwrap(), mem);
}

#[test]
fn distance_does_not_depend_on_threads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let out = isodual(&[
        "construct",
        "--family",
        "hermitian-cover",
        "--q",
        "3",
        "--l",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let p = path.to_str().unwrap();
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let one = strip(json_of(&isodual(&[
        "distance",
        "--in",
        p,
        "--threads",
        "1",
    ])));
    let many = strip(json_of(&isodual(&[
        "distance",
        "--in",
        p,
        "--threads",
        "5",
    ])));
    assert_eq!(one, many);
    assert_eq!(one["mode"], "Exact");
}

#[test]
fn exit_codes() {
    let bad = isodual(&[
        "construct",
        "--family",
        "rational",
        "--q",
        "8",
        "--alphas",
        "0,1,1,2",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("DuplicateAlpha"));
    let odd = isodual(&[
        "construct",
        "--family",
        "eab",
        "--p",
        "2",
        "--m-ext",
        "3",
        "--fx",
        "x^3",
        "--alphas",
        "0,1,3,5",
    ]);
    assert_eq!(odd.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&odd.stderr).contains("NotSplit"));
    let genus = isodual(&["genus", "--q", "5", "--n", "3"]);
    assert_eq!(genus.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&genus.stderr).contains("UnsupportedBase"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let short = isodual(&[
        "construct",
        "--family",
        "rational",
        "--q",
        "2",
        "--alphas",
        "0,1",
    ]);
    assert_eq!(short.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&short.stderr).contains("OddLength"));
    let mut code: Value = serde_json::from_str(
        &String::from_utf8(
            isodual(&["construct", "--family", "rational", "--q", "4", "--n", "4"]).stdout,
        )
        .unwrap(),
    )
    .unwrap();
    code["generator"] = serde_json::json!([[1, 0, 0, 0], [0, 1, 0, 0]]);
    fs::write(&path, code.to_string()).unwrap();
    let cert = isodual(&["certify", "--in", path.to_str().unwrap()]);
    assert_eq!(cert.status.code(), Some(4));
    assert_eq!(json_of(&cert)["verdict"], "NotIsoDual");
}

#[test]
fn ggs_construction_needs_long() {
    let out = isodual(&["construct", "--family", "ggs", "--q", "3", "--r", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--long"));
}

#[test]
fn csv_output() {
    let out = isodual(&[
        "construct",
        "--family",
        "rational",
        "--q",
        "8",
        "--n",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1,1,1,1\n0,1,2,3\n");
    let out = isodual(&[
        "params",
        "--family",
        "hermitian",
        "--q",
        "4",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("\nn,60\n") && text.contains("\nd,25\n"));
}

#[test]
fn catalog_entries_are_keyed_by_content() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("catalog");
    let c = cat.to_str().unwrap();
    construct_ex(&dir.path().join("a.json"), &["--catalog", c]);
    construct_ex(&dir.path().join("b.json"), &["--catalog", c]);
    let files: Vec<_> = fs::read_dir(&cat).unwrap().collect();
    assert_eq!(files.len(), 1);
    let code: LinearCode =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.json")).unwrap()).unwrap();
    let id = isodual_cli::catalog::code_id(&code).unwrap();
    let entry = isodual_cli::catalog::load(&cat, &id).unwrap().unwrap();
    assert_eq!(entry.id, id);
    assert_eq!(entry.certificate.verdict.name(), "IsoDual");
    assert_eq!(entry.distance.exact(), Some(4));
    assert!(entry.created_at <= entry.updated_at);
}

#[test]
fn carlitz_and_census_commands() {
    let out = json_of(&isodual(&["carlitz", "--q", "2", "--i", "5", "--n", "3"]));
    assert_eq!(out["holds"], true);
    assert_eq!(out["tail_factors"], true);
    let out = json_of(&isodual(&["census", "--curve", "hermitian", "--q", "3"]));
    assert_eq!(out["total"], 28);
}
