use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(format!("{name}.json"))
}

fn numrange(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numrange")).args(args).env_remove("NUMRANGE_SEED").output().unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = numrange(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn vertices(path: &Path) -> Vec<[f64; 2]> {
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    serde_json::from_value(doc["vertices"].clone()).unwrap()
}

#[test]
fn describe_examples() {
    let out = run_ok(&["describe", "--spec", s(&spec("ex31_l1"))]);
    assert!(out.contains("summary: non-unital, NOT faithful (witness (0,1)), l1 not regular"), "{out}");
    let out = run_ok(&["describe", "--spec", s(&spec("pointwise2_inf"))]);
    assert!(out.contains("summary: unital (1,1), faithful, regular"), "{out}");
    let out = run_ok(&["describe", "--spec", s(&spec("ex32_2"))]);
    assert!(out.contains("summary: non-unital, faithful, regular"), "{out}");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"dim\": 2,\n  \"structure\": [\n}").unwrap();
    let out = numrange(&["describe", "--spec", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    let out = numrange(&["range", "--spec", s(&spec("ex32_1")), "-a", "1,0,0", "--out-dir", s(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    let out = numrange(&["range", "--spec", s(&spec("ex32_1")), "-a", "1+", "--out-dir", s(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(numrange(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn range_writes_segment_and_singleton() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("seg");
    run_ok(&["range", "--spec", s(&spec("ex32_1")), "-a", "1,0", "--out-dir", s(&d)]);
    let vs = vertices(&d.join("hull.json"));
    assert_eq!(vs.len(), 2);
    let lo = vs.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
    let hi = vs.iter().map(|v| v[0]).fold(f64::NEG_INFINITY, f64::max);
    assert!(lo.abs() < 1e-9 && (hi - 1.0).abs() < 1e-9, "{vs:?}");
    let csv = std::fs::read_to_string(d.join("cloud.csv")).unwrap();
    assert!(csv.starts_with("re,im,x_index,phi_index\n"));

    let d = dir.path().join("zero");
    run_ok(&["range", "--spec", s(&spec("ex32_inf")), "-a", "0,0", "--out-dir", s(&d)]);
    assert_eq!(vertices(&d.join("hull.json")), vec![[0.0, 0.0]]);
}

#[test]
fn range_embeds_provenance() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["range", "--spec", s(&spec("ex32_2")), "-a", "1,0.5-0.5i", "--seed", "3", "--out-dir", s(dir.path())]);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("hull.json")).unwrap()).unwrap();
    let prov = &doc["meta"]["provenance"];
    assert_eq!(prov["seed"], 3);
    assert_eq!(prov["spec_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(prov["profile"]["n_dual"], 50);
    let csv = std::fs::read(dir.path().join("cloud.csv")).unwrap();
    use sha2::Digest;
    assert_eq!(doc["meta"]["cloud_csv_sha256"].as_str().unwrap(), hex::encode(sha2::Sha256::digest(&csv)));
}

#[test]
fn identity_oracle_on_l1_unitization_is_the_unit_disk() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["range", "--spec", s(&spec("ex31_l1_unitize_l1")), "-a", "1,0,0", "--oracle", "identity", "--out-dir", s(dir.path())]);
    let vs = vertices(&dir.path().join("identity_hull.json"));
    assert!(vs.len() > 100);
    for v in vs {
        assert!(((v[0] * v[0] + v[1] * v[1]).sqrt() - 1.0).abs() < 1e-3, "{v:?}");
    }
}

#[test]
fn unitize_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u.json");
    run_ok(&["unitize", "--spec", s(&spec("ex32_2")), "--flavor", "op", "--out", s(&out)]);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"flavor\": \"unitize-op\""));
    let printed = run_ok(&["unitize", "--spec", s(&spec("ex32_2"))]);
    assert_eq!(printed, text);
    assert!(run_ok(&["describe", "--spec", s(&out)]).contains("identity: (0,0,1)"));
    // the non-faithful base needs --force
    assert_eq!(numrange(&["unitize", "--spec", s(&spec("ex31_l1"))]).status.code(), Some(2));
    run_ok(&["unitize", "--spec", s(&spec("ex31_l1")), "--force"]);
}

#[test]
fn verify_exit_codes() {
    let out = run_ok(&["verify", "--case", "thm24", "--spec", s(&spec("ex32_inf")), "-a", "0,1"]);
    assert!(out.contains("1 pass, 0 expected-violation, 0 fail"), "{out}");
    let out = numrange(&["verify", "--case", "no-such-case"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    let out = numrange(&["verify", "--case", "thm24"]);
    assert_eq!(out.status.code(), Some(2));
    // forcing the check on a non-regular, non-faithful algebra makes (6) fail
    let out = numrange(&["verify", "--case", "thm24", "--spec", s(&spec("ex31_l1")), "-a", "1,0", "--force"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
    // a gate violation is an input error
    let out = numrange(&["verify", "--case", "thm25", "--spec", s(&spec("pointwise2_inf")), "-a", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_are_stable_across_jobs_and_env_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = |out: &Path| {
        vec![
            "verify".to_owned(),
            "--case".into(),
            "thm26".into(),
            "--spec".into(),
            s(&spec("ex32_1")).into(),
            "-a".into(),
            "1,1".into(),
            "--lambda".into(),
            "0.5i".into(),
            "--out".into(),
            s(out).into(),
        ]
    };
    let st = Command::new(env!("CARGO_BIN_EXE_numrange")).args(args(&a)).arg("--jobs").arg("1").env("NUMRANGE_SEED", "4").output().unwrap();
    assert!(st.status.success());
    let st = Command::new(env!("CARGO_BIN_EXE_numrange")).args(args(&b)).arg("--jobs").arg("3").arg("--seed").arg("4").output().unwrap();
    assert!(st.status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(doc["provenance"]["seed"], 4);
    assert_eq!(doc["summary"]["fail"], 0);
}

#[test]
fn profile_file_is_applied() {
    let dir = tempfile::tempdir().unwrap();
    let prof = dir.path().join("p.json");
    std::fs::write(&prof, r#"{"n_sphere": 300, "n_dual": 10}"#).unwrap();
    let out = dir.path().join("r.json");
    run_ok(&["verify", "--case", "ex3.2-I", "--profile", s(&prof), "--out", s(&out)]);
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(doc["reports"][0]["profile"]["n_sphere"], 300);
    std::fs::write(&prof, r#"{"n_spheres": 300}"#).unwrap();
    assert_eq!(numrange(&["gallery", "--case", "ex3.1", "--profile", s(&prof)]).status.code(), Some(2));
}

#[test]
fn plot_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run_ok(&["range", "--spec", s(&spec("ex32_1")), "-a", "1,1", "--out-dir", s(&d.join("l1"))]);
    run_ok(&["range", "--spec", s(&spec("ex32_inf")), "-a", "1,1", "--out-dir", s(&d.join("linf"))]);
    let hulls = [s(&d.join("linf/hull.json")).to_owned(), s(&d.join("l1/hull.json")).to_owned()];
    for name in ["p1.svg", "p2.svg"] {
        run_ok(&["plot", "--hull", &hulls[0], "--hull", &hulls[1], "--cloud", s(&d.join("l1/cloud.csv")), "--out", s(&d.join(name))]);
    }
    let p1 = std::fs::read_to_string(d.join("p1.svg")).unwrap();
    assert_eq!(p1, std::fs::read_to_string(d.join("p2.svg")).unwrap());
    assert!(p1.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\""));
    assert_eq!(p1.matches("class=\"hull\"").count(), 2);
    assert!(p1.contains("class=\"unit-circle\""));
    assert!(p1.contains("nu = "));
    assert!(p1.contains("sha256"));
    let out = numrange(&["plot", "--cloud", s(&d.join("l1/hull.json")), "--out", s(&d.join("bad.svg"))]);
    assert_eq!(out.status.code(), Some(2));
}
