use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn stl(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stl")).current_dir(dir).args(args).env_remove("STL_MAX_TRUNC").output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> Value {
    let o = stl(dir, args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn setup() -> TempDir {
    let d = TempDir::new().unwrap();
    for (args, file) in [
        (vec!["build", "gl", "--m", "1", "--n", "1"], "gl11.json"),
        (vec!["build", "gl", "--m", "2", "--n", "1"], "gl21.json"),
        (vec!["build", "gl", "--parities", "0,1,0"], "gl21d.json"),
        (vec!["build", "gl", "--parities", "1,0,1"], "gl12.json"),
    ] {
        let mut a = args.clone();
        a.extend(["--out", file]);
        assert_eq!(stl(d.path(), &a).status.code(), Some(0));
    }
    for (of, out) in [("gl11.json", "gl11tak.json"), ("gl12.json", "gl12tak.json"), ("gl21.json", "gl21tak.json"), ("gl21d.json", "gl21dtak.json")] {
        assert_eq!(stl(d.path(), &["build", "takiff", "--of", of, "--out", out]).status.code(), Some(0));
    }
    assert_eq!(stl(d.path(), &["build", "principal", "--alg", "gl12.json", "--out", "e.json"]).status.code(), Some(0));
    d
}

fn read(d: &Path, f: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(d.join(f)).unwrap()).unwrap()
}

#[test]
fn takiff_dimension_contract() {
    let d = setup();
    for (base, tak) in [("gl11.json", "gl11tak.json"), ("gl21.json", "gl21tak.json"), ("gl12.json", "gl12tak.json")] {
        let b = read(d.path(), base)["dim"].as_u64().unwrap();
        let t = read(d.path(), tak)["dim"].as_u64().unwrap();
        assert_eq!(t, 2 * b + 1);
    }
}

#[test]
fn span_of_principal_pair_is_osp12() {
    let d = setup();
    let e = read(d.path(), "e.json");
    let gens = serde_json::json!({"e": e["e"], "f": e["f"]});
    std::fs::write(d.path().join("ef.json"), gens.to_string()).unwrap();
    let v = ok(d.path(), &["build", "span", "--in", "gl12.json", "--gens", "ef.json"]);
    assert_eq!(v["dim"], 5);
}

#[test]
fn verify_suites_pass() {
    let d = setup();
    let runs: &[&[&str]] = &[
        &["verify", "algebra", "--alg", "gl21tak.json"],
        &["verify", "takiff", "--alg", "gl12tak.json"],
        &["verify", "fock-lift", "--alg", "gl11tak.json", "--c", "1", "--deg", "3"],
        &["verify", "highest-weight", "--alg", "gl21.json", "--c", "-1/2"],
        &["verify", "factorization", "--alg", "gl11.json", "--trunc", "6"],
        &["verify", "skryabin", "--alg", "gl12tak.json", "--e", "e.json"],
        &["verify", "appendix", "--alg", "gl12tak.json", "--deg", "2"],
        &["verify", "regularity", "--alg", "gl12tak.json"],
    ];
    for args in runs {
        let v = ok(d.path(), args);
        assert_eq!(v["pass"], true, "{args:?}");
    }
}

#[test]
fn whittaker_covariance_with_eta() {
    let d = setup();
    let eta = serde_json::json!({"algebra": "x", "domain": ["bar(E_12)", "bar(E_23)"], "values": {"bar(E_12)": "2", "bar(E_23)": "0+1*i"}});
    std::fs::write(d.path().join("eta.json"), eta.to_string()).unwrap();
    let v = ok(d.path(), &["verify", "whittaker-covariance", "--alg", "gl21dtak.json", "--eta", "eta.json", "--c", "2"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn corrupted_algebra_fails_with_witness() {
    let d = setup();
    let mut j = read(d.path(), "gl21.json");
    j.as_object_mut().unwrap().remove("root_datum");
    let b = &mut j["brackets"][3]["coeff"];
    *b = Value::String("7".into());
    std::fs::write(d.path().join("bad.json"), j.to_string()).unwrap();
    let o = stl(d.path(), &["verify", "algebra", "--alg", "bad.json"]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["pass"], false);
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["pass"] == false && c["witness"].is_string()));
}

#[test]
fn reports_are_byte_stable() {
    let d = setup();
    let args = ["verify", "highest-weight", "--alg", "gl11tak.json", "--seed", "7"];
    let a = stl(d.path(), &args).stdout;
    let b = stl(d.path(), &args).stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["seed"], 7);
    let c1 = stl(d.path(), &["character", "--alg", "gl21.json", "--trunc", "3"]).stdout;
    let c2 = stl(d.path(), &["character", "--alg", "gl21.json", "--trunc", "3"]).stdout;
    assert_eq!(c1, c2);
}

#[test]
fn character_tables() {
    let d = setup();
    let j = ok(d.path(), &["character", "--alg", "gl11.json", "--trunc", "3"]);
    let f = ok(d.path(), &["character", "--alg", "gl11.json", "--trunc", "3", "--kind", "fock-formula"]);
    assert_eq!(j["terms"], f["terms"]);
    let o = stl(d.path(), &["character", "--alg", "gl11.json", "--trunc", "2", "--format", "tsv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("height\toffset\tweight\tmult"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn whittaker_command() {
    let d = setup();
    // zero character on the untwisted Fock space: the vacuum is a solution
    let zero = serde_json::json!({"algebra": "x", "domain": ["bar(E_12)"], "values": {}});
    std::fs::write(d.path().join("zero.json"), zero.to_string()).unwrap();
    let v = ok(d.path(), &["whittaker", "--alg", "gl11tak.json", "--chi", "zero.json", "--trunc", "2"]);
    assert!(v["dim"].as_u64().unwrap() >= 1);
    assert_eq!(v["full_check"], true);
    // mismatched: bar(E_12) lowers degree, so it has no non-zero eigenvalue
    let bad = serde_json::json!({"algebra": "x", "domain": ["bar(E_12)"], "values": {"bar(E_12)": "1"}});
    std::fs::write(d.path().join("bad.json"), bad.to_string()).unwrap();
    let v = ok(d.path(), &["whittaker", "--alg", "gl11tak.json", "--chi", "bad.json", "--trunc", "2"]);
    assert_eq!(v["dim"], 0);
    assert_eq!(v["vectors"].as_array().unwrap().len(), 0);
    let v = ok(d.path(), &["whittaker", "--module", "gelfand-graev", "--alg", "gl12tak.json", "--trunc", "1"]);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["previous_dim"], 1);
}

#[test]
fn truncation_cap_and_usage_errors() {
    let d = setup();
    let o = stl(d.path(), &["character", "--alg", "gl11.json", "--trunc", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("STL_MAX_TRUNC"));
    let o = Command::new(env!("CARGO_BIN_EXE_stl"))
        .current_dir(d.path())
        .args(["character", "--alg", "gl11.json", "--trunc", "2"])
        .env("STL_MAX_TRUNC", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stl(d.path(), &["verify", "algebra"]).status.code(), Some(2));
    assert_eq!(stl(d.path(), &["verify", "nonsense", "--alg", "gl11.json"]).status.code(), Some(2));
    assert_eq!(stl(d.path(), &["verify", "fock-lift", "--alg", "gl11tak.json", "--c", "0"]).status.code(), Some(2));
    assert_eq!(stl(d.path(), &["build", "takiff", "--of", "gl11tak.json"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let d = setup();
    let o = stl(d.path(), &["verify", "regularity", "--alg", "gl12tak.json", "--out", "r.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let p: PathBuf = d.path().join("r.json");
    assert_eq!(read(d.path(), p.file_name().unwrap().to_str().unwrap())["suite"], "regularity");
}
