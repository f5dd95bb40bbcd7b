use std::path::PathBuf;

use serde_json::Value;
use silting_cli::run;

fn fx(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn tmp(name: &str, contents: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p.display().to_string()
}

fn silting(args: &[&str]) -> (i32, Value, String) {
    let out = run(std::iter::once("silting").chain(args.iter().copied()));
    let json = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, json, out.stderr)
}

fn claim<'a>(report: &'a Value, id: &str) -> &'a str {
    report["claims"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap()["status"].as_str().unwrap()
}

const A2_TILTING: &str = r#"{"summands": [
    {"terms": {"0": [{"vertex": "1"}]}},
    {"terms": {"-1": [{"vertex": "2"}], "0": [{"vertex": "1"}]}, "differentials": {"-1": [[[{"coef": 1, "path": ["alpha"]}]]]}}
]}"#;

#[test]
fn enumerate_a2() {
    let (code, r, _) = silting(&["enumerate-2silt", "--algebra", &fx("a2.alg.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["count"], 5);
    assert_eq!(r["data"]["complete"], true);
}

#[test]
fn induce_on_tilting_t() {
    let t = tmp("a2_tilting.json", A2_TILTING);
    let (code, r, err) = silting(&["induce", "--algebra", &fx("a2.alg.json"), "--silting", &t]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(r["data"]["pi_bijective"], true);
    assert_eq!(r["data"]["t_tilting"], true);
    assert_eq!(r["data"]["dim_B"], 3);
    assert!(r["data"]["peirce_note"].is_string());
}

#[test]
fn verify_fixture_passes() {
    let (code, r, _) = silting(&["verify", "--fixture", "a3_zero_rel"]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["annihilator_dim"], 0);
    assert_eq!(r["data"]["tilting_S"], true);
    assert_eq!(r["data"]["dim_B"], 5);
    assert_eq!(claim(&r, "h0_support_tau_tilting"), "pass");
    for f in ["a2", "a3", "kx3"] {
        assert_eq!(silting(&["verify", "--fixture", f]).0, 0, "{f}");
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--fixture", "a3_zero_rel", "--seed", "7"];
    let a = run(std::iter::once("silting").chain(args));
    let b = run(std::iter::once("silting").chain(args));
    let c = run(std::iter::once("silting").chain(args).chain(["--jobs", "3"]));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("report.json");
    let d = run(std::iter::once("silting").chain(args).chain(["--output", out.to_str().unwrap(), "--format", "table"]));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), a.stdout);
    assert!(d.stdout.contains("all claims pass"));
}

#[test]
fn input_errors_exit_2() {
    let bad_alg = tmp(
        "bad.alg.json",
        r#"{"quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "2", "to": "1"}]},
            "relations": [[{"coef": 1, "path": ["a"]}]]}"#,
    );
    let (code, _, err) = silting(&["enumerate-2silt", "--algebra", &bad_alg]);
    assert_eq!(code, 2);
    assert!(err.contains("non-admissible"), "{err}");
    let d2 = tmp(
        "d2.json",
        r#"{"summands": [{"terms": {"-1": [{"vertex": "3"}], "0": [{"vertex": "2"}], "1": [{"vertex": "1"}]},
            "differentials": {"-1": [[[{"coef": 1, "path": ["beta"]}]]], "0": [[[{"coef": 1, "path": ["alpha"]}]]]}}]}"#,
    );
    let (code, _, err) = silting(&["check-silting", "--algebra", &fx("a3.alg.json"), "--silting", &d2]);
    assert_eq!(code, 2);
    assert!(err.contains("degree -1"), "{err}");
    assert_eq!(silting(&["check-silting", "--algebra", "/nonexistent.json", "--silting", &d2]).0, 2);
    assert_eq!(silting(&["verify", "--fixture", "nope"]).0, 2);
    assert_eq!(silting(&["induce", "--algebra", &fx("a2.alg.json")]).0, 2);
    assert_eq!(silting(&["bogus"]).0, 2);
}

#[test]
fn failing_claims_exit_1() {
    let t = tmp("p1.json", r#"{"summands": [{"terms": {"0": [{"vertex": "1"}]}}]}"#);
    let (code, r, _) = silting(&["check-silting", "--algebra", &fx("a2.alg.json"), "--silting", &t]);
    assert_eq!(code, 1);
    assert_eq!(claim(&r, "t_presilting"), "pass");
    assert_eq!(claim(&r, "t_silting"), "fail");
    let (code, r, _) = silting(&["check-tilting", "--algebra", &fx("a2.alg.json"), "--silting", &tmp("a2t.json", A2_TILTING)]);
    assert_eq!(code, 0);
    assert_eq!(claim(&r, "t_tilting"), "pass");
}

#[test]
fn mutate_and_torsion() {
    let t = tmp("a2_tilting_m.json", A2_TILTING);
    let (code, r, _) =
        silting(&["mutate", "--algebra", &fx("a2.alg.json"), "--silting", &t, "--index", "0", "--direction", "left"]);
    assert_eq!(code, 0);
    assert_eq!(claim(&r, "mutation_silting"), "pass");
    let (code, r, _) = silting(&[
        "torsion",
        "--algebra",
        &fx("a3_zero_rel.alg.json"),
        "--silting",
        &fx("a3_zero_rel.T.json"),
        "--modules",
        &fx("a3_zero_rel.modules.json"),
        "--assume-rep-finite",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["exhaustive"], true);
    assert_eq!(r["data"]["a_side"].as_array().unwrap().len(), 5);
}

#[test]
fn field_override() {
    let (code, r, _) = silting(&["enumerate-2silt", "--algebra", &fx("a3_zero_rel.alg.json"), "--field", "fp:5"]);
    assert_eq!(code, 0);
    let (_, q, _) = silting(&["enumerate-2silt", "--algebra", &fx("a3_zero_rel.alg.json")]);
    assert_eq!(r["data"]["count"], q["data"]["count"]);
    assert_eq!(silting(&["enumerate-2silt", "--algebra", &fx("a2.alg.json"), "--field", "fp:4"]).0, 2);
}
