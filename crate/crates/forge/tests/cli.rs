use std::process::{Command, Output};

use forge::json::{model_from_json, page_json};
use forge::manifest::{reproduce, Manifest};
use forge::ForgeError;
use forge_core::ahss::{run, Page, SpectrumSpec};
use forge_core::emspaces::SpaceSpec;
use std::sync::Arc;

fn forge(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_forge"));
    c.args(args).env_remove("FORGE_WINDOW");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn builtin_manifest_has_unique_known_ids() {
    let m = Manifest::builtin();
    assert_eq!(m.version, 1);
    assert_eq!(m.entries.len(), 10);
    assert!(m.entries.iter().all(|e| !e.expected.is_empty() && !e.provenance.is_empty()));
}

#[test]
fn manifest_rejects_unknown_and_duplicate_ids() {
    let bad = r#"{"version":1,"entries":[{"id":"nope","expected":"","provenance":"computed"}]}"#;
    assert!(matches!(Manifest::parse(bad), Err(ForgeError::UnknownId(_))));
    let dup = r#"{"version":1,"entries":[
        {"id":"h5-split-space","expected":"","provenance":"computed"},
        {"id":"h5-split-space","expected":"","provenance":"computed"}]}"#;
    assert!(matches!(Manifest::parse(dup), Err(ForgeError::Manifest(_))));
    assert!(Manifest::parse(r#"{"version":2,"entries":[]}"#).is_err());
}

#[test]
fn only_filters_and_rejects_unknown_ids() {
    let m = Manifest::builtin();
    let r = reproduce(&m, &["h5-split-space".to_string()]).unwrap();
    assert_eq!(r.len(), 1);
    assert!(r[0].passed);
    assert!(matches!(reproduce(&m, &["bogus".to_string()]), Err(ForgeError::UnknownId(_))));
    let o = forge(&["reproduce", "--only", "bogus"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reproduce_fails_on_a_wrong_expectation() {
    let dir = std::env::temp_dir().join(format!("forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("m.json");
    std::fs::write(&p, r#"{"version":1,"entries":[{"id":"bosonic-two-row","expected":"degree 4: Z_4; degree 5: 0","provenance":"computed"}]}"#).unwrap();
    let o = forge(&["reproduce", "--manifest", p.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL bosonic-two-row"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reproduce_is_deterministic() {
    let a = forge(&["reproduce", "--json"], &[]);
    let b = forge(&["reproduce", "--json"], &[("FORGE_WINDOW", "5")]);
    let strip = |o: &Output| -> Vec<(String, bool, String)> {
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_array()
            .unwrap()
            .iter()
            .map(|e| (e["id"].as_str().unwrap().into(), e["passed"].as_bool().unwrap(), e["observed"].as_str().unwrap().into()))
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn page_json_matches_text() {
    let m = Arc::new(SpaceSpec::k_z2(2, "M"));
    let s = run(&m, &SpectrumSpec::sh().twisted(Some("M")), 6, None).unwrap();
    let v = page_json(&s, Page::E2).unwrap();
    let d2 = v["d2"].as_array().unwrap();
    assert_eq!(d2.len(), 5);
    let e40 = v["entries"].as_array().unwrap().iter().find(|e| e["i"] == 4 && e["j"] == 0).unwrap();
    assert_eq!(e40["group"], "Z_4");
    let inf = page_json(&s, Page::Infinity).unwrap();
    assert!(!inf["annotations"].as_array().unwrap().is_empty());
}

#[test]
fn forge_window_sets_the_default_window() {
    let o = forge(&["ahss", "run", "--base", "K(Z2,2;M)", "--twist", "M", "--json"], &[("FORGE_WINDOW", "4")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["window"], 4);
    let o = forge(&["ahss", "run", "--base", "K(Z2,2;M)"], &[("FORGE_WINDOW", "x")]);
    assert_eq!(o.status.code(), Some(2));
    let o = forge(&["ahss", "run", "--base", "K(Z2,2;M)", "--window", "5", "--json"], &[("FORGE_WINDOW", "4")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["window"], 5);
}

#[test]
fn subcommands() {
    assert_eq!(stdout(&forge(&["steenrod", "Sq2Sq2"], &[])).trim(), "Sq3Sq1");
    assert_eq!(stdout(&forge(&["discriminate", "--alpha", "Sq2E + EM + Sq2Sq1M"], &[])).trim(), "T");
    assert_eq!(forge(&["discriminate", "--alpha", "EM"], &[]).status.code(), Some(2));
    assert!(stdout(&forge(&["classify", "--particles", "boson"], &[])).contains("orbits: 1"));
    assert!(stdout(&forge(&["galois", "--no-exchange"], &[])).contains("orbits: 4"));
    assert!(stdout(&forge(&["witt-les", "--case", "d5-vanishes"], &[])).contains("want = Z_2"));
    assert_eq!(forge(&["witt-les", "--case", "d5-maybe"], &[]).status.code(), Some(2));
    assert_eq!(stdout(&forge(&["fusion", "cheshire", "--sector", "fermionic"], &[])).trim(), "c ⊗ c ≅ 1");
    assert!(stdout(&forge(&["groupcoh", "--group", "Z2", "--degree", "4"], &[])).trim().ends_with("= 0"));
    assert!(stdout(&forge(&["cohomology", "--space", "K(Z2,2;M)", "--degree", "4", "--coeff", "cx"], &[])).contains("Z_4"));
}

#[test]
fn detectability_model_json() {
    let ok = r#"{"group":"Z2","link":[1],"self":[0]}"#;
    assert!(forge_core::twogroups::detectability_scan(&model_from_json(ok).unwrap()).unwrap().passes());
    let o = forge(&["scan-detectability", "--model", ok], &[]);
    assert_eq!(o.status.code(), Some(0));
    let extra = r#"{"group":"Z2xZ2","link":[1,0],"self":[0,0]}"#;
    assert_eq!(forge(&["scan-detectability", "--model", extra], &[]).status.code(), Some(1));
    assert!(model_from_json(r#"{"group":"Z2","link":[1],"self":[0],"typo":1}"#).is_err());
    let magnetic_fermion = r#"{"group":"Z2","link":[1],"self":[1]}"#;
    assert_eq!(forge(&["scan-detectability", "--model", magnetic_fermion], &[]).status.code(), Some(2));
}
