use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn kml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kml"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn pn_reports_cokernel_rank() {
    let out = kml(&["verify", "pn", "--n", "2", "--truncation", "16", "-q"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "kml-report/1");
    assert_eq!(r["checks"][0]["verdict"], "pass");
    assert_eq!(r["checks"][0]["witness"]["cokernel_rank"], 3);
}

#[test]
fn adams_prints_the_factorization_and_its_value() {
    let out = kml(&["verify", "adams", "--p", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["checks"].as_array().unwrap().len(), 1);
    assert_eq!(r["checks"][0]["witness"]["cofactor_at_one"], "8");
    let lines = String::from_utf8(out.stderr).unwrap();
    assert!(lines.contains("psi_2("), "{lines}");
    assert!(lines.contains("cofactor(1,...,1) = 8"), "{lines}");
}

#[test]
fn non_commuting_cube_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let id = r#"{"rows":2,"cols":2,"entries":[["1","0"],["0","1"]]}"#;
    let cube = format!(
        r#"{{"base":"Z","directions":["1","2"],
            "vertices":{{"{{}}":2,"{{1}}":2,"{{2}}":2,"{{1,2}}":2}},
            "boundaries":{{
              "{{1}}":{{"1":{id}}},
              "{{2}}":{{"2":{id}}},
              "{{1,2}}":{{"1":{{"rows":2,"cols":2,"entries":[["0","1"],["0","0"]]}},
                          "2":{{"rows":2,"cols":2,"entries":[["0","0"],["1","0"]]}}}}}}}}"#
    );
    let path = write(dir.path(), "bad.json", &cube);
    for args in [
        vec!["homology", "--cube", path.to_str().unwrap()],
        vec!["compute", "homology", "--cube", path.to_str().unwrap()],
    ] {
        let out = kml(&args);
        assert_eq!(out.status.code(), Some(2));
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains("square at {1,2} in directions 1 and 2"), "{err}");
    }
}

#[test]
fn commuting_cube_homology() {
    let dir = tempfile::tempdir().unwrap();
    // Koszul square of (2, 3) on Z: H_0 = Z/(2,3) = 0
    let cube = r#"{"directions":["a","b"],
        "vertices":{"{}":1,"{a}":1,"{b}":1,"{a,b}":1},
        "boundaries":{
          "{a}":{"a":{"rows":1,"cols":1,"entries":[["2"]]}},
          "{b}":{"b":{"rows":1,"cols":1,"entries":[["3"]]}},
          "{a,b}":{"a":{"rows":1,"cols":1,"entries":[["2"]]},"b":{"rows":1,"cols":1,"entries":[["3"]]}}}}"#;
    let path = write(dir.path(), "koszul.json", cube);
    let out = kml(&["compute", "homology", "--cube", path.to_str().unwrap(), "-q"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let groups: Vec<&str> = r["checks"][0]["witness"]["homology"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["group"].as_str().unwrap())
        .collect();
    assert_eq!(groups, ["0", "0", "0"]);
}

#[test]
fn reports_are_deterministic_per_seed() {
    let run = |seed: &str| kml(&["verify", "one-minus-s", "--seed", seed, "--count", "6", "-q"]).stdout;
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
}

#[test]
fn schema_errors_name_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "x.json",
        r#"{"vars":1,"truncation":1,"base":"Z","components":[1,1],
            "maps":{"t1":[{"rows":1,"cols":1,"entries":[["1/2"]]}]}}"#,
    );
    let out = kml(&["compute", "k0-class", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("maps.t1[0].entries[0][0]"), "{err}");

    let path = write(dir.path(), "y.json", r#"{"vars":1,"truncation":1,"components":[1,true]}"#);
    let out = kml(&["compute", "koszul", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("components[1]"), "{err}");
}

#[test]
fn base_flag_must_agree_with_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "x.json", r#"{"vars":1,"truncation":2,"base":"Q","components":[1,0,0]}"#);
    let out = kml(&["compute", "k0-class", "--input", path.to_str().unwrap(), "--base", "Z"]);
    assert_eq!(out.status.code(), Some(2));
    let out = kml(&["compute", "k0-class", "--input", path.to_str().unwrap(), "--base", "Q", "-q"]);
    assert_eq!(out.status.code(), Some(0));
    // a point in degree 0: T_0 in degree 0, T_1 in degree 1
    assert_eq!(report(&out)["checks"][0]["witness"]["class"], "s^0 - s^1");
}

#[test]
fn snf_of_a_literal() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "m.json", r#"{"ring":"Z","rows":2,"cols":2,"entries":[["2","4"],["6","8"]]}"#);
    let out = kml(&["compute", "snf", "--matrix", path.to_str().unwrap(), "-q"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["checks"][0]["witness"]["diagonal"], serde_json::json!(["2", "4"]));
}

#[test]
fn out_file_and_summary_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let out = kml(&["verify", "split", "--base", "Fp:5", "--dim", "2", "--n", "1", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lines = String::from_utf8(out.stdout).unwrap();
    assert!(lines.contains("pass        split/dim=2/n=1"), "{lines}");
    let r: Value = serde_json::from_str(&fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(r["checks"][0]["witness"]["cokernel"]["free_rank"], 4);
}

#[test]
fn non_verdicts_block_unless_allowed() {
    let dir = tempfile::tempdir().unwrap();
    // x = Z, phi = 2, y = 512 Z needs index 9, above the bound of 8
    let doc = r#"{"base":"Z","dim":1,"endos":[{"rows":1,"cols":1,"entries":[["2"]]}],
                  "sub":{"rows":1,"cols":1,"entries":[["512"]]}}"#;
    let path = write(dir.path(), "ar.json", doc);
    let out = kml(&["verify", "artin-rees", "--input", path.to_str().unwrap(), "-q"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["checks"][0]["verdict"], "non-verdict");
    let out = kml(&["verify", "artin-rees", "--input", path.to_str().unwrap(), "--allow-non-verdict", "-q"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn stability_of_a_given_filtration() {
    let dir = tempfile::tempdir().unwrap();
    // x = Z^2, phi = diag(2, 3), x_n = phi^n x
    let step = |a: u32| format!(r#"{{"rows":2,"cols":2,"entries":[["{}","0"],["0","{}"]]}}"#, 2u64.pow(a), 3u64.pow(a));
    let doc = format!(
        r#"{{"dim":2,"endos":[{}],"filtration":[{},{},{}]}}"#,
        step(1),
        step(1),
        step(2),
        step(3)
    );
    let path = write(dir.path(), "fil.json", &doc);
    let out = kml(&["verify", "stability", "--input", path.to_str().unwrap(), "-q"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["checks"][0]["witness"]["stable_from"], 0);
}

#[test]
fn unknown_ring_is_rejected_by_the_parser() {
    let out = kml(&["verify", "pn", "--base", "Fp:9"]);
    assert_eq!(out.status.code(), Some(2));
}
