mod common;

use std::fs;

use serde_json::Value;
use strictcat::io::{from_json, to_json, Fin2CatDoc, FinCatDoc, SsetDoc};

use common::{cases, data, manifest_dir, strictcat};

#[test]
fn reports_match_golden_files_and_repeat_byte_for_byte() {
    let mut covered = std::collections::BTreeSet::new();
    for (name, args) in cases() {
        covered.insert(args[0]);
        let first = strictcat(&args);
        assert!(first.status.success(), "{name}: {}", String::from_utf8_lossy(&first.stderr));
        let second = strictcat(&args);
        assert_eq!(first.stdout, second.stdout, "{name}: two runs differ");
        let golden = fs::read(manifest_dir().join("tests/golden").join(format!("{name}.json"))).unwrap();
        assert_eq!(String::from_utf8_lossy(&first.stdout), String::from_utf8_lossy(&golden), "{name}: differs from golden");
    }
    assert_eq!(covered.len(), 24, "every subcommand has a sample: {covered:?}");
}

#[test]
fn reports_are_canonical() {
    for (name, _) in cases() {
        let text = fs::read_to_string(manifest_dir().join("tests/golden").join(format!("{name}.json"))).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(to_json(&v) + "\n", text, "{name}");
    }
}

#[test]
fn sample_documents_round_trip() {
    for entry in fs::read_dir(manifest_dir().join("tests/data")).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let raw: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(to_json(&raw) + "\n", text, "{} is not canonical", path.display());
        let o = raw.as_object().unwrap();
        let again = if o.contains_key("hcompose1") {
            to_json(&from_json::<Fin2CatDoc>(&text).unwrap())
        } else if o.contains_key("face") {
            to_json(&from_json::<SsetDoc>(&text).unwrap())
        } else if o.contains_key("compose") {
            to_json(&from_json::<FinCatDoc>(&text).unwrap())
        } else {
            continue;
        };
        assert_eq!(again + "\n", text, "{}", path.display());
    }
}

#[test]
fn out_flag_writes_the_same_report() {
    let dir = std::env::temp_dir().join(format!("strictcat-out-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let target = dir.join("report.json");
    let out = strictcat(&["homology", "--degree", "2", "tests/data/boundary3.json", "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let golden = fs::read(manifest_dir().join("tests/golden/homology.json")).unwrap();
    assert_eq!(fs::read(&target).unwrap(), golden);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn malformed_json_names_the_offending_key() {
    let dir = std::env::temp_dir().join(format!("strictcat-bad-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    fs::write(&bad, "{\n  \"dim_bound\": 1,\n  \"cells\": {\"0\": [\"a\"], \"1\": [7]},\n  \"face\": [],\n  \"degeneracy\": []\n}\n").unwrap();
    let out = strictcat(&["homology", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cells.1[0]") && err.contains("line 3"), "{err}");

    fs::write(&bad, "{\"objects\": [\"x\"], \"arrows\": [], \"compose\": [], \"identity\": {}, \"extra\": 0}").unwrap();
    let out = strictcat(&["nerve", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("extra"));

    fs::write(&bad, "{\"dim_bound\": 0, \"cells\": {\"0\": [\"v\"]}, \"face\": []").unwrap();
    let out = strictcat(&["homology", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn out_of_range_parameters_fail() {
    let out = strictcat(&["delta-tilde", "9"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
    let out = strictcat(&["homology", "--degree", "5", data("boundary3.json").to_str().unwrap()]);
    assert!(!out.status.success());
    let out = strictcat(&["pi1", "--basepoint", "nowhere", "tests/data/circle.json"]);
    assert!(!out.status.success());
    let out = strictcat(&["homology", "--format", "yaml", "tests/data/circle.json"]);
    assert!(!out.status.success());
}
