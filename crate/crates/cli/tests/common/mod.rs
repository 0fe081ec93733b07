#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn data(name: &str) -> PathBuf {
    manifest_dir().join("tests/data").join(name)
}

/// Runs the binary from the crate directory so reports never see absolute paths.
pub fn strictcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strictcat")).args(args).current_dir(manifest_dir()).output().expect("binary runs")
}

/// `(golden file stem, arguments)` for every sample invocation.
pub fn cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("validate-sset", vec!["validate", "tests/data/boundary2.json"]),
        ("validate-broken", vec!["validate", "tests/data/broken.json"]),
        ("validate-fincat", vec!["validate", "tests/data/span.json"]),
        ("validate-fin2cat", vec!["validate", "tests/data/delta2.json"]),
        ("validate-pres", vec!["validate", "tests/data/pres_simplex2.json"]),
        ("nerve", vec!["nerve", "--max-dim", "3", "tests/data/span.json"]),
        ("nerve2", vec!["nerve2", "--max-dim", "2", "tests/data/delta2.json"]),
        ("delta-tilde", vec!["delta-tilde", "2"]),
        ("sd", vec!["sd", "tests/data/boundary2.json"]),
        ("ex", vec!["ex", "--max-dim", "2", "tests/data/interval.json"]),
        ("alpha-beta", vec!["alpha-beta", "--max-dim", "2", "tests/data/interval.json"]),
        ("cat-of", vec!["cat-of", "tests/data/simplex2.json"]),
        ("twocat-of", vec!["twocat-of", "tests/data/simplex2.json"]),
        ("realize", vec!["realize", "tests/data/pres_simplex2.json"]),
        ("realize-circle", vec!["realize", "tests/data/pres_circle.json"]),
        ("realize-2", vec!["realize", "tests/data/pres2_simplex2.json"]),
        ("slice", vec!["slice", "--object", "1", "tests/data/functor.json"]),
        ("slice2", vec!["slice2", "--object", "2", "tests/data/two_functor.json"]),
        ("elements", vec!["elements", "--max-dim", "2", "tests/data/interval.json"]),
        ("final", vec!["final", "tests/data/span.json"]),
        ("final-2", vec!["final", "tests/data/delta2.json"]),
        ("lift", vec!["lift", "tests/data/lift.json"]),
        ("rlp", vec!["rlp", "--max-dim", "2", "tests/data/edge_to_point.json"]),
        ("factorize", vec!["factorize", "--max-dim", "3", "--budget", "4", "tests/data/boundary2_to_point.json"]),
        ("hpushout", vec!["hpushout", "--degree", "2", "tests/data/circle_span.json"]),
        ("homology", vec!["homology", "--degree", "2", "tests/data/boundary3.json"]),
        ("pi1", vec!["pi1", "tests/data/circle.json"]),
        ("evidence", vec!["evidence", "--degree", "2", "tests/data/simplex2_to_point.json"]),
        ("evidence2", vec!["evidence2", "--max-dim", "4", "--degree", "2", "tests/data/delta2_to_point.json"]),
        ("localizer-check", vec!["localizer-check", "--marked", "tests/data/marked.json", "tests/data/universe.json"]),
        ("localizer-closure", vec!["localizer-closure", "tests/data/universe.json"]),
        ("localizer-closure-2", vec!["localizer-closure", "tests/data/universe2.json"]),
    ]
}
