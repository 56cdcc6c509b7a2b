use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn kc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kc"))
        .args(args)
        .env("KC_FIXTURES", fixtures())
        .env_remove("RUST_LOG")
        .output()
        .expect("kc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn count(text: &str, pat: &str) -> usize {
    text.lines().filter(|l| l.contains(pat)).count()
}

#[test]
fn validate_reports_census_and_primality() {
    let o = kc(&["validate", "borromean.json"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("bigons: 0\n"), "{s}");
    assert!(s.contains("triangles: 8\n"), "{s}");
    assert!(s.contains("prime: pass"));

    let o = kc(&["validate", "granny.pd"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("prime: fail (regions"));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = std::env::temp_dir().join(format!("kc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.pd");
    std::fs::write(&bad, "X[1,2,3]").unwrap();
    let o = kc(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    assert_eq!(kc(&["validate", "missing.json"]).status.code(), Some(2));
    assert_eq!(kc(&["export", "figure8.json", "--what", "nothing"]).status.code(), Some(2));
    assert_eq!(kc(&["export", "figure8.json", "--what", "hasse"]).status.code(), Some(2));
    assert_eq!(kc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn alexander_methods_agree() {
    let o = kc(&["alexander", "knot2112.json", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for m in ["cluster", "lattice", "matrix"] {
        assert!(s.contains(&format!("{m}: t^-2 - 3*t^-1 + 5 - 3*t + t^2\n")), "{s}");
    }
    assert!(s.ends_with("agree: true\n"));
    assert!(stdout(&kc(&["alexander", "hopf.json"])).contains("matrix: 1 - t\n"));
    assert!(stdout(&kc(&["alexander", "trefoil.pd", "--method", "lattice"])).contains("lattice: t^-1 - 1 + t\n"));
}

#[test]
fn two_bridge_generator_matches_the_fixture() {
    let o = kc(&["gen-two-bridge", "2,1,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("kc-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let generated = stdout(&kc(&["alexander", path.to_str().unwrap(), "--method", "matrix"]));
    let fixture = stdout(&kc(&["alexander", "knot2112.json", "--method", "matrix"]));
    assert_eq!(generated, fixture);
    assert_eq!(kc(&["gen-two-bridge", "1"]).status.code(), Some(2));
    assert!(stdout(&kc(&["gen-two-bridge", "3", "--fmt", "pd"])).starts_with("X["));
}

#[test]
fn knot_cluster_dumps_the_seed() {
    let s = stdout(&kc(&["knot-cluster", "hopf.json"]));
    for i in 1..=4 {
        assert!(s.contains(&format!("  F: 1 + y{i}\n")), "{s}");
    }
    let o = kc(&["knot-cluster", "figure8.json", "--replay", "figure8.replay.json"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("sigma: (1 5)(2 6)(3 7)(4 8)\n"), "{s}");
    assert!(s.contains("all green: true\n"));
    assert!(s.contains("  F: 1 + y1 + y1*y4 + y1*y6 + y1*y4*y6\n"));
}

#[test]
fn replay_without_a_diagram_argument() {
    let replay = fixtures().join("borromean.replay.json");
    let o = kc(&["--json", "knot-cluster", "--replay", replay.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sigma"], serde_json::json!([[1, 12], [2, 10], [3, 11], [4, 5], [6, 7], [8, 9]]));
    assert_eq!(v["all_green"], false);
    assert_eq!(v["positions"].as_array().unwrap().len(), 12);
}

#[test]
fn verify_passes_on_the_corpus() {
    let o = kc(&["verify", "hopf.json", "trefoil.pd", "figure8.json", "borromean.json", "knot2112.json"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{s}");
    assert_eq!(count(&s, "FAIL"), 0);
    assert_eq!(count(&s, "PASS"), 45);
}

#[test]
fn flipped_clock_is_caught() {
    let o = kc(&["--seed-of-truth", "cw", "verify", "figure8.json"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("FAIL knot cluster: F_1 vs F_T("), "{s}");
    assert_eq!(kc(&["--seed-of-truth", "ccw", "verify", "figure8.json"]).status.code(), Some(0));
    assert_eq!(kc(&["--seed-of-truth", "up", "verify", "figure8.json"]).status.code(), Some(2));
}

#[test]
fn exports() {
    let dot = stdout(&kc(&["export", "knot2112.json", "--what", "quiver"]));
    assert_eq!(count(&dot, "->"), 20);
    assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->")).count(), 12);
    let full = stdout(&kc(&["export", "knot2112.json", "--what", "quiver", "--full"]));
    assert_eq!(count(&full, "->"), 24);

    let hasse = stdout(&kc(&["export", "figure8.json", "--what", "hasse", "--segment", "5"]));
    assert_eq!(hasse.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 5);
    assert_eq!(count(&hasse, "->"), 5);

    let j = kc(&["export", "figure8.json", "--what", "hasse", "--segment", "5", "--fmt", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["states"].as_array().unwrap().len(), 5);

    let d = stdout(&kc(&["export", "figure8.json", "--what", "diagram", "--fmt", "json"]));
    assert_eq!(d, std::fs::read_to_string(fixtures().join("figure8.json")).unwrap());
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "verify", "borromean.json", "knot2112.json"];
    assert_eq!(kc(&args).stdout, kc(&args).stdout);
}
