use std::path::Path;
use std::process::{Command, Output};

use legendrian::polygon_from_json;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_legendrian"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf8 path")
}

#[test]
fn sample_then_check_reports_a_positive_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s");
    run_ok(&["sample", "--k", "3", "--seed", "1", "--out", path_str(&out)]);
    let report = run_ok(&["check", path_str(&out.join("polygon.json"))]);
    assert!(report.contains("vertices: 6"), "{report}");
    assert!(report.contains("generic: yes"), "{report}");
    assert!(
        report.contains("transversality: positive-transverse"),
        "{report}"
    );
    assert!(report.contains("decreasing curvature: yes"), "{report}");
    assert!(report.contains("positive: yes"), "{report}");
}

#[test]
fn identical_seeds_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run_ok(&["sample", "--k", "4", "--seed", "9", "--out", path_str(&a)]);
    run_ok(&["sample", "--k", "4", "--seed", "9", "--out", path_str(&b)]);
    for name in ["flags.json", "polygon.json", "polygon.svg"] {
        let x = std::fs::read(a.join(name)).unwrap();
        let y = std::fs::read(b.join(name)).unwrap();
        assert_eq!(x, y, "{name} differs between identical runs");
    }
}

#[test]
fn polygon_of_inverts_the_sampled_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s");
    run_ok(&["sample", "--k", "5", "--seed", "3", "--out", path_str(&out)]);
    let rebuilt = run_ok(&["polygon-of", path_str(&out.join("flags.json"))]);
    let stored = std::fs::read_to_string(out.join("polygon.json")).unwrap();
    assert_eq!(rebuilt, stored);
}

#[test]
fn flags_of_round_trips_to_an_equivalent_polygon() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s");
    run_ok(&["sample", "--k", "4", "--seed", "5", "--out", path_str(&out)]);
    let polygon_path = out.join("polygon.json");
    let flags = run_ok(&["flags-of", path_str(&polygon_path)]);
    let flags_path = dir.path().join("recovered.json");
    std::fs::write(&flags_path, flags).unwrap();
    let rebuilt = run_ok(&["polygon-of", path_str(&flags_path)]);

    let original = polygon_from_json(&std::fs::read_to_string(&polygon_path).unwrap()).unwrap();
    let recovered = polygon_from_json(&rebuilt).unwrap();
    assert!(recovered.equiv_up_to_positive_scaling(&original));
}

#[test]
fn translate_with_zero_radius_matches_render() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s");
    run_ok(&["sample", "--k", "3", "--seed", "2", "--out", path_str(&out)]);
    let polygon = out.join("polygon.json");

    let frames = dir.path().join("frames");
    let log = run_ok(&[
        "translate",
        path_str(&polygon),
        "--r",
        "0",
        "--frames",
        "1",
        "--out",
        path_str(&frames),
    ]);
    assert!(log.contains("transversality: positive-transverse"), "{log}");

    let direct = dir.path().join("direct.svg");
    run_ok(&["render", path_str(&polygon), "--out", path_str(&direct)]);

    let frame = std::fs::read(frames.join("frame_001.svg")).unwrap();
    let plain = std::fs::read(&direct).unwrap();
    assert_eq!(frame, plain, "zero translation must not change the render");
}

#[test]
fn check_surfaces_a_broken_closure_condition() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    // Consecutive vertices e1, e4 pair to 1 under the symplectic form, so
    // the segment between them is not tangent to the contact structure.
    std::fs::write(
        &bad,
        r#"{
  "sign": "-",
  "vertices": [
    ["1", "0", "0", "0"],
    ["0", "0", "0", "1"],
    ["0", "1", "0", "0"],
    ["0", "0", "1", "0"]
  ]
}
"#,
    )
    .unwrap();
    let out = run(&["check", path_str(&bad)]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not incident"), "{err}");
}

#[test]
fn maslov_reports_nesting_and_rejects_tangency() {
    let dir = tempfile::tempdir().unwrap();
    let nested = dir.path().join("nested.json");
    std::fs::write(
        &nested,
        r#"{
  "circles": [
    {"center": ["0", "0"], "radius": "1"},
    {"center": ["0", "0"], "radius": "2"},
    {"center": ["0", "0"], "radius": "3"}
  ]
}
"#,
    )
    .unwrap();
    assert_eq!(run_ok(&["maslov", path_str(&nested)]), "maslov: +1\n");

    let tangent = dir.path().join("tangent.json");
    std::fs::write(
        &tangent,
        r#"{
  "circles": [
    {"center": ["0", "0"], "radius": "1"},
    {"center": ["2", "0"], "radius": "-1"},
    {"center": ["5", "0"], "radius": "1"}
  ]
}
"#,
    )
    .unwrap();
    let out = run(&["maslov", path_str(&tangent)]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("tangent"), "{err}");
}

#[test]
fn veronese_writes_the_osculating_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v");
    run_ok(&["veronese", "--samples", "5", "--out", path_str(&out)]);
    let json = std::fs::read_to_string(out.join("osculating.json")).unwrap();
    assert!(json.contains("\"circles\""));
    let svg = std::fs::read_to_string(out.join("osculating.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("circle") || svg.contains("path"));
}
