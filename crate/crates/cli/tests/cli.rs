use std::path::PathBuf;
use std::process::{Command, Output};

use eqnielsen::report::Report;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../problems")
        .join(format!("{name}.json"))
}

fn nf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nf"))
        .args(args)
        .output()
        .expect("nf runs")
}

fn nf_path(cmd: &str, name: &str, extra: &[&str]) -> Output {
    let path = problem(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    nf(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json_report(name: &str) -> Report {
    let out = nf_path("invariants", name, &["--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    Report::from_json(&stdout(&out)).unwrap()
}

#[test]
fn objects_lists_rows() {
    let out = nf_path("objects", "reflection_s2__identity", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 3);
    let out = nf_path("objects", "tetrahedral_s2__identity", &[]);
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "bad.json", r#"{"group": {"kind": "cyclic"}}"#);
    let out = nf(&["objects", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("schema error"), "{}", stderr(&out));
    let out = nf(&["objects", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // a vertex map that does not commute with the action
    let p = write_temp(
        &dir,
        "not_equivariant.json",
        r#"{"group": {"kind": "cyclic", "order": 2},
            "complex": {"vertices": 3, "facets": [[0, 1], [1, 2]], "action": [[2, 1, 0]]},
            "map": {"images": [0, 0, 1]}}"#,
    );
    let out = nf(&["invariants", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn infinite_fundamental_group_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // wedge of two circles
    let p = write_temp(
        &dir,
        "wedge.json",
        r#"{"group": {"kind": "trivial"},
            "complex": {"vertices": 5, "facets": [[0, 1], [1, 2], [0, 2], [0, 3], [3, 4], [0, 4]]},
            "map": {"images": [0, 1, 2, 3, 4]}}"#,
    );
    let out = nf(&["--coset-cap", "200", "invariants", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("component"), "{}", stderr(&out));
}

#[test]
fn free_s3_identity_is_affirmative() {
    let r = json_report("free_z_2_on_s3__identity");
    for row in &r.rows {
        let v = row.invariants.as_ref().unwrap();
        assert_eq!(v.L, 0);
        assert!(v.lambda.is_empty() && v.nu.is_empty());
        assert_eq!((v.N_G, v.N_upper_G), (0, 0));
    }
    assert!(r.converse.affirmative);
    assert!(r.verdict.text.contains("G-homotopic to a fixed point free G-map"));
}

#[test]
fn s4_reflection_identity() {
    let r = json_report("reflection_s4__identity");
    for (row, o) in r.rows.iter().zip(&r.objects) {
        let v = row.invariants.as_ref().unwrap();
        assert_eq!(v.N_G, 0);
        if o.isotropy == 1 {
            assert_eq!(v.N_upper_G, 1);
            assert_eq!(row.gap.diagnosis, "codimension 1 < 2");
        }
    }
    assert!(!r.converse.affirmative);
}

#[test]
fn moved_components_are_marked() {
    let r = json_report("rotation_s2__reflection");
    let moved: Vec<_> = r.rows.iter().filter(|row| row.invariants.is_none()).collect();
    assert_eq!(moved.len(), 2);
    assert!(moved.iter().all(|row| row.note.as_deref().unwrap().starts_with("n/a")));
}

#[test]
fn verify_passes_and_reports_skips() {
    let out = nf_path("verify", "rotation_s2__identity", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS fixed-point L^QAut"));
    let out = nf_path("verify", "octahedral_s2__degree_two", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("SKIP fixed-point data"));
    assert!(stdout(&out).contains("PASS homology Lefschetz"));
}

#[test]
fn verify_reports_mismatch() {
    let text = std::fs::read_to_string(problem("reflection_s4__identity")).unwrap();
    let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
    file["fixed_points"][1]["sign"] = serde_json::json!(1);
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "corrupted.json", &file.to_string());
    let out = nf(&["verify", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL fixed-point"));
}

#[test]
fn report_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let target = dir.path().join(format!("report{threads}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_nf"))
            .env("NF_THREADS", threads)
            .args([
                "report",
                problem("rotation_s2__half_turn").to_str().unwrap(),
                "-o",
                target.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        outputs.push(std::fs::read_to_string(&target).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let r = Report::from_json(&outputs[0]).unwrap();
    assert_eq!(r.to_json(), outputs[0]);
}

#[test]
fn text_output_names_the_invariants() {
    let out = nf_path("invariants", "rp3__flip", &["--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for key in ["lambda_G", "nu_G", "L^QAut", "N^G", "dichotomy", "converse:"] {
        assert!(text.contains(key), "missing {key} in\n{text}");
    }
}
