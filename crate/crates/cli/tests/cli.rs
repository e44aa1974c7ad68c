use std::path::Path;
use std::process::{Command, Output};

fn sepforge(args: &[&str], dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sepforge"));
    cmd.args(args).env_remove("SEPFORGE_MAX_VERTICES");
    if let Some(d) = dir {
        cmd.current_dir(d);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tangle_listing() {
    let o = sepforge(&["tangles", "TwoK4", "--k", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let o = sepforge(&["tangles", "TwoK4", "--k", "4"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().is_empty());
}

#[test]
fn block_listing() {
    let o = sepforge(&["blocks", "TwoK4", "--k", "4"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!([[0, 1, 2, 3], [2, 3, 4, 5]]));
}

#[test]
fn glued_dot_output() {
    let o = sepforge(&["decompose", "TwoK4", "--mode", "glued", "--profiles", "blocks:4", "--format", "dot"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("graph td {"));
    assert!(text.contains("{0,1,2,3}") && text.contains("{2,3,4,5}"));
    assert_eq!(text.matches(" -- ").count(), 1);
}

#[test]
fn every_mode_runs() {
    for mode in ["fixed-k", "totd", "glued"] {
        for format in ["json", "dot", "text"] {
            let o = sepforge(&["decompose", "ThreeK4Path", "--mode", mode, "--profiles", "blocks:4", "--format", format], None);
            assert_eq!(o.status.code(), Some(0), "{mode} {format}");
        }
    }
}

#[test]
fn verify_reports_uncovered_edge() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad_td.json");
    std::fs::write(&bad, r#"{"nodes":[{"id":0,"part":[0,1]},{"id":1,"part":[2]}],"edges":[{"u":0,"v":1,"adhesion":[]}]}"#).unwrap();
    let o = sepforge(&["verify", "P3", bad.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("edge 1-2 lies in no part"));
}

#[test]
fn verify_and_canonicity_accept_constructed_output() {
    let dir = tempfile::tempdir().unwrap();
    let td = dir.path().join("td.json");
    let o = sepforge(&["decompose", "TwoK4Pendant", "--mode", "glued", "--profiles", "blocks:4"], None);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&td, &o.stdout).unwrap();
    let path = td.to_str().unwrap();
    let o = sepforge(&["verify", "TwoK4Pendant", path, "--profiles", "blocks:4"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = sepforge(&["canonicity", "TwoK4Pendant", path], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn canonicity_rejects_a_lopsided_set() {
    let dir = tempfile::tempdir().unwrap();
    let seps = dir.path().join("seps.json");
    std::fs::write(&seps, r#"[{"A":[0,1],"B":[1,2]}]"#).unwrap();
    let o = sepforge(&["canonicity", "P3", seps.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["moved_by"], serde_json::json!([[2, 1, 0]]));
}

#[test]
fn oracle_suites_pass_on_fixtures() {
    for g in ["P3", "C4", "C6", "K4", "TwoK4", "TwoK4Pendant", "ThreeK4Path", "Star13"] {
        for check in ["corners", "crossing-inequality", "opposite-corners", "roundtrip"] {
            let o = sepforge(&["oracle", g, "--check", check, "--seed", "3"], None);
            assert_eq!(o.status.code(), Some(0), "{g} {check}: {}", stdout(&o));
        }
    }
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let loops = dir.path().join("loop.txt");
    std::fs::write(&loops, "0 1\n1 1\n").unwrap();
    let o = sepforge(&["export", loops.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let big = dir.path().join("big.txt");
    std::fs::write(&big, (0..17).map(|v| format!("{v}\n")).collect::<String>()).unwrap();
    assert_eq!(sepforge(&["export", big.to_str().unwrap()], None).status.code(), Some(3));
    assert_eq!(
        sepforge(&["--max-vertices", "20", "export", big.to_str().unwrap()], None).status.code(),
        Some(0)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_sepforge"))
        .args(["export", big.to_str().unwrap()])
        .env("SEPFORGE_MAX_VERTICES", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(sepforge(&["--max-vertices", "25", "export", "P3"], None).status.code(), Some(3));
    assert_eq!(sepforge(&["--max-order", "2", "tangles", "K4", "--k", "4"], None).status.code(), Some(3));
    assert_eq!(sepforge(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(sepforge(&["decompose", "P3", "--profiles", "nonsense"], None).status.code(), Some(2));
}

#[test]
fn fixture_names_shadowed_by_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("P3"), "0 1\n").unwrap();
    let o = sepforge(&["export", "P3", "--format", "text"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(2));
    let o = sepforge(&["--file", "export", "P3", "--format", "text"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 1\n");
    let o = sepforge(&["export", "P3", "--format", "text"], None);
    assert_eq!(stdout(&o), "0 1\n1 2\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["decompose", "TwoK4Pendant", "--mode", "totd", "--profiles", "blocks:4"];
    assert_eq!(sepforge(&args, None).stdout, sepforge(&args, None).stdout);
}
