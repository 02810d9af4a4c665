use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fold3d::io::ResultDocument;

fn fold3d(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fold3d"));
    cmd.args(args).env_remove("FOLD3D_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const I1: &str = r#"{"points": {"P": [1, 2, 3], "Q": [-1, 0.5, 2]},
    "constraints": [{"type": "I1", "args": {"point": "P", "target": "Q"}}]}"#;

#[test]
fn enumerate_prints_fifty_lines_or_a_json_array() {
    let o = fold3d(&["enumerate"], &[]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 50);
    assert_eq!(text.lines().filter(|l| l.starts_with("rejected ")).count(), 3);

    let o = fold3d(&["enumerate", "--json"], &[]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 47);
}

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let i1 = write(dir.path(), "i1.json", I1);
    let out = dir.path().join("doc.json");
    let o = fold3d(&["solve", i1.to_str().unwrap(), "--json", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc = ResultDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.planes().unwrap().len(), 1);
    let saved = ResultDocument::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(saved, doc);

    let skew = write(
        dir.path(),
        "skew.json",
        r#"{"points": {"P": [0, 0, 1]},
            "lines": {"m": {"point": [0, 0, -1], "dir": [1, 0, 0]}, "n": {"point": [3, 1, 0], "dir": [0.3, 1, 0.2]}},
            "constraints": [{"type": "I5", "args": {"point": "P", "line": "m"}}, {"type": "I9", "args": {"line": "n"}}]}"#,
    );
    assert_eq!(code(&fold3d(&["solve", skew.to_str().unwrap()], &[])), 2);

    let family = write(
        dir.path(),
        "family.json",
        r#"{"points": {"P": [0, 0, 1]}, "lines": {"m": {"point": [0, 0, -1], "dir": [1, 0, 0]}},
            "planes": {"pi": {"normal": [0, 0, 1], "offset": -1}},
            "constraints": [{"type": "I5", "args": {"point": "P", "line": "m"}},
                            {"type": "I6", "args": {"point": "P", "plane": "pi"}}]}"#,
    );
    assert_eq!(code(&fold3d(&["solve", family.to_str().unwrap()], &[])), 3);

    let planes = write(
        dir.path(),
        "i11.json",
        r#"{"planes": {"a": {"coeffs": [1, 0, 0, 0]}, "b": {"coeffs": [0, 1, 0, 0]}, "c": {"coeffs": [0, 0, 1, 0]}},
            "constraints": [{"type": "I11", "args": {"plane": "a"}}, {"type": "I11", "args": {"plane": "b"}},
                            {"type": "I11", "args": {"plane": "c"}}]}"#,
    );
    let o = fold3d(&["solve", planes.to_str().unwrap(), "--spec", "3·I11"], &[]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid combination"));

    let broken = write(dir.path(), "broken.json", r#"{"points": {"P": [0, 1]}}"#);
    let o = fold3d(&["solve", broken.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("points.P"));

    assert_eq!(code(&fold3d(&["solve", "/nonexistent/scene.json"], &[])), 1);
}

#[test]
fn tolerance_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let i1 = write(dir.path(), "i1.json", I1);
    let o = fold3d(&["solve", i1.to_str().unwrap(), "--json"], &[("FOLD3D_TOL", "1e-7")]);
    assert_eq!(ResultDocument::from_json(&stdout(&o)).unwrap().tolerance, 1e-7);
    let o = fold3d(&["solve", i1.to_str().unwrap(), "--json", "--tol", "1e-5"], &[("FOLD3D_TOL", "1e-7")]);
    assert_eq!(ResultDocument::from_json(&stdout(&o)).unwrap().tolerance, 1e-5);
}

#[test]
fn solved_planes_pass_verify() {
    let dir = tempfile::tempdir().unwrap();
    let i1 = write(dir.path(), "i1.json", I1);
    let o = fold3d(&["solve", i1.to_str().unwrap(), "--json"], &[]);
    let doc = ResultDocument::from_json(&stdout(&o)).unwrap();
    let p = doc.planes().unwrap()[0];
    let n = p.normal();
    let good = format!("{},{},{},{}", n.x, n.y, n.z, p.offset());
    let o = fold3d(&["verify", i1.to_str().unwrap(), "--plane", &good], &[]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("pass"));

    let bad = format!("{},{},{},{}", n.x, n.y, n.z, p.offset() + 0.1);
    assert_eq!(code(&fold3d(&["verify", i1.to_str().unwrap(), "--plane", &bad], &[])), 2);
}

#[test]
fn oracle_and_envelope_commands() {
    let dir = tempfile::tempdir().unwrap();
    let i1 = write(dir.path(), "i1.json", I1);
    let o = fold3d(&["oracle", i1.to_str().unwrap(), "--resolution", "24", "--json"], &[]);
    assert_eq!(code(&o), 0);
    let doc = ResultDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.resolution, Some(24));
    assert_eq!(doc.planes().unwrap().len(), 1);

    let i6 = write(
        dir.path(),
        "i6.json",
        r#"{"points": {"P": [0, 0, 1]}, "planes": {"pi": {"normal": [0, 0, 1], "offset": -1}},
            "constraints": [{"type": "I6", "args": {"point": "P", "plane": "pi"}}]}"#,
    );
    let mesh = dir.path().join("i6.obj");
    let o = fold3d(&["envelope", i6.to_str().unwrap(), "--planes", "2", "--out", mesh.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&mesh).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("o ")).count(), 3);

    let o = fold3d(&["envelope", i1.to_str().unwrap(), "--out", mesh.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 1);
}
