//! End-to-end runs of the command-line binary.

mod common;

use common::{fixture, run_cli};

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn builtin_matches_the_golden_files() {
    for (spec, file) in [("gl:1,1", "gl11.alg"), ("osp:1,2", "osp12.alg"), ("glz:1,1", "glz11.alg")] {
        let o = run_cli(&["builtin", spec], None);
        assert!(o.status.success(), "{}", stderr(&o));
        assert_eq!(stdout(&o), std::fs::read_to_string(fixture(file)).unwrap(), "{spec}");
    }
    let o = run_cli(&["builtin", "gl:1,1", "--format", "json"], None);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("gl11.json")).unwrap());
}

#[test]
fn functor_output_matches_the_golden_file() {
    let o = run_cli(&["functor", "gl:1,1", "--op", "F", "--n", "3"], None);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("f3_gl11.alg")).unwrap());
}

#[test]
fn json_pipeline_verifies() {
    let built = run_cli(&["builtin", "osp:1,2", "--format", "json"], None);
    let f = run_cli(&["functor", "--op", "F", "--n", "2", "--format", "json"], Some(&built.stdout));
    assert!(f.status.success(), "{}", stderr(&f));
    let v = run_cli(&["verify", "--format", "json"], Some(&f.stdout));
    assert_eq!(v.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert!(report.to_string().contains("pass"), "{report}");
}

#[test]
fn corrupted_fixture_names_the_triple() {
    let path = fixture("gl11_corrupted.alg");
    let o = run_cli(&["verify", path.to_str().unwrap(), "--format", "json"], None);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("\"E12\"") && text.contains("\"E21\""), "{text}");
    assert!(text.contains("-2*E12"), "{text}");
}

#[test]
fn cover_and_lift() {
    let dir = tempfile::tempdir().unwrap();
    let c2 = dir.path().join("c2.bundle");
    let c3 = dir.path().join("c3.bundle");
    for (n, path) in [("2", &c2), ("3", &c3)] {
        let o = run_cli(&["cover", "gl:1,1", "--n", n, "--emit-bundle", path.to_str().unwrap()], None);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    assert_eq!(
        std::fs::read_to_string(&c2).unwrap(),
        std::fs::read_to_string(fixture("cover_gl11_n2.bundle")).unwrap()
    );
    let o = run_cli(&["verify", c3.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = run_cli(&["lift", "--psi", c2.to_str().unwrap(), "--cover", c3.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("morphism lift"), "{}", stdout(&o));

    // The top degree of F'_3 has nowhere to go in F'_2.
    let o = run_cli(&["lift", "--psi", c3.to_str().unwrap(), "--cover", c2.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unit_normalization_fails_the_covering() {
    let o = run_cli(&["cover", "gl:1,1", "--n", "2", "--normalization", "unit"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = run_cli(&["cover", "gl:1,1", "--infinite-truncate", "3"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn matrix_realization_runs() {
    let o = run_cli(&["matrix", "gl:2,1", "--n", "3"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(run_cli(&["builtin", "gl:x"], None).status.code(), Some(2));
    assert_eq!(run_cli(&["verify"], Some(b"algebra x\nbasis a () sideways\n")).status.code(), Some(2));
    assert_eq!(run_cli(&["verify"], Some(b"{ not json")).status.code(), Some(2));
    assert_eq!(run_cli(&["functor", "gl:1,1", "--op", "F"], None).status.code(), Some(2));
    assert_eq!(run_cli(&["nonsense"], None).status.code(), Some(2));
    let o = run_cli(&["verify"], Some(b"algebra x\nbasis a () sideways\n"));
    assert!(stderr(&o).contains("2:12: syntax error"), "{}", stderr(&o));
}
