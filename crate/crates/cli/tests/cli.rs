use std::io::Write;
use std::process::{Command, Output, Stdio};

const HIRZEBRUCH: &str = r#"{
  "rays": [[1,0],[-1,1],[0,-1],[0,1]],
  "max_cones": [[0,3],[3,1],[1,2],[2,0]],
  "variables": ["x0","x1","y0","y1"],
  "degrees": [[1,1,1,0],[0,0,1,1]],
  "ideal": ["x1^2*y0^2 + x0^3*x1*y1^2", "x1*y0^2*y1^2 + x0^3*y1^4"]
}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child =
        Command::new(env!("CARGO_BIN_EXE_toric-segre")).args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn human_output_from_stdin() {
    let o = run(&[], HIRZEBRUCH);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("section degree: alpha = (6,4)"), "{s}");
    assert!(s.contains("s_1 = -6*D_x0*D_y0   (degree -6)"), "{s}");
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let a = run(&["--format", "json", "--seed", "5"], HIRZEBRUCH);
    let b = run(&["--format", "json", "--seed", "5"], HIRZEBRUCH);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["alpha"], serde_json::json!([6, 4]));
    assert_eq!(v["provenance"]["seed"], 5);
    assert_eq!(v["segre"][1]["degree"], -6);
}

#[test]
fn input_file_check_and_verbose() {
    let path = std::env::temp_dir().join(format!("toric-segre-cli-{}.json", std::process::id()));
    std::fs::write(&path, HIRZEBRUCH).unwrap();
    let o = run(&["--input", path.to_str().unwrap(), "--check", "--verbose"], "");
    std::fs::remove_file(&path).ok();
    assert!(o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("check: ranks by codimension: [1, 2, 1]"), "{err}");
    assert!(err.contains("rows used"), "{err}");
}

#[test]
fn errors_map_to_exit_codes() {
    let o = run(&[], r#"{"rays": [[1,0],[1,2],[0,-1]], "max_cones": [[0,1],[1,2],[2,0]], "ideal": ["z0"]}"#);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error[E_NOT_SMOOTH] in stage fan"));
    let o = run(&[], "{ not json");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--input", "/nonexistent/input.json"], "");
    assert_eq!(o.status.code(), Some(2));
}
