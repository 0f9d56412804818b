use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Runs the binary from the fixtures directory so that file arguments
/// resolve there. Returns stdout, stderr and the exit code.
pub fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_dcomplete"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let cases: Vec<Value> =
        serde_json::from_str(&fs::read_to_string(fixtures().join("cases.json")).unwrap()).unwrap();
    let mut failures = Vec::new();
    for case in &cases {
        let name = case["name"].as_str().unwrap();
        let args: Vec<&str> = case["args"]
            .as_array()
            .unwrap()
            .iter()
            .map(|a| a.as_str().unwrap())
            .collect();
        let (stdout, stderr, code) = run(&args);
        let expected_code = case["exit"].as_i64().unwrap() as i32;
        if code != expected_code {
            failures.push(format!(
                "{name}: exit {code}, expected {expected_code}; stderr: {stderr}"
            ));
            continue;
        }
        let shown = if code == 2 { stderr } else { stdout };
        let path = fixtures().join(format!("{name}.out"));
        if update {
            fs::write(&path, &shown).unwrap();
        } else if fs::read_to_string(&path).ok().as_deref() != Some(shown.as_str()) {
            failures.push(format!(
                "{name}: output differs from {}:\n{shown}",
                path.display()
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
