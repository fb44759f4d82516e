//! End-to-end runs of the installed binary.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_basym"))
}

fn write_session(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("basym-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const GOLDEN: &str = "\
field 32003;
grading Z^1;
ring x:1 y:1 z:1;
phi 1;
ideal I = x^2, y^5, z^8;
window t=1..4 wcap=60;
";

#[test]
fn verify_exits_zero_on_the_golden_session() {
    let input = write_session("golden.session", GOLDEN);
    let json_path = input.with_extension("json");
    let out = bin()
        .args(["verify", "--input"])
        .arg(&input)
        .args(["--ell", "2", "--threads", "2", "--json"])
        .arg(&json_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("ALL MATCH"), "{stdout}");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(json["all_match"], serde_json::json!(true));
    assert_eq!(json["seed"], serde_json::json!(0));
}

#[test]
fn verify_output_is_deterministic() {
    let input = write_session("golden2.session", GOLDEN);
    let run = || {
        let out = bin()
            .args(["verify", "--input"])
            .arg(&input)
            .args(["--ell", "1"])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .filter(|l| !l.contains("ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(run(), run());
}

#[test]
fn shape_and_rees_commands_print_certificates() {
    let input = write_session("golden3.session", GOLDEN);
    let out = bin()
        .args(["shape", "--input"])
        .arg(&input)
        .args(["--ell", "2"])
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("threshold t >= (2)"), "{stdout}");
    assert!(stdout.contains("delta=(15)"), "{stdout}");

    let out = bin().args(["rees", "--input"]).arg(&input).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("3 generators"), "{stdout}");

    let out = bin().args(["gb", "--input"]).arg(&input).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("reduced basis of I"), "{stdout}");
}

#[test]
fn window_overrides_apply() {
    let input = write_session("golden4.session", GOLDEN);
    let out = bin()
        .args(["verify", "--input"])
        .arg(&input)
        .args(["--ell", "0", "--t", "1..2", "--wcap", "40"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("t=(2)"), "{stdout}");
    assert!(!stdout.contains("t=(3)"), "{stdout}");
}

#[test]
fn parse_failures_are_reported_with_positions() {
    let input = write_session("bad.session", "grading Z^1;\nring x:1;\nideal K = x + y;\n");
    let out = bin()
        .args(["verify", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 3"), "{stderr}");
}
