use std::process::{Command, Output};

use serde_json::Value;

const SURFACE: &str = "(s^2, t^2, s^2 - 1, s^2 + 1)";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mubasis")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    (serde_json::from_slice(&out.stdout).expect("json document"), out.status.code().unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["compute", SURFACE]).status.code(), Some(0));
    assert_eq!(run(&["compute", "(s, s, s, s^2)"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "(s^5, t, 1, s)", "--max-degree", "3"]).status.code(), Some(4));
    let bad = "(-t^2, 1, t^2, 0), (-2, 0, 1, 1), (1, 0, s^2, 0)";
    assert_eq!(run(&["verify", SURFACE, "--basis", bad]).status.code(), Some(3));
    assert_eq!(run(&["compute"]).status.code(), Some(2));
}

#[test]
fn syntax_errors_report_positions() {
    let (doc, code) = json(&["compute", "(s, t, 1, 2x)", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(doc["status"], "error");
    assert_eq!(doc["error"]["kind"], "invalid_input");
    let msg = doc["error"]["message"].as_str().unwrap();
    assert!(msg.starts_with("syntax error at position 11"), "{msg}");
    let (doc, _) = json(&["compute", "(s**2, t, 1, 2)", "--json"]);
    assert!(doc["error"]["message"].as_str().unwrap().contains("'**'"));
}

#[test]
fn documents_are_reproducible() {
    let args = ["compute", "(s t + 1, s^2 - t, t^2 + s, 3)", "--json", "--seed", "7"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert_eq!(a, b);
    let (doc, _) = json(&args);
    assert!(doc.get("timings").is_none());
    let (doc, _) = json(&["compute", SURFACE, "--json", "--timings"]);
    assert!(doc["timings"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn input_file() {
    let dir = std::env::temp_dir().join(format!("mubasis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("input.txt");
    std::fs::write(&path, format!("{SURFACE}\n")).unwrap();
    let (doc, code) = json(&["compute", "-i", path.to_str().unwrap(), "--json"]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, 0);
    assert_eq!(doc["input"][2], "s^2 - 1");
    assert_eq!(doc["degrees"].as_array().unwrap().len(), 3);
}

#[test]
fn resolve_and_bounds_commands() {
    let (doc, code) = json(&["resolve", SURFACE, "--json"]);
    assert_eq!(code, 0);
    assert!(doc["basis"].is_null());
    assert_eq!(doc["resolution"]["homogenized"][2], "s^2 - u^2");
    assert_eq!(doc["resolution"]["ranks"], serde_json::json!([4, 4, 1]));

    let (doc, code) = json(&["bounds", SURFACE, "--json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["bounds"]["reg_bound"], 4);
    assert_eq!(doc["bounds"]["lazard"], 2);
    assert_eq!(doc["bounds"]["all_pass"], true);
}

#[test]
fn free_syzygy_module_branch() {
    // two generators: the syzygies are e3, e4 and the Koszul relation
    let (doc, code) = json(&["compute", "(s - 1, s t + 2 t - 3, 0, 0)", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["branch"], "pd1");
    let mut degrees: Vec<u64> = doc["degrees"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    degrees.sort();
    assert_eq!(degrees, vec![0, 0, 2]);
    assert!(doc["completion"].is_null());
}
