//! End-to-end tests of the binary: outputs, exit codes, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn asreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn decompose_sample() {
    let out = asreg(&["decompose", data("d2a4.txt").to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("dim=2 alpha=4 f=4 codim=2"), "{text}");
    assert!(
        text.contains("class 4: h=(2, 2) deg_h=1 ideal=(y1, y2) gamma={(2, 6), (6, 2)}"),
        "{text}"
    );
    assert!(text.contains("seminormal=false"), "{text}");
}

#[test]
fn decompose_seminormal_sample_reports_properties() {
    let out = asreg(&["decompose", data("d4a2_seminormal.txt").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dim=4"), "{text}");
    assert!(text.contains("seminormal=true"), "{text}");
}

#[test]
fn regularity_of_curve() {
    let out = asreg(&["regularity", data("curve40.txt").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "reg=13\nred=11\n");
}

#[test]
fn properties_lists_bound_checks() {
    let out = asreg(&["properties", data("d3a3.txt").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("reg=2"), "{text}");
    assert!(text.contains("red_le_deg_minus_codim"), "{text}");
    assert!(!text.contains("satisfied=false"), "{text}");
}

#[test]
fn malformed_header_exits_2() {
    let dir = std::env::temp_dir().join("asreg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_header.txt");
    std::fs::write(&path, "2\n4 0\n0 4\n3 1\n1 3\n").unwrap();
    let out = asreg(&["decompose", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("header"), "{}", stderr(&out));
}

#[test]
fn missing_corner_exits_2_and_names_the_rule() {
    let dir = std::env::temp_dir().join("asreg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("missing_corner.txt");
    std::fs::write(&path, "2 4\n4 0\n3 1\n1 3\n").unwrap();
    let out = asreg(&["regularity", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("missing corner generator (0, 4)"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn unreadable_file_exits_2() {
    let out = asreg(&["decompose", "/nonexistent/nowhere.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn veronese_closed_forms() {
    let out = asreg(&["veronese", "20", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("reg=10"), "{text}");
    assert!(text.contains("deg_minus_codim=524098"), "{text}");
}

#[test]
fn veronese_pipeline_cross_check_small() {
    let out = asreg(&["veronese", "3", "2", "--pipeline"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("pipeline_reg=1"), "{text}");
    assert!(text.contains("pipeline_f=4"), "{text}");
    assert!(text.contains("pipeline=ok"), "{text}");
}

#[test]
fn veronese_pipeline_out_of_scale_exits_3() {
    let out = asreg(&["veronese", "20", "2", "--pipeline"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cap"), "{}", stderr(&out));
}

#[test]
fn degree_cap_flag_exits_3() {
    let out = asreg(&[
        "regularity",
        data("d2a4.txt").to_str().unwrap(),
        "--max-degree",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_sample_and_random_corpus() {
    let out = asreg(&["verify", data("d2a4.txt").to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("apery_oracle: ok"), "{text}");
    assert!(text.contains("verify: ok"), "{text}");

    let out = asreg(&["verify", "--random", "3", "--seed", "11"]);
    assert!(out.status.success(), "{}", stderr(&out));

    let out = asreg(&["verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn prime_field_mode() {
    let out = asreg(&[
        "regularity",
        data("d2a4.txt").to_str().unwrap(),
        "--char",
        "5",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "reg=2\nred=2\n");

    let out = asreg(&[
        "regularity",
        data("d2a4.txt").to_str().unwrap(),
        "--char",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not prime"), "{}", stderr(&out));
}

#[test]
fn json_output_is_deterministic_and_round_trips() {
    let path = data("d2a4.txt");
    let first = asreg(&["decompose", path.to_str().unwrap(), "--json"]);
    let second = asreg(&["decompose", path.to_str().unwrap(), "--json"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let text = stdout(&first);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["f"], 4);
    assert_eq!(value["regularity"], 2);
    assert_eq!(value["classes"][3]["h"], serde_json::json!([2, 2]));
    assert_eq!(
        value["classes"][3]["ideal_gens"],
        serde_json::json!([[1, 0], [0, 1]])
    );
    assert_eq!(value["classes"][3]["in_gamma_set"], true);
    // re-serialization of the parsed report is byte-identical
    let reparsed: asreg_core::Report = serde_json::from_str(&text).unwrap();
    assert_eq!(
        serde_json::to_string_pretty(&reparsed).unwrap(),
        text.trim_end()
    );
}

#[test]
fn veronese_json_uses_exact_numbers() {
    let out = asreg(&["veronese", "20", "2", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["regularity"], 10);
    assert_eq!(value["deg"], 524288);
    assert_eq!(value["deg_minus_codim"], 524098);
}
