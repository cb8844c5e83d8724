//! End-to-end tests of the command-line surface, including exit codes
//! (0 success, 1 computation failure, 2 usage error).

use std::process::{Command, Output};

fn mb13(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mb13"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn steenrod_reduce_emits_admissible_monomials() {
    let out = mb13(&["steenrod", "reduce", "Sq(2,2)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "Sq(3,1)\n");

    let out = mb13(&["steenrod", "reduce", "1,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0\n");

    let out = mb13(&["steenrod", "reduce", "Sq(2,3)"]);
    assert_eq!(stdout(&out), "Sq(5)\nSq(4,1)\n");
}

#[test]
fn steenrod_basis_listing() {
    let out = mb13(&["steenrod", "basis", "A", "3"]);
    assert_eq!(stdout(&out), "Sq(3)\nSq(2,1)\n");

    let out = mb13(&["steenrod", "basis", "A", "0"]);
    assert_eq!(stdout(&out), "Sq()\n");

    let out = mb13(&["steenrod", "basis", "A2", "8"]);
    assert!(out.status.success());
    // Sq8 is not in A(2)
    assert!(!stdout(&out).contains("Sq(8)"));
}

#[test]
fn charclass_json_record() {
    let out = mb13(&["charclass", "--s", "5", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["s"], 5);
    assert_eq!(v["c1"], -5);
    assert_eq!(v["c2"], 15);
    assert_eq!(v["p1"], -5);
    assert_eq!(v["w2"], 1);
    assert_eq!(v["w4"], 1);
    assert_eq!(v["case"], "Case4");
}

#[test]
fn ext_resolve_json_chart() {
    let out = mb13(&[
        "ext", "resolve", "--module", "trivial", "--profile", "A2", "--smax", "4", "--tmax",
        "16", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["range"]["s_max"], 4);
    // c0 sits at (3, 8)
    let c0 = v["dots"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["s"] == 3 && d["stem"] == 8)
        .expect("c0 dot");
    assert_eq!(c0["rank"], 1);
}

#[test]
fn ext_resolve_reads_module_files() {
    let dir = std::env::temp_dir().join("mb13-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("module.txt");
    std::fs::write(&path, "cap 8\ngen a 0\ngen b 2\nsq 2 a = b\n").unwrap();
    let out = mb13(&[
        "ext",
        "resolve",
        "--module",
        path.to_str().unwrap(),
        "--profile",
        "A2",
        "--smax",
        "3",
        "--tmax",
        "12",
        "--format",
        "ascii",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("s= 0"));
}

#[test]
fn sseq_verdict_json() {
    let out = mb13(&["sseq", "verdict", "--s", "6", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["case"], "Case3");
    assert_eq!(v["two_primary"]["Z2"]["generator"], "h₁c₀x²U");
    assert_eq!(v["three_primary"], "AtMostZ3");
}

#[test]
fn sseq_page_contains_figure_labels() {
    let out = mb13(&["sseq", "page", "--s", "1", "--stem", "13", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    let dot = v["dots"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["s"] == 4 && d["stem"] == 13)
        .expect("filtration-4 dot at stem 13");
    assert_eq!(dot["labels"][0], "h₁c₀x²U");
}

#[test]
fn classify_pair_and_subcommands() {
    let out = mb13(&["classify", "--s1", "5", "--s2", "5", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["relation"], "Diffeomorphic");

    let out = mb13(&["classify", "realize", "--s", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["k"], 1);
    assert_eq!(v["smooth"], true);

    let out = mb13(&["classify", "fiber", "--k1", "1", "--k2", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["fiber_homotopy_equivalent"], false);
}

#[test]
fn negative_arguments_are_accepted() {
    let out = mb13(&["charclass", "--s", "-5", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["p1"], 5);
    assert_eq!(v["case"], "Case2");

    let out = mb13(&["classify", "--s1", "-1", "--s2", "23", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["relation"], "HomotopyEquivalent");
}

#[test]
fn exit_codes() {
    // computation failure: spin input
    let out = mb13(&["classify", "--s1", "4", "--s2", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("spin"));

    // usage error: unknown flag
    let out = mb13(&["classify", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));

    // success
    let out = mb13(&["charclass", "--s", "0"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn svg_output_is_self_contained() {
    let out = mb13(&["sseq", "page", "--s", "2", "--stem", "all", "--format", "svg"]);
    assert!(out.status.success());
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("</svg>"));
    assert!(!svg.contains("http://") || svg.contains("xmlns"));
}

#[test]
fn selftest_quick_passes() {
    let out = mb13(&["selftest", "--depth", "quick"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("OK:"));
}
