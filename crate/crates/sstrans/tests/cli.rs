//! End-to-end checks of the command-line binary: exit codes, deterministic
//! output, and round-tripping through the text format.

use std::path::PathBuf;
use std::process::{Command, Output};

fn sstrans(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sstrans"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("sstrans-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("write temp file");
    path
}

#[test]
fn gen_validate_and_sig_round_trip() {
    let gen = sstrans(&["gen", "--n", "6", "--d", "2", "--e", "3"]);
    assert!(gen.status.success());
    let machine = stdout(&gen);
    let file = tmp_file("gen23.txt", &machine);
    let file = file.to_str().unwrap();

    let validate = sstrans(&["validate", file]);
    assert!(validate.status.success());
    assert!(stdout(&validate).contains("sync_level=1"));

    let sig = sstrans(&["sig", file]);
    assert!(sig.status.success());
    assert_eq!(stdout(&sig), "sig = 3 (mod 5)\n");

    let json = sstrans(&["sig", "--json", file]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).expect("valid json");
    assert_eq!(doc["residue"], 3);
    assert_eq!(doc["modulus"], 5);
}

#[test]
fn minimize_output_is_deterministic_and_reparses() {
    let gen = sstrans(&["marker", "--a", "0,1", "--b", "0,2", "--n", "3"]);
    assert!(gen.status.success());
    let file = tmp_file("m31.txt", &stdout(&gen));
    let file = file.to_str().unwrap();

    let a = sstrans(&["minimize", file]);
    let b = sstrans(&["minimize", file]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical output across runs");

    let min = tmp_file("m31-min.txt", &stdout(&a));
    let revalidate = sstrans(&["validate", min.to_str().unwrap()]);
    assert!(revalidate.status.success(), "minimized machine reparses");
}

#[test]
fn format_errors_exit_2_and_domain_errors_exit_1() {
    let garbage = tmp_file("garbage.txt", "this is not a machine\n");
    let bad = sstrans(&["validate", garbage.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));

    // A valid machine that is outside the requested group's domain.
    let gen = sstrans(&["gen", "--n", "4", "--d", "2", "--e", "2"]);
    let file = tmp_file("gen22.txt", &stdout(&gen));
    let onr = sstrans(&["member", "--group", "Onr", file.to_str().unwrap()]);
    assert_eq!(onr.status.code(), Some(2), "missing --r is a usage error");

    let missing = sstrans(&["sig", "/nonexistent/machine.txt"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn member_reports_dn_witness() {
    // Length-preserving on circuits, but the 0-loop state a1 is not a
    // homeomorphism state, so the membership report names it as witness.
    let text = "alphabet 2\nstates a1 a2 a3 a4 a5 a6\n\
                edge a1 0 a1 0\nedge a1 1 a2 -\n\
                edge a2 0 a3 1,1,0\nedge a2 1 a4 0\n\
                edge a3 0 a1 -\nedge a3 1 a5 -\n\
                edge a4 0 a3 0,1,0\nedge a4 1 a6 1,1,1\n\
                edge a5 0 a3 1,0\nedge a5 1 a4 -\n\
                edge a6 0 a3 0\nedge a6 1 a6 1\n";
    let file = tmp_file("dn-witness.txt", text);
    let out = sstrans(&["member", "--group", "Dn", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "false (witness state a1)\n");
}

#[test]
fn dot_export_mentions_every_state() {
    let gen = sstrans(&["gen", "--n", "6", "--d", "3", "--e", "2"]);
    let file = tmp_file("gen32.txt", &stdout(&gen));
    let dot = sstrans(&["minimize", "--dot", file.to_str().unwrap()]);
    assert!(dot.status.success());
    let text = stdout(&dot);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("rankdir=LR"));
}
