#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Runs the binary inside the golden directory so that relative paths in
/// the echoed command match the recorded reports.
pub fn run(args: &[&str]) -> Output {
    run_in(&golden_dir(), args, &[])
}

pub fn run_in(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_crookedlab"));
    cmd.args(args).current_dir(dir).env_remove("CROOKEDLAB_MAX_BREAKPOINTS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// `(arguments, expected exit code)` for the documented examples.
pub fn exit_matrix() -> Vec<(Vec<&'static str>, i32)> {
    vec![
        (vec!["check", "pair", "--a", "0", "--b", "1", "--delta", "2/5", "identity.plmap"], 1),
        (vec!["check", "pair", "--a", "0", "--b", "1", "--delta", "1", "tent.plmap"], 0),
        (vec!["check", "horizon", "--delta", "3/10", "--n-max", "6", "tent.plmap"], 1),
        (vec!["check", "grid", "--delta", "1/2", "--mesh", "1/64", "henderson-6-tower.plmap"], 0),
        (vec!["check", "grid", "--delta", "1/4", "identity.plmap"], 1),
        (vec!["check", "tower", "--eta", "15/32", "--depth", "3", "henderson-6.family"], 0),
        (vec!["check", "tower", "--eta", "1/2", "--depth", "2", "--delta", "1/8", "double-sin-4.family"], 2),
        (vec!["report", "characterize", "--depth", "2", "tent.plmap"], 1),
        (vec!["report", "characterize", "--depth", "2", "identity.plmap"], 1),
        (vec!["report", "distinguish", "variant-a.family", "variant-b.family"], 0),
        (vec!["report", "distinguish", "henderson-6.family", "henderson-6.family"], 2),
        (vec!["report", "invariants", "tent.plmap"], 0),
        (vec!["report", "lemma46", "--delta", "1/2", "henderson-6.family"], 2),
        (vec!["plot", "graph", "tent.plmap"], 0),
        (vec!["convert", "tent.plmap"], 0),
        (vec!["check", "grid", "--delta", "0.5", "tent.plmap"], 64),
        (vec!["check", "frobnicate", "tent.plmap"], 64),
        (vec!["construct", "henderson", "--notches", "-1"], 64),
        (vec!["construct", "henderson", "--notches", "49"], 64),
        (vec!["check", "grid", "no-such-file.plmap"], 3),
        (vec!["check", "grid", "henderson-2.svg"], 3),
        (vec!["--help"], 0),
        (vec!["--version"], 0),
    ]
}
