#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use hlslab::report::{parse, ParsedReport};

pub const BIN: &str = env!("CARGO_BIN_EXE_hlslab");

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn report(&self) -> ParsedReport {
        parse(&self.stdout).unwrap_or_else(|e| panic!("unparsable report: {e}\n{}", self.stdout))
    }
}

/// Runs the binary with `HLSLAB_CACHE` pointing at `cache`.
pub fn hlslab(cache: &Path, args: &[&str]) -> Run {
    let Output { status, stdout, stderr } = Command::new(BIN)
        .args(args)
        .env("HLSLAB_CACHE", cache)
        .output()
        .expect("spawn hlslab");
    Run {
        code: status.code().unwrap_or(-1),
        stdout: String::from_utf8(stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(stderr).expect("utf-8 stderr"),
    }
}

pub fn column(r: &ParsedReport, name: &str) -> Vec<String> {
    let i = r.column(name).unwrap_or_else(|| panic!("no column {name}"));
    r.rows.iter().map(|row| row[i].clone()).collect()
}

/// `"[a, b]"` from a summary line.
pub fn interval(s: &str) -> (f64, f64) {
    let (a, b) = s.trim_matches(['[', ']']).split_once(", ").expect("interval");
    (a.parse().unwrap(), b.parse().unwrap())
}
