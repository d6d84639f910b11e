#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

/// The documented CLI examples and the golden file each must reproduce.
pub const EXAMPLES: [(&str, &[&str]); 3] = [
    (
        "zeros_jacobi_n4_n3_50.csv",
        &["zeros", "--family", "jacobi", "--alpha", "1*n^4+0", "--beta", "1*n^3+0", "--n", "50"],
    ),
    ("compare_laguerre_100_400.csv", &["compare", "--family", "laguerre", "--alpha", "0*n^0+0", "--n-list", "100,400"]),
    ("bound_n10_a50_b1.csv", &["bound", "--n", "10", "--alpha", "50", "--beta", "1"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

pub fn oz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oz")).args(args).output().expect("oz runs")
}
