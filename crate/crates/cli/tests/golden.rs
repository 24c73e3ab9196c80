use std::path::{Path, PathBuf};
use std::process::Command;

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn report(job: &str, threads: &str) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_admissible"))
        .args(["--format", "json", "--threads", threads, "resolve"])
        .arg(dir().join("data").join(job))
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    String::from_utf8(out.stdout).unwrap()
}

fn check(job: &str, golden: &str) {
    let path = dir().join("golden").join(golden);
    let first = report(job, "1");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &first).unwrap();
    }
    let expected = std::fs::read_to_string(&path).expect("golden file present");
    assert_eq!(first, expected, "report differs from {}", path.display());
    for threads in ["1", "2", "4"] {
        assert_eq!(report(job, threads), expected, "threads = {threads}");
    }
}

#[test]
fn plane_point_report_is_stable() {
    check("plane_point.job", "plane_point.resolve.json");
}

#[test]
fn space_point_report_is_stable() {
    check("space_point.job", "space_point.resolve.json");
}
