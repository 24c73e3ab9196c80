use std::path::{Path, PathBuf};
use std::process::Command;

use admissible_cli::job::{CertifyKind, Command as JobCommand, JobSpec, Options};
use admissible_cli::parse;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_admissible"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

const POINT: &str = "ring R = QQ[x,y,z] order grevlex; module I twists (-1,-1) relations { y, -x; };";

#[test]
fn parses_point_ideal() {
    let job = parse(POINT).unwrap();
    assert_eq!(job.ring.vars, vec!["x", "y", "z"]);
    assert_eq!(job.module.twists, vec![-1, -1]);
    assert_eq!(job.module.relations, vec![vec!["y".to_string(), "-x".to_string()]]);
    let (_, m) = job.build().unwrap();
    assert_eq!(m.relations().len(), 1);
}

#[test]
fn empty_input_has_no_ring() {
    let d = parse("").unwrap_err();
    assert_eq!(d[0].message, "no ring declaration");
    let d = parse("   // nothing here\n").unwrap_err();
    assert_eq!(d[0].message, "no ring declaration");
}

#[test]
fn undeclared_variable_is_named() {
    let d = parse("ring R = QQ[x,y,z] order grevlex;\nmodule I twists (-1,-1) relations { y, -w; };").unwrap_err();
    assert_eq!(d.len(), 1);
    assert!(d[0].message.contains('w'), "{:?}", d[0]);
    assert_eq!((d[0].line, d[0].column), (2, 41));
}

#[test]
fn syntax_errors_carry_locations() {
    let d = parse("ring R = QQ[x,y] order grevlex;\nmodule I twists (0) relations { 2x; };").unwrap_err();
    assert_eq!(d[0].line, 2);
    let d = parse("ring R = QQ[x,y] order grevlex;\nmodule I twists (0,0) relations { x; };").unwrap_err();
    assert!(d[0].message.contains("1 entries, expected 2"));
    let d = parse("ring R = QQ[x,y] order grevlex;\nmodule I twists (0) relations { x + y^2; };").unwrap_err();
    assert_eq!(d[0].message, "inhomogeneous relation 1");
    let d = parse("ring R = QQ[x,y] order grevlex;").unwrap_err();
    assert_eq!(d[0].message, "no module declaration");
}

#[test]
fn canonical_round_trip() {
    for src in [
        POINT,
        "ring S = QQ[a,b] order grevlex;\nmodule F twists (0,2) relations { };",
        "ring T = QQ[x,y,z,w] order grevlex; module I twists (-1,-1,-1) relations { y,-x,0; z,0,-x; 0,z,-y; };",
        "ring U = QQ[x,y] order grevlex; module N twists (0) relations { (x+y)^2 - 1/2*x*y; };",
    ] {
        let a = parse(src).unwrap();
        let b = parse(&a.canonical()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.sha256(), b.sha256());
    }
}

#[test]
fn job_spec_round_trip() {
    let job = JobSpec {
        input: parse(POINT).unwrap(),
        command: JobCommand::Certify {
            kind: CertifyKind::Lemma2,
        },
        options: Options {
            exponents: Some(vec![2]),
            attested: true,
            charts: vec!["z".into()],
            ..Options::default()
        },
    };
    assert_eq!(JobSpec::from_json(&job.to_json()).unwrap(), job);
}

#[test]
fn exit_codes() {
    let point = data("plane_point.job");
    let quotient = data("plane_point_quotient.job");
    let p = point.to_str().unwrap();
    let q = quotient.to_str().unwrap();
    assert_eq!(run(&["resolve", p]).0, 0);
    assert_eq!(run(&["certify", "lemma2", q]).0, 0);
    // Rank one, so the zeroth Fitting ideal vanishes and the test does not apply.
    assert_eq!(run(&["certify", "lemma2", p]).0, 2);
    assert_eq!(run(&["resolve", q]).0, 2);
    // The ideal of a point is not locally free at the point.
    let (code, out) = run(&["certify", "locfree", p]);
    assert_eq!(code, 1, "{out}");
    assert_eq!(run(&["certify", "independence", p]).0, 0);
    assert_eq!(run(&["certify", "ev", p]).0, 0);
    let (code, out) = run(&["fitting", p, "--index", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("Fitt_1 = (x, y)"), "{out}");
    let (code, out) = run(&["hilbert", p, "--m", "2", "--nmax", "6"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("2*n^2 + 3*n + 1"));
    assert_eq!(run(&["hilbert", p, "--m", "1", "--nmax", "3"]).0, 2);
    assert_eq!(run(&["resolve", "/nonexistent/job"]).0, 2);
}

#[test]
fn timings_stay_out_of_the_stable_report() {
    let p = data("plane_point.job");
    let (_, plain) = run(&["--format", "json", "resolve", p.to_str().unwrap()]);
    let (_, timed) = run(&["--format", "json", "--timings", "resolve", p.to_str().unwrap()]);
    assert!(!plain.contains("volatile"));
    assert!(timed.contains("timings_ms"));
    let mut v: serde_json::Value = serde_json::from_str(&timed).unwrap();
    v.as_object_mut().unwrap().remove("volatile");
    assert_eq!(v, serde_json::from_str::<serde_json::Value>(&plain).unwrap());
}
