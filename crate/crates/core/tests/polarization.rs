use std::sync::Arc;

use admissible::coord::CoordRing;
use admissible::ideal::Ideal;
use admissible::module::ModulePresentation;
use admissible::poly::parse::parse_polynomial;
use admissible::polarization::{distinguished_polarization, fiber_hilbert_line, sheaf_hilbert_check};
use admissible::tower::run_tower;
use admissible::{Error, PolyRing, Polynomial};

fn graded(vars: &[&str]) -> Arc<CoordRing> {
    CoordRing::polynomial(&PolyRing::new("S", vars).unwrap())
}

fn ps(ring: &Arc<CoordRing>, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|x| parse_polynomial(ring.ring(), x).unwrap()).collect()
}

#[test]
fn plane_point_line() {
    let s = graded(&["x", "y", "z"]);
    let i = Ideal::new(s.ring(), ps(&s, &["x", "y"])).unwrap();
    let line = fiber_hilbert_line(&s, &i, 2, 6).unwrap();
    assert!(line.pass, "{line:?}");
    for r in &line.rows {
        let n = r.n as u64;
        assert_eq!(r.ambient, (2 * n + 1) * (2 * n + 2) / 2);
    }
    let p = line.fiber_polynomial.as_ref().unwrap();
    assert!(p.reproduces);
    assert_eq!(p.polynomial, "2*n^2 + 3*n + 1");
    assert_eq!(line.expected, "2*n^2 + 3*n + 1");
}

#[test]
fn line_rejects_small_twist() {
    let s = graded(&["x", "y", "z"]);
    let i = Ideal::new(s.ring(), ps(&s, &["x^2", "y"])).unwrap();
    assert!(matches!(fiber_hilbert_line(&s, &i, 2, 4), Err(Error::Precondition(_))));
}

#[test]
fn unit_ideal_line_is_trivial() {
    let s = graded(&["x", "y", "z"]);
    let i = Ideal::new(s.ring(), ps(&s, &["1"])).unwrap();
    assert!(fiber_hilbert_line(&s, &i, 1, 4).unwrap().pass);
}

#[test]
fn default_exponents() {
    let s = graded(&["x", "y", "z"]);
    let m = ModulePresentation::ideal(&s, &ps(&s, &["x", "y"])).unwrap();
    let t = run_tower(&m).unwrap();
    let spec = distinguished_polarization(&t, None).unwrap();
    assert_eq!(spec.exponents, vec![2]);
    assert_eq!(spec.base_exponent, 2);
    assert_eq!(spec.multiplicities, vec![1]);
    assert!(spec.charts.iter().all(|c| c.invertible));
    assert!(distinguished_polarization(&t, Some(&[0])).is_err());
    assert!(distinguished_polarization(&t, Some(&[2, 2])).is_err());
}

#[test]
fn space_point_exponents() {
    let s = graded(&["x", "y", "z", "w"]);
    let m = ModulePresentation::ideal(&s, &ps(&s, &["x", "y", "z"])).unwrap();
    let t = run_tower(&m).unwrap();
    let spec = distinguished_polarization(&t, None).unwrap();
    assert_eq!(spec.exponents, vec![2, 3]);
    assert_eq!(spec.multiplicities, vec![3, 1]);
    assert_eq!(spec.base_exponent, 6);
}

#[test]
fn plane_point_sheaf_surrogate() {
    let s = graded(&["x", "y", "z"]);
    let m = ModulePresentation::ideal(&s, &ps(&s, &["x", "y"])).unwrap();
    let t = run_tower(&m).unwrap();
    let spec = distinguished_polarization(&t, None).unwrap();
    let r = sheaf_hilbert_check(&t, spec.base_exponent, 6, false).unwrap();
    assert_eq!(r.label, "informational");
    assert!(r.pass, "{r:?}");
    for row in &r.rows {
        let n = row.n as u64;
        assert_eq!(row.surrogate, (2 * n + 1) * (2 * n + 2) / 2 - 1);
    }
    assert_eq!(sheaf_hilbert_check(&t, 2, 3, true).unwrap().label, "certificate");
}

#[test]
fn free_module_surrogate_is_exact() {
    let s = graded(&["x", "y", "z"]);
    let t = run_tower(&ModulePresentation::free(&s, vec![0])).unwrap();
    let spec = distinguished_polarization(&t, None).unwrap();
    assert_eq!(spec.base_exponent, 1);
    let r = sheaf_hilbert_check(&t, 1, 6, false).unwrap();
    assert!(r.pass && r.interpolation.is_some());
}

#[test]
fn space_point_surrogate() {
    let s = graded(&["x", "y", "z", "w"]);
    let m = ModulePresentation::ideal(&s, &ps(&s, &["x", "y", "z"])).unwrap();
    let t = run_tower(&m).unwrap();
    let r = sheaf_hilbert_check(&t, 6, 4, false).unwrap();
    assert!(r.pass, "{r:?}");
    assert!(r.interpolation.is_none());
}
