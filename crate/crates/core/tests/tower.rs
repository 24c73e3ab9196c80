use std::sync::Arc;
use std::time::Instant;

use admissible::coord::CoordRing;
use admissible::module::ModulePresentation;
use admissible::poly::parse::parse_polynomial;
use admissible::tower::{default_padding, plan, resolution_independence_check, run_tower};
use admissible::{Error, PolyRing, Polynomial};

fn graded(vars: &[&str]) -> Arc<CoordRing> {
    CoordRing::polynomial(&PolyRing::new("S", vars).unwrap())
}

fn ps(ring: &Arc<CoordRing>, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|x| parse_polynomial(ring.ring(), x).unwrap()).collect()
}

fn point_ideal(ring: &Arc<CoordRing>, gens: &[&str]) -> ModulePresentation {
    ModulePresentation::ideal(ring, &ps(ring, gens)).unwrap()
}

#[test]
fn plans() {
    let s = graded(&["x", "y", "z"]);
    assert_eq!(plan(&ModulePresentation::free(&s, vec![0, 0])).unwrap().length(), 0);
    assert_eq!(plan(&point_ideal(&s, &["x", "y"])).unwrap().length(), 1);
    let t = graded(&["x", "y", "z", "w"]);
    let p = plan(&point_ideal(&t, &["x", "y", "z"])).unwrap();
    assert_eq!(p.length(), 2);
    assert_eq!(p.ranks, vec![1, 2, 1]);
    let torsion = ModulePresentation::cyclic(&s, &ps(&s, &["x"])).unwrap();
    assert!(matches!(plan(&torsion), Err(Error::Precondition(_))));
}

#[test]
fn free_module_gives_identity_tower() {
    let s = graded(&["x", "y", "z"]);
    let t = run_tower(&ModulePresentation::free(&s, vec![0, 0])).unwrap();
    assert!(t.is_identity());
    assert_eq!(t.final_charts.len(), 3);
    assert!(t.final_charts.iter().all(|c| c.locally_free && c.rank == 2));
    assert!(t.global_first_ideal.is_none());
}

#[test]
fn plane_point() {
    let s = graded(&["x", "y", "z"]);
    let start = Instant::now();
    let t = run_tower(&point_ideal(&s, &["x", "y"])).unwrap();
    assert!(start.elapsed().as_secs() < 10);
    assert_eq!(t.steps.len(), 1);
    let g = t.global_first_ideal.as_ref().unwrap();
    assert_eq!(g.to_string(), "(x, y)");
    assert!(t.global_first_consistent);
    let step = &t.steps[0];
    let blown: Vec<_> = step.ideals.iter().filter(|i| !i.identity).collect();
    assert_eq!(blown.len(), 1);
    assert_eq!(blown[0].label, "z");
    let labels: Vec<&str> = t.final_charts.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(labels, vec!["x", "y", "z.0", "z.1"]);
    assert!(t.final_charts.iter().all(|c| c.locally_free && c.rank == 1));
    for c in step.certificates.iter().filter(|c| !c.identity) {
        assert_eq!(c.homological_dimension, Some(1));
        assert!(c.fitting0_invertible && c.kernel_locally_free && c.strict_locally_free);
    }
}

#[test]
fn space_point() {
    let s = graded(&["x", "y", "z", "w"]);
    let start = Instant::now();
    let t = run_tower(&point_ideal(&s, &["x", "y", "z"])).unwrap();
    eprintln!("space point tower: {:?}", start.elapsed());
    assert_eq!(t.steps.len(), 2);
    for step in &t.steps {
        for c in &step.certificates {
            assert!(c.pass);
            if !c.identity {
                assert_eq!(c.homological_dimension, Some(1));
            }
        }
    }
    let first: Vec<_> = t.steps[0].ideals.iter().filter(|i| !i.identity).collect();
    assert_eq!(first.len(), 1);
    assert_eq!(first[0].label, "w");
    assert!(t.final_charts.iter().all(|c| c.locally_free && c.rank == 1));
}

#[test]
fn independence_plane_point() {
    let s = graded(&["x", "y", "z"]);
    let m = point_ideal(&s, &["x", "y"]);
    let p = plan(&m).unwrap();
    let v = resolution_independence_check(&m, &default_padding(&p.resolution)).unwrap();
    assert!(v.pass, "{v:?}");
    assert!(!v.comparisons.is_empty());
}

#[test]
fn independence_free_module() {
    let s = graded(&["x", "y", "z"]);
    let m = ModulePresentation::free(&s, vec![0]);
    let v = resolution_independence_check(&m, &[(1, -3)]).unwrap();
    assert!(v.pass);
}

#[test]
fn independence_space_point() {
    let s = graded(&["x", "y", "z", "w"]);
    let m = point_ideal(&s, &["x", "y", "z"]);
    let p = plan(&m).unwrap();
    let pads = default_padding(&p.resolution);
    assert_eq!(pads.len(), 1);
    let v = resolution_independence_check(&m, &[(1, -3), (2, -4)]).unwrap();
    assert!(v.pass, "{v:?}");
    let t = run_tower(&m).unwrap();
    let second: Vec<String> = t.steps[1]
        .ideals
        .iter()
        .filter(|i| !i.identity)
        .map(|i| format!("{} {}", i.label, i.ideal))
        .collect();
    assert_eq!(second, vec!["w.0 (x^2)", "w.1 (y^2)", "w.2 (z^2)"]);
    let labels: Vec<&str> = t.final_charts.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(labels, vec!["x", "y", "z", "w.0", "w.1", "w.2"]);
    assert!(t.final_charts.iter().all(|c| c.relations.is_empty()));
}
