use std::sync::Arc;

use admissible::blowup::{charts, pullback_strict, rees, standard_chart, strict_transforms_compatible};
use admissible::coord::CoordRing;
use admissible::homological::local_freeness_certificate;
use admissible::ideal::Ideal;
use admissible::module::ModulePresentation;
use admissible::poly::parse::parse_polynomial;
use admissible::{Error, PolyRing, Polynomial};

fn affine(vars: &[&str]) -> Arc<CoordRing> {
    CoordRing::polynomial(&PolyRing::affine("A", vars).unwrap())
}

fn ps(ring: &Arc<PolyRing>, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|x| parse_polynomial(ring, x).unwrap()).collect()
}

fn ideal(a: &Arc<CoordRing>, s: &[&str]) -> Ideal {
    Ideal::new(a.ring(), ps(a.ring(), s)).unwrap()
}

#[test]
fn rees_of_origin() {
    let a = affine(&["x", "y"]);
    let r = rees(&a, &ideal(&a, &["x", "y"])).unwrap();
    assert_eq!(r.tvars, vec!["T0", "T1"]);
    let expect = Ideal::new(&r.ring, ps(&r.ring, &["y*T0 - x*T1"])).unwrap();
    assert_eq!(r.defining, expect);
    assert!(r.substitution_check());
}

#[test]
fn rees_of_principal_and_nonreduced() {
    let a = affine(&["x", "y"]);
    let r = rees(&a, &ideal(&a, &["x*y"])).unwrap();
    assert!(r.defining.is_zero());
    let atlas = charts(&r, 1, "u1").unwrap();
    assert!(atlas.is_identity());
    assert_eq!(atlas.charts[0].ring, a);

    let r = rees(&a, &ideal(&a, &["x^2", "y"])).unwrap();
    assert!(r.substitution_check());
    let g = parse_polynomial(&r.ring, "y*T0 - x^2*T1").unwrap();
    assert!(r.defining.contains(&g) || r.defining.contains(&(-g)));
}

#[test]
fn degenerate_blowups() {
    let a = affine(&["x", "y"]);
    assert!(matches!(rees(&a, &ideal(&a, &["1"])), Err(Error::DegenerateBlowup(_))));
    assert!(matches!(rees(&a, &Ideal::zero(a.ring())), Err(Error::DegenerateBlowup(_))));
}

#[test]
fn charts_of_origin_in_plane() {
    let a = affine(&["x", "y"]);
    let atlas = charts(&rees(&a, &ideal(&a, &["x", "y"])).unwrap(), 1, "u1").unwrap();
    assert_eq!(atlas.charts.len(), 2);
    let c0 = &atlas.charts[0];
    assert_eq!(c0.ring.ring().vars(), &["x", "u1_1"]);
    assert!(c0.ring.relations().is_zero());
    assert_eq!(c0.base_images[1].to_string(), "x*u1_1");
    assert_eq!(c0.exceptional.to_string(), "x");
    let c1 = &atlas.charts[1];
    assert_eq!(c1.ring.ring().vars(), &["y", "u1_0"]);
    assert_eq!(c1.base_images[0].to_string(), "y*u1_0");
    assert!(atlas.exceptional_principal().unwrap());
    let checks = atlas.check_transitions().unwrap();
    assert_eq!(checks.len(), 2);
    assert!(checks.iter().all(|c| c.pass));
}

#[test]
fn charts_of_origin_in_space() {
    let a = affine(&["x", "y", "z"]);
    let atlas = charts(&rees(&a, &ideal(&a, &["x", "y", "z"])).unwrap(), 1, "u1").unwrap();
    assert_eq!(atlas.charts.len(), 3);
    for c in &atlas.charts {
        assert_eq!(c.ring.ring().nvars(), 3);
        assert!(c.ring.relations().is_zero());
        assert!(c.exceptional.terms().len() == 1 && c.exceptional.total_degree() == Some(1));
    }
    assert!(atlas.exceptional_principal().unwrap());
    assert!(atlas.check_transitions().unwrap().iter().all(|c| c.pass));
}

#[test]
fn singular_chart_keeps_relation() {
    let a = affine(&["x", "y"]);
    let atlas = charts(&rees(&a, &ideal(&a, &["x^2", "y"])).unwrap(), 1, "u1").unwrap();
    assert_eq!(atlas.charts.len(), 2);
    let quotient_charts = atlas.charts.iter().filter(|c| !c.ring.relations().is_zero()).count();
    assert_eq!(quotient_charts, 1);
    assert!(atlas.exceptional_principal().unwrap());
    assert!(atlas.check_transitions().unwrap().iter().all(|c| c.pass));
}

#[test]
fn strict_transform_of_point_ideal() {
    let a = affine(&["x", "y"]);
    let i = ideal(&a, &["x", "y"]);
    let atlas = charts(&rees(&a, &i).unwrap(), 1, "u1").unwrap();
    let m = ModulePresentation::ideal(&a, i.gens()).unwrap();
    let strict = pullback_strict(&m, &atlas).unwrap();
    for (q, _) in &strict {
        assert!(local_freeness_certificate(q, 1).unwrap().pass);
        assert_eq!(q.minimized().target().rank(), 1);
    }
    let rels: Vec<_> = strict.iter().map(|(_, r)| r.clone()).collect();
    assert!(strict_transforms_compatible(&atlas, &rels, m.target().rank()).unwrap());
}

#[test]
fn strict_transform_of_free_module() {
    let a = affine(&["x", "y"]);
    let atlas = charts(&rees(&a, &ideal(&a, &["x", "y"])).unwrap(), 1, "u1").unwrap();
    let m = ModulePresentation::free(&a, vec![0, 0]);
    for (q, rels) in pullback_strict(&m, &atlas).unwrap() {
        assert!(rels.is_empty());
        assert!(local_freeness_certificate(&q, 2).unwrap().pass);
    }
}

#[test]
fn point_on_projective_plane_chart() {
    let s = CoordRing::polynomial(&PolyRing::new("S", &["x", "y", "z"]).unwrap());
    let (a, images) = standard_chart(&s, 2).unwrap();
    assert_eq!(a.ring().vars(), &["x", "y"]);
    let gens: Vec<Polynomial> = ps(s.ring(), &["x", "y"]).iter().map(|g| g.substitute(&images, a.ring())).collect();
    let i = Ideal::new(a.ring(), gens.clone()).unwrap();
    let atlas = charts(&rees(&a, &i).unwrap(), 1, "u1").unwrap();
    let m = ModulePresentation::ideal(&a, &gens).unwrap();
    for (q, _) in pullback_strict(&m, &atlas).unwrap() {
        assert!(local_freeness_certificate(&q, 1).unwrap().pass);
    }
}
