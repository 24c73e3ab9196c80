use std::sync::Arc;

use admissible::coord::CoordRing;
use admissible::homological::{
    double_dual_quotient, dual, ext, fitting, lemma2_certificate, local_freeness_certificate,
    torsion_submodule,
};
use admissible::module::ModulePresentation;
use admissible::poly::parse::parse_polynomial;
use admissible::resolution::{free_resolution, homological_dimension, segment_triples};
use admissible::{Error, PolyRing, Polynomial};

fn graded(vars: &[&str]) -> Arc<CoordRing> {
    CoordRing::polynomial(&PolyRing::new("R", vars).unwrap())
}

fn p(ring: &Arc<CoordRing>, s: &str) -> Polynomial {
    parse_polynomial(ring.ring(), s).unwrap()
}

fn ps(ring: &Arc<CoordRing>, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|x| p(ring, x)).collect()
}

fn ideal_module(ring: &Arc<CoordRing>, gens: &[&str]) -> ModulePresentation {
    ModulePresentation::ideal(ring, &ps(ring, gens)).unwrap()
}

#[test]
fn koszul_syzygies_of_two_and_three_forms() {
    let r = graded(&["x", "y", "z"]);
    let row = ModulePresentation::new(&r, vec![0], vec![ps(&r, &["x"]), ps(&r, &["y"])]).unwrap();
    let syz = row.syzygies();
    assert_eq!(syz.target().twists(), &[-2]);
    assert_eq!(syz.relations().len(), 0);

    let r4 = graded(&["x", "y", "z", "w"]);
    let row = ModulePresentation::new(&r4, vec![0], vec![ps(&r4, &["x"]), ps(&r4, &["y"]), ps(&r4, &["z"])]).unwrap();
    let syz = row.syzygies();
    assert_eq!(syz.target().twists(), &[-2, -2, -2]);

    let free = ModulePresentation::new(&r, vec![0, 0], vec![ps(&r, &["1", "0"]), ps(&r, &["0", "1"])]).unwrap();
    assert_eq!(free.syzygies().target().rank(), 0);
}

#[test]
fn resolutions_of_point_ideals() {
    let r = graded(&["x", "y", "z"]);
    let res = free_resolution(&ideal_module(&r, &["x", "y"]), true).unwrap();
    assert_eq!(res.betti(), vec![2, 1]);
    assert_eq!(res.twists(), vec![vec![-1, -1], vec![-2]]);
    assert!(res.is_complex());

    let r4 = graded(&["x", "y", "z", "w"]);
    let res = free_resolution(&ideal_module(&r4, &["x", "y", "z"]), true).unwrap();
    assert_eq!(res.betti(), vec![3, 3, 1]);
    assert!(res.is_complex());
    assert!(res.has_no_unit_entries());
    let triples = segment_triples(&res);
    assert_eq!(triples.len(), 2);
    assert_eq!(homological_dimension(&ideal_module(&r4, &["x", "y", "z"])).unwrap(), 2);

    let free = ModulePresentation::free(&r, vec![0, 1]);
    assert_eq!(free_resolution(&free, true).unwrap().length(), 0);
    assert!(segment_triples(&free_resolution(&free, true).unwrap()).is_empty());
}

#[test]
fn padding_is_cancelled_by_minimization() {
    let r4 = graded(&["x", "y", "z", "w"]);
    let res = free_resolution(&ideal_module(&r4, &["x", "y", "z"]), true).unwrap();
    let padded = res.pad(1, -3).unwrap().pad(2, -4).unwrap();
    assert_eq!(padded.betti(), vec![4, 5, 2]);
    assert!(padded.is_complex());
    let again = padded.minimize();
    assert_eq!(again.betti(), res.betti());
    assert_eq!(again.twists(), res.twists());
}

#[test]
fn duals() {
    let r = graded(&["x", "y", "z"]);
    let d = dual(&ModulePresentation::free(&r, vec![-1, -1]));
    assert_eq!(d.target().twists(), &[1, 1]);
    assert!(d.relations().is_empty());

    let d = dual(&ideal_module(&r, &["x", "y"]));
    assert_eq!(d.target().twists(), &[0]);
    assert!(d.relations().is_empty());

    let d = dual(&ModulePresentation::cyclic(&r, &ps(&r, &["x"])).unwrap());
    assert_eq!(d.target().rank(), 0);
}

#[test]
fn ext_and_fitting() {
    let r = graded(&["x", "y", "z"]);
    let e = ext(&ideal_module(&r, &["x", "y"]), 1).unwrap();
    assert_eq!(e.target().twists(), &[2]);
    let f = fitting(&e, 0).unwrap();
    assert_eq!(f, r.ideal(ps(&r, &["x", "y"])));
    let free = ModulePresentation::free(&r, vec![0, 0]);
    assert!(ext(&free, 1).unwrap().target().rank() == 0);
    assert!(fitting(&free, 0).unwrap().is_zero());
    assert!(fitting(&free, 2).unwrap().is_unit());

    let q = ModulePresentation::cyclic(&r, &ps(&r, &["x", "y"])).unwrap();
    assert_eq!(fitting(&q, 0).unwrap(), r.ideal(ps(&r, &["x", "y"])));
}

#[test]
fn ext_of_koszul_syzygy() {
    let r4 = graded(&["x", "y", "z", "w"]);
    let res = free_resolution(&ideal_module(&r4, &["x", "y", "z"]), true).unwrap();
    let w1 = res.cokernel_at(1);
    let e = ext(&w1, 1).unwrap();
    assert_eq!(e.target().twists(), &[3]);
    assert_eq!(fitting(&e, 0).unwrap(), r4.ideal(ps(&r4, &["x", "y", "z"])));
}

#[test]
fn torsion() {
    let r = CoordRing::polynomial(&PolyRing::new("R", &["x", "y"]).unwrap());
    let m = ModulePresentation::new(&r, vec![0, 0], vec![ps(&r, &["x", "0"])]).unwrap();
    let t = torsion_submodule(&m).unwrap();
    assert_eq!(t.torsion.target().rank(), 1);
    assert_eq!(fitting(&t.torsion, 0).unwrap(), r.ideal(ps(&r, &["x"])));
    assert_eq!(t.quotient.minimized().target().rank(), 1);
    assert!(t.quotient.minimized().relations().is_empty());
    let again = torsion_submodule(&t.quotient).unwrap();
    assert!(again.torsion.is_zero_module());

    let r3 = graded(&["x", "y", "z"]);
    assert!(torsion_submodule(&ideal_module(&r3, &["x", "y"])).unwrap().torsion.is_zero_module());
}

#[test]
fn double_dual_quotients() {
    let r = graded(&["x", "y", "z"]);
    let k = double_dual_quotient(&ideal_module(&r, &["x", "y"])).unwrap();
    assert_eq!(fitting(&k, 0).unwrap(), r.ideal(ps(&r, &["x", "y"])));
    let k2 = double_dual_quotient(&ideal_module(&r, &["x^2", "x*y", "y^2"])).unwrap();
    assert_eq!(k2.target().rank(), 1);
    assert!(double_dual_quotient(&ModulePresentation::free(&r, vec![0])).unwrap().is_zero_module());
}

#[test]
fn lemma2_examples() {
    let r = graded(&["x", "y", "z"]);
    let v = lemma2_certificate(&ModulePresentation::cyclic(&r, &ps(&r, &["x"])).unwrap()).unwrap();
    assert!(v.pass && v.fitting0_invertible && v.homological_dimension == 1);
    let v = lemma2_certificate(&ModulePresentation::cyclic(&r, &ps(&r, &["x", "y"])).unwrap()).unwrap();
    assert!(v.pass && !v.fitting0_invertible && v.homological_dimension == 2);
    let zero = ModulePresentation::cyclic(&r, &ps(&r, &["1"])).unwrap();
    assert!(matches!(lemma2_certificate(&zero), Err(Error::Precondition(_))));
}

#[test]
fn local_freeness_examples() {
    let r = graded(&["x", "y", "z"]);
    assert!(local_freeness_certificate(&ModulePresentation::free(&r, vec![0, 0]), 2).unwrap().pass);
    assert!(!local_freeness_certificate(&ideal_module(&r, &["x", "y"]), 1).unwrap().pass);
    let q = ModulePresentation::cyclic(&r, &ps(&r, &["x"])).unwrap();
    for k in 0..3 {
        assert!(!local_freeness_certificate(&q, k).unwrap().pass);
    }
}

mod hilbert_data {
    use super::*;
    use admissible::hilbert::{hilbert, module_piece_dim};
    use num::BigInt;

    fn check_against_pieces(m: &ModulePresentation) {
        let h = hilbert(m).unwrap();
        for d in h.stabilization - 3..=h.stabilization + 5 {
            assert_eq!(h.function(d), BigInt::from(module_piece_dim(m, d).unwrap()), "degree {d}");
        }
        for d in h.stabilization..=h.stabilization + 4 {
            assert_eq!(h.polynomial.eval_int(d).unwrap(), h.function(d));
        }
    }

    #[test]
    fn plane() {
        let r = graded(&["x", "y", "z"]);
        let m = ModulePresentation::free(&r, vec![0]);
        let h = hilbert(&m).unwrap();
        assert_eq!(h.polynomial.to_string(), "1/2*n^2 + 3/2*n + 1");
        assert_eq!(h.stabilization, -2);
        check_against_pieces(&m);
    }

    #[test]
    fn line() {
        let r = graded(&["x", "y", "z"]);
        let m = ModulePresentation::cyclic(&r, &ps(&r, &["x"])).unwrap();
        assert_eq!(hilbert(&m).unwrap().polynomial.to_string(), "n + 1");
        check_against_pieces(&m);
    }

    #[test]
    fn point_ideal() {
        let r = graded(&["x", "y", "z"]);
        let m = ideal_module(&r, &["x", "y"]);
        let h = hilbert(&m).unwrap();
        assert_eq!(h.polynomial.to_string(), "1/2*n^2 + 3/2*n");
        assert_eq!(h.stabilization, 0);
        check_against_pieces(&m);
    }

    #[test]
    fn twisted_and_quotient_modules() {
        let r4 = graded(&["x", "y", "z", "w"]);
        let res = free_resolution(&ideal_module(&r4, &["x", "y", "z"]), true).unwrap();
        check_against_pieces(&res.cokernel_at(1));
        let e = ext(&res.cokernel_at(1), 1).unwrap();
        let h = hilbert(&e).unwrap();
        assert_eq!(h.polynomial.to_string(), "1");
        check_against_pieces(&e);
    }

    #[test]
    fn double_dual_quotient_of_square() {
        let r = graded(&["x", "y", "z"]);
        let k = double_dual_quotient(&ideal_module(&r, &["x^2", "x*y", "y^2"])).unwrap();
        assert_eq!(hilbert(&k).unwrap().polynomial.to_string(), "3");
    }
}
