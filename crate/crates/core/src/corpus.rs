//! Reference inputs and the structural invariants every one of them must
//! satisfy. Used by the property tests and the acceptance run.

use std::sync::Arc;

use crate::coord::CoordRing;
use crate::error::Result;
use crate::groebner::groebner;
use crate::homological::{fitting, torsion_submodule};
use crate::module::ModulePresentation;
use crate::poly::parse::parse_polynomial;
use crate::poly::{PolyRing, Polynomial};

pub fn graded_ring(vars: &[&str]) -> Arc<CoordRing> {
    CoordRing::polynomial(&PolyRing::new("S", vars).expect("valid variable names"))
}

pub fn polys(ring: &Arc<CoordRing>, src: &[&str]) -> Vec<Polynomial> {
    src.iter()
        .map(|s| parse_polynomial(ring.ring(), s).expect("valid polynomial"))
        .collect()
}

/// Which side of the homological-dimension test a torsion module sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma2Class {
    /// `hd = 1`, invertible `Fitt_0`.
    Divisor,
    /// `hd >= 2`, non-invertible `Fitt_0`.
    HigherCodimension,
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub module: ModulePresentation,
    pub lemma2: Option<Lemma2Class>,
}

fn cyclic(name: &'static str, vars: &[&str], gens: &[&str], class: Option<Lemma2Class>) -> Entry {
    let r = graded_ring(vars);
    Entry {
        name,
        module: ModulePresentation::cyclic(&r, &polys(&r, gens)).expect("homogeneous"),
        lemma2: class,
    }
}

fn ideal(name: &'static str, vars: &[&str], gens: &[&str]) -> Entry {
    let r = graded_ring(vars);
    Entry {
        name,
        module: ModulePresentation::ideal(&r, &polys(&r, gens)).expect("homogeneous"),
        lemma2: None,
    }
}

fn presented(name: &'static str, vars: &[&str], twists: Vec<i64>, cols: &[&[&str]], class: Option<Lemma2Class>) -> Entry {
    let r = graded_ring(vars);
    let cols = cols.iter().map(|c| polys(&r, c)).collect();
    Entry {
        name,
        module: ModulePresentation::new(&r, twists, cols).expect("homogeneous"),
        lemma2: class,
    }
}

const P2: &[&str] = &["x", "y", "z"];
const P3: &[&str] = &["x", "y", "z", "w"];

pub fn modules() -> Vec<Entry> {
    use Lemma2Class::*;
    vec![
        ideal("plane_point", P2, &["x", "y"]),
        ideal("space_point", P3, &["x", "y", "z"]),
        ideal("plane_double_point", P2, &["x^2", "x*y", "y^2"]),
        ideal("space_line", P3, &["x", "y"]),
        presented("free_rank_two", P2, vec![0, 1], &[], None),
        presented(
            "plane_tangent_type",
            P2,
            vec![-1, -1, -1],
            &[&["x", "y", "z"]],
            None,
        ),
        cyclic("line", P2, &["x"], Some(Divisor)),
        cyclic("conic", P2, &["x^2 + y*z"], Some(Divisor)),
        presented("two_lines", P2, vec![0, 0], &[&["x", "0"], &["0", "y"]], Some(Divisor)),
        presented("determinantal_conic", P2, vec![0, 0], &[&["x", "z"], &["y", "x"]], Some(Divisor)),
        cyclic("three_planes", P3, &["x*y*z"], Some(Divisor)),
        presented(
            "three_surfaces",
            P3,
            vec![0, 0, 0],
            &[&["x", "0", "0"], &["0", "y", "0"], &["0", "0", "z + w"]],
            Some(Divisor),
        ),
        cyclic("plane_point_quotient", P2, &["x", "y"], Some(HigherCodimension)),
        cyclic("space_point_quotient", P3, &["x", "y", "z"], Some(HigherCodimension)),
        cyclic("fat_point", P2, &["x^2", "x*y", "y^2"], Some(HigherCodimension)),
        cyclic("curvilinear_point", P2, &["x", "y^2"], Some(HigherCodimension)),
        cyclic("three_points", P2, &["x*y", "x*z", "y*z"], Some(HigherCodimension)),
        presented(
            "point_and_line",
            P2,
            vec![0, 0],
            &[&["x", "0"], &["y", "0"], &["0", "z"]],
            Some(HigherCodimension),
        ),
        presented("mixed_torsion", P2, vec![0, 0], &[&["x", "0"], &["0", "0"]], None),
    ]
}

/// Generator lists for Gröbner-basis checks.
pub fn ideals() -> Vec<(&'static str, Arc<CoordRing>, Vec<Polynomial>)> {
    let p2 = graded_ring(P2);
    let p3 = graded_ring(P3);
    let mut out = vec![
        ("twisted_cubic", p3.clone(), polys(&p3, &["x*z - y^2", "x*w - y*z", "y*w - z^2"])),
        (
            "cyclic4",
            p3.clone(),
            polys(&p3, &["x + y + z + w", "x*y + y*z + z*w + w*x", "x*y*z + y*z*w + z*w*x + w*x*y", "x*y*z*w - 1"]),
        ),
        ("conics", p2.clone(), polys(&p2, &["x^2 - y*z", "y^2 - x*z", "x*y - z^2 + x*z"])),
        ("affine_mix", p2.clone(), polys(&p2, &["x^2 + y - 1", "x*y - z", "y^2 - 2*x*z + 3"])),
    ];
    for e in modules() {
        let r = e.module.ring().clone();
        let gens: Vec<Polynomial> = e
            .module
            .relations()
            .iter()
            .flatten()
            .filter(|p| !p.is_zero())
            .cloned()
            .collect();
        if gens.len() >= 2 {
            out.push((e.name, r, gens));
        }
    }
    out
}

/// The reduced basis does not see the order or scaling of the generators.
pub fn groebner_is_canonical(gens: &[Polynomial], order: &[usize], scales: &[i64]) -> Result<bool> {
    let base = groebner(gens)?;
    let shuffled: Vec<Polynomial> = order
        .iter()
        .zip(scales.iter().cycle())
        .map(|(&i, &c)| &gens[i] * &Polynomial::from_int(gens[i].ring(), if c == 0 { 1 } else { c }))
        .collect();
    Ok(groebner(&shuffled)? == base)
}

/// The torsion-free quotient has no torsion, and taking it again changes
/// nothing.
pub fn torsion_is_idempotent(m: &ModulePresentation) -> Result<bool> {
    let first = torsion_submodule(m)?;
    let second = torsion_submodule(&first.quotient)?;
    let a = first.quotient.submodule();
    let b = second.quotient.submodule();
    Ok(second.torsion.is_zero_module() && a.contains_all(&b.basis_vectors()) && b.contains_all(&a.basis_vectors()))
}

/// Appends a generator `g = f * e_i` together with the relation expressing
/// it, and a multiple of relation `j`, neither of which changes the module.
pub fn padded_presentation(m: &ModulePresentation, i: usize, f: &Polynomial, j: usize, c: &Polynomial) -> Result<ModulePresentation> {
    let ring = m.ring();
    let pr = ring.ring();
    let r = m.target().rank();
    let mut twists = m.target().twists().to_vec();
    twists.push(twists[i] - f.degree().unwrap_or(0));
    let mut cols: Vec<Vec<Polynomial>> = m
        .relations()
        .iter()
        .map(|col| {
            let mut v = col.clone();
            v.push(Polynomial::zero(pr));
            v
        })
        .collect();
    if let Some(rel) = cols.get(j % cols.len().max(1)).cloned() {
        cols.push(rel.iter().map(|p| p * c).collect());
    }
    let mut link = vec![Polynomial::zero(pr); r + 1];
    link[i] = -f;
    link[r] = Polynomial::one(pr);
    cols.push(link);
    ModulePresentation::new(ring, twists, cols)
}

pub fn fitting_is_presentation_invariant(m: &ModulePresentation, padded: &ModulePresentation) -> Result<bool> {
    for j in 0..=m.target().rank() + 1 {
        if fitting(m, j)? != fitting(padded, j)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Fitt_0 ⊆ Fitt_1 ⊆ ... ⊆ Fitt_r = (1)`.
pub fn fitting_chain_holds(m: &ModulePresentation) -> Result<bool> {
    let r = m.target().rank();
    let chain = (0..=r).map(|j| fitting(m, j)).collect::<Result<Vec<_>>>()?;
    Ok(chain.windows(2).all(|w| w[1].contains_ideal(&w[0])) && chain[r].is_unit())
}
