//! Shared inputs for the benchmarks in `benches/`.

use std::sync::Arc;

use admissible::poly::parse::parse_polynomial;
use admissible::{CoordRing, ModulePresentation, PolyRing, Polynomial};

pub fn ring(vars: &[&str]) -> Arc<CoordRing> {
    CoordRing::polynomial(&PolyRing::new("S", vars).expect("valid variables"))
}

pub fn polys(ring: &Arc<CoordRing>, src: &[&str]) -> Vec<Polynomial> {
    src.iter()
        .map(|s| parse_polynomial(ring.ring(), s).expect("valid polynomial"))
        .collect()
}

/// The ideal of the coordinate point `[0:...:0:1]` in `P^{n-1}`.
pub fn point_ideal(n: usize) -> ModulePresentation {
    let names = ["x", "y", "z", "w", "v", "u"];
    let r = ring(&names[..n]);
    let gens = polys(&r, &names[..n - 1]);
    ModulePresentation::ideal(&r, &gens).expect("homogeneous generators")
}
