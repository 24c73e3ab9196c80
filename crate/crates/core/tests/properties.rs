use admissible::corpus::{
    self, fitting_chain_holds, fitting_is_presentation_invariant, groebner_is_canonical, padded_presentation,
    torsion_is_idempotent,
};
use admissible::poly::Monomial;
use admissible::{PolyRing, Polynomial};
use num::BigRational;
use proptest::prelude::*;
use proptest::sample::Index;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn groebner_ignores_generator_order(
        (k, order) in (0..corpus::ideals().len()).prop_flat_map(|k| {
            let n = corpus::ideals()[k].2.len();
            (Just(k), permutation(n))
        }),
        scales in prop::collection::vec(-3i64..=3, 1..4),
    ) {
        let ideals = corpus::ideals();
        let (name, _, gens) = &ideals[k];
        prop_assert!(groebner_is_canonical(gens, &order, &scales).unwrap(), "{name}");
    }

    #[test]
    fn groebner_ignores_order_of_random_generators(
        terms in prop::collection::vec(
            prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3, 0u32..2), 1..4),
            2..4,
        ),
        seed in any::<Index>(),
    ) {
        let ring = PolyRing::new("S", &["x", "y", "z"]).unwrap();
        let gens: Vec<Polynomial> = terms
            .iter()
            .map(|ts| {
                Polynomial::from_terms(
                    &ring,
                    ts.iter()
                        .map(|&(c, a, b, d)| (BigRational::from_integer(c.into()), Monomial::new(vec![a, b, d])))
                        .collect(),
                )
            })
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let n = gens.len();
        let shift = seed.index(n);
        let order: Vec<usize> = (0..n).map(|i| (i + shift) % n).rev().collect();
        prop_assert!(groebner_is_canonical(&gens, &order, &[1, -2, 3]).unwrap());
    }

    #[test]
    fn torsion_quotient_is_torsion_free(k in 0..corpus::modules().len()) {
        let e = &corpus::modules()[k];
        prop_assert!(torsion_is_idempotent(&e.module).unwrap(), "{}", e.name);
    }

    #[test]
    fn fitting_ideals_ignore_presentation(
        k in 0..corpus::modules().len(),
        i in any::<Index>(),
        j in any::<Index>(),
        var in 0usize..3,
        deg in 0u32..2,
        scale in 1i64..4,
    ) {
        let e = &corpus::modules()[k];
        let m = &e.module;
        let pr = m.ring().ring();
        let f = Polynomial::var(pr, var).pow(deg);
        let c = &Polynomial::from_int(pr, scale) * &Polynomial::var(pr, (var + 1) % pr.nvars());
        let r = m.target().rank();
        let padded = padded_presentation(m, i.index(r), &f, j.index(m.relations().len().max(1)), &c).unwrap();
        prop_assert!(fitting_is_presentation_invariant(m, &padded).unwrap(), "{}", e.name);
    }

    #[test]
    fn fitting_ideals_increase(k in 0..corpus::modules().len()) {
        let e = &corpus::modules()[k];
        prop_assert!(fitting_chain_holds(&e.module).unwrap(), "{}", e.name);
    }
}
