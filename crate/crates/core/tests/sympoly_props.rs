use adeq_core::rat::q;
use adeq_core::sympoly::{Generator, Monomial, SymPoly, UnknownPoly};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = UnknownPoly> {
    let atom = prop_oneof![
        (-4i64..=4).prop_map(UnknownPoly::int),
        Just(UnknownPoly::var("a")),
        Just(UnknownPoly::var("b")),
    ];
    prop::collection::vec((atom, -3i64..=3), 1..3).prop_map(|parts| {
        parts
            .into_iter()
            .fold(UnknownPoly::zero(), |acc, (p, c)| &acc + &p.scale(&q(c)))
    })
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(((0u32..2, 0u32..3, 0u32..3), 0u32..3), 0..3).prop_map(|fs| {
        Monomial::from_factors(fs.into_iter().map(|((v, j, k), e)| (Generator::new(v, j, k), e)))
    })
}

fn sympoly() -> impl Strategy<Value = SymPoly> {
    prop::collection::vec((monomial(), coeff()), 0..5).prop_map(|ts| {
        let mut p = SymPoly::zero();
        for (m, c) in ts {
            p.add_term(m, c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in sympoly(), b in sympoly(), c in sympoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &SymPoly::one(), a.clone());
    }

    #[test]
    fn canonical_form_is_unique(a in sympoly(), b in sympoly()) {
        // the same value reached two ways has one representation
        let x = &(&a + &b) - &b;
        prop_assert_eq!(&x, &a);
        prop_assert!(x.terms().all(|(_, c)| !c.is_zero()));
        let again = x.map_coeffs(|c| c.clone());
        prop_assert_eq!(again, x);
    }

    #[test]
    fn coeff_of_is_linear(a in sympoly(), b in sympoly(), m in monomial()) {
        prop_assert_eq!((&a + &b).coeff_of(&m), &a.coeff_of(&m) + &b.coeff_of(&m));
    }

    #[test]
    fn pow_matches_repeated_product(a in sympoly(), e in 0u32..=8) {
        prop_assume!(a.len() <= 2);
        let mut expected = SymPoly::one();
        for _ in 0..e {
            expected = &expected * &a;
        }
        prop_assert_eq!(a.pow(e), expected);
    }

    #[test]
    fn unknown_poly_ring(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
    }
}
