//! Property tests for the polynomial layer: exact-division soundness, the
//! truncation homomorphism, and the group-action laws of the linear
//! substitution.

use proptest::prelude::*;

use qmn::gf::Field;
use qmn::groups::MatrixFq;
use qmn::mpoly::{MPoly, PolyError, RationalFn, TruncationSpec};

fn field_for(tag: u8) -> Field {
    match tag % 3 {
        0 => Field::new(2, 1).unwrap(),
        1 => Field::new(3, 1).unwrap(),
        _ => Field::new(2, 2).unwrap(),
    }
}

fn poly_from(field: &Field, nvars: usize, seed: &[(Vec<u32>, u64)]) -> MPoly {
    MPoly::from_terms(
        field,
        nvars,
        seed.iter().map(|(exps, c)| {
            let mut e = exps.clone();
            e.resize(nvars, 0);
            (e, field.element_from_index(c % field.q()))
        }),
    )
}

fn arb_terms(nvars: usize, max_exp: u32, max_terms: usize) -> BoxedStrategy<Vec<(Vec<u32>, u64)>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), 0u64..16),
        1..=max_terms,
    )
    .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_division_roundtrip(
        tag in 0u8..3,
        gt in arb_terms(2, 4, 4),
        ht in arb_terms(2, 4, 4),
    ) {
        let field = field_for(tag);
        let g = poly_from(&field, 2, &gt);
        let h = poly_from(&field, 2, &ht);
        prop_assume!(!g.is_zero());
        let prod = g.mul(&h);
        let q = prod.exact_div(&g).unwrap();
        prop_assert_eq!(q, h);
    }

    #[test]
    fn exact_division_rejects_offset(
        tag in 0u8..3,
        gt in arb_terms(2, 4, 4),
        ht in arb_terms(2, 4, 4),
    ) {
        let field = field_for(tag);
        // force g to have no constant term so a nonzero constant offset can
        // never be divisible by it
        let g = poly_from(&field, 2, &gt).mul(&MPoly::var(&field, 2, 0));
        let h = poly_from(&field, 2, &ht);
        prop_assume!(!g.is_zero());
        let offset = MPoly::one(&field, 2);
        let sum = g.mul(&h).add(&offset);
        match sum.exact_div(&g) {
            Err(PolyError::NotDivisible { remainder }) => prop_assert!(!remainder.is_zero()),
            other => prop_assert!(false, "expected NotDivisible, got {:?}", other.map(|p| p.to_string())),
        }
    }

    #[test]
    fn truncation_idempotent_and_multiplicative(
        tag in 0u8..3,
        m in 1u32..3,
        ft in arb_terms(2, 9, 5),
        gt in arb_terms(2, 9, 5),
    ) {
        let field = field_for(tag);
        let spec = TruncationSpec::new(field.q(), m);
        let f = poly_from(&field, 2, &ft);
        let g = poly_from(&field, 2, &gt);
        let tf = f.truncate(&spec);
        prop_assert_eq!(tf.truncate(&spec), tf.clone());
        // truncation is a quotient-ring homomorphism
        prop_assert_eq!(
            f.mul(&g).truncate(&spec),
            tf.mul(&g.truncate(&spec)).truncate(&spec)
        );
    }

    #[test]
    fn substitution_action_laws(
        tag in 0u8..3,
        word_a in prop::collection::vec((0usize..2, 0usize..2), 1..4),
        word_b in prop::collection::vec((0usize..2, 0usize..2), 1..4),
        ft in arb_terms(2, 3, 4),
        gt in arb_terms(2, 3, 4),
    ) {
        let field = field_for(tag);
        let n = 2usize;
        let make = |word: &[(usize, usize)]| {
            let mut m = MatrixFq::identity(&field, n);
            for &(i, j) in word {
                let g = if i == j {
                    MatrixFq::torus_generator(&field, n, i, &field.primitive_element())
                } else {
                    MatrixFq::transvection(&field, n, i, j, &field.one())
                };
                m = m.mul(&g);
            }
            m
        };
        let a = make(&word_a);
        let b = make(&word_b);
        let f = poly_from(&field, n, &ft);
        let g = poly_from(&field, n, &gt);
        // group action: acting by a product is acting by factors in order
        prop_assert_eq!(
            a.mul(&b).act_on_poly(&f),
            a.act_on_poly(&b.act_on_poly(&f))
        );
        // ring homomorphism
        prop_assert_eq!(
            a.act_on_poly(&f.mul(&g)),
            a.act_on_poly(&f).mul(&a.act_on_poly(&g))
        );
    }

    #[test]
    fn fraction_sum_matches_pairwise(
        tag in 0u8..3,
        numerators in prop::collection::vec(arb_terms(2, 3, 3), 1..4),
    ) {
        let field = field_for(tag);
        let items: Vec<RationalFn> = numerators
            .iter()
            .enumerate()
            .map(|(i, nt)| {
                let num = poly_from(&field, 2, nt);
                let den = MPoly::var(&field, 2, i % 2).add(&MPoly::one(&field, 2));
                RationalFn::new(num, den).unwrap()
            })
            .collect();
        let fast = RationalFn::sum(&field, 2, &items);
        let mut slow = RationalFn::zero(&field, 2);
        for it in &items {
            slow = slow.add(it);
        }
        prop_assert!(fast.eq(&slow));
    }
}
