mod common;

use basinlab::{parse_poly, MultivariatePolynomial};
use common::poly;
use proptest::prelude::*;

fn triple(
    max_deg: u32,
) -> impl Strategy<
    Value = (
        MultivariatePolynomial,
        MultivariatePolynomial,
        MultivariatePolynomial,
    ),
> {
    (1usize..=4).prop_flat_map(move |n| {
        (
            poly(n, max_deg, 5),
            poly(n, max_deg, 5),
            poly(n, max_deg, 5),
        )
    })
}

fn affine_map(n: usize) -> impl Strategy<Value = Vec<MultivariatePolynomial>> {
    proptest::collection::vec(poly(n, 1, 3), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in triple(4)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn print_parse_print((p, _, _) in triple(4)) {
        let printed = p.to_string();
        let reparsed = parse_poly(&printed, p.nvars()).unwrap();
        prop_assert_eq!(&reparsed, &p);
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    #[test]
    fn mixed_partials_commute((p, _, _) in triple(4), i in 0usize..4, j in 0usize..4) {
        let n = p.nvars();
        let (i, j) = (i % n, j % n);
        let ij = p.differentiate(i).unwrap().differentiate(j).unwrap();
        let ji = p.differentiate(j).unwrap().differentiate(i).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn affine_substitutions_compose(
        (p, a, b) in (1usize..=3).prop_flat_map(|n| (poly(n, 3, 5), affine_map(n), affine_map(n)))
    ) {
        let a_then_b: Vec<_> = a.iter().map(|ai| ai.substitute(&b).unwrap()).collect();
        let lhs = p.substitute(&a).unwrap().substitute(&b).unwrap();
        prop_assert_eq!(lhs, p.substitute(&a_then_b).unwrap());
    }
}
