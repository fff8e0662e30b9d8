mod common;

use basinlab::groebner::{
    buchberger_with_budget, multiplicity_dim, saturate_with_budget, Ideal, MonomialOrder,
};
use basinlab::{Error, Monomial, MultivariatePolynomial};
use common::{degrees, dense_system, poly};
use proptest::prelude::*;

const BUDGET: usize = 20_000;

fn ideal(max_gens: usize) -> impl Strategy<Value = Ideal> {
    (2usize..=3).prop_flat_map(move |n| {
        proptest::collection::vec(poly(n, 2, 4), 1..=max_gens)
            .prop_map(move |gens| Ideal::new(n, gens).unwrap())
    })
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Grevlex),
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::Elimination(1))
    ]
}

/// Pure powers `z_i^{b_i}` plus a few extra monomial generators.
fn monomial_ideal() -> impl Strategy<Value = (Vec<u32>, Vec<Vec<u32>>)> {
    (1usize..=3).prop_flat_map(|n| {
        (
            proptest::collection::vec(1u32..=5, n),
            proptest::collection::vec(proptest::collection::vec(0u32..=4, n), 0..=4),
        )
    })
}

fn staircase(bounds: &[u32], extra: &[Vec<u32>]) -> usize {
    let mut count = 0;
    let mut e = vec![0u32; bounds.len()];
    loop {
        let divisible = extra.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b));
        if !divisible {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == e.len() {
                return count;
            }
            e[i] += 1;
            if e[i] < bounds[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn s_polynomials_reduce_to_zero(i in ideal(3), ord in order()) {
        match buchberger_with_budget(&i, ord, BUDGET) {
            Ok(gb) => {
                prop_assert!(gb.satisfies_buchberger_criterion());
                for g in i.generators() {
                    prop_assert!(gb.contains(g));
                }
            }
            Err(Error::ResourceLimit { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn normal_form_is_additive(
        (i, p, q) in (2usize..=3).prop_flat_map(|n| (
            proptest::collection::vec(poly(n, 2, 4), 1..=3).prop_map(move |g| Ideal::new(n, g).unwrap()),
            poly(n, 4, 6),
            poly(n, 4, 6),
        ))
    ) {
        let Ok(gb) = buchberger_with_budget(&i, MonomialOrder::Grevlex, BUDGET) else { return Ok(()); };
        let lhs = gb.normal_form(&(&p + &q));
        let rhs = gb.normal_form(&(&gb.normal_form(&p) + &gb.normal_form(&q)));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(gb.contains(&(&p - &gb.normal_form(&p))));
    }

    #[test]
    fn saturation_contains_and_is_idempotent(
        (i, g) in (2usize..=3).prop_flat_map(|n| (
            proptest::collection::vec(poly(n, 2, 3), 1..=2).prop_map(move |g| Ideal::new(n, g).unwrap()),
            poly(n, 1, 3).prop_filter("nonzero", |g| !g.is_zero()),
        ))
    ) {
        let Ok(sat) = saturate_with_budget(&i, &g, BUDGET) else { return Ok(()); };
        let Ok(sat_gb) = sat.groebner(MonomialOrder::Grevlex) else { return Ok(()); };
        for p in i.generators() {
            prop_assert!(sat_gb.contains(p));
        }
        let Ok(twice) = saturate_with_budget(&sat, &g, BUDGET) else { return Ok(()); };
        prop_assert!(sat_gb.same_ideal_as(&twice).unwrap());
    }

    #[test]
    fn monomial_quotient_matches_staircase((bounds, extra) in monomial_ideal()) {
        let n = bounds.len();
        let mut gens: Vec<MultivariatePolynomial> = bounds
            .iter()
            .enumerate()
            .map(|(i, &b)| MultivariatePolynomial::var(n, i).pow(b))
            .collect();
        for e in &extra {
            gens.push(MultivariatePolynomial::monomial(n, Monomial::new(e.clone()), basinlab::rational::int(1)));
        }
        let i = Ideal::new(n, gens).unwrap();
        prop_assert_eq!(multiplicity_dim(&i).unwrap(), staircase(&bounds, &extra));
    }

    #[test]
    fn dense_systems_meet_the_bezout_count(
        i in degrees(3, 3).prop_flat_map(|(n, d)| dense_system(n, d))
    ) {
        let expected: u32 = i.generators().iter().map(|g| g.degree().finite().unwrap()).product();
        prop_assert_eq!(multiplicity_dim(&i).unwrap(), expected as usize);
    }
}
