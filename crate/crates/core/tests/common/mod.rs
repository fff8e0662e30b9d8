#![allow(dead_code)]

use basinlab::groebner::Ideal;
use basinlab::rational::{int, rat};
use basinlab::{Monomial, MultivariatePolynomial};
use proptest::prelude::*;

/// Random polynomial in `n` variables of total degree at most `max_deg`.
pub fn poly(
    n: usize,
    max_deg: u32,
    max_terms: usize,
) -> impl Strategy<Value = MultivariatePolynomial> {
    let term = (
        proptest::collection::vec(0..=max_deg, n),
        -6i64..=6,
        1i64..=4,
    );
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let terms = terms.into_iter().filter_map(|(mut e, num, den)| {
            while e.iter().sum::<u32>() > max_deg {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            (num != 0).then(|| (Monomial::new(e), rat(num, den)))
        });
        MultivariatePolynomial::from_terms(n, terms)
    })
}

/// `c_i z_i^{d_i}` plus arbitrary terms of lower degree. The top forms have
/// no common zero at infinity, so the system has exactly `prod d_i` roots
/// counted with multiplicity.
pub fn dense_system(n: usize, degrees: Vec<u32>) -> impl Strategy<Value = Ideal> {
    let parts: Vec<_> = degrees
        .iter()
        .map(|&d| {
            (
                1i64..=5,
                proptest::collection::vec(-5i64..=5, dense_monomials(n, d - 1).len()),
            )
        })
        .collect();
    parts.prop_map(move |parts| {
        let gens = parts
            .into_iter()
            .zip(&degrees)
            .enumerate()
            .map(|(i, ((lead, coeffs), &d))| {
                let mut e = vec![0; n];
                e[i] = d;
                let mut p = MultivariatePolynomial::monomial(n, Monomial::new(e), int(lead));
                for (m, c) in dense_monomials(n, d - 1).into_iter().zip(coeffs) {
                    p.add_term(m, int(c));
                }
                p
            })
            .collect();
        Ideal::new(n, gens).unwrap()
    })
}

/// All monomials in `n` variables of degree at most `d`.
pub fn dense_monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn degrees(max_n: usize, max_d: u32) -> impl Strategy<Value = (usize, Vec<u32>)> {
    (1..=max_n).prop_flat_map(move |n| (Just(n), proptest::collection::vec(1..=max_d, n)))
}
