use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::order::{MonomialOrder, OrderKey};
use super::{GroebnerBasis, Ideal};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultivariatePolynomial};
use crate::rational::Rational;

pub const DEFAULT_PAIR_BUDGET: usize = 200_000;

/// A polynomial with its terms sorted by decreasing order key.
#[derive(Clone, Debug)]
pub(crate) struct Sorted {
    pub(crate) terms: Vec<(OrderKey, Monomial, Rational)>,
}

impl Sorted {
    pub(crate) fn from_poly(p: &MultivariatePolynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<_> = p
            .terms()
            .map(|(m, c)| (order.key(m), m.clone(), c.clone()))
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Sorted { terms }
    }

    pub(crate) fn to_poly(&self, nvars: usize) -> MultivariatePolynomial {
        MultivariatePolynomial::from_terms(
            nvars,
            self.terms.iter().map(|(_, m, c)| (m.clone(), c.clone())),
        )
    }

    pub(crate) fn lead(&self) -> &Monomial {
        &self.terms[0].1
    }

    fn make_monic(&mut self) {
        let inv = self.terms[0].2.recip();
        for t in &mut self.terms {
            t.2 *= &inv;
        }
    }
}

/// Working polynomial for reduction, keyed by order so the leading term is
/// the last entry.
type Work = BTreeMap<OrderKey, (Monomial, Rational)>;

fn add_multiple(
    work: &mut Work,
    g: &Sorted,
    skip_lead: bool,
    shift: &Monomial,
    shift_key: &[i64],
    coef: &Rational,
) {
    for (k, m, c) in g.terms.iter().skip(usize::from(skip_lead)) {
        let key: OrderKey = k.iter().zip(shift_key).map(|(a, b)| a + b).collect();
        let delta = coef * c;
        match work.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert((m.mul(shift), delta));
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().1 += delta;
                if o.get().1.is_zero() {
                    o.remove();
                }
            }
        }
    }
}

/// Full reduction of `work` modulo `basis`; returns the remainder.
fn reduce(mut work: Work, basis: &[&Sorted], order: &MonomialOrder) -> Sorted {
    let mut rem = Vec::new();
    while let Some((key, (m, c))) = work.pop_last() {
        match basis.iter().find(|g| g.lead().divides(&m)) {
            Some(g) => {
                let shift = m.div(g.lead()).expect("divisible");
                let shift_key = order.key(&shift);
                let coef = -(c / &g.terms[0].2);
                add_multiple(&mut work, g, true, &shift, &shift_key, &coef);
            }
            None => rem.push((key, m, c)),
        }
    }
    Sorted { terms: rem }
}

fn to_work(p: &Sorted) -> Work {
    p.terms
        .iter()
        .map(|(k, m, c)| (k.clone(), (m.clone(), c.clone())))
        .collect()
}

pub(crate) fn normal_form_sorted(p: &Sorted, basis: &[Sorted], order: &MonomialOrder) -> Sorted {
    let refs: Vec<&Sorted> = basis.iter().collect();
    reduce(to_work(p), &refs, order)
}

fn s_polynomial(f: &Sorted, g: &Sorted, order: &MonomialOrder) -> Work {
    let lcm = f.lead().lcm(g.lead());
    let mut work = Work::new();
    let sf = lcm.div(f.lead()).expect("lcm");
    let sg = lcm.div(g.lead()).expect("lcm");
    let cf = f.terms[0].2.recip();
    let cg = -g.terms[0].2.recip();
    add_multiple(&mut work, f, true, &sf, &order.key(&sf), &cf);
    add_multiple(&mut work, g, true, &sg, &order.key(&sg), &cg);
    work
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

impl Pair {
    fn new(i: usize, j: usize, store: &[Sorted]) -> Self {
        let (i, j) = (i.min(j), i.max(j));
        Pair {
            i,
            j,
            lcm: store[i].lead().lcm(store[j].lead()),
        }
    }

    /// Normal selection strategy: smallest lcm degree, then lex on the lcm
    /// exponents, then indices.
    fn priority(&self) -> (u32, &[u32], usize, usize) {
        (self.lcm.degree(), self.lcm.exponents(), self.i, self.j)
    }
}

/// Gebauer-Moeller installation of a new element `h` (index into `store`).
fn update(store: &[Sorted], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = store[h].lead().clone();
    let candidates: Vec<Pair> = active.iter().map(|&g| Pair::new(h, g, store)).collect();

    // Chain criterion among the new pairs. Pairs with coprime leading terms
    // survive this step so they can still dominate others; the product
    // criterion removes them afterwards.
    let mut pending: std::collections::VecDeque<Pair> = candidates.into();
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = pending.pop_front() {
        let g1 = if p.i == h { p.j } else { p.i };
        let coprime = lh.is_coprime(store[g1].lead());
        let dominated = pending
            .iter()
            .chain(kept.iter())
            .any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            kept.push(p);
        }
    }
    // Product criterion.
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|p| {
            let g = if p.i == h { p.j } else { p.i };
            !lh.is_coprime(store[g].lead())
        })
        .collect();

    // Chain criterion on old pairs.
    pairs.retain(|p| {
        if !lh.divides(&p.lcm) {
            return true;
        }
        let l1 = store[p.i].lead().lcm(&lh);
        let l2 = store[p.j].lead().lcm(&lh);
        l1 == p.lcm || l2 == p.lcm
    });
    pairs.extend(new_pairs);

    active.retain(|&g| !lh.divides(store[g].lead()));
    active.push(h);
}

/// Reduced Groebner basis of `ideal`, giving up after `budget` S-pair
/// reductions.
pub fn buchberger_with_budget(
    ideal: &Ideal,
    order: MonomialOrder,
    budget: usize,
) -> Result<GroebnerBasis> {
    let nvars = ideal.nvars();
    let mut store: Vec<Sorted> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Sorted> = ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Sorted::from_poly(g, &order))
        .collect();
    inputs.sort_by(|a, b| a.terms[0].0.cmp(&b.terms[0].0));

    for f in inputs {
        let basis: Vec<&Sorted> = active.iter().map(|&i| &store[i]).collect();
        let mut r = reduce(to_work(&f), &basis, &order);
        if r.terms.is_empty() {
            continue;
        }
        r.make_monic();
        let is_unit = r.lead().is_one();
        store.push(r);
        let h = store.len() - 1;
        if is_unit {
            active = vec![h];
            pairs.clear();
            break;
        }
        update(&store, &mut active, &mut pairs, h);
    }

    let mut reductions = 0usize;
    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.priority().cmp(&b.1.priority()))
            .map(|(i, _)| i)
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        reductions += 1;
        if reductions > budget {
            return Err(Error::ResourceLimit { reductions: budget });
        }
        let s = s_polynomial(&store[pair.i], &store[pair.j], &order);
        let basis: Vec<&Sorted> = active.iter().map(|&i| &store[i]).collect();
        let mut r = reduce(s, &basis, &order);
        if r.terms.is_empty() {
            continue;
        }
        r.make_monic();
        let is_unit = r.lead().is_one();
        store.push(r);
        let h = store.len() - 1;
        if is_unit {
            active = vec![h];
            break;
        }
        update(&store, &mut active, &mut pairs, h);
    }

    Ok(GroebnerBasis::from_sorted(
        nvars,
        order,
        interreduce(&store, &active, &order),
    ))
}

/// Turns a Groebner basis (given as indices into `store`) into the reduced
/// basis, sorted by increasing leading term.
fn interreduce(store: &[Sorted], active: &[usize], order: &MonomialOrder) -> Vec<Sorted> {
    let mut minimal: Vec<&Sorted> = Vec::new();
    for &i in active {
        let lead = store[i].lead();
        let redundant = active.iter().any(|&j| {
            j != i && store[j].lead().divides(lead) && (store[j].lead() != lead || j < i)
        });
        if !redundant {
            minimal.push(&store[i]);
        }
    }
    let mut out: Vec<Sorted> = Vec::with_capacity(minimal.len());
    for (idx, g) in minimal.iter().enumerate() {
        let others: Vec<&Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, s)| *s)
            .collect();
        let (head, tail) = g.terms.split_first().expect("nonzero");
        let tail_work: Work = tail
            .iter()
            .map(|(k, m, c)| (k.clone(), (m.clone(), c.clone())))
            .collect();
        let r = reduce(tail_work, &others, order);
        let mut terms = vec![head.clone()];
        terms.extend(r.terms);
        let mut s = Sorted { terms };
        s.make_monic();
        out.push(s);
    }
    out.sort_by(|a, b| a.terms[0].0.cmp(&b.terms[0].0));
    debug_assert!(out.iter().all(|g| g.terms[0].2.is_one()));
    out
}
