//! Groebner bases and the ideal operations built on them.

mod buchberger;
mod order;

use std::collections::{BTreeSet, VecDeque};

pub use buchberger::{buchberger_with_budget, DEFAULT_PAIR_BUDGET};
pub use order::MonomialOrder;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultivariatePolynomial};
use buchberger::Sorted;

/// Ideal of the polynomial ring in `nvars` variables, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<MultivariatePolynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(nvars: usize, generators: Vec<MultivariatePolynomial>) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: bad.nvars(),
            });
        }
        Ok(Ideal {
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultivariatePolynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner(&self, order: MonomialOrder) -> Result<GroebnerBasis> {
        buchberger_with_budget(self, order, DEFAULT_PAIR_BUDGET)
    }

    pub fn contains(&self, p: &MultivariatePolynomial) -> Result<bool> {
        Ok(self.groebner(MonomialOrder::Grevlex)?.contains(p))
    }

    /// The `m`-th power, generated by all products of `m` generators.
    pub fn power(&self, m: u32) -> Ideal {
        if m == 0 {
            return Ideal {
                nvars: self.nvars,
                generators: vec![MultivariatePolynomial::one(self.nvars)],
            };
        }
        let mut gens: Vec<(usize, MultivariatePolynomial)> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (i, g.clone()))
            .collect();
        for _ in 1..m {
            let mut next = Vec::new();
            for (last, p) in &gens {
                for (i, g) in self.generators.iter().enumerate().skip(*last) {
                    next.push((i, p * g));
                }
            }
            gens = next;
        }
        Ideal {
            nvars: self.nvars,
            generators: gens.into_iter().map(|(_, p)| p).collect(),
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(self.nvars, gens)
    }
}

/// Reduced Groebner basis: monic elements, sorted by increasing leading
/// monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    sorted: Vec<Sorted>,
    elements: Vec<MultivariatePolynomial>,
}

impl GroebnerBasis {
    fn from_sorted(nvars: usize, order: MonomialOrder, sorted: Vec<Sorted>) -> Self {
        let elements = sorted.iter().map(|s| s.to_poly(nvars)).collect();
        GroebnerBasis {
            nvars,
            order,
            sorted,
            elements,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[MultivariatePolynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|s| s.lead().clone()).collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0].lead().is_one()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal {
            nvars: self.nvars,
            generators: self.elements.clone(),
        }
    }

    /// Remainder of `p` on division by the basis. Panics if `p` lives in a
    /// different ambient dimension.
    pub fn normal_form(&self, p: &MultivariatePolynomial) -> MultivariatePolynomial {
        assert_eq!(p.nvars(), self.nvars, "normal_form: dimension mismatch");
        let s = Sorted::from_poly(p, &self.order);
        buchberger::normal_form_sorted(&s, &self.sorted, &self.order).to_poly(self.nvars)
    }

    pub fn contains(&self, p: &MultivariatePolynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Post-hoc Buchberger criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let n = self.elements.len();
        for i in 0..n {
            for j in i + 1..n {
                let (f, g) = (&self.elements[i], &self.elements[j]);
                let (lf, lg) = (&self.sorted[i].lead(), &self.sorted[j].lead());
                let l = lf.lcm(lg);
                let sf = f.mul_monomial(&l.div(lf).expect("lcm"), &crate::rational::int(1));
                let sg = g.mul_monomial(&l.div(lg).expect("lcm"), &crate::rational::int(1));
                if !self.normal_form(&(&sf - &sg)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Every variable has a pure power among the leading monomials, or the
    /// ideal is the unit ideal.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        let leads = self.leading_monomials();
        (0..self.nvars).all(|v| leads.iter().any(|m| m.pure_power_of() == Some(v)))
    }

    /// Standard monomials (those outside the leading-term ideal), sorted by
    /// increasing order. Empty for the unit ideal.
    pub fn quotient_basis(&self) -> Result<Vec<Monomial>> {
        if !self.is_zero_dimensional() {
            return Err(Error::NotZeroDimensional);
        }
        if self.is_unit() {
            return Ok(Vec::new());
        }
        let leads = self.leading_monomials();
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut queue: VecDeque<Monomial> = VecDeque::from([Monomial::one(self.nvars)]);
        while let Some(m) = queue.pop_front() {
            if seen.contains(&m) || leads.iter().any(|l| l.divides(&m)) {
                continue;
            }
            for v in 0..self.nvars {
                queue.push_back(m.mul(&Monomial::var(self.nvars, v)));
            }
            seen.insert(m);
        }
        let mut out: Vec<Monomial> = seen.into_iter().collect();
        out.sort_by(|a, b| self.order.cmp(a, b));
        Ok(out)
    }
}

pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
    ideal.groebner(order)
}

pub fn normal_form(p: &MultivariatePolynomial, g: &GroebnerBasis) -> MultivariatePolynomial {
    g.normal_form(p)
}

pub fn quotient_basis(g: &GroebnerBasis) -> Result<Vec<Monomial>> {
    g.quotient_basis()
}

/// Generators of the elimination ideal `I ∩ Q[z_{k+1}, ..., z_n]`, still
/// written in all `n` variables.
pub fn eliminate(ideal: &Ideal, first_k: usize) -> Result<Ideal> {
    eliminate_with_budget(ideal, first_k, DEFAULT_PAIR_BUDGET)
}

pub fn eliminate_with_budget(ideal: &Ideal, first_k: usize, budget: usize) -> Result<Ideal> {
    if first_k == 0 || first_k >= ideal.nvars() {
        return Err(Error::IndexOutOfRange {
            index: first_k,
            limit: ideal.nvars(),
        });
    }
    let gb = buchberger_with_budget(ideal, MonomialOrder::Elimination(first_k), budget)?;
    let kept = gb
        .elements()
        .iter()
        .filter(|p| (0..first_k).all(|v| p.degree_in(v) == Some(0)))
        .cloned()
        .collect();
    Ideal::new(ideal.nvars(), kept)
}

/// The saturation `I : g^∞`, via one auxiliary variable.
pub fn saturate(ideal: &Ideal, g: &MultivariatePolynomial) -> Result<Ideal> {
    saturate_with_budget(ideal, g, DEFAULT_PAIR_BUDGET)
}

pub fn saturate_with_budget(
    ideal: &Ideal,
    g: &MultivariatePolynomial,
    budget: usize,
) -> Result<Ideal> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = ideal.nvars();
    let mut gens: Vec<MultivariatePolynomial> = ideal
        .generators()
        .iter()
        .map(|p| p.extend_front(1))
        .collect();
    let y = MultivariatePolynomial::var(n + 1, 0);
    gens.push(MultivariatePolynomial::one(n + 1) - &y * &g.extend_front(1));
    let extended = Ideal::new(n + 1, gens)?;
    let eliminated = eliminate_with_budget(&extended, 1, budget)?;
    let back = eliminated
        .generators()
        .iter()
        .map(|p| p.drop_front(1).expect("eliminated variable"))
        .collect();
    Ideal::new(n, back)
}

/// Dimension of the quotient ring `Q[z]/I` for a zero-dimensional ideal.
pub fn multiplicity_dim(ideal: &Ideal) -> Result<usize> {
    Ok(ideal
        .groebner(MonomialOrder::Grevlex)?
        .quotient_basis()?
        .len())
}

/// True when `1` lies in the ideal.
pub fn is_unit_ideal(ideal: &Ideal) -> Result<bool> {
    let gb = ideal.groebner(MonomialOrder::Grevlex)?;
    Ok(gb.is_unit() || gb.contains(&MultivariatePolynomial::one(ideal.nvars())))
}

impl GroebnerBasis {
    /// Two-sided containment check against another ideal.
    pub fn same_ideal_as(&self, other: &Ideal) -> Result<bool> {
        if !other.generators().iter().all(|p| self.contains(p)) {
            return Ok(false);
        }
        let gb = other.groebner(self.order)?;
        Ok(self.elements.iter().all(|p| gb.contains(p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        Ideal::new(n, gens.iter().map(|g| parse_poly(g, n).unwrap()).collect()).unwrap()
    }

    fn p(s: &str, n: usize) -> MultivariatePolynomial {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn maximal_ideal_is_its_own_basis() {
        let gb = buchberger(&ideal(2, &["z1", "z2"]), MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.elements(), &[p("z2", 2), p("z1", 2)]);
        assert_eq!(gb.normal_form(&p("1", 2)), p("1", 2));
        assert_eq!(gb.quotient_basis().unwrap(), vec![Monomial::one(2)]);
    }

    #[test]
    fn twisted_cubic_in_lex() {
        // Lex with z3 > z2 > z1 is lex on the reversed variables.
        let i = ideal(3, &["z2-z3^2", "z1-z3^3"]);
        let gb = buchberger(&i, MonomialOrder::Lex).unwrap();
        assert!(gb.satisfies_buchberger_criterion());
        assert!(gb.elements().contains(&p("z2-z3^2", 3)));
        assert!(gb.elements().contains(&p("z1-z3^3", 3)));
        let g = buchberger(&ideal(3, &["z2-z1^2", "z3-z1^3"]), MonomialOrder::Grevlex).unwrap();
        // z2^2 - z1*z3 vanishes on (s, s^2, s^3).
        assert!(g.contains(&p("z2^2-z1*z3", 3)));
        assert!(g.satisfies_buchberger_criterion());
    }

    #[test]
    fn membership_by_construction() {
        let gb = buchberger(&ideal(2, &["z1^2-z2*z1"]), MonomialOrder::Grevlex).unwrap();
        assert!(gb.contains(&p("z1^3-z2*z1^2", 2)));
        assert!(!gb.contains(&p("z1^3", 2)));
    }

    #[test]
    fn elimination_cases() {
        let e = eliminate(&ideal(3, &["z2-z1^2", "z3-z1^3"]), 1).unwrap();
        assert!(e.contains(&p("z2^3-z3^2", 3)).unwrap());
        assert!(eliminate(&ideal(2, &["z1-1"]), 1).unwrap().is_zero());
        let e = eliminate(&ideal(2, &["z1*z2-1", "z2"]), 1).unwrap();
        assert!(e.contains(&p("z2", 2)).unwrap());
        // z1*z2-1 and z2 generate the unit ideal, whose elimination ideal is
        // also the unit ideal.
        assert!(is_unit_ideal(&e).unwrap());
    }

    #[test]
    fn saturation_cases() {
        let s = saturate(&ideal(2, &["z1*z2"]), &p("z1", 2)).unwrap();
        assert!(buchberger(&s, MonomialOrder::Grevlex)
            .unwrap()
            .same_ideal_as(&ideal(2, &["z2"]))
            .unwrap());
        let s = saturate(&ideal(1, &["z1^2"]), &p("z1", 1)).unwrap();
        assert!(is_unit_ideal(&s).unwrap());
        let s = saturate(&ideal(3, &["z1*z2", "z1*z3"]), &p("z1", 3)).unwrap();
        assert!(buchberger(&s, MonomialOrder::Grevlex)
            .unwrap()
            .same_ideal_as(&ideal(3, &["z2", "z3"]))
            .unwrap());
    }

    #[test]
    fn staircases() {
        let gb = buchberger(&ideal(2, &["z1^2", "z2^3"]), MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.quotient_basis().unwrap().len(), 6);
        let gb = buchberger(&ideal(2, &["z1"]), MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.quotient_basis(), Err(Error::NotZeroDimensional));
        assert_eq!(
            multiplicity_dim(&ideal(3, &["z1^2", "z2^2", "z3^2"])).unwrap(),
            8
        );
        assert_eq!(
            multiplicity_dim(&ideal(3, &["z1-1", "z2-2", "z3"])).unwrap(),
            1
        );
        assert_eq!(multiplicity_dim(&ideal(2, &["z1", "z1-1"])).unwrap(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let i = ideal(3, &["z1^2+z1*z2+z3", "z1*z2+z2^2+1", "z1*z3+z2*z3+2"]);
        assert_eq!(
            buchberger_with_budget(&i, MonomialOrder::Grevlex, 1).unwrap_err(),
            Error::ResourceLimit { reductions: 1 }
        );
    }

    #[test]
    fn ideal_powers() {
        let j = ideal(3, &["z1", "z2"]);
        assert_eq!(j.power(2).generators().len(), 3);
        let sq = j.power(2).groebner(MonomialOrder::Grevlex).unwrap();
        assert!(sq.contains(&p("z1*z2*z3", 3)));
        assert!(!sq.contains(&p("z1*z3", 3)));
    }
}
