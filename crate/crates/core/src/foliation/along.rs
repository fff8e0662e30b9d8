use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::Serialize;

use super::{CompleteIntersection, VectorField};
use crate::error::{Error, Result};
use crate::groebner::{is_unit_ideal, GroebnerBasis, Ideal, MonomialOrder};
use crate::poly::MultivariatePolynomial;

/// Orders of vanishing of the components along `W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityProfile {
    /// `orders[i]` is the largest `m` with `X_i` in `I(W)^m`; `None` for an
    /// identically zero component.
    pub orders: Vec<Option<u32>>,
    pub m_w: u32,
}

/// `X_i` must lie in `J = I(W)`; the order is then found by testing
/// membership in `J^2, J^3, ...` up to the degree of `X_i`.
pub fn mult_along_w(x: &VectorField, w: &CompleteIntersection) -> Result<MultiplicityProfile> {
    if x.is_zero() {
        return Err(Error::ZeroField);
    }
    if x.nvars() != w.nvars() {
        return Err(Error::DimensionMismatch {
            expected: x.nvars(),
            found: w.nvars(),
        });
    }
    w.verify_smooth()?;
    let j = w.ideal();
    let mut powers: HashMap<u32, GroebnerBasis> = HashMap::new();
    let mut member = |p: &MultivariatePolynomial, m: u32| -> Result<bool> {
        let gb = match powers.entry(m) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(j.power(m).groebner(MonomialOrder::Grevlex)?),
        };
        Ok(gb.contains(p))
    };
    let mut orders = Vec::with_capacity(x.nvars());
    for (i, c) in x.components().iter().enumerate() {
        if c.is_zero() {
            orders.push(None);
            continue;
        }
        if !member(c, 1)? {
            return Err(Error::WNotInSingularLocus { component: i + 1 });
        }
        let deg = c.degree().finite().unwrap_or(0);
        let mut m = 1;
        while m < deg && member(c, m + 1)? {
            m += 1;
        }
        orders.push(Some(m));
    }
    let m_w = orders
        .iter()
        .flatten()
        .copied()
        .min()
        .expect("nonzero field");
    Ok(MultiplicityProfile { orders, m_w })
}

/// Vanishing order of the pulled-back field along the exceptional divisor of
/// the blow-up of `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalData {
    pub m_e: u32,
    pub dicritical: bool,
    pub ell: u32,
}

impl ExceptionalData {
    fn new(m_e: u32, dicritical: bool) -> Self {
        let ell = if dicritical {
            assert!(m_e >= 1, "dicritical blow-up with m_E = 0");
            m_e - 1
        } else {
            m_e
        };
        ExceptionalData {
            m_e,
            dicritical,
            ell,
        }
    }
}

/// Blow-up of a coordinate `W = {z_i = 0, i in S}`. In the chart of
/// `j in S` the substitution is `z_j = s`, `z_i = s v_i` (`i in S`, `i != j`);
/// the transformed field is `s' = X_j`, `v_i' = (X_i - v_i X_j)/s` and the
/// tangent components unchanged. `m_E` is the least `s`-order over all
/// charts and components; the blow-up is dicritical when, in some chart,
/// `s'/s^{m_E}` does not vanish on `s = 0`.
pub fn exceptional_order(x: &VectorField, w: &CompleteIntersection) -> Result<ExceptionalData> {
    let normal = w.coordinate_indices().ok_or(Error::WNotCoordinate)?;
    if x.is_zero() {
        return Err(Error::ZeroField);
    }
    let n = x.nvars();
    let j_ideal = w.ideal().groebner(MonomialOrder::Grevlex)?;
    for (i, c) in x.components().iter().enumerate() {
        if !j_ideal.contains(c) {
            return Err(Error::WNotInSingularLocus { component: i + 1 });
        }
    }
    let charts: Vec<Vec<MultivariatePolynomial>> = normal
        .iter()
        .map(|&j| chart_components(x, &normal, j))
        .collect();
    let m_e = charts
        .iter()
        .zip(&normal)
        .flat_map(|(comps, &j)| comps.iter().filter_map(move |c| c.order_in(j)))
        .min()
        .ok_or(Error::ZeroField)?;
    let dicritical = charts.iter().zip(&normal).any(|(comps, &j)| {
        let s_dot = &comps[j];
        match s_dot.divide_by_var_power(j, m_e) {
            Some(q) => !q.specialize(j, &crate::rational::int(0)).is_zero(),
            None => false,
        }
    });
    debug_assert_eq!(charts.first().map(Vec::len), Some(n));
    Ok(ExceptionalData::new(m_e, dicritical))
}

fn chart_components(x: &VectorField, normal: &[usize], j: usize) -> Vec<MultivariatePolynomial> {
    let n = x.nvars();
    let images: Vec<MultivariatePolynomial> = (0..n)
        .map(|i| {
            let zi = MultivariatePolynomial::var(n, i);
            if i != j && normal.contains(&i) {
                &zi * &MultivariatePolynomial::var(n, j)
            } else {
                zi
            }
        })
        .collect();
    let sub: Vec<MultivariatePolynomial> = x
        .components()
        .iter()
        .map(|c| c.substitute(&images).expect("dimensions agree"))
        .collect();
    (0..n)
        .map(|i| {
            if i == j || !normal.contains(&i) {
                sub[i].clone()
            } else {
                let v = MultivariatePolynomial::var(n, i);
                (&sub[i] - &(&v * &sub[j]))
                    .divide_by_var_power(j, 1)
                    .expect("components vanish on W")
            }
        })
        .collect()
}

/// `d x d` minors of the Jacobian restricted to the given columns, with the
/// row set of each minor.
pub(crate) fn jacobian_minors(
    x: &VectorField,
    columns: &[usize],
) -> Vec<(Vec<usize>, MultivariatePolynomial)> {
    let jac = x.jacobian();
    subsets(x.nvars(), columns.len())
        .into_iter()
        .map(|rows| {
            let m: Vec<Vec<MultivariatePolynomial>> = rows
                .iter()
                .map(|&r| columns.iter().map(|&c| jac[r][c].clone()).collect())
                .collect();
            (rows, determinant(&m))
        })
        .collect()
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Determinant by cofactor expansion (small matrices only).
pub(crate) fn determinant(m: &[Vec<MultivariatePolynomial>]) -> MultivariatePolynomial {
    let k = m.len();
    let nvars = m[0][0].nvars();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultivariatePolynomial::zero(nvars);
    for (c, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultivariatePolynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = entry * &determinant(&minor);
        acc = if c % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// `W` is totally simple for `X` when the linear part of `X` in the normal
/// directions is invertible along `W`. For a coordinate `W` this is decided
/// pointwise: the ideal generated by `I(W)` and all `d x d` minors of the
/// normal columns of the Jacobian is the unit ideal. Other `W` are
/// straightened first.
pub fn totally_simple(x: &VectorField, w: &CompleteIntersection) -> Result<bool> {
    let (x, w) = match w.coordinate_indices() {
        Some(_) => (x.clone(), w.clone()),
        None => {
            let s = super::straighten(w, x)?;
            (s.field, s.w)
        }
    };
    let normal = w.coordinate_indices().expect("coordinate form");
    let jw = w.ideal().groebner(MonomialOrder::Grevlex)?;
    for (i, c) in x.components().iter().enumerate() {
        if !jw.contains(c) {
            return Err(Error::WNotInSingularLocus { component: i + 1 });
        }
    }
    let mut gens: Vec<MultivariatePolynomial> = w.equations().to_vec();
    gens.extend(
        jacobian_minors(&x, &normal)
            .into_iter()
            .map(|(_, d)| d)
            .filter(|d| !d.is_zero()),
    );
    is_unit_ideal(&Ideal::new(x.nvars(), gens)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> CompleteIntersection {
        CompleteIntersection::coordinate(3, &[0, 1]).unwrap()
    }

    #[test]
    fn multiplicity_profiles() {
        let x = VectorField::parse(&["z1^2", "z1*z2", "z2^3"]).unwrap();
        let p = mult_along_w(&x, &line()).unwrap();
        assert_eq!(p.orders, vec![Some(2), Some(2), Some(3)]);
        assert_eq!(p.m_w, 2);
        let x = VectorField::parse(&["z1", "z2", "0"]).unwrap();
        assert_eq!(mult_along_w(&x, &line()).unwrap().m_w, 1);
        let x = VectorField::parse(&["z1", "z3", "0"]).unwrap();
        assert_eq!(
            mult_along_w(&x, &line()),
            Err(Error::WNotInSingularLocus { component: 2 })
        );
    }

    #[test]
    fn exceptional_orders() {
        let x = VectorField::parse(&["0", "0", "z1"]).unwrap();
        assert_eq!(
            exceptional_order(&x, &line()).unwrap(),
            ExceptionalData {
                m_e: 1,
                dicritical: false,
                ell: 1
            }
        );
        let x = VectorField::parse(&["z1", "z2", "0"]).unwrap();
        assert_eq!(
            exceptional_order(&x, &line()).unwrap(),
            ExceptionalData {
                m_e: 1,
                dicritical: true,
                ell: 0
            }
        );
        let twisted = CompleteIntersection::parse(3, &["z2-z1^2", "z3-z1^3"]).unwrap();
        assert_eq!(exceptional_order(&x, &twisted), Err(Error::WNotCoordinate));
    }

    #[test]
    fn totally_simple_cases() {
        let x = VectorField::parse(&["z1", "z2", "0"]).unwrap();
        assert!(totally_simple(&x, &line()).unwrap());
        let x = VectorField::parse(&["z1^2", "z2^2", "z1"]).unwrap();
        assert!(!totally_simple(&x, &line()).unwrap());
    }

    #[test]
    fn determinant_of_rotation_block() {
        let p = |s: &str| crate::poly::parse_poly(s, 1).unwrap();
        let m = vec![vec![p("z1"), p("1")], vec![p("-1"), p("z1")]];
        assert_eq!(determinant(&m), p("z1^2+1"));
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}
