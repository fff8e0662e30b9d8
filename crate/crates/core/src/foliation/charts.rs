use serde::Serialize;

use super::VectorField;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultivariatePolynomial};

/// Degree of the foliation induced on projective space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FoliationDegree {
    pub k: u32,
    pub radial_top: bool,
}

/// The top-degree part `T` of `X` is radial when `T = g R` with
/// `R = sum z_i d/dz_i`; the induced foliation then has degree `D - 1`,
/// otherwise `D`.
pub fn foliation_degree(x: &VectorField) -> Result<FoliationDegree> {
    let d = x.max_degree().ok_or(Error::ZeroField)?;
    let radial_top = radial_factor(x, d).is_some();
    let k = if radial_top { d - 1 } else { d };
    Ok(FoliationDegree { k, radial_top })
}

/// `g` with `T_i = g z_i` for all `i`, when it exists and `D >= 1`.
fn radial_factor(x: &VectorField, d: u32) -> Option<MultivariatePolynomial> {
    if d == 0 {
        return None;
    }
    let n = x.nvars();
    let top: Vec<MultivariatePolynomial> = x
        .components()
        .iter()
        .map(|c| c.homogeneous_part(d))
        .collect();
    let mut g: Option<MultivariatePolynomial> = None;
    for (i, t) in top.iter().enumerate() {
        let q = t.divide_by_var_power(i, 1)?;
        if let Some(g) = &g {
            if *g != q {
                return None;
            }
        } else {
            g = Some(q);
        }
    }
    let g = g?;
    debug_assert_eq!(g.nvars(), n);
    (!g.is_zero()).then_some(g)
}

/// `w^D X_i(u/w, 1/w)` in chart coordinates `(u, w)`: `u` occupies the
/// `n - 1` slots of the variables other than `j` and `w` is last.
fn homogenized_in_chart(p: &MultivariatePolynomial, j: usize, d: u32) -> MultivariatePolynomial {
    let n = p.nvars();
    let mut out = MultivariatePolynomial::zero(n);
    for (m, c) in p.terms() {
        let e = m.exponents();
        let mut exps = vec![0u32; n];
        let mut slot = 0;
        for (i, &ei) in e.iter().enumerate() {
            if i != j {
                exps[slot] = ei;
                slot += 1;
            }
        }
        exps[n - 1] = d - m.degree();
        out.add_term(Monomial::new(exps), c.clone());
    }
    out
}

/// The field in chart `chart` of projective space. Chart `0` is the
/// original affine chart; chart `j >= 1` has coordinates
/// `u_i = z_i / z_j` (`i != j`, in order) followed by `w = 1 / z_j`.
/// When the top part is radial the field is divided by `w` so that it is
/// saturated along the hyperplane at infinity.
pub fn chart_field(x: &VectorField, chart: usize) -> Result<VectorField> {
    let n = x.nvars();
    if chart > n {
        return Err(Error::IndexOutOfRange {
            index: chart,
            limit: n,
        });
    }
    if chart == 0 {
        return Ok(x.clone());
    }
    let deg = foliation_degree(x)?;
    let j = chart - 1;
    let d = x.max_degree().expect("nonzero field");
    let p: Vec<MultivariatePolynomial> = x
        .components()
        .iter()
        .map(|c| homogenized_in_chart(c, j, d))
        .collect();
    let w = MultivariatePolynomial::var(n, n - 1);
    let mut comps = Vec::with_capacity(n);
    let mut slot = 0;
    for i in 0..n {
        if i == j {
            continue;
        }
        let u = MultivariatePolynomial::var(n, slot);
        comps.push(&p[i] - &(&u * &p[j]));
        slot += 1;
    }
    comps.push(-(&w * &p[j]));
    if deg.radial_top {
        comps = comps
            .into_iter()
            .map(|c| c.divide_by_var_power(n - 1, 1).expect("radial top cancels"))
            .collect();
    }
    VectorField::new(comps)
}

/// The induced field on the hyperplane at infinity, read in chart `chart`:
/// the `u`-components of [`chart_field`] at `w = 0`, in `n - 1`
/// variables. Chart `0` returns `X` itself.
pub fn chart_restrict(x: &VectorField, chart: usize) -> Result<VectorField> {
    if chart == 0 {
        return chart_field(x, 0);
    }
    let field = chart_field(x, chart)?;
    let n = x.nvars();
    let zero = crate::rational::int(0);
    let comps = field.components()[..n - 1]
        .iter()
        .map(|c| {
            c.specialize(n - 1, &zero)
                .drop_back(1)
                .expect("w eliminated")
        })
        .collect();
    VectorField::new(comps)
}
