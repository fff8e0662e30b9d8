use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::along::subsets;
use super::{CompleteIntersection, VectorField};
use crate::error::{Error, Result};
use crate::poly::MultivariatePolynomial;
use crate::rational::{self, Rational};

/// `f = C z_S + h(z_rest)` with `C` invertible: the variables in `S` split
/// off linearly, so `psi(z) = (f, z_rest)` has a polynomial inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphForm {
    nvars: usize,
    split: Vec<usize>,
    rest: Vec<usize>,
    c_inv: Vec<Vec<Rational>>,
    h: Vec<MultivariatePolynomial>,
    equations: Vec<MultivariatePolynomial>,
}

impl GraphForm {
    /// Tries every `d`-subset `S` of the variables in lexicographic order.
    pub fn detect(w: &CompleteIntersection) -> Result<GraphForm> {
        let n = w.nvars();
        let d = w.codim();
        for split in subsets(n, d) {
            if let Some(g) = Self::try_split(w, &split) {
                return Ok(g);
            }
        }
        Err(Error::NotGraphForm(
            "no set of variables enters the equations linearly with an invertible coefficient block".into(),
        ))
    }

    fn try_split(w: &CompleteIntersection, split: &[usize]) -> Option<GraphForm> {
        let n = w.nvars();
        let rest: Vec<usize> = (0..n).filter(|i| !split.contains(i)).collect();
        let mut c = vec![vec![rational::int(0); split.len()]; split.len()];
        let mut h = Vec::with_capacity(split.len());
        for (row, f) in w.equations().iter().enumerate() {
            let mut hi = MultivariatePolynomial::zero(n);
            for (m, coef) in f.terms() {
                let in_split: u32 = split.iter().map(|&s| m.exponent(s)).sum();
                match in_split {
                    0 => hi.add_term(m.clone(), coef.clone()),
                    1 if m.degree() == 1 => {
                        let v = m.pure_power_of().expect("linear monomial");
                        let col = split.iter().position(|&s| s == v).expect("split variable");
                        c[row][col] = coef.clone();
                    }
                    _ => return None,
                }
            }
            h.push(hi);
        }
        let c_inv = rational::inverse(&c)?;
        Some(GraphForm {
            nvars: n,
            split: split.to_vec(),
            rest,
            c_inv,
            h,
            equations: w.equations().to_vec(),
        })
    }

    pub fn split_variables(&self) -> &[usize] {
        &self.split
    }

    pub fn rest_variables(&self) -> &[usize] {
        &self.rest
    }

    /// Components of `psi` in the original variables.
    pub fn forward_images(&self) -> Vec<MultivariatePolynomial> {
        let mut out = self.equations.clone();
        out.extend(
            self.rest
                .iter()
                .map(|&r| MultivariatePolynomial::var(self.nvars, r)),
        );
        out
    }

    /// `z_k` as a polynomial in `u = psi(z)`.
    pub fn inverse_images(&self) -> Vec<MultivariatePolynomial> {
        let n = self.nvars;
        let d = self.split.len();
        let mut to_u: Vec<MultivariatePolynomial> = vec![MultivariatePolynomial::zero(n); n];
        for (k, &r) in self.rest.iter().enumerate() {
            to_u[r] = MultivariatePolynomial::var(n, d + k);
        }
        let h_u: Vec<MultivariatePolynomial> = self
            .h
            .iter()
            .map(|h| h.substitute(&to_u).expect("dimensions agree"))
            .collect();
        let mut out = to_u;
        for (row, &s) in self.split.iter().enumerate() {
            let mut z = MultivariatePolynomial::zero(n);
            for (col, hc) in h_u.iter().enumerate() {
                let c = &self.c_inv[row][col];
                if !num_traits::Zero::is_zero(c) {
                    let u = MultivariatePolynomial::var(n, col);
                    z = &z + &(&u - hc).scale(c);
                }
            }
            out[s] = z;
        }
        out
    }

    /// A rational point of `W`: random `z_rest`, then `z_S = -C^{-1} h`.
    pub fn sample_point(&self, seed: u64) -> Vec<Rational> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = vec![rational::int(0); self.nvars];
        for &r in &self.rest {
            p[r] = rational::rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        }
        let hv: Vec<Rational> = self
            .h
            .iter()
            .map(|h| h.evaluate_rational(&p).expect("dimensions agree"))
            .collect();
        for (row, &s) in self.split.iter().enumerate() {
            p[s] = -self.c_inv[row]
                .iter()
                .zip(&hv)
                .map(|(c, v)| c * v)
                .fold(rational::int(0), |a, b| a + b);
        }
        p
    }
}

/// `psi_* X` together with the coordinate model `{u_1 = ... = u_d = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Straightened {
    pub field: VectorField,
    pub w: CompleteIntersection,
    pub graph: GraphForm,
}

/// Pushes `X` forward by `psi(z) = (f_1, ..., f_d, z_rest)`:
/// `Y_i = (grad f_i . X) o psi^{-1}` for `i <= d` and
/// `Y_{d+k} = X_{rest_k} o psi^{-1}`.
pub fn straighten(w: &CompleteIntersection, x: &VectorField) -> Result<Straightened> {
    if x.nvars() != w.nvars() {
        return Err(Error::DimensionMismatch {
            expected: w.nvars(),
            found: x.nvars(),
        });
    }
    let graph = GraphForm::detect(w)?;
    let n = x.nvars();
    let inv = graph.inverse_images();
    let mut comps = Vec::with_capacity(n);
    for f in w.equations() {
        let mut lie = MultivariatePolynomial::zero(n);
        for (j, xj) in x.components().iter().enumerate() {
            lie = &lie + &(&f.differentiate(j)? * xj);
        }
        comps.push(lie.substitute(&inv)?);
    }
    for &r in &graph.rest {
        comps.push(x.component(r).substitute(&inv)?);
    }
    let d = w.codim();
    Ok(Straightened {
        field: VectorField::new(comps)?,
        w: CompleteIntersection::coordinate(n, &(0..d).collect::<Vec<_>>())?,
        graph,
    })
}
