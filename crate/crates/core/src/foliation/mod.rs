//! Vector fields, the component `W` of their singular set, and the local
//! invariants of a field along `W`.

mod along;
mod charts;
mod manifest;
mod straighten;

pub(crate) use along::{determinant, subsets};
pub use along::{
    exceptional_order, mult_along_w, totally_simple, ExceptionalData, MultiplicityProfile,
};
pub use charts::{chart_field, chart_restrict, foliation_degree, FoliationDegree};
pub use manifest::Manifest;
pub use straighten::{straighten, GraphForm, Straightened};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{parse_poly, MultivariatePolynomial};
use crate::rational::Rational;

/// Polynomial vector field `X = sum X_i d/dz_i` on affine `n`-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<MultivariatePolynomial>,
}

impl VectorField {
    pub fn new(components: Vec<MultivariatePolynomial>) -> Result<Self> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|c| c.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.nvars(),
            });
        }
        Ok(VectorField { components })
    }

    pub fn parse(components: &[&str]) -> Result<Self> {
        let n = components.len();
        Self::new(
            components
                .iter()
                .map(|c| parse_poly(c, n))
                .collect::<Result<_>>()?,
        )
    }

    pub fn zero(n: usize) -> Self {
        VectorField {
            components: vec![MultivariatePolynomial::zero(n); n],
        }
    }

    /// Constant field `sum c_i d/dz_i`.
    pub fn constant(values: &[Rational]) -> Self {
        let n = values.len();
        VectorField {
            components: values
                .iter()
                .map(|c| MultivariatePolynomial::constant(n, c.clone()))
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultivariatePolynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MultivariatePolynomial {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultivariatePolynomial::is_zero)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.components
            .iter()
            .filter_map(|c| c.degree().finite())
            .max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn checked_sub(&self, other: &VectorField) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        Ok(VectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn evaluate(&self, point: &[Complex64]) -> Vec<Complex64> {
        self.components
            .iter()
            .map(|c| c.evaluate_complex(point))
            .collect()
    }

    /// `J[i][j] = dX_i/dz_j`.
    pub fn jacobian(&self) -> Vec<Vec<MultivariatePolynomial>> {
        let n = self.nvars();
        self.components
            .iter()
            .map(|c| {
                (0..n)
                    .map(|j| c.differentiate(j).expect("in range"))
                    .collect()
            })
            .collect()
    }

    /// Gradient field of `f`.
    pub fn gradient(f: &MultivariatePolynomial) -> Self {
        let n = f.nvars();
        VectorField {
            components: (0..n)
                .map(|j| f.differentiate(j).expect("in range"))
                .collect(),
        }
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "X{} = {c}", i + 1)?;
        }
        Ok(())
    }
}

/// Ideal of the singular scheme, generated by the components.
pub fn singular_ideal(x: &VectorField) -> Result<Ideal> {
    if x.is_zero() {
        return Err(Error::ZeroField);
    }
    Ideal::new(x.nvars(), x.components.clone())
}

/// `W = Z(f_1, ..., f_d)` with `d >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompleteIntersection {
    nvars: usize,
    equations: Vec<MultivariatePolynomial>,
}

impl CompleteIntersection {
    pub fn new(nvars: usize, equations: Vec<MultivariatePolynomial>) -> Result<Self> {
        if let Some(bad) = equations.iter().find(|f| f.nvars() != nvars) {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: bad.nvars(),
            });
        }
        if equations.iter().any(MultivariatePolynomial::is_zero) {
            return Err(Error::ZeroInput);
        }
        if equations.len() < 2 {
            return Err(Error::CodimensionTooSmall(equations.len()));
        }
        if equations.len() > nvars {
            return Err(Error::InvalidSetup(format!(
                "{} equations in {nvars} variables",
                equations.len()
            )));
        }
        Ok(CompleteIntersection { nvars, equations })
    }

    pub fn parse(nvars: usize, equations: &[&str]) -> Result<Self> {
        Self::new(
            nvars,
            equations
                .iter()
                .map(|e| parse_poly(e, nvars))
                .collect::<Result<_>>()?,
        )
    }

    /// `{z_i = 0 : i in indices}` (0-based indices).
    pub fn coordinate(nvars: usize, indices: &[usize]) -> Result<Self> {
        Self::new(
            nvars,
            indices
                .iter()
                .map(|&i| MultivariatePolynomial::var(nvars, i))
                .collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn codim(&self) -> usize {
        self.equations.len()
    }

    pub fn equations(&self) -> &[MultivariatePolynomial] {
        &self.equations
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.equations
            .iter()
            .map(|f| f.degree().finite().unwrap_or(0))
            .collect()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(self.nvars, self.equations.clone()).expect("dimensions checked")
    }

    /// The variables cutting out `W` when every equation is a nonzero
    /// multiple of a distinct coordinate.
    pub fn coordinate_indices(&self) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(self.equations.len());
        for f in &self.equations {
            if f.num_terms() != 1 {
                return None;
            }
            let (m, _) = f.terms().next().expect("one term");
            if m.degree() != 1 {
                return None;
            }
            let v = m.pure_power_of()?;
            if out.contains(&v) {
                return None;
            }
            out.push(v);
        }
        Some(out)
    }

    /// `max_i |f_i(p)|`.
    pub fn distance_proxy(&self, point: &[Complex64]) -> f64 {
        self.equations
            .iter()
            .map(|f| f.evaluate_complex(point).norm())
            .fold(0.0, f64::max)
    }

    /// Rank of the Jacobian of `(f_1, ..., f_d)` at an exact point.
    pub fn jacobian_rank_at(&self, point: &[Rational]) -> Result<usize> {
        let rows: Vec<Vec<Rational>> = self
            .equations
            .iter()
            .map(|f| {
                (0..self.nvars)
                    .map(|j| f.differentiate(j)?.evaluate_rational(point))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(crate::rational::rank(rows))
    }

    /// Checks that the Jacobian has full rank at a few exact points of `W`.
    /// Points are only available when `W` is in graph form; otherwise the
    /// check is vacuous.
    pub fn verify_smooth(&self) -> Result<()> {
        let Ok(graph) = GraphForm::detect(self) else {
            return Ok(());
        };
        for seed in 0..3 {
            let p = graph.sample_point(seed);
            if self.jacobian_rank_at(&p)? < self.codim() {
                return Err(Error::SingularW);
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for CompleteIntersection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.equations.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_ideal_cases() {
        let x = VectorField::parse(&["z1", "z2", "z3"]).unwrap();
        let i = singular_ideal(&x).unwrap();
        assert_eq!(crate::groebner::multiplicity_dim(&i).unwrap(), 1);
        assert_eq!(singular_ideal(&VectorField::zero(2)), Err(Error::ZeroField));
        let f = parse_poly("z1^2+z2^2", 2).unwrap();
        assert_eq!(
            VectorField::gradient(&f),
            VectorField::parse(&["2*z1", "2*z2"]).unwrap()
        );
    }

    #[test]
    fn twisted_cubic_lies_in_the_singular_set() {
        let x = VectorField::parse(&[
            "3*z1*(z2-z1^2)+z3-z1^3",
            "(z1+5)*(z2-z1^2)+2*(z3-z1^3)",
            "z2*(z2-z1^2)+z3-z1^3",
        ])
        .unwrap();
        let gb = singular_ideal(&x)
            .unwrap()
            .groebner(crate::groebner::MonomialOrder::Grevlex)
            .unwrap();
        let w = CompleteIntersection::parse(3, &["z2-z1^2", "z3-z1^3"]).unwrap();
        // Every generator of sing(X) lies in I(W), so W is inside V(sing X).
        for g in gb.elements() {
            assert!(w.ideal().contains(g).unwrap());
        }
        let a = [
            crate::rational::int(1),
            crate::rational::int(3),
            crate::rational::int(-5),
        ];
        for c in x.components() {
            assert_eq!(c.evaluate_rational(&a).unwrap(), crate::rational::int(0));
        }
    }

    #[test]
    fn complete_intersection_checks() {
        assert_eq!(
            CompleteIntersection::parse(3, &["z1"]).unwrap_err(),
            Error::CodimensionTooSmall(1)
        );
        let w = CompleteIntersection::coordinate(3, &[0, 1]).unwrap();
        assert_eq!(w.coordinate_indices(), Some(vec![0, 1]));
        let w = CompleteIntersection::parse(3, &["z2-z1^2", "z3-z1^3"]).unwrap();
        assert_eq!(w.coordinate_indices(), None);
        assert_eq!(w.degrees(), vec![2, 3]);
        w.verify_smooth().unwrap();
    }
}
