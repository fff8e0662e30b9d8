use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::Monomial;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Total degree of a polynomial. The zero polynomial has degree
/// [`Degree::NegInfinity`], which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Sparse polynomial in `nvars` variables with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultivariatePolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultivariatePolynomial {
    pub fn zero(nvars: usize) -> Self {
        MultivariatePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    /// The coordinate function `z_{index+1}` (indices are 0-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, index), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), nvars, "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultivariatePolynomial { nvars, terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, adding
    /// repeated monomials and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Largest exponent of `var`; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// Smallest exponent of `var` over all terms, i.e. the `z_var`-adic order.
    pub fn order_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).min()
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultivariatePolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Largest absolute value of a coefficient (0 for the zero polynomial).
    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultivariatePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultivariatePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `z_{var+1}`.
    pub fn differentiate(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: var,
                limit: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let dm = m.clone().with_exponents(|v| v[var] -= 1);
            out.add_term(dm, c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Composition `p(images[0], ..., images[n-1])`. All images must share
    /// one ambient dimension, which becomes the dimension of the result.
    pub fn substitute(&self, images: &[MultivariatePolynomial]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::DimensionMismatch {
                expected: target,
                found: bad.nvars,
            });
        }
        // Cache powers per variable; the same powers recur across terms.
        let mut powers: Vec<Vec<MultivariatePolynomial>> = images
            .iter()
            .map(|p| vec![MultivariatePolynomial::one(target), p.clone()])
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    pub fn evaluate_rational(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Floating point evaluation at a complex point. Panics if the point has
    /// the wrong length.
    pub fn evaluate_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars, "point dimension");
        self.compile().evaluate(point)
    }

    pub fn compile(&self) -> CompiledPolynomial {
        CompiledPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (rational::to_f64(c), m.exponents().to_vec()))
                .collect(),
        }
    }

    /// Re-embeds into `new_nvars` variables, sending variable `i` to
    /// `mapping[i]`.
    pub fn remap(&self, new_nvars: usize, mapping: &[usize]) -> Self {
        assert_eq!(mapping.len(), self.nvars);
        let mut out = Self::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; new_nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[mapping[i]] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Prepends `k` fresh variables (the old `z_i` becomes `z_{i+k}`).
    pub fn extend_front(&self, k: usize) -> Self {
        let mapping: Vec<usize> = (0..self.nvars).map(|i| i + k).collect();
        self.remap(self.nvars + k, &mapping)
    }

    /// Drops the first `k` variables; `None` if any of them occurs.
    pub fn drop_front(&self, k: usize) -> Option<Self> {
        let mut out = Self::zero(self.nvars - k);
        for (m, c) in &self.terms {
            if m.exponents()[..k].iter().any(|&e| e > 0) {
                return None;
            }
            out.add_term(Monomial::new(m.exponents()[k..].to_vec()), c.clone());
        }
        Some(out)
    }

    /// Drops the last `k` variables; `None` if any of them occurs.
    pub fn drop_back(&self, k: usize) -> Option<Self> {
        let keep = self.nvars - k;
        let mut out = Self::zero(keep);
        for (m, c) in &self.terms {
            if m.exponents()[keep..].iter().any(|&e| e > 0) {
                return None;
            }
            out.add_term(Monomial::new(m.exponents()[..keep].to_vec()), c.clone());
        }
        Some(out)
    }

    /// Exact division by `z_var^k`; `None` if some term is not divisible.
    pub fn divide_by_var_power(&self, var: usize, k: u32) -> Option<Self> {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.exponent(var) < k {
                return None;
            }
            out.add_term(m.clone().with_exponents(|v| v[var] -= k), c.clone());
        }
        Some(out)
    }

    /// Substitutes the rational value `value` for variable `var`, keeping the
    /// ambient dimension.
    pub fn specialize(&self, var: usize, value: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let factor = num_traits::pow(value.clone(), e as usize);
            out.add_term(m.clone().with_exponents(|v| v[var] = 0), c * factor);
        }
        out
    }

    /// Terms sorted by descending grevlex order, the printing order.
    pub fn grevlex_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grevlex_cmp(a.0));
        v
    }
}

/// Floating-point snapshot of a polynomial for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPolynomial {
    nvars: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl CompiledPolynomial {
    pub fn evaluate(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            let mut v = Complex64::new(*c, 0.0);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    v *= x.powu(k);
                }
            }
            acc += v;
        }
        acc
    }

    /// Sum of absolute values of the terms at `point`; the natural scale for
    /// judging the size of a residual.
    pub fn term_magnitude(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| {
                c.abs()
                    * point
                        .iter()
                        .zip(e)
                        .map(|(x, &k)| x.norm().powi(k as i32))
                        .product::<f64>()
            })
            .sum()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.grevlex_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", rational::format(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", rational::format(&magnitude))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.nvars)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MultivariatePolynomial> for &MultivariatePolynomial {
            type Output = MultivariatePolynomial;
            fn $method(self, rhs: &MultivariatePolynomial) -> MultivariatePolynomial {
                self.$checked(rhs).expect("polynomial dimension mismatch")
            }
        }
        impl $trait<MultivariatePolynomial> for MultivariatePolynomial {
            type Output = MultivariatePolynomial;
            fn $method(self, rhs: MultivariatePolynomial) -> MultivariatePolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultivariatePolynomial> for MultivariatePolynomial {
            type Output = MultivariatePolynomial;
            fn $method(self, rhs: &MultivariatePolynomial) -> MultivariatePolynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<MultivariatePolynomial> for &MultivariatePolynomial {
            type Output = MultivariatePolynomial;
            fn $method(self, rhs: MultivariatePolynomial) -> MultivariatePolynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn neg(self) -> MultivariatePolynomial {
        MultivariatePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn neg(self) -> MultivariatePolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::{int, rat};

    fn p(s: &str, n: usize) -> MultivariatePolynomial {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("z1+1", 1) * &p("z1-1", 1), p("z1^2-1", 1));
    }

    #[test]
    fn zero_absorbs_and_has_sentinel_degree() {
        let z = MultivariatePolynomial::zero(3);
        assert!((&p("z1*z2+3", 3) * &z).is_zero());
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(
            p("z1", 1).checked_mul(&p("z1", 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn power_rule_derivatives() {
        assert_eq!(p("z1^2*z2", 2).differentiate(0).unwrap(), p("2*z1*z2", 2));
        assert!(p("z1^3", 2).differentiate(1).unwrap().is_zero());
        // d/dx x(1+x)^2, checked against the hand-expanded 3x^2+4x+1.
        let f = &p("z1", 1) * &p("1+z1", 1).pow(2);
        assert_eq!(f.differentiate(0).unwrap(), p("3*z1^2+4*z1+1", 1));
        assert!(p("z1", 1).differentiate(1).is_err());
    }

    #[test]
    fn substitution_cases() {
        // p = z1^2 + z2 at (s, s*v), written in variables (s, v).
        let images = [p("z1", 2), p("z1*z2", 2)];
        assert_eq!(
            p("z1^2+z2", 2).substitute(&images).unwrap(),
            p("z1^2+z1*z2", 2)
        );
        let id = [p("z1", 2), p("z2", 2)];
        let q = p("3*z1^3*z2-z2+7/5", 2);
        assert_eq!(q.substitute(&id).unwrap(), q);
        // Graph map of the twisted cubic: z1=u3, z2=u1+u3^2, z3=u2+u3^3.
        let graph = [p("z3", 3), p("z1+z3^2", 3), p("z2+z3^3", 3)];
        assert_eq!(p("z2-z1^2", 3).substitute(&graph).unwrap(), p("z1", 3));
        assert_eq!(p("z3-z1^3", 3).substitute(&graph).unwrap(), p("z2", 3));
    }

    #[test]
    fn exact_and_complex_evaluation() {
        let q = p("z1^2+z2", 2);
        assert_eq!(q.evaluate_rational(&[int(2), int(1)]).unwrap(), int(5));
        let v = q.evaluate_complex(&[Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert!((v - Complex64::new(5.0, 0.0)).norm() < 1e-15);
        let r = p("1/3*z1^3 - 2*z1*z2 + 5/7", 2);
        let exact = r.evaluate_rational(&[rat(3, 2), rat(-1, 4)]).unwrap();
        let approx = r.evaluate_complex(&[Complex64::new(1.5, 0.0), Complex64::new(-0.25, 0.0)]);
        assert!((approx.re - rational::to_f64(&exact)).abs() < 1e-14);
    }

    #[test]
    fn printing_uses_grevlex_and_explicit_star() {
        let q = p("3/2*z2 + z1^2 - 1 - z1*z3", 3);
        assert_eq!(q.to_string(), "z1^2 - z1*z3 + 3/2*z2 - 1");
        assert_eq!(p("-z1", 2).to_string(), "-z1");
        assert_eq!(p("0", 2).to_string(), "0");
    }

    #[test]
    fn var_power_division_and_orders() {
        let q = p("z1^2*z2 + z1^3", 2);
        assert_eq!(q.order_in(0), Some(2));
        assert_eq!(q.divide_by_var_power(0, 2).unwrap(), p("z2+z1", 2));
        assert!(q.divide_by_var_power(0, 3).is_none());
    }
}
