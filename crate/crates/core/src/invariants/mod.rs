//! Closed-form invariants: complete symmetric sums, the `nu` formula, the
//! Soares bounds and the global balance identity.

mod preset;

pub use preset::{preset, preset_names, ChernCoefficientTable, Preset};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::UnivariatePolynomial;
use crate::rational::{self, Rational};

/// Data of a component `W` in `P^n` entering the `nu` formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbientSetup {
    pub n: u32,
    pub d: u32,
    pub k: u32,
    pub deg_w: u32,
    pub ks: Vec<u32>,
    pub ell: u32,
}

impl AmbientSetup {
    pub fn new(n: u32, d: u32, k: u32, deg_w: u32, ks: Vec<u32>, ell: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSetup(format!("n = {n} must be at least 3")));
        }
        if d < 2 || d > n {
            return Err(Error::InvalidSetup(format!(
                "codimension {d} outside 2..={n}"
            )));
        }
        if deg_w == 0 {
            return Err(Error::InvalidSetup("deg W must be positive".into()));
        }
        if ks.len() != d as usize {
            return Err(Error::InvalidSetup(format!(
                "{} degrees given for codimension {d}",
                ks.len()
            )));
        }
        Ok(AmbientSetup {
            n,
            d,
            k,
            deg_w,
            ks,
            ell,
        })
    }
}

/// `W_delta = sum_{i_1 + ... + i_d = delta} k_1^{i_1} ... k_d^{i_d}`.
pub fn complete_symmetric_w(delta: u32, ks: &[u32]) -> BigInt {
    // h_delta(k_1..k_j) = h_delta(k_1..k_{j-1}) + k_j h_{delta-1}(k_1..k_j)
    let mut h = vec![BigInt::zero(); delta as usize + 1];
    h[0] = BigInt::one();
    for &k in ks {
        for e in 1..=delta as usize {
            let prev = h[e - 1].clone();
            h[e] += prev * k;
        }
    }
    if ks.is_empty() {
        return if delta == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    h[delta as usize].clone()
}

/// `phi_a(x) = x^{n-d-a_2} (1+x)^{d-a_1}`.
pub fn phi(a1: u32, a2: u32, setup: &AmbientSetup) -> Result<UnivariatePolynomial> {
    if a1 > setup.d {
        return Err(Error::IndexOutOfRange {
            index: a1 as usize,
            limit: setup.d as usize,
        });
    }
    if a2 > setup.n - setup.d {
        return Err(Error::IndexOutOfRange {
            index: a2 as usize,
            limit: (setup.n - setup.d) as usize,
        });
    }
    let x = UnivariatePolynomial::from_i64(&[0, 1]);
    let one_plus_x = UnivariatePolynomial::from_i64(&[1, 1]);
    Ok(x.pow(setup.n - setup.d - a2)
        .mul(&one_plus_x.pow(setup.d - a1)))
}

/// `phi_a^{(m)}` and its value at `x = l`.
pub fn phi_derivative(
    a1: u32,
    a2: u32,
    setup: &AmbientSetup,
    m: u32,
) -> Result<(UnivariatePolynomial, Rational)> {
    let p = phi(a1, a2, setup)?.nth_derivative(m as usize);
    let value = p.eval(&rational::int(setup.ell as i64));
    Ok((p, value))
}

/// `nu = -deg W sum_{|a| <= n-d} sum_{m <= n-d-|a|} (-1)^delta phi_a^{(m)}(l) / m!
/// (k-1)^m sigma_{a_1} tau_{a_2} W_delta`, with `delta = n-d-|a|-m`.
pub fn nu_value(setup: &AmbientSetup, table: &ChernCoefficientTable) -> Result<Rational> {
    let top = setup.n - setup.d;
    let mut total = rational::int(0);
    for a1 in 0..=setup.d {
        for a2 in 0..=top {
            let len = a1 + a2;
            if len > top {
                continue;
            }
            let sigma = table.sigma(a1)?;
            let tau = table.tau(a2)?;
            let mut factorial = BigInt::one();
            for m in 0..=top - len {
                if m > 0 {
                    factorial *= m;
                }
                let delta = top - len - m;
                let (_, value) = phi_derivative(a1, a2, setup, m)?;
                let km = num_traits::pow(rational::int(setup.k as i64 - 1), m as usize);
                let w = Rational::from_integer(complete_symmetric_w(delta, &setup.ks));
                let mut term =
                    value / Rational::from_integer(factorial.clone()) * km * sigma * tau * w;
                if delta % 2 == 1 {
                    term = -term;
                }
                total += term;
            }
        }
    }
    Ok(-total * rational::int(setup.deg_w as i64))
}

/// Upper bound for the index at an isolated singularity of a degree-`k`
/// field on `P^n`: `1` if `k = 1`, `sum_{i=1}^n (k-1)^i` when the top part
/// is radial, `k^n` otherwise.
pub fn soares_bound(k: u32, n: u32, radial_top: bool) -> BigInt {
    if k == 1 {
        return BigInt::one();
    }
    if radial_top {
        (1..=n)
            .map(|i| num_traits::pow(BigInt::from(k - 1), i as usize))
            .sum()
    } else {
        num_traits::pow(BigInt::from(k), n as usize)
    }
}

/// One positive-dimensional component in the balance: its `nu` and, if
/// known, its embedded count `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentBalance {
    #[serde(serialize_with = "serialize_rational")]
    pub nu: Rational,
    pub embedded: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub sum_isolated_milnor: i64,
    #[serde(serialize_with = "serialize_rationals")]
    pub nu_values: Vec<Rational>,
    pub embedded: Vec<i64>,
    pub mu_along_w: Vec<i64>,
}

fn serialize_rational<S: serde::Serializer>(
    v: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::format(v))
}

fn serialize_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational::format))
}

/// Solves `sum mu(p_i) = sum_{i=0}^n k^i + sum nu_j - sum N_j` for the one
/// unknown `N_j` (or checks it when all are known), then sets
/// `mu(F, W_j) = N_j - nu_j`.
pub fn global_balance(
    n: u32,
    k: u32,
    components: &[ComponentBalance],
    sum_isolated_milnor: i64,
) -> Result<BalanceReport> {
    let unknown: Vec<usize> = components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.embedded.is_none())
        .map(|(i, _)| i)
        .collect();
    if unknown.len() > 1 {
        return Err(Error::InvalidSetup(format!(
            "{} components with unknown N; at most one is allowed",
            unknown.len()
        )));
    }
    let chern: BigInt = (0..=n)
        .map(|i| num_traits::pow(BigInt::from(k), i as usize))
        .sum();
    let sum_nu: Rational = components.iter().map(|c| c.nu.clone()).sum();
    let sum_known: i64 = components.iter().filter_map(|c| c.embedded).sum();
    let rhs_without_n = Rational::from_integer(chern) + sum_nu - rational::int(sum_known);
    let residual = rhs_without_n - rational::int(sum_isolated_milnor);
    let mut embedded: Vec<i64> = components.iter().map(|c| c.embedded.unwrap_or(0)).collect();
    match unknown.first() {
        Some(&j) => {
            let nj = rational::to_i64(&residual).ok_or_else(|| {
                Error::InconsistentBalance(format!(
                    "N = {} is not an integer",
                    rational::format(&residual)
                ))
            })?;
            embedded[j] = nj;
        }
        None => {
            if !residual.is_zero() {
                return Err(Error::InconsistentBalance(format!(
                    "identity off by {}",
                    rational::format(&residual)
                )));
            }
        }
    }
    let mut mu_along_w = Vec::with_capacity(components.len());
    for (c, &nj) in components.iter().zip(&embedded) {
        if nj < 0 {
            return Err(Error::InconsistentBalance(format!(
                "negative embedded count N = {nj}"
            )));
        }
        let mu = rational::int(nj) - &c.nu;
        let mu = rational::to_i64(&mu).ok_or_else(|| {
            Error::InconsistentBalance(format!(
                "mu(F, W) = {} is not an integer",
                rational::format(&mu)
            ))
        })?;
        mu_along_w.push(mu);
    }
    Ok(BalanceReport {
        sum_isolated_milnor,
        nu_values: components.iter().map(|c| c.nu.clone()).collect(),
        embedded,
        mu_along_w,
    })
}
