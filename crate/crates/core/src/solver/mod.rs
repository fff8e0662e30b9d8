//! Numerical solution of zero-dimensional systems through multiplication
//! matrices on the quotient ring.

pub mod linalg;

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Ideal, MonomialOrder, DEFAULT_PAIR_BUDGET};
use crate::poly::{CompiledPolynomial, Monomial, MultivariatePolynomial};
use crate::rational::{self, Rational};
use linalg::ComplexMatrix;

pub type ComplexPoint = Vec<Complex64>;

/// Exact square matrix over the rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        let n = self.n;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| rational::to_f64(self.get(i, j))).collect())
            .collect();
        ComplexMatrix::from_real(&rows)
    }
}

/// Matrix of multiplication by `z_var` on the quotient ring, in the basis of
/// standard monomials: column `j` holds the normal form of `z_var * b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationMatrix {
    pub var: usize,
    pub basis: Vec<Monomial>,
    pub matrix: RationalMatrix,
}

impl MultiplicationMatrix {
    /// Exact commutator test.
    pub fn commutes_with(&self, other: &MultiplicationMatrix) -> bool {
        self.matrix.mul(&other.matrix) == other.matrix.mul(&self.matrix)
    }
}

pub fn multiplication_matrix(gb: &GroebnerBasis, var: usize) -> Result<MultiplicationMatrix> {
    let basis = gb.quotient_basis()?;
    multiplication_matrix_on(gb, &basis, var)
}

fn multiplication_matrix_on(
    gb: &GroebnerBasis,
    basis: &[Monomial],
    var: usize,
) -> Result<MultiplicationMatrix> {
    let n = gb.nvars();
    if var >= n {
        return Err(Error::IndexOutOfRange {
            index: var,
            limit: n,
        });
    }
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let x = Monomial::var(n, var);
    let mut matrix = RationalMatrix::zeros(basis.len());
    for (j, b) in basis.iter().enumerate() {
        let prod = b.mul(&x);
        if let Some(&i) = index.get(&prod) {
            matrix.set(i, j, rational::int(1));
            continue;
        }
        let nf = gb.normal_form(&MultivariatePolynomial::monomial(n, prod, rational::int(1)));
        for (m, c) in nf.terms() {
            let i = *index.get(m).expect("normal form lies in the standard span");
            matrix.set(i, j, c.clone());
        }
    }
    Ok(MultiplicationMatrix {
        var,
        basis: basis.to_vec(),
        matrix,
    })
}

/// All multiplication matrices of a zero-dimensional basis.
pub fn multiplication_matrices(gb: &GroebnerBasis) -> Result<Vec<MultiplicationMatrix>> {
    let basis = gb.quotient_basis()?;
    (0..gb.nvars())
        .map(|v| multiplication_matrix_on(gb, &basis, v))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolvedPoint {
    pub coords: ComplexPoint,
    pub multiplicity: usize,
    /// `max_i |g_i(p)|` over the input generators.
    pub residual: f64,
    /// Each `|g_i(p)|` divided by `max(1, sum of |terms of g_i at p|)`; the
    /// quantity compared against the residual tolerance.
    pub scaled_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverConfig {
    pub residual_tol: f64,
    pub cluster_tol: f64,
    pub seed: u64,
    pub pair_budget: usize,
    /// Number of random combinations tried before giving up.
    pub attempts: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            residual_tol: 1e-8,
            cluster_tol: 1e-6,
            seed: 0,
            pair_budget: DEFAULT_PAIR_BUDGET,
            attempts: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub points: Vec<SolvedPoint>,
    /// Dimension of the quotient ring, i.e. the total multiplicity.
    pub dimension: usize,
    /// Coefficients of the linear combination whose Schur form was used.
    pub combination: Vec<i64>,
}

impl Solution {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }
}

pub fn solve_points(ideal: &Ideal, tol: f64) -> Result<Vec<SolvedPoint>> {
    let cfg = SolverConfig {
        residual_tol: tol,
        ..SolverConfig::default()
    };
    Ok(solve(ideal, &cfg)?.points)
}

/// Solves a zero-dimensional system. Points come back sorted by coordinates.
pub fn solve(ideal: &Ideal, cfg: &SolverConfig) -> Result<Solution> {
    let gb =
        crate::groebner::buchberger_with_budget(ideal, MonomialOrder::Grevlex, cfg.pair_budget)?;
    solve_with_basis(ideal, &gb, cfg)
}

pub fn solve_with_basis(ideal: &Ideal, gb: &GroebnerBasis, cfg: &SolverConfig) -> Result<Solution> {
    let n = gb.nvars();
    let mats = multiplication_matrices(gb)?;
    let dim = gb.quotient_basis()?.len();
    if dim == 0 {
        return Ok(Solution {
            points: Vec::new(),
            dimension: 0,
            combination: Vec::new(),
        });
    }
    let complex: Vec<ComplexMatrix> = mats.iter().map(|m| m.matrix.to_complex()).collect();
    let gens: Vec<CompiledPolynomial> = ideal.generators().iter().map(|g| g.compile()).collect();
    let jac: Vec<Vec<CompiledPolynomial>> = ideal
        .generators()
        .iter()
        .map(|g| {
            (0..n)
                .map(|v| g.differentiate(v).expect("in range").compile())
                .collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut last_err = Error::IllConditioned("no attempt made".into());
    for _ in 0..cfg.attempts.max(1) {
        let combination: Vec<i64> = (0..n)
            .map(|_| loop {
                let c: i64 = rng.gen_range(-10..=10);
                if c != 0 {
                    break c;
                }
            })
            .collect();
        match attempt(&complex, &combination, cfg, &gens, &jac) {
            Ok(points) => {
                return Ok(Solution {
                    points,
                    dimension: dim,
                    combination,
                })
            }
            Err(e @ Error::IllConditioned(_)) => last_err = e,
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}

fn attempt(
    mats: &[ComplexMatrix],
    combination: &[i64],
    cfg: &SolverConfig,
    gens: &[CompiledPolynomial],
    jac: &[Vec<CompiledPolynomial>],
) -> Result<Vec<SolvedPoint>> {
    let dim = mats[0].size();
    let mut a = ComplexMatrix::zeros(dim);
    for (m, &c) in mats.iter().zip(combination) {
        a.add_scaled(m, Complex64::new(c as f64, 0.0));
    }
    let d = linalg::balance(&a);
    let balanced: Vec<ComplexMatrix> = mats.iter().map(|m| m.similarity_diag(&d)).collect();
    let (_, z) = linalg::schur(&a.similarity_diag(&d))?;
    let raw: Vec<ComplexPoint> = (0..dim)
        .map(|j| {
            let col = z.column(j);
            balanced.iter().map(|b| b.quadratic_form(&col)).collect()
        })
        .collect();
    let clusters = cluster_multiplicities(&raw, cfg.cluster_tol)?;
    let mut points = Vec::with_capacity(clusters.len());
    for (coords, multiplicity) in clusters {
        let coords = if multiplicity == 1 {
            newton_polish(coords, gens, jac)
        } else {
            coords
        };
        let (residual, scaled_residual) = residuals(&coords, gens);
        if !coords.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::IllConditioned("non-finite coordinate".into()));
        }
        if scaled_residual > cfg.residual_tol {
            return Err(Error::IllConditioned(format!(
                "residual {scaled_residual:.3e} exceeds tolerance {:.1e}",
                cfg.residual_tol
            )));
        }
        points.push(SolvedPoint {
            coords,
            multiplicity,
            residual,
            scaled_residual,
        });
    }
    points.sort_by(|p, q| compare_points(&p.coords, &q.coords));
    Ok(points)
}

pub(crate) fn compare_points(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

pub fn residuals(p: &[Complex64], gens: &[CompiledPolynomial]) -> (f64, f64) {
    let mut abs = 0.0f64;
    let mut scaled = 0.0f64;
    for g in gens {
        let v = g.evaluate(p).norm();
        abs = abs.max(v);
        scaled = scaled.max(v / g.term_magnitude(p).max(1.0));
    }
    (abs, scaled)
}

/// Max-norm distance relative to the size of the points.
pub fn relative_distance(p: &[Complex64], q: &[Complex64]) -> f64 {
    let diff = p
        .iter()
        .zip(q)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    diff / 1f64.max(inf_norm(p)).max(inf_norm(q))
}

pub fn inf_norm(p: &[Complex64]) -> f64 {
    p.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Groups raw eigen-points closer than `tol` (relative max-norm distance)
/// into single points, averaging coordinates and counting members. Raises
/// `IllConditioned` when two groups sit within `10 * tol` of each other.
pub fn cluster_multiplicities(
    raw: &[ComplexPoint],
    tol: f64,
) -> Result<Vec<(ComplexPoint, usize)>> {
    let k = raw.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut dist = vec![0.0; k * k];
    for i in 0..k {
        for j in i + 1..k {
            let d = relative_distance(&raw[i], &raw[j]);
            dist[i * k + j] = d;
            if d <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let d = dist[i * k + j];
            if d > tol && d <= 10.0 * tol && find(&mut parent, i) != find(&mut parent, j) {
                return Err(Error::IllConditioned(format!(
                    "eigen-points at relative distance {d:.3e} are neither separated nor merged"
                )));
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..k {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, members)) => members.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    Ok(groups
        .into_iter()
        .map(|(_, members)| {
            let dim = raw[members[0]].len();
            let mut mean = vec![Complex64::new(0.0, 0.0); dim];
            for &m in &members {
                for (acc, v) in mean.iter_mut().zip(&raw[m]) {
                    *acc += v;
                }
            }
            let count = members.len();
            for v in &mut mean {
                *v /= count as f64;
            }
            (mean, count)
        })
        .collect())
}

/// Newton (square systems) or Gauss-Newton steps on the input generators,
/// kept only while the residual improves.
fn newton_polish(
    mut p: ComplexPoint,
    gens: &[CompiledPolynomial],
    jac: &[Vec<CompiledPolynomial>],
) -> ComplexPoint {
    let n = p.len();
    let mut best = residuals(&p, gens).0;
    for _ in 0..8 {
        if best == 0.0 {
            break;
        }
        let f: Vec<Complex64> = gens.iter().map(|g| g.evaluate(&p)).collect();
        let j: Vec<Vec<Complex64>> = jac
            .iter()
            .map(|row| row.iter().map(|d| d.evaluate(&p)).collect())
            .collect();
        // Normal equations J^H J dx = -J^H f.
        let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        for (row, fi) in j.iter().zip(&f) {
            for r in 0..n {
                let cr = row[r].conj();
                b[r] -= cr * fi;
                for c in 0..n {
                    a[r][c] += cr * row[c];
                }
            }
        }
        let Some(dx) = linalg::solve_linear(&a, &b) else {
            break;
        };
        let candidate: ComplexPoint = p.iter().zip(&dx).map(|(x, d)| x + d).collect();
        let r = residuals(&candidate, gens).0;
        if r.is_nan() || r >= best {
            break;
        }
        p = candidate;
        best = r;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        Ideal::new(n, gens.iter().map(|g| parse_poly(g, n).unwrap()).collect()).unwrap()
    }

    fn gb(n: usize, gens: &[&str]) -> GroebnerBasis {
        ideal(n, gens).groebner(MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn matrix_of_sqrt_two() {
        let m = multiplication_matrix(&gb(1, &["z1^2-2"]), 0).unwrap();
        // Characteristic polynomial t^2 - tr t + det.
        let tr = m.matrix.get(0, 0) + m.matrix.get(1, 1);
        let det = m.matrix.get(0, 0) * m.matrix.get(1, 1) - m.matrix.get(0, 1) * m.matrix.get(1, 0);
        assert_eq!(tr, rational::int(0));
        assert_eq!(det, rational::int(-2));
    }

    #[test]
    fn trivial_matrices() {
        let m = multiplication_matrix(&gb(1, &["z1-5"]), 0).unwrap();
        assert_eq!(m.matrix.size(), 1);
        assert_eq!(m.matrix.get(0, 0), &rational::int(5));
        let g = gb(2, &["z1^2", "z2-z1"]);
        assert_eq!(
            multiplication_matrix(&g, 0).unwrap().matrix,
            multiplication_matrix(&g, 1).unwrap().matrix
        );
        assert_eq!(
            multiplication_matrix(&gb(2, &["z1"]), 0).unwrap_err(),
            Error::NotZeroDimensional
        );
    }

    #[test]
    fn explicit_roots() {
        let pts = solve_points(&ideal(3, &["z1^2-1", "z2-1", "z3"]), 1e-8).unwrap();
        assert_eq!(pts.len(), 2);
        assert!((pts[0].coords[0].re + 1.0).abs() < 1e-12);
        assert!((pts[1].coords[0].re - 1.0).abs() < 1e-12);
        assert!(pts.iter().all(|p| p.multiplicity == 1));
    }

    #[test]
    fn double_point() {
        let pts = solve_points(&ideal(3, &["z1^2", "z2", "z3"]), 1e-8).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].multiplicity, 2);
        assert!(inf_norm(&pts[0].coords) < 1e-6);
    }

    #[test]
    fn clustering_cases() {
        let c = |x: f64| vec![Complex64::new(x, 0.0)];
        let merged = cluster_multiplicities(&[c(1.0), c(1.0 + 1e-12)], 1e-6).unwrap();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].1, 2);
        let simple = cluster_multiplicities(&[c(1.0), c(2.0), c(3.0)], 1e-6).unwrap();
        assert!(simple.iter().all(|(_, m)| *m == 1));
        assert!(matches!(
            cluster_multiplicities(&[c(1.0), c(1.0 + 5e-6)], 1e-6),
            Err(Error::IllConditioned(_))
        ));
    }

    #[test]
    fn square_root_pair_conserves_multiplicity() {
        // Roots of z1^2 - t are +-sqrt(t); total multiplicity stays 2.
        for (t, expect_pts) in [("1/100", 2), ("1/1000000", 2), ("0", 1)] {
            let i = ideal(2, &[&format!("z1^2-{t}"), "z2"]);
            let pts = solve_points(&i, 1e-8).unwrap();
            assert_eq!(pts.len(), expect_pts);
            assert_eq!(pts.iter().map(|p| p.multiplicity).sum::<usize>(), 2);
            if expect_pts == 2 {
                let tv = rational::to_f64(&rational::parse(t).unwrap());
                assert!((pts[1].coords[0].re - tv.sqrt()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn matrices_commute_exactly() {
        let g = gb(3, &["z1^2+z2*z3-1", "z2^2-z1+z3", "z3^2+z1*z2-2"]);
        let ms = multiplication_matrices(&g).unwrap();
        for a in &ms {
            for b in &ms {
                assert!(a.commutes_with(b));
            }
        }
    }

    #[test]
    fn empty_variety() {
        let sol = solve(&ideal(2, &["z1", "z1-1"]), &SolverConfig::default()).unwrap();
        assert!(sol.points.is_empty());
        assert_eq!(sol.dimension, 0);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let i = ideal(2, &["z1^3-z2-1", "z2^2+z1-3"]);
        let cfg = SolverConfig::default();
        assert_eq!(solve(&i, &cfg).unwrap(), solve(&i, &cfg).unwrap());
    }
}
