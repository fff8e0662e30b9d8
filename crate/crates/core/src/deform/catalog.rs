//! The three worked families: a line of singularities with a binary-form
//! field, the twisted cubic with an embedded point, and the rotation field
//! with a totally simple line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DeformationFamily;
use crate::error::{Error, Result};
use crate::foliation::{CompleteIntersection, VectorField};
use crate::poly::{
    parse_poly, univariate_common_roots, Monomial, MultivariatePolynomial, UnivariatePolynomial,
};
use crate::rational::{self, Rational};

fn var(n: usize, i: usize) -> MultivariatePolynomial {
    MultivariatePolynomial::var(n, i)
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// Data of the line family on `C^3`:
/// `X = sum a_i z1^{m-i} z2^i d1 + sum b_i z1^{m-i} z2^i d2
///    + sum_{i<m} c_i(z) z1^{m-1-i} z2^i d3`, `c_i = alpha[i][0] + sum_j alpha[i][j] z_j`,
/// perturbed by the constants `eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineParams {
    pub m: u32,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub alpha: Vec<[Rational; 4]>,
    pub eps: [Rational; 3],
}

impl LineParams {
    /// `a(lambda)`, `b(lambda)`.
    pub fn a_poly(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.a.clone())
    }

    pub fn b_poly(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.b.clone())
    }

    /// `alpha_j(lambda) = sum_i alpha[i][j] lambda^i`.
    pub fn alpha_poly(&self, j: usize) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.alpha.iter().map(|row| row[j].clone()).collect())
    }

    /// `eps_1 b - eps_2 a`, whose roots are the slopes `z2 = lambda z1` of
    /// the perturbed singular points.
    pub fn slope_poly(&self) -> UnivariatePolynomial {
        self.b_poly()
            .scale(&self.eps[0])
            .sub(&self.a_poly().scale(&self.eps[1]))
    }

    /// Number of roots shared by `alpha_3` and the slope polynomial.
    pub fn beta(&self) -> usize {
        let a3 = self.alpha_poly(3);
        if a3.is_zero() {
            return 0;
        }
        univariate_common_roots(&a3, &self.slope_poly()).expect("nonzero inputs")
    }

    fn is_admissible(&self) -> bool {
        let m = self.m as usize;
        let a = self.a_poly();
        let b = self.b_poly();
        let slope = self.slope_poly();
        let zero = rational::int(0);
        a.degree() == Some(m)
            && b.degree() == Some(m)
            && self.a[0] != zero
            && a.gcd(&b).degree() == Some(0)
            && slope.degree() == Some(m)
            && slope.is_squarefree()
            && self.alpha_poly(3).degree() == Some(m - 1)
            && self.eps.iter().all(|e| *e != zero)
    }

    /// Seeded small-integer data with `a`, `b` coprime and no shared root
    /// between `alpha_3` and the slope polynomial.
    pub fn generic(m: u32, seed: u64) -> LineParams {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let p = Self::random(m, &mut rng);
            if p.is_admissible() && p.beta() == 0 {
                return p;
            }
        }
    }

    /// Like [`LineParams::generic`], but with `alpha_3` and the slope
    /// polynomial sharing exactly `beta` roots (`beta <= m - 1`).
    pub fn planted(m: u32, beta: u32, seed: u64) -> LineParams {
        assert!(beta < m, "at most m - 1 shared roots");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut p = Self::random(m, &mut rng);
            let mut roots: Vec<i64> = Vec::new();
            while roots.len() < beta as usize {
                let r = nonzero(&mut rng, 3);
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
            // alpha_3 = prod (lambda - r) * random cofactor of degree m - 1 - beta.
            let mut a3 = UnivariatePolynomial::new(
                (0..m - beta)
                    .map(|_| rational::int(nonzero(&mut rng, 3)))
                    .collect(),
            );
            for &r in &roots {
                a3 = a3.mul(&UnivariatePolynomial::linear_root(rational::int(r)));
            }
            for (i, row) in p.alpha.iter_mut().enumerate() {
                row[3] = a3.coeff(i);
            }
            // (eps_1, eps_2) = (a(r), b(r)) makes r a root of eps_1 b - eps_2 a.
            // For more roots, b = (eps_2/eps_1) a + q prod (lambda - r_i) gives
            // eps_1 b - eps_2 a = eps_1 q prod (lambda - r_i).
            if let Some(&r0) = roots.first() {
                let r = rational::int(r0);
                let (ar, br) = (p.a_poly().eval(&r), p.b_poly().eval(&r));
                if ar == rational::int(0) || br == rational::int(0) {
                    continue;
                }
                p.eps[0] = ar;
                p.eps[1] = br;
                if beta > 1 {
                    let mut prod = UnivariatePolynomial::one();
                    for &ri in &roots {
                        prod = prod.mul(&UnivariatePolynomial::linear_root(rational::int(ri)));
                    }
                    let target = p.a_poly().scale(&(p.eps[1].clone() / p.eps[0].clone()));
                    let cof = UnivariatePolynomial::new(
                        (0..=(m - beta))
                            .map(|_| rational::int(nonzero(&mut rng, 2)))
                            .collect(),
                    );
                    p.b = target.add(&prod.mul(&cof)).coeffs().to_vec();
                    p.b.resize(m as usize + 1, rational::int(0));
                }
            }
            if p.is_admissible() && p.beta() == beta as usize {
                return p;
            }
        }
    }

    fn random(m: u32, rng: &mut ChaCha8Rng) -> LineParams {
        let m_us = m as usize;
        let coeffs = |rng: &mut ChaCha8Rng, k: usize| -> Vec<Rational> {
            (0..k)
                .map(|_| rational::int(rng.gen_range(-3..=3)))
                .collect()
        };
        let mut a = coeffs(rng, m_us + 1);
        let mut b = coeffs(rng, m_us + 1);
        a[0] = rational::int(nonzero(rng, 3));
        a[m_us] = rational::int(nonzero(rng, 3));
        b[m_us] = rational::int(nonzero(rng, 3));
        let alpha = (0..m_us)
            .map(|_| {
                [
                    rational::int(rng.gen_range(-3..=3)),
                    rational::int(rng.gen_range(-3..=3)),
                    rational::int(rng.gen_range(-3..=3)),
                    rational::int(nonzero(rng, 3)),
                ]
            })
            .collect();
        let eps = [
            rational::int(nonzero(rng, 4)),
            rational::int(nonzero(rng, 4)),
            rational::int(nonzero(rng, 4)),
        ];
        LineParams {
            m,
            a,
            b,
            alpha,
            eps,
        }
    }

    pub fn field(&self) -> VectorField {
        let n = 3;
        let m = self.m;
        let mono = |e1: u32, e2: u32| Monomial::new(vec![e1, e2, 0]);
        let mut x1 = MultivariatePolynomial::zero(n);
        let mut x2 = MultivariatePolynomial::zero(n);
        for i in 0..=m {
            x1.add_term(mono(m - i, i), self.a[i as usize].clone());
            x2.add_term(mono(m - i, i), self.b[i as usize].clone());
        }
        let mut x3 = MultivariatePolynomial::zero(n);
        for i in 0..m {
            let row = &self.alpha[i as usize];
            let mut c = MultivariatePolynomial::constant(n, row[0].clone());
            for j in 0..3 {
                c = &c + &var(n, j).scale(&row[j + 1]);
            }
            x3 = &x3
                + &(&c
                    * &MultivariatePolynomial::monomial(n, mono(m - 1 - i, i), rational::int(1)));
        }
        VectorField::new(vec![x1, x2, x3]).expect("dimension 3")
    }
}

/// Line family together with its predicted counts.
#[derive(Clone, Debug, PartialEq)]
pub struct LineExample {
    pub params: LineParams,
    pub field: VectorField,
    /// `X - t (eps_1, eps_2, eps_3)`.
    pub family: DeformationFamily,
    /// `X - t (eps_1, eps_2, z3^m + eps_3)`.
    pub compact_family: DeformationFamily,
    pub w: CompleteIntersection,
    pub beta: usize,
    /// `m^2 - beta m`.
    pub predicted_mu: usize,
    /// Least value over all choices of `eps`: `m` if `alpha_3 != 0`, else `0`.
    pub minimum_mu: usize,
    pub isolated_points: usize,
    pub m_w: u32,
    pub degree: u32,
    pub ell: u32,
}

pub fn example41(params: LineParams) -> Result<LineExample> {
    let m = params.m;
    if m < 2 {
        return Err(Error::InvalidSetup(format!("m = {m} must be at least 2")));
    }
    if params.a.len() != m as usize + 1
        || params.b.len() != m as usize + 1
        || params.alpha.len() != m as usize
    {
        return Err(Error::InvalidSetup(
            "coefficient lists do not match m".into(),
        ));
    }
    if params.a_poly().gcd(&params.b_poly()).degree() != Some(0) {
        return Err(Error::NonCoprimeAB);
    }
    let field = params.field();
    let n = 3;
    let eps: Vec<MultivariatePolynomial> = params
        .eps
        .iter()
        .map(|e| MultivariatePolynomial::constant(n, e.clone()))
        .collect();
    let family = DeformationFamily::new(
        field.clone(),
        VectorField::new(eps.clone())?,
        format!("example41 m={m} constant perturbation"),
    )?;
    let mut compact = eps;
    compact[2] = &compact[2] + &var(n, 2).pow(m);
    let compact_family = DeformationFamily::new(
        field.clone(),
        VectorField::new(compact)?,
        format!("example41 m={m} perturbation with z3^m"),
    )?;
    let beta = params.beta();
    let mu = (m * m) as usize - beta * m as usize;
    let minimum_mu = if params.alpha_poly(3).is_zero() {
        0
    } else {
        m as usize
    };
    Ok(LineExample {
        beta,
        predicted_mu: mu,
        minimum_mu,
        isolated_points: m as usize + 1,
        m_w: m - 1,
        degree: m,
        ell: m - 1,
        params,
        field,
        family,
        compact_family,
        w: CompleteIntersection::coordinate(3, &[0, 1])?,
    })
}

/// Perturbation data of the twisted-cubic family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicParams {
    pub eps: [Rational; 3],
    pub alpha: [Rational; 3],
}

impl Default for CubicParams {
    fn default() -> Self {
        CubicParams {
            eps: [rational::int(1), rational::int(3), rational::int(2)],
            alpha: [rational::int(1), rational::int(2), rational::int(-1)],
        }
    }
}

impl CubicParams {
    /// Seeded nonzero small integers with `2 eps_1 != eps_2`.
    pub fn generic(seed: u64) -> CubicParams {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let eps = [0, 0, 0].map(|_: i32| nonzero(&mut rng, 4));
            let alpha = [0, 0, 0].map(|_: i32| nonzero(&mut rng, 3));
            if 2 * eps[0] != eps[1] {
                return CubicParams {
                    eps: eps.map(rational::int),
                    alpha: alpha.map(rational::int),
                };
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicExample {
    pub params: CubicParams,
    pub field: VectorField,
    /// `X - t (eps_1, eps_2, eps_3)`.
    pub translation: DeformationFamily,
    /// `Y_t`, built from `f2^t = z3 - z1^3 - t z2^3` and the cubic terms in
    /// the third component.
    pub family: DeformationFamily,
    pub w: CompleteIntersection,
    pub a_point: [Rational; 3],
    pub p_point: [Rational; 3],
    pub total: usize,
    pub to_a: usize,
    pub to_p: usize,
    pub h3_total: usize,
    pub h3_limit: [Rational; 2],
    /// `0`: the field is totally simple along `W`, so some perturbation
    /// leaves no point on `W`.
    pub minimum_mu: usize,
}

pub fn example42(params: CubicParams) -> Result<CubicExample> {
    let p = |s: &str| parse_poly(s, 3).expect("literal");
    let field = VectorField::parse(&[
        "3*z1*(z2-z1^2)+z3-z1^3",
        "(z1+5)*(z2-z1^2)+2*(z3-z1^3)",
        "z2*(z2-z1^2)+z3-z1^3",
    ])?;
    let c = |q: &Rational| MultivariatePolynomial::constant(3, q.clone());
    let translation = DeformationFamily::new(
        field.clone(),
        VectorField::new(params.eps.iter().map(c).collect())?,
        "example42 constant perturbation",
    )?;
    let cube = p("z2^3");
    let [a0, a1, a2] = &params.alpha;
    let third = &(&(&cube + &c(&params.eps[2])) + &p("z1^3").scale(a0))
        + &(&p("z2^3").scale(a1) + &p("z3^3").scale(a2));
    let direction = VectorField::new(vec![
        &cube + &c(&params.eps[0]),
        &cube.scale(&rational::int(2)) + &c(&params.eps[1]),
        third,
    ])?;
    let family = DeformationFamily::new(field.clone(), direction, "example42 Y_t")?;
    Ok(CubicExample {
        params,
        field,
        translation,
        family,
        w: CompleteIntersection::parse(3, &["z2-z1^2", "z3-z1^3"])?,
        a_point: [rational::int(1), rational::int(3), rational::int(-5)],
        p_point: [rational::int(1), rational::int(1), rational::int(1)],
        total: 27,
        to_a: 1,
        to_p: 7,
        h3_total: 13,
        h3_limit: [rational::rat(16, 7), rational::rat(12, 7)],
        minimum_mu: 0,
    })
}

impl CubicExample {
    /// `Y_t` on the plane at infinity, read in the chart of `z3`, as a
    /// family in two variables, together with the origin of that chart.
    pub fn h3_family(&self) -> Result<(DeformationFamily, CompleteIntersection)> {
        let at = |t: i64| crate::foliation::chart_restrict(&self.family.at(&rational::int(t)), 3);
        let (r0, r1, r2) = (at(0)?, at(1)?, at(2)?);
        let d = r0.checked_sub(&r1)?;
        if r1.checked_sub(&r2)? != d {
            return Err(Error::InvalidSetup("restriction is not affine in t".into()));
        }
        let family = DeformationFamily::new(r0, d, "example42 Y_t at infinity")?;
        Ok((family, CompleteIntersection::coordinate(2, &[0, 1])?))
    }
}

/// Constant direction with seeded nonzero integer entries in `[-bound, bound]`.
pub fn seeded_direction(n: usize, seed: u64, bound: i64) -> VectorField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<Rational> = (0..n)
        .map(|_| rational::int(nonzero(&mut rng, bound)))
        .collect();
    VectorField::constant(&values)
}

/// `(z1 f + z2 g, -z1 g + z2 f, z1 P(z3))` with the truncated cosine/sine
/// pair of order `kappa`.
pub fn rotation_field(kappa: u32, p: &MultivariatePolynomial) -> VectorField {
    let (f, g) = super::trig_truncation(kappa);
    let (z1, z2) = (var(3, 0), var(3, 1));
    VectorField::new(vec![
        &(&z1 * &f) + &(&z2 * &g),
        &(&z2 * &f) - &(&z1 * &g),
        &z1 * p,
    ])
    .expect("dimension 3")
}

/// Data of the rotation family: `P` as ascending coefficients in `z3`,
/// the truncation order and the affine perturbation
/// `a[i] = (a_i0, a_i1, a_i2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationParams {
    pub p: Vec<Rational>,
    pub kappa: u32,
    pub a: [[Rational; 3]; 3],
}

impl RotationParams {
    /// `P = z3^2 - 1`, `kappa = 2` and only `a_30 = 1`.
    pub fn special() -> RotationParams {
        let z = || rational::int(0);
        RotationParams {
            p: vec![rational::int(-1), z(), rational::int(1)],
            kappa: 2,
            a: [
                [z(), z(), z()],
                [z(), z(), z()],
                [rational::int(1), z(), z()],
            ],
        }
    }

    /// Seeded integer perturbation coefficients in `[-3, 3]`.
    pub fn generic(seed: u64) -> RotationParams {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut r = Self::special();
        for row in r.a.iter_mut() {
            for v in row.iter_mut() {
                *v = rational::int(rng.gen_range(-3..=3));
            }
        }
        r.a[2][0] = rational::int(nonzero(&mut rng, 3));
        r
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RotationExample {
    pub params: RotationParams,
    pub field: VectorField,
    pub family: DeformationFamily,
    pub w: CompleteIntersection,
    /// `4 kappa + 2`.
    pub min_total: usize,
    /// The perturbation only translates the third component.
    pub special: bool,
    pub minimum_mu: usize,
}

pub fn example43(params: RotationParams) -> Result<RotationExample> {
    let p_uni = UnivariatePolynomial::new(params.p.clone());
    if p_uni.degree().is_none_or(|d| d == 0) {
        return Err(Error::InvalidSetup("P must have positive degree".into()));
    }
    if !p_uni.is_squarefree() {
        return Err(Error::RepeatedRootsInPm);
    }
    let mut p = MultivariatePolynomial::zero(3);
    for (i, c) in params.p.iter().enumerate() {
        p.add_term(Monomial::new(vec![0, 0, i as u32]), c.clone());
    }
    let field = rotation_field(params.kappa, &p);
    let dir = params
        .a
        .iter()
        .map(|[c0, c1, c2]| {
            &(&MultivariatePolynomial::constant(3, c0.clone()) + &var(3, 0).scale(c1))
                + &var(3, 1).scale(c2)
        })
        .collect();
    let w = CompleteIntersection::coordinate(3, &[0, 1])?;
    let radius = super::region_radius(&field, &w, &[0, 1])?;
    let zero = rational::int(0);
    let special = params.a[2][0] != zero
        && params.a[..2].iter().flatten().all(|v| *v == zero)
        && params.a[2][1..].iter().all(|v| *v == zero);
    let mut family = DeformationFamily::new(
        field.clone(),
        VectorField::new(dir)?,
        format!("example43 kappa={}", params.kappa),
    )?;
    if radius.is_finite() {
        family = family.with_radius(radius);
    }
    Ok(RotationExample {
        min_total: 4 * params.kappa as usize + 2,
        params,
        field,
        family,
        w,
        special,
        minimum_mu: 0,
    })
}
