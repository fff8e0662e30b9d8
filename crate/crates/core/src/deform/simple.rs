use super::DeformationFamily;
use crate::error::{Error, Result};
use crate::foliation::{straighten, totally_simple, CompleteIntersection, VectorField};
use crate::groebner::{is_unit_ideal, Ideal};
use crate::poly::{Monomial, MultivariatePolynomial};
use crate::rational::{self, Rational};
use crate::solver::{inf_norm, solve_points};

/// Output of [`totally_simple_perturbation`]: a family in coordinates where
/// `W = {u_1 = ... = u_d = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslationFamily {
    pub family: DeformationFamily,
    pub w: CompleteIntersection,
    /// Rows of the Jacobian whose normal minor is kept invertible.
    pub rows: Vec<usize>,
}

/// Radius of the ball around the origin inside which the minor of the
/// normal columns of `JX` taken in `rows` has no zero on `W` (scaled by 0.9;
/// infinite when it never vanishes on `W`, zero when it vanishes on a curve).
pub fn region_radius(x: &VectorField, w: &CompleteIntersection, rows: &[usize]) -> Result<f64> {
    let normal = w.coordinate_indices().ok_or(Error::WNotCoordinate)?;
    let jac = x.jacobian();
    let block: Vec<Vec<MultivariatePolynomial>> = rows
        .iter()
        .map(|&r| normal.iter().map(|&c| jac[r][c].clone()).collect())
        .collect();
    let det = crate::foliation::determinant(&block);
    if det.is_zero() {
        return Ok(0.0);
    }
    let mut gens = w.equations().to_vec();
    gens.push(det);
    let ideal = Ideal::new(x.nvars(), gens)?;
    if is_unit_ideal(&ideal)? {
        return Ok(f64::INFINITY);
    }
    match solve_points(&ideal, 1e-8) {
        Ok(points) => Ok(0.9
            * points
                .iter()
                .map(|p| inf_norm(&p.coords))
                .fold(f64::INFINITY, f64::min)),
        Err(Error::NotZeroDimensional) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Translation family `Y_t = Y + t e` where `e` is constant and supported
/// on the rows outside a `d x d` normal minor that is invertible near `W`.
/// The rows are chosen to maximise the region where the minor is
/// invertible; `eps` holds the `n - d` translation constants.
pub fn totally_simple_perturbation(
    x: &VectorField,
    w: &CompleteIntersection,
    eps: &[Rational],
) -> Result<TranslationFamily> {
    if !totally_simple(x, w)? {
        return Err(Error::NotTotallySimple);
    }
    let (y, w0) = match w.coordinate_indices() {
        Some(_) => (x.clone(), w.clone()),
        None => {
            let s = straighten(w, x)?;
            (s.field, s.w)
        }
    };
    let n = y.nvars();
    let d = w0.codim();
    if eps.len() != n - d {
        return Err(Error::DimensionMismatch {
            expected: n - d,
            found: eps.len(),
        });
    }
    let mut best: Option<(f64, Vec<usize>)> = None;
    for rows in crate::foliation::subsets(n, d) {
        let r = region_radius(&y, &w0, &rows)?;
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, rows));
        }
    }
    let (radius, rows) = best.expect("at least one subset");
    if radius <= 0.0 {
        return Err(Error::NotTotallySimple);
    }
    let mut dir = vec![rational::int(0); n];
    let complement: Vec<usize> = (0..n).filter(|i| !rows.contains(i)).collect();
    for (&i, e) in complement.iter().zip(eps) {
        dir[i] = -e.clone();
    }
    let rows_text: Vec<String> = complement.iter().map(|i| (i + 1).to_string()).collect();
    let mut family = DeformationFamily::new(
        y,
        VectorField::constant(&dir),
        format!("constant translation in rows {}", rows_text.join(",")),
    )?;
    if radius.is_finite() {
        family = family.with_radius(radius);
    }
    Ok(TranslationFamily {
        family,
        w: w0,
        rows,
    })
}

/// Truncated cosine and sine series in `z3` (ambient dimension 3):
/// `f = sum_{i<=kappa} (-1)^i z3^{2i}/(2i)!`, `g = sum_{i<=kappa} (-1)^i z3^{2i+1}/(2i+1)!`.
pub fn trig_truncation(kappa: u32) -> (MultivariatePolynomial, MultivariatePolynomial) {
    let mut f = MultivariatePolynomial::zero(3);
    let mut g = MultivariatePolynomial::zero(3);
    let mut fact = num_bigint::BigInt::from(1);
    for e in 0..=(2 * kappa + 1) {
        if e > 0 {
            fact *= e;
        }
        let sign = if (e / 2) % 2 == 0 { 1 } else { -1 };
        let c = Rational::new(num_bigint::BigInt::from(sign), fact.clone());
        let m = Monomial::new(vec![0, 0, e]);
        if e % 2 == 0 {
            f.add_term(m, c);
        } else {
            g.add_term(m, c);
        }
    }
    (f, g)
}

/// Polynomial truncation of a shipped series field. `trig` is the rotation
/// field `(z1 f + z2 g, -z1 g + z2 f, z1 (z3^2 - 1))` with the truncated
/// cosine/sine pair of order `kappa`.
pub fn truncate_series_field(generator: &str, kappa: u32) -> Result<VectorField> {
    match generator {
        "trig" => {
            let p = crate::poly::parse_poly("z3^2 - 1", 3).expect("literal");
            Ok(super::catalog::rotation_field(kappa, &p))
        }
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn truncations() {
        let p = |s: &str| parse_poly(s, 3).unwrap();
        assert_eq!(trig_truncation(0), (p("1"), p("z3")));
        assert_eq!(trig_truncation(1), (p("1 - 1/2*z3^2"), p("z3 - 1/6*z3^3")));
        for k in 0..4 {
            let (f0, g0) = trig_truncation(k);
            let (f1, g1) = trig_truncation(k + 1);
            let df = &f1 - &f0;
            let dg = &g1 - &g0;
            assert!(df.terms().all(|(m, _)| m.degree() > 2 * k));
            assert!(dg.terms().all(|(m, _)| m.degree() > 2 * k));
        }
        assert!(matches!(
            truncate_series_field("exp", 1),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn translation_of_a_linear_field() {
        let x = VectorField::parse(&["z1", "z2", "0"]).unwrap();
        let w = CompleteIntersection::coordinate(3, &[0, 1]).unwrap();
        let tf = totally_simple_perturbation(&x, &w, &[rational::int(2)]).unwrap();
        assert_eq!(tf.rows, vec![0, 1]);
        assert_eq!(tf.family.radius, None);
        assert_eq!(
            tf.family.direction,
            VectorField::parse(&["0", "0", "-2"]).unwrap()
        );
        let x = VectorField::parse(&["z1^2", "z2^2", "z1"]).unwrap();
        assert_eq!(
            totally_simple_perturbation(&x, &w, &[rational::int(1)]),
            Err(Error::NotTotallySimple)
        );
    }
}
