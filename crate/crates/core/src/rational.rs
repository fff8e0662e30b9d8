//! Helpers around the exact coefficient field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division for values outside the direct path.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

/// Formats `p/q`, or just `p` when the denominator is 1.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q`, decimal (`0.001`) and scientific (`1e-3`) literals,
/// each with an optional leading sign. Decimal forms are converted exactly.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = |message: &str| Error::Parse {
        offset: 0,
        message: format!("{message}: `{text}`"),
    };
    if s.is_empty() {
        return Err(err("empty rational literal"));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let value = if let Some((n, d)) = body.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        Rational::new(n, d)
    } else {
        let (mantissa, exponent) = match body.find(['e', 'E']) {
            Some(pos) => {
                let e: i32 = body[pos + 1..].parse().map_err(|_| err("bad exponent"))?;
                (&body[..pos], e)
            }
            None => (body, 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err("missing digits"));
        }
        if !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
        {
            return Err(err("not a number"));
        }
        let digits: BigInt = format!("{int_part}{frac_part}")
            .parse()
            .map_err(|_| err("not a number"))?;
        let scale = exponent - frac_part.len() as i32;
        let ten = BigInt::from(10);
        if scale >= 0 {
            Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
        } else {
            Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
        }
    };
    Ok(if negative { -value } else { value })
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row[c..ncols].iter_mut().zip(&pivot[c..ncols]) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

/// Inverse of a square rational matrix; `None` when singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for v in &mut a[c] {
            *v *= &inv;
        }
        let pivot = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(parse("0.001").unwrap(), rat(1, 1000));
        assert_eq!(parse("1e-4").unwrap(), rat(1, 10000));
        assert_eq!(parse("2.5E2").unwrap(), int(250));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
    }

    #[test]
    fn rank_and_inverse() {
        let m = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        assert_eq!(rank(m.clone()), 2);
        let inv = inverse(&m).unwrap();
        assert_eq!(
            inv,
            vec![vec![int(-2), int(1)], vec![rat(3, 2), rat(-1, 2)]]
        );
        assert_eq!(rank(vec![vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
        assert!(inverse(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format(&rat(4, -6)), "-2/3");
        assert_eq!(format(&int(5)), "5");
    }
}
