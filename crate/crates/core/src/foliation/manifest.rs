//! Plain-text field manifests.
//!
//! ```text
//! # comment
//! n = 3
//! X1 = z1^2
//! X2 = z1*z2
//! X3 = z2^3
//! W = z1; z2          (optional)
//! D1 = 1              (optional perturbation direction, missing entries are 0)
//! ```
//!
//! Blank lines and text after `#` are ignored. `n` must come before any
//! polynomial. Every `X1..Xn` must be given exactly once.

use super::{CompleteIntersection, VectorField};
use crate::error::{Error, Result};
use crate::poly::{parse_poly, MultivariatePolynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub field: VectorField,
    pub w: Option<CompleteIntersection>,
    pub direction: Option<VectorField>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest> {
        let mut n: Option<usize> = None;
        let mut x: Vec<Option<MultivariatePolynomial>> = Vec::new();
        let mut d: Vec<Option<MultivariatePolynomial>> = Vec::new();
        let mut w: Option<(usize, Vec<MultivariatePolynomial>)> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::Manifest {
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            let key = key.trim();
            let value = value.trim();
            if key == "n" {
                if n.is_some() {
                    return Err(err("`n` given twice".into()));
                }
                let v: usize = value
                    .parse()
                    .map_err(|_| err(format!("invalid dimension `{value}`")))?;
                if v == 0 {
                    return Err(err("dimension must be positive".into()));
                }
                n = Some(v);
                x = vec![None; v];
                d = vec![None; v];
                continue;
            }
            let nv = n.ok_or_else(|| err("`n` must be declared first".into()))?;
            let poly = |s: &str| -> Result<MultivariatePolynomial> {
                parse_poly(s, nv).map_err(|e| err(e.to_string()))
            };
            if key == "W" {
                if w.is_some() {
                    return Err(err("`W` given twice".into()));
                }
                let eqs = value
                    .split(';')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(poly)
                    .collect::<Result<Vec<_>>>()?;
                w = Some((line_no, eqs));
                continue;
            }
            let (slot, target) = match key.chars().next() {
                Some('X') => (&key[1..], &mut x),
                Some('D') => (&key[1..], &mut d),
                _ => return Err(err(format!("unknown key `{key}`"))),
            };
            let i: usize = slot
                .parse()
                .ok()
                .filter(|i| (1..=nv).contains(i))
                .ok_or_else(|| err(format!("component index `{slot}` outside 1..={nv}")))?;
            if target[i - 1].is_some() {
                return Err(err(format!("`{key}` given twice")));
            }
            target[i - 1] = Some(poly(value)?);
        }
        let nv = n.ok_or(Error::Manifest {
            line: 0,
            message: "missing `n`".into(),
        })?;
        let comps = x
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or(Error::Manifest {
                    line: 0,
                    message: format!("missing `X{}`", i + 1),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let direction = if d.iter().any(Option::is_some) {
            Some(VectorField::new(
                d.into_iter()
                    .map(|c| c.unwrap_or_else(|| MultivariatePolynomial::zero(nv)))
                    .collect(),
            )?)
        } else {
            None
        };
        let w = match w {
            Some((line, eqs)) => {
                Some(
                    CompleteIntersection::new(nv, eqs).map_err(|e| Error::Manifest {
                        line,
                        message: e.to_string(),
                    })?,
                )
            }
            None => None,
        };
        Ok(Manifest {
            field: VectorField::new(comps)?,
            w,
            direction,
        })
    }

    /// Inverse of [`Manifest::parse`].
    pub fn render(&self) -> String {
        let mut out = format!("n = {}\n", self.field.nvars());
        for (i, c) in self.field.components().iter().enumerate() {
            out.push_str(&format!("X{} = {c}\n", i + 1));
        }
        if let Some(w) = &self.w {
            out.push_str(&format!("W = {w}\n"));
        }
        if let Some(d) = &self.direction {
            for (i, c) in d.components().iter().enumerate() {
                if !c.is_zero() {
                    out.push_str(&format!("D{} = {c}\n", i + 1));
                }
            }
        }
        out
    }
}
