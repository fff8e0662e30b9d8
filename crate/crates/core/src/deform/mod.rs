//! Deformation families `X_t = X - t D`, limit classification of their
//! isolated singularities, and the worked example catalog.

mod basin;
pub mod catalog;
mod simple;

pub use basin::{
    classify_limits, extrapolate, limiting_milnor, verify_lower_bound, BasinReport, Classification,
    PerT, Trajectory,
};
pub use simple::{
    region_radius, totally_simple_perturbation, trig_truncation, truncate_series_field,
    TranslationFamily,
};

use crate::error::{Error, Result};
use crate::foliation::VectorField;
use crate::rational::{self, Rational};

/// `X_t = base - t * direction`. Limits farther than `radius` from the
/// origin are reported as outside the region where the family is studied.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationFamily {
    pub base: VectorField,
    pub direction: VectorField,
    pub description: String,
    pub radius: Option<f64>,
}

impl DeformationFamily {
    pub fn new(
        base: VectorField,
        direction: VectorField,
        description: impl Into<String>,
    ) -> Result<Self> {
        if base.nvars() != direction.nvars() {
            return Err(Error::DimensionMismatch {
                expected: base.nvars(),
                found: direction.nvars(),
            });
        }
        Ok(DeformationFamily {
            base,
            direction,
            description: description.into(),
            radius: None,
        })
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius = Some(radius);
        self
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn at(&self, t: &Rational) -> VectorField {
        perturb(&self.base, &self.direction, t).expect("dimensions checked")
    }
}

pub fn perturb(base: &VectorField, direction: &VectorField, t: &Rational) -> Result<VectorField> {
    base.checked_sub(&direction.scale(t))
}

/// Decreasing positive parameter values at which the family is solved.
#[derive(Clone, Debug, PartialEq)]
pub struct TSchedule {
    ts: Vec<Rational>,
    pub r_esc: f64,
    pub eps_w: f64,
}

impl TSchedule {
    pub const DEFAULT_R_ESC: f64 = 1e6;
    pub const DEFAULT_EPS_W: f64 = 1e-3;

    pub fn new(ts: Vec<Rational>, r_esc: f64, eps_w: f64) -> Result<Self> {
        if ts.len() < 3 {
            return Err(Error::InvalidSchedule(format!(
                "{} values given, at least 3 needed",
                ts.len()
            )));
        }
        if let Some(bad) = ts.iter().find(|t| **t <= rational::int(0)) {
            return Err(Error::InvalidSchedule(format!(
                "t = {} is not positive",
                rational::format(bad)
            )));
        }
        if ts.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidSchedule(
                "values must be strictly decreasing".into(),
            ));
        }
        if !(r_esc > 0.0 && eps_w > 0.0) {
            return Err(Error::InvalidSchedule("thresholds must be positive".into()));
        }
        Ok(TSchedule { ts, r_esc, eps_w })
    }

    /// Parses a comma-separated list such as `1/100,1/1000,1e-4`.
    pub fn parse_list(text: &str) -> Result<Vec<Rational>> {
        text.split(',').map(|s| rational::parse(s.trim())).collect()
    }

    pub fn ts(&self) -> &[Rational] {
        &self.ts
    }

    pub fn smallest(&self) -> &Rational {
        self.ts.last().expect("nonempty")
    }
}

impl Default for TSchedule {
    fn default() -> Self {
        TSchedule::new(
            vec![
                rational::rat(1, 100),
                rational::rat(1, 1000),
                rational::rat(1, 10000),
            ],
            Self::DEFAULT_R_ESC,
            Self::DEFAULT_EPS_W,
        )
        .expect("valid default")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbation_is_affine_in_t() {
        let x = VectorField::parse(&["z1^2", "z1*z2", "z2^3"]).unwrap();
        let d = VectorField::parse(&["1", "z3", "2"]).unwrap();
        assert_eq!(perturb(&x, &d, &rational::int(0)).unwrap(), x);
        let (t, s) = (rational::rat(1, 3), rational::rat(-2, 7));
        let twice = perturb(&perturb(&x, &d, &t).unwrap(), &d, &s).unwrap();
        assert_eq!(twice, perturb(&x, &d, &(t + s)).unwrap());
    }

    #[test]
    fn schedule_validation() {
        let q = |v: &[i64]| v.iter().map(|&d| rational::rat(1, d)).collect::<Vec<_>>();
        assert!(TSchedule::new(q(&[10, 100]), 1e6, 1e-3).is_err());
        assert!(TSchedule::new(q(&[100, 10, 1000]), 1e6, 1e-3).is_err());
        assert!(TSchedule::new(
            vec![rational::int(1), rational::int(0), rational::int(-1)],
            1e6,
            1e-3
        )
        .is_err());
        assert_eq!(TSchedule::default().ts().len(), 3);
        assert_eq!(
            TSchedule::parse_list("1/100, 0.001,1e-4").unwrap(),
            q(&[100, 1000, 10000])
        );
    }
}
