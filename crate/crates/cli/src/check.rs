//! Prediction-versus-computation suites for the three catalog examples.

use basinlab::deform::catalog::{
    example41, example42, example43, CubicParams, LineParams, RotationParams,
};
use basinlab::deform::{
    classify_limits, limiting_milnor, totally_simple_perturbation, verify_lower_bound, BasinReport,
    TSchedule,
};
use basinlab::foliation::{exceptional_order, foliation_degree, mult_along_w, totally_simple};
use basinlab::invariants::{global_balance, nu_value, preset, ComponentBalance};
use basinlab::rational::{self, Rational};
use basinlab::solver::{inf_norm, SolverConfig};
use basinlab::{Error, Result};
use num_complex::Complex64;
use serde_json::{json, Value};

/// Relative sup-norm distance within which a trajectory endpoint counts as
/// converging to a named point.
pub const POINT_TOL: f64 = 5e-2;
/// Absolute tolerance on the limit at infinity of the twisted-cubic family.
pub const H3_LIMIT_TOL: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub label: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl CheckLine {
    fn new(
        label: impl Into<String>,
        expected: impl ToString,
        observed: impl ToString,
        pass: bool,
    ) -> Self {
        CheckLine {
            label: label.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
        }
    }

    fn eq<T: PartialEq + ToString>(label: impl Into<String>, expected: T, observed: T) -> Self {
        let pass = expected == observed;
        Self::new(label, expected.to_string(), observed.to_string(), pass)
    }

    pub fn to_json(&self) -> Value {
        json!({"label": self.label, "expected": self.expected, "observed": self.observed, "pass": self.pass})
    }
}

fn to_complex(p: &[Rational]) -> Vec<Complex64> {
    p.iter()
        .map(|q| Complex64::new(rational::to_f64(q), 0.0))
        .collect()
}

fn sup_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn near(a: &[Complex64], target: &[Complex64], rel: f64) -> bool {
    sup_distance(a, target) <= rel * inf_norm(target).max(1.0)
}

/// Trajectories with the given label whose endpoint is near `target`.
pub fn count_near(report: &BasinReport, label: &str, target: &[Complex64], rel: f64) -> usize {
    report
        .trajectories
        .iter()
        .filter(|t| t.classification.label() == label && near(t.endpoint(), target, rel))
        .map(|t| t.multiplicity)
        .sum()
}

pub fn total_at(report: &BasinReport, t: &Rational) -> Option<usize> {
    report
        .per_t
        .iter()
        .find(|p| &p.t == t)
        .map(|p| p.total_multiplicity)
}

/// Multiplicity of trajectories whose smallest-`t` point lies within the
/// family's radius.
pub fn inside_region(report: &BasinReport) -> usize {
    let radius = report.radius.unwrap_or(f64::INFINITY);
    report
        .trajectories
        .iter()
        .filter(|t| inf_norm(t.points.last().expect("nonempty")) <= radius)
        .map(|t| t.multiplicity)
        .sum()
}

pub fn check41(seed: u64, sched: &TSchedule, cfg: &SolverConfig) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let table = preset("p3-line")?;
    for m in [2u32, 3] {
        let generic = example41(LineParams::generic(m, seed))?;
        let generic_report = classify_limits(&generic.family, sched, &generic.w, cfg)?;
        let mu = limiting_milnor(&generic_report);
        lines.push(CheckLine::eq(
            format!("m={m} generic mu(X_t,W)"),
            generic.predicted_mu,
            mu,
        ));
        let planted = example41(LineParams::planted(m, 1, seed))?;
        let planted_report = classify_limits(&planted.family, sched, &planted.w, cfg)?;
        lines.push(CheckLine::eq(
            format!("m={m} one shared root mu(X_t,W)"),
            planted.predicted_mu,
            limiting_milnor(&planted_report),
        ));
        lines.push(CheckLine::eq(
            format!("m={m} m_W"),
            generic.m_w,
            mult_along_w(&generic.field, &generic.w)?.m_w,
        ));
        lines.push(CheckLine::eq(
            format!("m={m} degree k"),
            generic.degree,
            foliation_degree(&generic.field)?.k,
        ));
        lines.push(CheckLine::eq(
            format!("m={m} ell"),
            generic.ell,
            exceptional_order(&generic.field, &generic.w)?.ell,
        ));
        lines.push(CheckLine::eq(
            format!("m={m} totally simple"),
            false,
            totally_simple(&generic.field, &generic.w)?,
        ));
        let (setup, chern) = table.instantiate(m)?;
        let nu = nu_value(&setup, &chern)?;
        let cube = i64::from(m * m * m + m * m);
        lines.push(CheckLine::eq(
            format!("m={m} nu"),
            rational::format(&rational::int(-cube)),
            rational::format(&nu),
        ));
        let balance = global_balance(
            3,
            m,
            &[ComponentBalance { nu, embedded: None }],
            generic.isolated_points as i64,
        )?;
        lines.push(CheckLine::eq(
            format!("m={m} embedded N"),
            0,
            balance.embedded[0],
        ));
        lines.push(CheckLine::eq(
            format!("m={m} mu(F,W)"),
            cube,
            balance.mu_along_w[0],
        ));
        let (ok, margin) = verify_lower_bound(&generic_report, balance.embedded[0] as u64);
        lines.push(CheckLine::new(
            format!("m={m} lower bound"),
            ">= 0",
            margin,
            ok,
        ));
    }
    Ok(lines)
}

pub fn check42(sched: &TSchedule, cfg: &SolverConfig) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let ex = example42(CubicParams::default())?;
    let report = classify_limits(&ex.family, sched, &ex.w, cfg)?;
    let t = rational::rat(1, 1000);
    match total_at(&report, &t) {
        Some(total) => lines.push(CheckLine::eq(
            "total multiplicity at t=1/1000",
            ex.total,
            total,
        )),
        None => lines.push(CheckLine::new(
            "total multiplicity at t=1/1000",
            ex.total,
            "t not scheduled",
            false,
        )),
    }
    let a = to_complex(&ex.a_point);
    let p = to_complex(&ex.p_point);
    lines.push(CheckLine::eq(
        "trajectories to A",
        ex.to_a,
        count_near(&report, "toIsolated", &a, POINT_TOL),
    ));
    let z1_to_one: usize = report
        .trajectories
        .iter()
        .filter(|t| (t.points.last().expect("nonempty")[0] - 1.0).norm() <= POINT_TOL)
        .map(|t| t.multiplicity)
        .sum();
    lines.push(CheckLine::eq(
        "trajectories with z1 -> 1",
        ex.to_a + ex.to_p,
        z1_to_one,
    ));
    lines.push(CheckLine::eq(
        "trajectories to P",
        ex.to_p,
        count_near(&report, "toW", &p, POINT_TOL),
    ));
    let (family, origin) = ex.h3_family()?;
    let h3 = classify_limits(&family, sched, &origin, cfg)?;
    let h3_total = h3.per_t.last().map_or(0, |p| p.total_multiplicity);
    lines.push(CheckLine::eq(
        "total multiplicity at infinity",
        ex.h3_total,
        h3_total,
    ));
    let target = to_complex(&ex.h3_limit);
    let best = h3
        .trajectories
        .iter()
        .map(|t| sup_distance(t.endpoint(), &target))
        .fold(f64::INFINITY, f64::min);
    lines.push(CheckLine::new(
        "limit (16/7, 12/7) at infinity",
        format!("distance <= {H3_LIMIT_TOL:e}"),
        format!("{best:.3e}"),
        best <= H3_LIMIT_TOL,
    ));
    let translation = classify_limits(&ex.translation, sched, &ex.w, cfg)?;
    let labels: Vec<&str> = translation
        .trajectories
        .iter()
        .map(|t| t.classification.label())
        .collect();
    let to_w = labels.iter().filter(|l| **l == "toW").count();
    let to_a = count_near(&translation, "toIsolated", &a, POINT_TOL);
    lines.push(CheckLine::new(
        "constant perturbation: 2 toW, 1 to A",
        "2 toW, 1 to A of 3",
        format!("{to_w} toW, {to_a} to A of {}", labels.len()),
        to_w == 2 && to_a == 1 && labels.len() == 3,
    ));
    Ok(lines)
}

pub fn check43(sched: &TSchedule, cfg: &SolverConfig) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let ex = example43(RotationParams::special())?;
    lines.push(CheckLine::eq(
        "totally simple",
        true,
        totally_simple(&ex.field, &ex.w)?,
    ));
    let report = classify_limits(&ex.family, sched, &ex.w, cfg)?;
    lines.push(CheckLine::eq(
        "points within the region",
        0,
        inside_region(&report),
    ));
    lines.push(CheckLine::eq(
        "mu(X_t,W)",
        ex.minimum_mu,
        limiting_milnor(&report),
    ));
    lines.push(CheckLine::eq(
        "lower bound margin with N=0",
        0,
        verify_lower_bound(&report, 0).1,
    ));
    let total = report.per_t.last().map_or(0, |p| p.total_multiplicity);
    lines.push(CheckLine::new(
        "total multiplicity",
        format!(">= {}", ex.min_total),
        total,
        total >= ex.min_total,
    ));
    let eps = [rational::int(1)];
    let tf = totally_simple_perturbation(&ex.field, &ex.w, &eps)?;
    let translated = classify_limits(&tf.family, sched, &tf.w, cfg)?;
    lines.push(CheckLine::eq(
        "translation family mu(X_t,W)",
        0,
        limiting_milnor(&translated),
    ));
    let line = example41(LineParams::generic(2, 7))?;
    let refused = matches!(
        totally_simple_perturbation(&line.field, &line.w, &eps),
        Err(Error::NotTotallySimple)
    );
    lines.push(CheckLine::eq("line family refused", true, refused));
    Ok(lines)
}

pub fn all_pass(lines: &[CheckLine]) -> bool {
    lines.iter().all(|l| l.pass)
}
