//! Machine-readable JSON documents for solve and deformation runs.
//!
//! Objects use `serde_json`'s sorted maps, so identical inputs render to
//! identical bytes.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::deform::{BasinReport, Classification};
use crate::rational;
use crate::solver::{Solution, SolvedPoint, SolverConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Norm of points in reports.
pub const NORM: &str = "max absolute value of coordinates";
/// Norm of polynomials and perturbation directions.
pub const COEFFICIENT_NORM: &str = "max absolute value of coefficients";

pub fn complex_json(z: &Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn point_json(p: &[Complex64]) -> Value {
    Value::Array(p.iter().map(complex_json).collect())
}

fn solved_json(p: &SolvedPoint) -> Value {
    json!({
        "coords": point_json(&p.coords),
        "multiplicity": p.multiplicity,
        "residual": p.residual,
    })
}

fn tolerances(cfg: &SolverConfig) -> Value {
    json!({
        "residual_tol": cfg.residual_tol,
        "cluster_tol": cfg.cluster_tol,
        "pair_budget": cfg.pair_budget,
        "solver_seed": cfg.seed,
        "norm": NORM,
        "coefficient_norm": COEFFICIENT_NORM,
    })
}

pub fn basin_report_json(report: &BasinReport, config: Value) -> Value {
    let mut tol = tolerances(&report.solver);
    tol["r_esc"] = json!(report.schedule.r_esc);
    tol["eps_w"] = json!(report.schedule.eps_w);
    tol["radius"] = report.radius.map_or(Value::Null, |r| json!(r));
    let per_t: Vec<Value> = report
        .per_t
        .iter()
        .map(|p| {
            json!({
                "t": rational::format(&p.t),
                "total_multiplicity": p.total_multiplicity,
                "points": p.points.iter().map(solved_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let trajectories: Vec<Value> = report
        .trajectories
        .iter()
        .map(|tr| {
            let limit = match &tr.classification {
                Classification::ToIsolated(p) => point_json(p),
                _ => tr.limit.as_deref().map_or(Value::Null, point_json),
            };
            json!({
                "classification": tr.classification.label(),
                "limit": limit,
                "last_point": point_json(tr.points.last().expect("nonempty")),
                "multiplicity": tr.multiplicity,
                "w_proxy": tr.w_proxy,
                "norms": tr.norms,
            })
        })
        .collect();
    json!({
        "version": VERSION,
        "config": config,
        "family": report.family,
        "seed": report.seed,
        "direction_norm": rational::format(&report.direction_norm),
        "schedule": report.schedule.ts().iter().map(rational::format).collect::<Vec<_>>(),
        "tolerances": tol,
        "per_t": per_t,
        "trajectories": trajectories,
        "mu_along_W": report.mu_along_w,
    })
}

pub fn solve_report_json(
    generators: &[String],
    solution: &Solution,
    cfg: &SolverConfig,
    config: Value,
) -> Value {
    json!({
        "version": VERSION,
        "config": config,
        "generators": generators,
        "seed": cfg.seed,
        "tolerances": tolerances(cfg),
        "total_multiplicity": solution.dimension,
        "points": solution.points.iter().map(solved_json).collect::<Vec<_>>(),
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values are finite JSON");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::{classify_limits, DeformationFamily, TSchedule};
    use crate::foliation::{CompleteIntersection, VectorField};

    #[test]
    fn basin_report_keys_and_determinism() {
        let x = VectorField::parse(&["z1^2", "z2^2"]).unwrap();
        let d = VectorField::parse(&["1", "1"]).unwrap();
        let family = DeformationFamily::new(x, d, "squares").unwrap();
        let w = CompleteIntersection::coordinate(2, &[0, 1]).unwrap();
        let run = || {
            let r = classify_limits(&family, &TSchedule::default(), &w, &SolverConfig::default())
                .unwrap();
            render(&basin_report_json(&r, json!({"command": "deform"})))
        };
        let a = run();
        assert_eq!(a, run());
        let v: Value = serde_json::from_str(&a).unwrap();
        for key in [
            "family",
            "seed",
            "schedule",
            "tolerances",
            "per_t",
            "trajectories",
            "mu_along_W",
            "version",
            "config",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["mu_along_W"], 4);
        assert_eq!(v["schedule"][0], "1/100");
        let p = &v["per_t"][0]["points"][0];
        assert!(p["coords"].is_array() && p["multiplicity"].is_u64() && p["residual"].is_f64());
        assert_eq!(v["trajectories"][0]["classification"], "toW");
    }
}
