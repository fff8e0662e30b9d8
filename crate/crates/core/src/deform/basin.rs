use num_complex::Complex64;
use rayon::prelude::*;

use super::{DeformationFamily, TSchedule};
use crate::error::{Error, Result};
use crate::foliation::{singular_ideal, CompleteIntersection};
use crate::rational::{self, Rational};
use crate::solver::{inf_norm, relative_distance, solve, SolvedPoint, SolverConfig};

/// Where a trajectory of singular points goes as `t -> 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum Classification {
    ToW,
    ToIsolated(Vec<Complex64>),
    ToInfinity,
    /// Converges, but beyond the radius the family is studied in.
    OutsideRegion,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::ToW => "toW",
            Classification::ToIsolated(_) => "toIsolated",
            Classification::ToInfinity => "toInfinity",
            Classification::OutsideRegion => "outsideRegion",
        }
    }
}

/// Solved points at one parameter value.
#[derive(Clone, Debug, PartialEq)]
pub struct PerT {
    pub t: Rational,
    pub points: Vec<SolvedPoint>,
    pub total_multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    /// One point per scheduled `t`, in schedule order.
    pub points: Vec<Vec<Complex64>>,
    pub multiplicity: usize,
    pub classification: Classification,
    /// Extrapolated `t -> 0` limit, when the fit converges.
    pub limit: Option<Vec<Complex64>>,
    /// `max_i |f_i|` along the trajectory.
    pub w_proxy: Vec<f64>,
    pub norms: Vec<f64>,
}

impl Trajectory {
    /// The extrapolated limit, or the point at the smallest `t`.
    pub fn endpoint(&self) -> &[Complex64] {
        self.limit
            .as_deref()
            .unwrap_or_else(|| self.points.last().expect("nonempty"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasinReport {
    pub family: String,
    pub seed: u64,
    pub schedule: TSchedule,
    pub solver: SolverConfig,
    pub radius: Option<f64>,
    /// Size of the perturbation: the largest absolute coefficient of the
    /// direction.
    pub direction_norm: Rational,
    pub per_t: Vec<PerT>,
    pub trajectories: Vec<Trajectory>,
    pub mu_along_w: usize,
}

/// Solves `sing(X_t)` along the schedule, links points across consecutive
/// values of `t` and classifies each trajectory.
pub fn classify_limits(
    family: &DeformationFamily,
    sched: &TSchedule,
    w: &CompleteIntersection,
    cfg: &SolverConfig,
) -> Result<BasinReport> {
    if w.nvars() != family.nvars() {
        return Err(Error::DimensionMismatch {
            expected: family.nvars(),
            found: w.nvars(),
        });
    }
    let per_t = sched
        .ts()
        .par_iter()
        .map(|t| {
            let ideal = singular_ideal(&family.at(t))?;
            let sol = solve(&ideal, cfg)?;
            Ok(PerT {
                t: t.clone(),
                total_multiplicity: sol.dimension,
                points: sol.points,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for p in &per_t {
        let sum: usize = p.points.iter().map(|q| q.multiplicity).sum();
        if sum != p.total_multiplicity {
            return Err(Error::AmbiguousMatching(format!(
                "at t = {} the points carry multiplicity {sum} of {}",
                rational::format(&p.t),
                p.total_multiplicity
            )));
        }
    }
    let chains = match_points(&per_t)?;
    let ts: Vec<f64> = sched.ts().iter().map(rational::to_f64).collect();
    let trajectories: Vec<Trajectory> = chains
        .into_iter()
        .map(|(points, multiplicity)| classify(points, multiplicity, &ts, sched, w, family.radius))
        .collect();
    let mu_along_w = trajectories
        .iter()
        .filter(|t| t.classification == Classification::ToW)
        .map(|t| t.multiplicity)
        .sum();
    Ok(BasinReport {
        family: family.description.clone(),
        seed: cfg.seed,
        schedule: sched.clone(),
        solver: cfg.clone(),
        radius: family.radius,
        direction_norm: family
            .direction
            .components()
            .iter()
            .map(|c| c.max_abs_coefficient())
            .max()
            .expect("at least one component"),
        per_t,
        trajectories,
        mu_along_w,
    })
}

/// Greedy nearest-neighbour linking between consecutive values of `t`,
/// pairing only points of equal multiplicity. Anything left over means the
/// multiplicities are not conserved.
fn match_points(per_t: &[PerT]) -> Result<Vec<(Vec<Vec<Complex64>>, usize)>> {
    let mut chains: Vec<(Vec<Vec<Complex64>>, usize)> = per_t[0]
        .points
        .iter()
        .map(|p| (vec![p.coords.clone()], p.multiplicity))
        .collect();
    for step in &per_t[1..] {
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for (ci, (pts, mult)) in chains.iter().enumerate() {
            let last = pts.last().expect("nonempty");
            for (pi, p) in step.points.iter().enumerate() {
                if p.multiplicity == *mult {
                    pairs.push((relative_distance(last, &p.coords), ci, pi));
                }
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut chain_next: Vec<Option<usize>> = vec![None; chains.len()];
        let mut used = vec![false; step.points.len()];
        for (_, ci, pi) in pairs {
            if chain_next[ci].is_none() && !used[pi] {
                chain_next[ci] = Some(pi);
                used[pi] = true;
            }
        }
        if chain_next.iter().any(Option::is_none) || used.iter().any(|u| !u) {
            return Err(Error::AmbiguousMatching(format!(
                "cannot link {} points to {} points at t = {} with equal multiplicities",
                chains.len(),
                step.points.len(),
                rational::format(&step.t)
            )));
        }
        for (chain, next) in chains.iter_mut().zip(chain_next) {
            chain
                .0
                .push(step.points[next.expect("checked")].coords.clone());
        }
    }
    Ok(chains)
}

fn non_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9) + 1e-12)
}

fn increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

fn classify(
    points: Vec<Vec<Complex64>>,
    multiplicity: usize,
    ts: &[f64],
    sched: &TSchedule,
    w: &CompleteIntersection,
    radius: Option<f64>,
) -> Trajectory {
    let w_proxy: Vec<f64> = points.iter().map(|p| w.distance_proxy(p)).collect();
    let norms: Vec<f64> = points.iter().map(|p| inf_norm(p)).collect();
    let limit = extrapolate(ts, &points);
    let last_proxy = *w_proxy.last().expect("nonempty");
    let limit_proxy = limit.as_ref().map(|l| w.distance_proxy(l));
    let near_w = last_proxy < sched.eps_w || limit_proxy.is_some_and(|p| p < sched.eps_w);
    let mut classification = if non_increasing(&w_proxy) && near_w {
        Classification::ToW
    } else if increasing(&norms)
        && (*norms.last().expect("nonempty") > sched.r_esc || limit.is_none())
    {
        Classification::ToInfinity
    } else {
        let end = limit
            .clone()
            .unwrap_or_else(|| points.last().expect("nonempty").clone());
        Classification::ToIsolated(end)
    };
    if let Some(r) = radius {
        let end = limit
            .as_deref()
            .unwrap_or_else(|| points.last().expect("nonempty"));
        if classification != Classification::ToInfinity && inf_norm(end) > r {
            classification = Classification::OutsideRegion;
        }
    }
    Trajectory {
        points,
        multiplicity,
        classification,
        limit,
        w_proxy,
        norms,
    }
}

/// Fits `p(t) = p0 + c t^gamma` (`gamma > 0`) per coordinate through the
/// last three samples and returns `p0`; `None` when some coordinate does not
/// converge under that model.
pub fn extrapolate(ts: &[f64], points: &[Vec<Complex64>]) -> Option<Vec<Complex64>> {
    let k = ts.len();
    if k < 3 || points.len() != k {
        return points.last().cloned();
    }
    let (t1, t2, t3) = (ts[k - 3], ts[k - 2], ts[k - 1]);
    let (p1, p2, p3) = (&points[k - 3], &points[k - 2], &points[k - 1]);
    let scale = 1f64.max(inf_norm(p3));
    p1.iter()
        .zip(p2)
        .zip(p3)
        .map(|((&a, &b), &c)| {
            let d1 = a - b;
            let d2 = b - c;
            if d2.norm() <= 1e-13 * scale {
                return (d1.norm() <= 1e-9 * scale).then_some(c);
            }
            let ratio = d1.norm() / d2.norm();
            let g =
                |gamma: f64| (t1.powf(gamma) - t2.powf(gamma)) / (t2.powf(gamma) - t3.powf(gamma));
            let at_zero = (t1.ln() - t2.ln()) / (t2.ln() - t3.ln());
            if ratio <= at_zero * (1.0 + 1e-9) {
                return None;
            }
            let (mut lo, mut hi) = (1e-9, 64.0);
            if ratio >= g(hi) {
                return Some(c);
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if g(mid) < ratio {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let gamma = 0.5 * (lo + hi);
            let coef = d2 / (t2.powf(gamma) - t3.powf(gamma));
            Some(c - coef * t3.powf(gamma))
        })
        .collect()
}

/// Total multiplicity of the trajectories that land on `W`.
pub fn limiting_milnor(report: &BasinReport) -> usize {
    report.mu_along_w
}

/// `(mu >= N, mu - N)`.
pub fn verify_lower_bound(report: &BasinReport, n: u64) -> (bool, i64) {
    let mu = limiting_milnor(report) as i64;
    (mu >= n as i64, mu - n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::DeformationFamily;
    use crate::foliation::VectorField;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn extrapolation_recovers_power_laws() {
        let ts = [1e-2, 1e-3, 1e-4];
        let pts: Vec<Vec<Complex64>> = ts
            .iter()
            .map(|t: &f64| vec![c(2.0 + 3.0 * t.sqrt()), c(-1.0 + 0.5 * t), c(5.0)])
            .collect();
        let l = extrapolate(&ts, &pts).unwrap();
        assert!((l[0] - c(2.0)).norm() < 1e-10);
        assert!((l[1] - c(-1.0)).norm() < 1e-12);
        assert_eq!(l[2], c(5.0));
        let esc: Vec<Vec<Complex64>> = ts.iter().map(|t: &f64| vec![c(1.0 / t.sqrt())]).collect();
        assert_eq!(extrapolate(&ts, &esc), None);
    }

    #[test]
    fn square_roots_fall_onto_w() {
        // X_t = (z1^2 - t, z2, z3 - 1): two simple points (+-sqrt t, 0, 1) that
        // land on W = {z1 = z2 = 0}.
        let x = VectorField::parse(&["z1^2", "z2", "z3-1"]).unwrap();
        let d = VectorField::parse(&["1", "0", "0"]).unwrap();
        let fam = DeformationFamily::new(x, d, "sqrt").unwrap();
        let w = CompleteIntersection::coordinate(3, &[0, 1]).unwrap();
        let r = classify_limits(&fam, &TSchedule::default(), &w, &SolverConfig::default()).unwrap();
        assert_eq!(r.trajectories.len(), 2);
        assert_eq!(limiting_milnor(&r), 2);
        assert_eq!(verify_lower_bound(&r, 1), (true, 1));
    }

    #[test]
    fn isolated_and_escaping_points() {
        // (t z1^2 - z1 + 1, z2 - 2, z3): roots near z1 = 1 (isolated) and
        // z1 ~ 1/t (escaping).
        let x = VectorField::parse(&["1-z1", "z2-2", "z3"]).unwrap();
        let d = VectorField::parse(&["-z1^2", "0", "0"]).unwrap();
        let fam = DeformationFamily::new(x, d, "escape").unwrap();
        let w = CompleteIntersection::coordinate(3, &[1, 2]).unwrap();
        let r = classify_limits(&fam, &TSchedule::default(), &w, &SolverConfig::default()).unwrap();
        let labels: Vec<_> = r
            .trajectories
            .iter()
            .map(|t| t.classification.label())
            .collect();
        assert_eq!(labels.len(), 2);
        assert!(labels.contains(&"toInfinity"));
        let iso = r
            .trajectories
            .iter()
            .find_map(|t| match &t.classification {
                Classification::ToIsolated(p) => Some(p.clone()),
                _ => None,
            })
            .unwrap();
        // The fit leaves an O(t^2) error from the next term of 1 + t + 2t^2 + ...
        assert!((iso[0] - c(1.0)).norm() < 1e-5 && (iso[1] - c(2.0)).norm() < 1e-9);
        assert_eq!(r.mu_along_w, 0);
    }
}
