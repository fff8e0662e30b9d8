mod check;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use basinlab::deform::catalog::{
    example41, example42, example43, CubicParams, LineParams, RotationParams,
};
use basinlab::deform::{classify_limits, BasinReport, DeformationFamily, TSchedule};
use basinlab::foliation::{
    exceptional_order, foliation_degree, mult_along_w, singular_ideal, totally_simple,
    CompleteIntersection, Manifest,
};
use basinlab::groebner::{buchberger_with_budget, MonomialOrder};
use basinlab::invariants::{global_balance, nu_value, preset, soares_bound, ComponentBalance};
use basinlab::rational::{self, Rational};
use basinlab::report::{basin_report_json, render, solve_report_json};
use basinlab::solver::{solve_with_basis, SolverConfig};
use basinlab::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use check::CheckLine;

#[derive(Parser)]
#[command(
    name = "basinlab",
    version,
    about = "Singular loci of polynomial vector fields and their deformations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the singular ideal of a field manifest.
    Solve(SolveArgs),
    /// Track singular points of a deformation family as t -> 0.
    Deform(DeformArgs),
    /// Value of nu from a shipped preset.
    Nu(NuArgs),
    /// Upper bound for the index at an isolated singular point.
    Bounds(BoundsArgs),
    /// Solve the global balance identity for the embedded count N.
    Balance(BalanceArgs),
    /// Vanishing orders of the components along W.
    MultW(FieldArgs),
    /// Order of the blown-up field along the exceptional divisor.
    Ell(FieldArgs),
    /// Whether the field is totally simple along W.
    TotallySimple(FieldArgs),
    /// Compare computations with the predictions of a catalog example.
    Check(CheckArgs),
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Tolerances {
    #[arg(long, default_value_t = 1e-8)]
    residual_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    cluster_tol: f64,
    #[arg(long, default_value_t = basinlab::groebner::DEFAULT_PAIR_BUDGET)]
    pair_budget: usize,
}

impl Tolerances {
    fn solver(&self) -> SolverConfig {
        SolverConfig {
            residual_tol: self.residual_tol,
            cluster_tol: self.cluster_tol,
            pair_budget: self.pair_budget,
            ..SolverConfig::default()
        }
    }
}

#[derive(Args)]
struct Schedule {
    /// Decreasing parameter values, e.g. `1/100,1/1000,1/10000`.
    #[arg(long, default_value = "1/100,1/1000,1/10000")]
    t_seq: String,
    #[arg(long, default_value_t = TSchedule::DEFAULT_EPS_W)]
    eps_w: f64,
    #[arg(long, default_value_t = TSchedule::DEFAULT_R_ESC)]
    r_esc: f64,
}

impl Schedule {
    fn resolve(&self) -> Result<TSchedule, Failure> {
        Ok(TSchedule::new(
            TSchedule::parse_list(&self.t_seq)?,
            self.r_esc,
            self.eps_w,
        )?)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    field: PathBuf,
    /// Solve `X - t D` when the manifest has a direction.
    #[arg(long)]
    t: Option<String>,
    #[arg(long, default_value = "grevlex")]
    order: MonomialOrder,
    #[command(flatten)]
    tol: Tolerances,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct DeformArgs {
    /// `example41`, `example42`, `example42-translation`, `example42-h3`,
    /// `example43`, or a manifest path with `W` and `D` entries.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 2)]
    m: u32,
    /// Number of roots shared by alpha_3 and the slope polynomial.
    #[arg(long)]
    beta: Option<u32>,
    /// Translate only the third component (example43).
    #[arg(long)]
    special: bool,
    #[arg(long, default_value_t = 2)]
    kappa: u32,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    schedule: Schedule,
    #[command(flatten)]
    tol: Tolerances,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct NuArgs {
    #[arg(long)]
    preset: String,
    #[arg(long)]
    m: u32,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, required_unless_present = "field")]
    k: Option<u32>,
    #[arg(long, required_unless_present = "field")]
    n: Option<u32>,
    /// The top-degree part is a multiple of the radial field.
    #[arg(long)]
    radial: bool,
    /// Read `k`, `n` and radiality from a manifest.
    #[arg(long, conflicts_with_all = ["k", "n", "radial"])]
    field: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BalanceArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    /// `nu` of each positive-dimensional component.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    nu: Vec<String>,
    /// Known embedded counts, one per component, `?` for the unknown one.
    #[arg(long, value_delimiter = ',')]
    embedded: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    sum_isolated: i64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct FieldArgs {
    /// Manifest with a `W` entry.
    #[arg(long)]
    field: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CheckArgs {
    /// 41, 42 or 43.
    example: u32,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[command(flatten)]
    schedule: Schedule,
    #[command(flatten)]
    tol: Tolerances,
    #[command(flatten)]
    output: Output,
}

/// Error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::Manifest { .. }
            | Error::VariableOutOfRange { .. }
            | Error::UnknownPreset(_)
            | Error::MissingTableEntry(_)
            | Error::UnknownGenerator(_)
            | Error::InvalidSchedule(_) => 2,
            Error::NotZeroDimensional => 3,
            Error::ResourceLimit { .. } => 4,
            Error::AmbiguousMatching(_) => 5,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Solve(a) => cmd_solve(a),
        Command::Deform(a) => cmd_deform(a),
        Command::Nu(a) => cmd_nu(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Balance(a) => cmd_balance(a),
        Command::MultW(a) => cmd_mult_w(a),
        Command::Ell(a) => cmd_ell(a),
        Command::TotallySimple(a) => cmd_totally_simple(a),
        Command::Check(a) => cmd_check(a),
    }
}

fn read_manifest(path: &Path) -> Result<Manifest, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Manifest::parse(&text).map_err(Failure::from)
}

fn manifest_w(m: &Manifest, path: &Path) -> Result<CompleteIntersection, Failure> {
    m.w.clone()
        .ok_or_else(|| Failure::usage(format!("{} has no W entry", path.display())))
}

fn write_out(output: &Output, value: &Value) -> Result<(), Failure> {
    if let Some(path) = &output.out {
        std::fs::write(path, render(value)).map_err(|e| Failure {
            code: 1,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
    }
    Ok(())
}

fn tolerance_config(t: &Tolerances) -> Value {
    json!({"residual_tol": t.residual_tol, "cluster_tol": t.cluster_tol, "pair_budget": t.pair_budget})
}

fn schedule_config(s: &Schedule) -> Value {
    json!({"t_seq": s.t_seq, "eps_w": s.eps_w, "r_esc": s.r_esc})
}

fn out_config(o: &Output) -> Value {
    o.out
        .as_ref()
        .map_or(Value::Null, |p| json!(p.display().to_string()))
}

fn format_point(p: &[num_complex::Complex64]) -> String {
    let parts: Vec<String> = p
        .iter()
        .map(|z| {
            if z.im.abs() < 1e-12 {
                format!("{:.6}", z.re)
            } else {
                format!("{:.6}{:+.6}i", z.re, z.im)
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

fn cmd_solve(a: SolveArgs) -> Result<u8, Failure> {
    let manifest = read_manifest(&a.field)?;
    let field = match (&a.t, &manifest.direction) {
        (Some(t), Some(d)) => basinlab::deform::perturb(&manifest.field, d, &rational::parse(t)?)?,
        (Some(_), None) => {
            return Err(Failure::usage(
                "--t given but the manifest has no direction",
            ))
        }
        (None, _) => manifest.field.clone(),
    };
    let ideal = singular_ideal(&field)?;
    let cfg = a.tol.solver();
    let gb = buchberger_with_budget(&ideal, a.order, cfg.pair_budget)?;
    let solution = solve_with_basis(&ideal, &gb, &cfg)?;
    println!("total multiplicity: {}", solution.dimension);
    for p in &solution.points {
        println!(
            "  {}  multiplicity {}  residual {:.2e}",
            format_point(&p.coords),
            p.multiplicity,
            p.residual
        );
    }
    let config = json!({
        "command": "solve",
        "field": a.field.display().to_string(),
        "t": a.t,
        "order": a.order.to_string(),
        "tolerances": tolerance_config(&a.tol),
        "out": out_config(&a.output),
    });
    let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
    write_out(
        &a.output,
        &solve_report_json(&gens, &solution, &cfg, config),
    )?;
    Ok(0)
}

struct ResolvedFamily {
    family: DeformationFamily,
    w: CompleteIntersection,
    seed: u64,
    params: Value,
}

fn resolve_family(a: &DeformArgs) -> Result<ResolvedFamily, Failure> {
    let seed = a.seed.unwrap_or(0);
    let resolved = match a.family.as_str() {
        "example41" => {
            let params = match a.beta {
                Some(beta) if beta >= a.m => {
                    return Err(Failure::usage(format!(
                        "--beta must be below --m = {}",
                        a.m
                    )));
                }
                Some(beta) if beta > 0 => LineParams::planted(a.m, beta, seed),
                _ => LineParams::generic(a.m, seed),
            };
            if a.m < 2 {
                return Err(Failure::usage("--m must be at least 2"));
            }
            let ex = example41(params)?;
            ResolvedFamily {
                params: json!({"m": a.m, "beta": ex.beta, "predicted_mu": ex.predicted_mu}),
                family: ex.family,
                w: ex.w,
                seed,
            }
        }
        "example42" | "example42-translation" | "example42-h3" => {
            let params = match a.seed {
                Some(s) => CubicParams::generic(s),
                None => CubicParams::default(),
            };
            let params_json = json!({
                "eps": params.eps.iter().map(rational::format).collect::<Vec<_>>(),
                "alpha": params.alpha.iter().map(rational::format).collect::<Vec<_>>(),
            });
            let ex = example42(params)?;
            let (family, w) = match a.family.as_str() {
                "example42" => (ex.family, ex.w),
                "example42-translation" => (ex.translation, ex.w),
                _ => ex.h3_family()?,
            };
            ResolvedFamily {
                family,
                w,
                seed,
                params: params_json,
            }
        }
        "example43" => {
            let mut params = if a.special {
                RotationParams::special()
            } else {
                RotationParams::generic(seed)
            };
            params.kappa = a.kappa;
            let ex = example43(params)?;
            ResolvedFamily {
                params: json!({"kappa": a.kappa, "special": ex.special, "min_total": ex.min_total}),
                family: ex.family,
                w: ex.w,
                seed,
            }
        }
        path => {
            let path = Path::new(path);
            if !path.is_file() {
                return Err(Failure::usage(format!("unknown family `{}`", a.family)));
            }
            let m = read_manifest(path)?;
            let w = manifest_w(&m, path)?;
            let direction = m
                .direction
                .clone()
                .ok_or_else(|| Failure::usage(format!("{} has no D entries", path.display())))?;
            ResolvedFamily {
                family: DeformationFamily::new(m.field, direction, path.display().to_string())?,
                w,
                seed,
                params: Value::Null,
            }
        }
    };
    Ok(resolved)
}

fn print_basin(report: &BasinReport) {
    println!("family: {}", report.family);
    for p in &report.per_t {
        println!(
            "t = {}: total multiplicity {}",
            rational::format(&p.t),
            p.total_multiplicity
        );
    }
    for t in &report.trajectories {
        println!(
            "  {:<13} multiplicity {}  endpoint {}",
            t.classification.label(),
            t.multiplicity,
            format_point(t.endpoint())
        );
    }
    println!("observed mu(X_t,W) = {}", report.mu_along_w);
}

fn cmd_deform(a: DeformArgs) -> Result<u8, Failure> {
    let sched = a.schedule.resolve()?;
    let resolved = resolve_family(&a)?;
    let cfg = a.tol.solver();
    let mut report = classify_limits(&resolved.family, &sched, &resolved.w, &cfg)?;
    report.seed = resolved.seed;
    print_basin(&report);
    let config = json!({
        "command": "deform",
        "family": a.family,
        "params": resolved.params,
        "seed": a.seed,
        "schedule": schedule_config(&a.schedule),
        "tolerances": tolerance_config(&a.tol),
        "out": out_config(&a.output),
    });
    let mut value = basin_report_json(&report, config);
    value["trajectories_in_region"] = json!(check::inside_region(&report));
    write_out(&a.output, &value)?;
    Ok(0)
}

/// Report header for commands that run in exact arithmetic: no solver seed,
/// and a pair budget only where Groebner bases are computed.
fn exact_report(config: Value, groebner: bool) -> Value {
    let mut tolerances = json!({
        "arithmetic": "exact rational",
        "norm": basinlab::report::NORM,
        "coefficient_norm": basinlab::report::COEFFICIENT_NORM,
    });
    if groebner {
        tolerances["pair_budget"] = json!(basinlab::groebner::DEFAULT_PAIR_BUDGET);
    }
    json!({"version": basinlab::report::VERSION, "config": config, "seed": null, "tolerances": tolerances})
}

fn cmd_nu(a: NuArgs) -> Result<u8, Failure> {
    let (setup, table) = preset(&a.preset)?.instantiate(a.m)?;
    let nu = nu_value(&setup, &table)?;
    println!("nu = {}", rational::format(&nu));
    let mut value = exact_report(
        json!({"command": "nu", "preset": a.preset, "m": a.m, "out": out_config(&a.output)}),
        false,
    );
    value["nu"] = json!(rational::format(&nu));
    write_out(&a.output, &value)?;
    Ok(0)
}

fn cmd_bounds(a: BoundsArgs) -> Result<u8, Failure> {
    let (k, n, radial) = match &a.field {
        Some(path) => {
            let m = read_manifest(path)?;
            let deg = foliation_degree(&m.field)?;
            (deg.k, m.field.nvars() as u32, deg.radial_top)
        }
        None => (a.k.expect("required"), a.n.expect("required"), a.radial),
    };
    let bound = soares_bound(k, n, radial);
    println!("bound = {bound}");
    let mut value = exact_report(
        json!({"command": "bounds", "k": k, "n": n, "radial": radial, "out": out_config(&a.output)}),
        false,
    );
    value["bound"] = json!(bound.to_string());
    write_out(&a.output, &value)?;
    Ok(0)
}

fn cmd_balance(a: BalanceArgs) -> Result<u8, Failure> {
    if a.nu.is_empty() {
        return Err(Failure::usage("at least one --nu is required"));
    }
    let nus: Vec<Rational> =
        a.nu.iter()
            .map(|s| rational::parse(s))
            .collect::<Result<_, _>>()?;
    let embedded: Vec<Option<i64>> = if a.embedded.is_empty() {
        if nus.len() > 1 {
            return Err(Failure::usage(
                "--embedded is required with more than one component",
            ));
        }
        vec![None]
    } else {
        if a.embedded.len() != nus.len() {
            return Err(Failure::usage("--embedded needs one entry per --nu"));
        }
        a.embedded
            .iter()
            .map(|s| match s.trim() {
                "?" => Ok(None),
                v => v
                    .parse()
                    .map(Some)
                    .map_err(|_| Failure::usage(format!("bad embedded count `{v}`"))),
            })
            .collect::<Result<_, _>>()?
    };
    let components: Vec<ComponentBalance> = nus
        .into_iter()
        .zip(embedded)
        .map(|(nu, embedded)| ComponentBalance { nu, embedded })
        .collect();
    let report = global_balance(a.n, a.k, &components, a.sum_isolated)?;
    for (i, (n, mu)) in report.embedded.iter().zip(&report.mu_along_w).enumerate() {
        println!("component {}: N = {n}, mu_W = {mu}", i + 1);
    }
    let config = json!({
        "command": "balance", "n": a.n, "k": a.k, "nu": a.nu, "embedded": a.embedded,
        "sum_isolated": a.sum_isolated, "out": out_config(&a.output),
    });
    let mut value = exact_report(config, false);
    value["balance"] = serde_json::to_value(&report).expect("serializable");
    write_out(&a.output, &value)?;
    Ok(0)
}

fn field_and_w(a: &FieldArgs) -> Result<(Manifest, CompleteIntersection), Failure> {
    let m = read_manifest(&a.field)?;
    let w = manifest_w(&m, &a.field)?;
    Ok((m, w))
}

fn field_config(command: &str, a: &FieldArgs) -> Value {
    json!({"command": command, "field": a.field.display().to_string(), "out": out_config(&a.output)})
}

fn cmd_mult_w(a: FieldArgs) -> Result<u8, Failure> {
    let (m, w) = field_and_w(&a)?;
    let profile = mult_along_w(&m.field, &w)?;
    let orders: Vec<String> = profile
        .orders
        .iter()
        .map(|o| o.map_or("inf".to_string(), |v| v.to_string()))
        .collect();
    println!("orders = {}", orders.join(", "));
    println!("m_W = {}", profile.m_w);
    let mut value = exact_report(field_config("mult-w", &a), true);
    value["profile"] = serde_json::to_value(&profile).expect("serializable");
    write_out(&a.output, &value)?;
    Ok(0)
}

fn cmd_ell(a: FieldArgs) -> Result<u8, Failure> {
    let (m, w) = field_and_w(&a)?;
    let data = exceptional_order(&m.field, &w)?;
    println!("m_E = {}", data.m_e);
    println!("dicritical = {}", data.dicritical);
    println!("ell = {}", data.ell);
    let mut value = exact_report(field_config("ell", &a), true);
    value["exceptional"] = serde_json::to_value(data).expect("serializable");
    write_out(&a.output, &value)?;
    Ok(0)
}

fn cmd_totally_simple(a: FieldArgs) -> Result<u8, Failure> {
    let (m, w) = field_and_w(&a)?;
    let simple = totally_simple(&m.field, &w)?;
    println!("totally simple = {simple}");
    let mut value = exact_report(field_config("totally-simple", &a), true);
    value["totally_simple"] = json!(simple);
    write_out(&a.output, &value)?;
    Ok(0)
}

fn cmd_check(a: CheckArgs) -> Result<u8, Failure> {
    let sched = a.schedule.resolve()?;
    let cfg = a.tol.solver();
    let lines: Vec<CheckLine> = match a.example {
        41 => check::check41(a.seed, &sched, &cfg)?,
        42 => check::check42(&sched, &cfg)?,
        43 => check::check43(&sched, &cfg)?,
        other => {
            return Err(Failure::usage(format!(
                "unknown example {other}; expected 41, 42 or 43"
            )))
        }
    };
    for l in &lines {
        let status = if l.pass { "pass" } else { "FAIL" };
        println!(
            "{status}  {}: expected {}, observed {}",
            l.label, l.expected, l.observed
        );
    }
    let ok = check::all_pass(&lines);
    println!("{}", if ok { "all checks passed" } else { "mismatch" });
    let value = json!({
        "version": basinlab::report::VERSION,
        "config": {
            "command": "check", "example": a.example, "seed": a.seed,
            "schedule": schedule_config(&a.schedule), "tolerances": tolerance_config(&a.tol),
            "out": out_config(&a.output),
        },
        "seed": a.seed,
        "tolerances": tolerance_config(&a.tol),
        "checks": lines.iter().map(CheckLine::to_json).collect::<Vec<_>>(),
        "pass": ok,
    });
    write_out(&a.output, &value)?;
    Ok(if ok { 0 } else { 1 })
}
