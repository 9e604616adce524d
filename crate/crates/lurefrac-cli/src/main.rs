//! Command-line front end: JSON system definitions in, verdicts and CSV
//! traces out.
//!
//! Exit codes: 0 = pass/success, 1 = a criterion failed, 2 =
//! precondition or parse error.

mod definition;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use definition::SystemDefinition;
use lurefrac::classes::verify_class_instance;
use lurefrac::criteria::{
    certify_nonneg, circle_criterion, default_q_grid, gzf_check, max_sector_gamma, popov_check,
    skeleton_check, zames_falb_check, CriterionVerdict, MultiplierZ, QuasiMonotoneBound,
};
use lurefrac::freq::sweep;
use lurefrac::sim::{simulate_lure, PulseInput, SimConfig};
use report::{plant_json, print_report, stability_json, verdict_json};

#[derive(Parser)]
#[command(
    name = "lurefrac",
    about = "L2 stability analysis of fractional-order Lur'e feedback loops",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Path to the JSON system definition.
    #[arg(long)]
    system: PathBuf,
    /// Sector bounds override, `lambda,gamma`.
    #[arg(long, value_parser = parse_pair)]
    sector: Option<(f64, f64)>,
    /// Commensurate order override.
    #[arg(long)]
    alpha: Option<f64>,
    /// Sweep range override, `omega_min,omega_max` (rad/s).
    #[arg(long, value_parser = parse_pair)]
    omega_range: Option<(f64, f64)>,
    /// Strict-inequality margin epsilon.
    #[arg(long)]
    eps: Option<f64>,
    /// Simulation step size (s).
    #[arg(long)]
    h: Option<f64>,
    /// Simulation horizon (s).
    #[arg(long)]
    t_end: Option<f64>,
    /// Output path for tabular data (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format for tabular data.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Stability report plus every applicable criterion.
    Analyze(Common),
    /// Largest sector {0, gamma} certified by the circle criterion.
    Sector(Common),
    /// Frequency sweep of the Nyquist locus (omega, re, im).
    Nyquist(Common),
    /// Popov criterion for the sector {0, gamma}.
    Popov(Common),
    /// Zames-Falb multiplier check.
    Zf(Common),
    /// Generalized Zames-Falb check.
    Gzf(Common),
    /// RL/RC skeleton multiplier check with sector slope bounds.
    Skeleton(Common),
    /// Instantiate a certified-stable class and verify it.
    Classgen(Common),
    /// Closed-loop time-domain simulation (CSV trace + metrics).
    Simulate(Common),
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected `a,b`, got `{s}`"));
    }
    let a = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

/// Precondition/parse failures exit with 2.
struct Fault(String);

impl<E: std::fmt::Display> From<E> for Fault {
    fn from(e: E) -> Self {
        Fault(e.to_string())
    }
}

fn load(common: &Common) -> Result<SystemDefinition, Fault> {
    let text = fs::read_to_string(&common.system)
        .map_err(|e| Fault(format!("cannot read {}: {e}", common.system.display())))?;
    let def: SystemDefinition = serde_json::from_str(&text)
        .map_err(|e| Fault(format!("{}: {e}", common.system.display())))?;
    Ok(def)
}

fn write_table(common: &Common, header: &str, rows: &[String]) -> Result<(), Fault> {
    let mut body = String::with_capacity(rows.len() * 32 + header.len() + 1);
    body.push_str(header);
    body.push('\n');
    for row in rows {
        body.push_str(row);
        body.push('\n');
    }
    match &common.out {
        Some(path) => {
            let mut f = fs::File::create(path)
                .map_err(|e| Fault(format!("cannot create {}: {e}", path.display())))?;
            f.write_all(body.as_bytes())
                .map_err(|e| Fault(e.to_string()))?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn verdict_exit(v: &CriterionVerdict) -> ExitCode {
    if v.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Builds the certified multiplier for the zf/gzf commands: an explicit
/// Z is certified numerically, an RL description is decomposed, and no
/// multiplier at all means Z = 0.
fn resolve_multiplier(def: &SystemDefinition, sim_cfg: &SimConfig) -> Result<MultiplierZ, Fault> {
    if let Some(z_tf) = def.multiplier_tf()? {
        return Ok(certify_nonneg(&z_tf, sim_cfg)?);
    }
    if let Some(rl) = def.multiplier_rl()? {
        return Ok(lurefrac::criteria::rl_decompose(&rl)?);
    }
    Ok(MultiplierZ::zero())
}

fn run(cmd: &Command) -> Result<ExitCode, Fault> {
    let common = match cmd {
        Command::Analyze(c)
        | Command::Sector(c)
        | Command::Nyquist(c)
        | Command::Popov(c)
        | Command::Zf(c)
        | Command::Gzf(c)
        | Command::Skeleton(c)
        | Command::Classgen(c)
        | Command::Simulate(c) => c,
    };
    let def = load(common)?;
    let cfg = def.sweep_config(common.omega_range, common.eps)?;
    let sim_cfg = def.sim_config(common.h, common.t_end);

    match cmd {
        Command::Analyze(_) => {
            let g = def.plant_tf(common.alpha)?;
            let stability = g.stability_report()?;
            let mut criteria = Vec::new();
            let mut all_pass = true;
            let mut push = |name: &str, v: CriterionVerdict| {
                all_pass &= v.pass;
                criteria.push(json!({ "criterion": name, "verdict": verdict_json(&v) }));
            };

            if let Some(sector) = def.sector(common.sector)? {
                push("circle", circle_criterion(&g, sector, &cfg)?);
                if sector.lambda == 0.0 && stability.popov_applicable {
                    push(
                        "popov",
                        popov_check(&g, sector.gamma, &default_q_grid(), &cfg)?,
                    );
                }
            }
            // The multiplier criteria only apply when a multiplier was
            // actually supplied; the zf/gzf subcommands run the trivial
            // multiplier on request.
            if def.multiplier_tf()?.is_some() || def.multiplier_rl()?.is_some() {
                let phi = def.nonlinearity()?;
                let odd = phi.as_ref().is_some_and(|p| p.odd);
                let z = resolve_multiplier(&def, &sim_cfg)?;
                push("zf", zames_falb_check(&g, &z, odd, &cfg)?);
                let d = QuasiMonotoneBound::new(def.d_bound.unwrap_or(0.0))?;
                push("gzf", gzf_check(&g, &z, &d, &cfg)?);
            }

            print_report(&json!({
                "plant": plant_json(&g),
                "stability": stability_json(&stability),
                "criteria": criteria,
            }));
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Sector(_) => {
            let g = def.plant_tf(common.alpha)?;
            let gamma = max_sector_gamma(&g, &cfg)?;
            if gamma.is_finite() {
                println!("{gamma:.4}");
            } else {
                println!("inf");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Nyquist(_) => {
            let g = def.plant_tf(common.alpha)?;
            let sw = sweep(&g, &cfg);
            match common.format {
                Format::Csv => {
                    let rows: Vec<String> = sw
                        .samples
                        .iter()
                        .map(|s| format!("{:.9e},{:.9e},{:.9e}", s.omega, s.value.re, s.value.im))
                        .collect();
                    write_table(common, "omega,re,im", &rows)?;
                }
                Format::Json => {
                    let samples: Vec<_> = sw
                        .samples
                        .iter()
                        .map(|s| json!({"omega": s.omega, "re": s.value.re, "im": s.value.im}))
                        .collect();
                    print_report(&json!({"samples": samples, "skipped_poles": sw.skipped_poles}));
                }
            }
            if !sw.skipped_poles.is_empty() {
                eprintln!(
                    "note: skipped {} at-pole frequencies: {:?}",
                    sw.skipped_poles.len(),
                    sw.skipped_poles
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Popov(_) => {
            let g = def.plant_tf(common.alpha)?;
            let sector = def
                .sector(common.sector)?
                .ok_or_else(|| Fault("popov needs a sector {0, gamma}".into()))?;
            if sector.lambda != 0.0 {
                return Err(Fault(format!(
                    "popov covers sectors {{0, gamma}}; got lambda = {}",
                    sector.lambda
                )));
            }
            let v = popov_check(&g, sector.gamma, &default_q_grid(), &cfg)?;
            print_report(&verdict_json(&v));
            Ok(verdict_exit(&v))
        }
        Command::Zf(_) => {
            let g = def.plant_tf(common.alpha)?;
            let z = resolve_multiplier(&def, &sim_cfg)?;
            let odd = def.nonlinearity()?.is_some_and(|p| p.odd);
            let v = zames_falb_check(&g, &z, odd, &cfg)?;
            print_report(&verdict_json(&v));
            Ok(verdict_exit(&v))
        }
        Command::Gzf(_) => {
            let g = def.plant_tf(common.alpha)?;
            let z = resolve_multiplier(&def, &sim_cfg)?;
            let d = QuasiMonotoneBound::new(def.d_bound.unwrap_or(0.0))?;
            let v = gzf_check(&g, &z, &d, &cfg)?;
            print_report(&verdict_json(&v));
            Ok(verdict_exit(&v))
        }
        Command::Skeleton(_) => {
            let g = def.plant_tf(common.alpha)?;
            let m = def.multiplier_rl()?.ok_or_else(|| {
                Fault("skeleton needs a multiplier with an `rl` description".into())
            })?;
            let sector = def
                .sector(common.sector)?
                .ok_or_else(|| Fault("skeleton needs sector slope bounds [K1, K2]".into()))?;
            let v = skeleton_check(&g, &m, sector.lambda, sector.gamma, &cfg)?;
            print_report(&verdict_json(&v));
            Ok(verdict_exit(&v))
        }
        Command::Classgen(_) => {
            let spec = def
                .class_spec(common.alpha)
                .ok_or_else(|| Fault("classgen needs a plant given as a class spec".into()))?;
            let inst = spec.instantiate()?;
            let v = verify_class_instance(&inst, &cfg)?;
            print_report(&json!({
                "plant": plant_json(&inst.plant),
                "multiplier": {
                    "tf": plant_json(&inst.multiplier.tf),
                    "l1_norm": inst.multiplier.l1_norm,
                    "nonneg_certified": inst.multiplier.nonneg_certified,
                    "certification": inst.multiplier.certification.as_str(),
                },
                "required_check": inst.required_check.as_str(),
                "verdict": verdict_json(&v),
            }));
            Ok(verdict_exit(&v))
        }
        Command::Simulate(_) => {
            let g = def.plant_tf(common.alpha)?;
            let phi = def
                .nonlinearity()?
                .ok_or_else(|| Fault("simulate needs a nonlinearity".into()))?;
            let u1 = def
                .pulse()?
                .unwrap_or(PulseInput::new(1.0, 0.0, sim_cfg.t_end / 2.0)?);
            let trace = simulate_lure(&g.realize(), &phi, &u1, None, &sim_cfg)?;
            let rows: Vec<String> = (0..trace.t.len())
                .map(|k| {
                    format!(
                        "{:.6},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e}",
                        trace.t[k], trace.u1[k], trace.e1[k], trace.e2[k], trace.y1[k], trace.y2[k]
                    )
                })
                .collect();
            let metrics = json!({
                "l2_estimate": trace.metrics.l2_estimate,
                "sup_norm": trace.metrics.sup_norm,
                "settled": trace.metrics.settled,
                "settle_time": trace.metrics.settle_time,
            });
            match common.format {
                Format::Csv => {
                    write_table(common, "t,u1,e1,e2,y1,y2", &rows)?;
                    if common.out.is_some() {
                        print_report(&metrics);
                    } else {
                        eprintln!("{metrics}");
                    }
                }
                Format::Json => {
                    print_report(&json!({
                        "t": trace.t,
                        "y1": trace.y1,
                        "metrics": metrics,
                    }));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(code) => code,
        Err(Fault(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
