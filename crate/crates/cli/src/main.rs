use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, ValueEnum};
use pricecap::export::{
    write_audit_csv, write_grid_csv, write_lf_csv, write_margin_csv, write_policy_csv, write_tax_csv,
};
use pricecap::oracle::compare;
use pricecap::{
    brute_force_mechanism, check_assumptions, gate, ic_audit, implementing_tax, lf_schedule, lf_welfare, solve,
    summary_block, validate_schedule_csv, ClosedFormLinearUniform, EnvironmentFile, Error, MarketEnvironment,
    SolverSettings, Summary,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Check,
    Lf,
    Gate,
    Solve,
    Audit,
    Oracle,
}

/// Solve for the welfare-maximising price-cap regulation of a monopolist with private costs.
#[derive(Debug, Parser)]
#[command(name = "pricecap", version)]
struct Cli {
    /// Environment file (TOML).
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_enum)]
    command: Command,
    /// Directory for CSV and summary artifacts.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Cost grid size; overrides `solver.grid`.
    #[arg(long)]
    grid: Option<usize>,
    /// Number of coarse exclusion cutoffs; overrides `solver.cbar_grid`.
    #[arg(long)]
    cbar_grid: Option<usize>,
    /// Seed for the brute-force oracle's starting point.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

const TAX_ROWS: usize = 513;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Infeasible(_)) => 2,
        Some(Error::Validation { .. } | Error::Config(_) | Error::Domain { .. } | Error::Io(_)) => 3,
        _ => 1,
    }
}

fn load(cli: &Cli) -> anyhow::Result<(MarketEnvironment, SolverSettings)> {
    let file = EnvironmentFile::load(&cli.config).map_err(|e| match e {
        Error::Io(io) => Error::Config(format!("cannot read {}: {io}", cli.config.display())),
        other => other,
    })?;
    let mut settings = file.solver.clone();
    if let Some(n) = cli.grid {
        settings.grid = n;
    }
    if let Some(n) = cli.cbar_grid {
        settings.cbar_grid = n;
    }
    settings.validate()?;
    Ok((file.environment()?, settings))
}

fn create(dir: &Path, name: &str) -> anyhow::Result<BufWriter<File>> {
    let path = dir.join(name);
    let f = File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn finish(dir: &Path, summary: &Summary) -> anyhow::Result<()> {
    let text = summary.to_string();
    fs::write(dir.join("summary.txt"), &text).context("cannot write summary.txt")?;
    print!("{text}");
    Ok(())
}

fn revalidate(dir: &Path, name: &str) -> anyhow::Result<()> {
    let f = File::open(dir.join(name)).with_context(|| format!("cannot reopen {name}"))?;
    validate_schedule_csv(f).with_context(|| format!("{name} failed re-load validation"))?;
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let (env, settings) = load(cli)?;
    let dir = cli.out.as_path();
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut s = Summary::new();

    match cli.command {
        Command::Check => {
            let r = check_assumptions(&env, settings.assumption_grid);
            for (name, c) in [
                ("revenue_concave", r.revenue_concave),
                ("boundary_limits", r.boundary_limits),
                ("revenue_covers_fixed_cost", r.revenue_covers_fixed_cost),
                ("density_nonincreasing", r.density_nonincreasing),
                ("log_density_concave", r.log_density_concave),
                ("inverse_demand_log_concave", r.inverse_demand_log_concave),
            ] {
                s.push(name, c.passed).push(&format!("{name}_margin"), c.worst_margin);
            }
            s.push("standing_assumptions", r.standing_assumptions_hold())
                .push("prop2_hypotheses", r.prop2_hypotheses());
            finish(dir, &s)?;
            if !r.revenue_covers_fixed_cost.passed {
                return Err(Error::Infeasible("no quantity earns revenue above k".into()).into());
            }
        }
        Command::Lf => {
            let lf = lf_schedule(&env, settings.grid)?;
            write_lf_csv(create(dir, "lf.csv")?, &lf)?;
            revalidate(dir, "lf.csv")?;
            s.push("cutoff_lf", lf.cutoff_lf).push("lf_welfare", lf_welfare(&env)?);
            finish(dir, &s)?;
        }
        Command::Gate => {
            let lf = lf_schedule(&env, settings.grid)?;
            let g = gate(&env, &lf, settings.grid, settings.gate_tol)?;
            write_margin_csv(create(dir, "margin.csv")?, &g)?;
            s.push("gate", if g.lf_optimal { "laissez-faire optimal" } else { "intervention" })
                .push("lf_optimal", g.lf_optimal)
                .push("margin_at_zero", g.margin_at_zero)
                .push("tolerance", g.tolerance_used);
            if let Some(v) = g.worst_violation {
                s.push("worst_violation_at", v.location).push("worst_violation", v.magnitude);
            }
            finish(dir, &s)?;
        }
        Command::Solve => {
            let lf = lf_schedule(&env, settings.grid)?;
            let g = gate(&env, &lf, settings.grid, settings.gate_tol)?;
            let policy = solve(&env, &settings)?;
            let tax = implementing_tax(&env, &policy)?;
            write_policy_csv(create(dir, "policy.csv")?, &policy, &tax)?;
            write_tax_csv(create(dir, "tax.csv")?, &tax, TAX_ROWS)?;
            revalidate(dir, "policy.csv")?;
            revalidate(dir, "tax.csv")?;
            let report = tax.verify_progressive(&env.demand, settings.grid);
            let mut s = summary_block(&env, &policy, g.lf_optimal);
            s.push("progressive", report.progressive());
            finish(dir, &s)?;
        }
        Command::Audit => {
            let policy = solve(&env, &settings)?;
            let tax = implementing_tax(&env, &policy)?;
            let audit = ic_audit(&env, &tax, &policy, settings.grid, settings.price_grid);
            write_audit_csv(create(dir, "audit.csv")?, &audit)?;
            s.push("price_step", audit.price_step)
                .push("max_price_deviation", audit.max_price_deviation)
                .push("worst_cost", audit.worst_cost)
                .push("within_two_steps", audit.within_steps(2.0))
                .push("max_profit_gap", audit.max_profit_gap)
                .push("bunching_mismatches", audit.bunching_mismatches)
                .push("bunching_matches", audit.bunching_matches);
            finish(dir, &s)?;
        }
        Command::Oracle => {
            let policy = solve(&env, &settings)?;
            let grid = brute_force_mechanism(&env, settings.oracle_n, settings.oracle_iters, cli.seed)?;
            write_grid_csv(create(dir, "grid.csv")?, &grid)?;
            revalidate(dir, "grid.csv")?;
            let cmp = compare(&grid, |c| policy.q(&env, c), policy.welfare);
            let mut table = csv::Writer::from_writer(create(dir, "oracle.csv")?);
            table.write_record(["source", "c_bar", "welfare", "max_q_error", "welfare_gap"])?;
            table.write_record(["solver".to_string(), policy.c_bar.to_string(), policy.welfare.to_string(), "0".into(), "0".into()])?;
            table.write_record([
                "brute-force".to_string(),
                cmp.grid_cutoff.to_string(),
                grid.objective.to_string(),
                cmp.max_q_error.to_string(),
                cmp.welfare_gap.to_string(),
            ])?;
            s.push("n", grid.n)
                .push("seed", grid.seed)
                .push("converged", grid.converged)
                .push("solver_welfare", policy.welfare)
                .push("grid_welfare", grid.objective)
                .push("welfare_gap", cmp.welfare_gap)
                .push("max_q_error", cmp.max_q_error);
            if let Ok(cf) = ClosedFormLinearUniform::from_env(&env) {
                let q_err = policy
                    .c
                    .iter()
                    .map(|&c| (cf.q(c) - policy.q(&env, c)).abs())
                    .fold(0.0, f64::max);
                table.write_record([
                    "closed-form".to_string(),
                    cf.c_bar.to_string(),
                    cf.welfare.to_string(),
                    q_err.to_string(),
                    (cf.welfare - policy.welfare).to_string(),
                ])?;
                s.push("closed_form_c_bar", cf.c_bar)
                    .push("closed_form_welfare", cf.welfare)
                    .push("closed_form_max_q_error", q_err);
            }
            table.flush()?;
            finish(dir, &s)?;
        }
    }
    Ok(())
}
