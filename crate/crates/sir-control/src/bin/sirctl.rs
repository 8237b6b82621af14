//! Thin CLI over the scenario runner.
//!
//! - `simulate` — forward integration only (the uncontrolled baseline).
//! - `solve` — run one solver on a scenario.
//! - `compare` — run every applicable solver plus the baseline.
//! - `sweep-param` — 1-D parameter study emitting a summary table.
//!
//! Exit codes: 0 success, 1 validation error, 2 solver non-convergence,
//! 3 I/O error.

use clap::{Args, Parser, Subcommand};
use sir_control::error::Error;
use sir_control::scenario::{self, ScenarioConfig, SolverChoice};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sirctl", about = "Optimal intervention controls for the SIR model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Path to a scenario file (key = value lines).
    #[arg(long, conflicts_with = "preset")]
    scenario: Option<PathBuf>,
    /// Name of a built-in preset (see `--preset help`).
    #[arg(long)]
    preset: Option<String>,
    /// Override the scenario's solver: analytic, sweep, hjb, or all.
    #[arg(long)]
    solver: Option<String>,
    /// Directory for trajectory CSV output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the HJB grid size, e.g. 400,400.
    #[arg(long, value_name = "NX,NY")]
    grid: Option<String>,
    /// Override the integration step.
    #[arg(long)]
    dt: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the uncontrolled dynamics and report the outcome.
    Simulate(ScenarioArgs),
    /// Run the scenario's solver (or the --solver override).
    Solve(ScenarioArgs),
    /// Run all applicable solvers plus the no-control baseline.
    Compare(ScenarioArgs),
    /// Re-run the scenario across a sweep of one parameter.
    SweepParam {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Parameter to vary: c2, c3, y_max, horizon, sigma_min, sigma0.
        param: String,
        /// Comma-separated values, e.g. 1e-3,1e-2,1e-1.
        values: String,
    },
}

fn load(args: &ScenarioArgs) -> Result<ScenarioConfig, Error> {
    let mut config = match (&args.scenario, &args.preset) {
        (Some(path), None) => scenario::load_scenario(path)?,
        (None, Some(name)) if name == "help" => {
            return Err(Error::Validation(format!(
                "available presets: {}",
                scenario::preset_names().join(", ")
            )))
        }
        (None, Some(name)) => scenario::load_preset(name)?,
        _ => {
            return Err(Error::Validation(
                "exactly one of --scenario or --preset is required".into(),
            ))
        }
    };
    if let Some(solver) = &args.solver {
        config.solver = SolverChoice::parse(solver)?;
    }
    if let Some(grid) = &args.grid {
        let (nx, ny) = grid
            .split_once(',')
            .ok_or_else(|| Error::Validation(format!("--grid expects NX,NY, got '{grid}'")))?;
        config.grid.nx = nx
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("bad grid size '{nx}'")))?;
        config.grid.ny = ny
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("bad grid size '{ny}'")))?;
    }
    if let Some(dt) = args.dt {
        config.dt = dt;
    }
    config.output = args.out.clone();
    config.validate()?;
    Ok(config)
}

fn parse_values(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Validation(format!("bad sweep value '{v}'")))
        })
        .collect()
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate(args) => {
            let mut config = load(&args)?;
            // Baseline only: the runner always includes it; restrict the
            // solver list to something that will be skipped or cheap.
            config.solver = SolverChoice::Analytic;
            if config.cost.kind == sir_control::CostKind::Zero {
                // Even for zero cost, simulate means baseline only.
                let p = config.params;
                let sched =
                    sir_control::ControlSchedule::constant(p.sigma0, config.horizon, p.sigma0)?;
                let traj = sir_control::sir::integrate(
                    config.s0,
                    &sched,
                    &p,
                    config.horizon,
                    config.dt,
                )?;
                if let Some(dir) = &config.output {
                    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
                    let path = dir.join(format!("{}_baseline.csv", config.name));
                    scenario::emit_csv(&traj, &sched, &p, &path)?;
                    println!("wrote {}", path.display());
                }
                let end = traj.last_state();
                let x_inf =
                    sir_control::long_term::x_infinity(end.x.max(0.0), end.y.max(0.0), p.sigma0)?;
                let (peak_t, peak_y) = traj.peak_y();
                println!("x(T) = {:.6}  y(T) = {:.6e}", end.x, end.y);
                println!("x_inf = {x_inf:.6}  z_inf = {:.6}", 1.0 - x_inf);
                println!("peak y = {peak_y:.4} at t = {peak_t:.1}");
                return Ok(());
            }
            // With running costs, reuse the report machinery baseline.
            let report = scenario::run(&config)?;
            print!("{}", report.render());
            Ok(())
        }
        Command::Solve(args) => {
            let config = load(&args)?;
            if config.solver == SolverChoice::All {
                return Err(Error::Validation(
                    "solve runs one solver; use compare for all of them".into(),
                ));
            }
            let report = scenario::run(&config)?;
            print!("{}", report.render());
            fail_on_solver_error(&report)
        }
        Command::Compare(args) => {
            let mut config = load(&args)?;
            config.solver = SolverChoice::All;
            let report = scenario::run(&config)?;
            print!("{}", report.render());
            fail_on_solver_error(&report)
        }
        Command::SweepParam {
            scenario: args,
            param,
            values,
        } => {
            let config = load(&args)?;
            let values = parse_values(&values)?;
            let rows = scenario::sweep_param(&config, &param, &values)?;
            print!("{}", scenario::render_sweep(&param, &rows));
            if let Some(row) = rows.iter().find(|r| !r.report.is_ok()) {
                return Err(Error::Validation(format!(
                    "sweep value {} failed: {}",
                    row.value, row.report.status
                )));
            }
            Ok(())
        }
    }
}

fn fail_on_solver_error(report: &scenario::RunReport) -> Result<(), Error> {
    for r in &report.reports {
        if !r.is_ok() {
            if r.status.contains("no convergence") {
                return Err(Error::NonConvergence {
                    iterations: 0,
                    last_residual: f64::NAN,
                    residuals: vec![],
                });
            }
            return Err(Error::Validation(format!("{}: {}", r.solver, r.status)));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
