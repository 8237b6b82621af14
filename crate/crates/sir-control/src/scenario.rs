//! Scenario configuration files, shipped presets, solver orchestration,
//! comparison reports, and CSV emission.
//!
//! Config format: flat UTF-8 `key = value` lines with `#` comments.
//! Recognized keys:
//!
//! | key                   | meaning                                      |
//! |-----------------------|----------------------------------------------|
//! | `name`                | label used in reports and output file names  |
//! | `gamma`, `sigma0`     | model parameters (required)                  |
//! | `x0`, `y0`            | initial state (required)                     |
//! | `horizon`             | intervention window length in days (required)|
//! | `dt`                  | integration step (default 0.01)              |
//! | `cost`                | `zero`, `quadratic`, `quadratic_plus_hospital`|
//! | `c1`, `c2`, `c3`, `y_max` | cost coefficients                        |
//! | `sigma_min`           | control floor (default 0)                    |
//! | `solver`              | `analytic`, `sweep`, `hjb`, or `all`         |
//! | `grid_nx`, `grid_ny`  | HJB grid size (default 200 x 200)            |
//! | `population`, `alpha`, `eta`, `epsilon`, `life_days` | epidemic-costing |
//! |                       | calibration; derives `c1..c3` and `y_max`    |
//!
//! The calibration block and explicit cost coefficients are mutually
//! exclusive. Unknown keys are rejected with their line number.

use crate::cost::{CostKind, CostSpec};
use crate::error::{Error, Result};
use crate::long_term::x_infinity;
use crate::pmp::{self, trapezoid_running_cost};
use crate::sir::{self, ControlSchedule, Params, State, Trajectory};
use crate::{analytic, hjb};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    Analytic,
    Sweep,
    Hjb,
    All,
}

impl SolverChoice {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(SolverChoice::Analytic),
            "sweep" => Ok(SolverChoice::Sweep),
            "hjb" => Ok(SolverChoice::Hjb),
            "all" => Ok(SolverChoice::All),
            other => Err(Error::Validation(format!(
                "unknown solver '{other}' (expected analytic, sweep, hjb, or all)"
            ))),
        }
    }

    fn members(self) -> Vec<SolverChoice> {
        match self {
            SolverChoice::All => vec![SolverChoice::Analytic, SolverChoice::Sweep, SolverChoice::Hjb],
            one => vec![one],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SolverChoice::Analytic => "analytic",
            SolverChoice::Sweep => "sweep",
            SolverChoice::Hjb => "hjb",
            SolverChoice::All => "all",
        }
    }
}

/// Population-scaled cost calibration. The running-cost coefficients follow
/// from the fatality ratios, the value of lost activity, and hospital
/// capacity; the terminal weight is the population itself, so the terminal
/// objective is the scaled attack rate.
#[derive(Debug, Clone, Copy)]
pub struct CovidCalibration {
    /// Population size; 1 gives per-capita costs.
    pub population: f64,
    /// Infection fatality ratio.
    pub alpha: f64,
    /// Added fatality ratio without hospital care.
    pub eta: f64,
    /// Relative value lost per person per day of full isolation.
    pub epsilon: f64,
    /// Remaining life expectancy in days used to price a death.
    pub life_days: f64,
}

impl CovidCalibration {
    pub fn costs(&self) -> CostSpec {
        let n = self.population;
        // The terminal objective is the population-scaled attack rate
        // `n * z_inf`; `alpha` converts that to expected deaths only when
        // interpreting a report. Folding `alpha` into the optimization
        // weight instead would shrink the terminal term to the point where
        // the within-horizon overflow penalty dominates, and the optimal
        // policy degenerates to "hold the epidemic until the horizon and
        // let it run afterwards" — not the mitigation regime these
        // scenarios describe.
        CostSpec::quadratic_plus_hospital(n * self.epsilon / self.life_days, n * self.eta, 0.02 * n)
            .with_terminal_scale(n)
    }
}

#[derive(Debug, Clone)]
pub struct GridSettings {
    pub nx: usize,
    pub ny: usize,
}

#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub name: String,
    pub params: Params,
    pub s0: State,
    pub horizon: f64,
    pub dt: f64,
    pub cost: CostSpec,
    pub sigma_min: f64,
    pub solver: SolverChoice,
    pub grid: GridSettings,
    pub calibration: Option<CovidCalibration>,
    pub output: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.cost.validate()?;
        if !(self.horizon > 0.0) {
            return Err(Error::Validation(format!(
                "horizon must be > 0, got {}",
                self.horizon
            )));
        }
        if !(self.dt > 0.0 && self.dt < self.horizon) {
            return Err(Error::Validation(format!(
                "need 0 < dt < horizon, got dt = {}",
                self.dt
            )));
        }
        if !(0.0..=self.params.sigma0).contains(&self.sigma_min) {
            return Err(Error::Validation(format!(
                "sigma_min must lie in [0, sigma0], got {}",
                self.sigma_min
            )));
        }
        if self.solver == SolverChoice::Analytic && self.cost.kind != CostKind::Zero {
            return Err(Error::Validation(
                "solver = analytic requires cost = zero (the closed-form optimum ignores running cost)"
                    .into(),
            ));
        }
        Ok(())
    }
}

const PRESETS: &[(&str, &str)] = &[
    ("example1", include_str!("../presets/example1.conf")),
    ("diff_time_opt", include_str!("../presets/diff_time_opt.conf")),
    ("example_2", include_str!("../presets/example_2.conf")),
    ("two_controls", include_str!("../presets/two_controls.conf")),
    ("varying_c2", include_str!("../presets/varying_c2.conf")),
    ("min_hosp_1", include_str!("../presets/min_hosp_1.conf")),
    ("min_hosp_2", include_str!("../presets/min_hosp_2.conf")),
    ("covid_baseline", include_str!("../presets/covid_baseline.conf")),
    ("covid_severe", include_str!("../presets/covid_severe.conf")),
    ("covid_relaxed", include_str!("../presets/covid_relaxed.conf")),
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

pub fn load_preset(name: &str) -> Result<ScenarioConfig> {
    let text = PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| {
            Error::Validation(format!(
                "unknown preset '{name}' (available: {})",
                preset_names().join(", ")
            ))
        })?;
    parse_scenario(text, &format!("<preset {name}>"))
}

pub fn load_scenario(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scenario(&text, &path.display().to_string())
}

const KNOWN_KEYS: &[&str] = &[
    "name", "gamma", "sigma0", "x0", "y0", "horizon", "dt", "cost", "c1", "c2", "c3", "y_max",
    "sigma_min", "solver", "grid_nx", "grid_ny", "population", "alpha", "eta", "epsilon",
    "life_days",
];

const CALIBRATION_KEYS: &[&str] = &["alpha", "eta", "epsilon"];
const EXPLICIT_COST_KEYS: &[&str] = &["cost", "c1", "c2", "c3", "y_max"];

pub fn parse_scenario(text: &str, source: &str) -> Result<ScenarioConfig> {
    let perr = |line: usize, msg: String| Error::Parse {
        path: source.to_string(),
        line,
        msg,
    };
    let mut map: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| perr(line_no, format!("expected 'key = value', got '{line}'")))?;
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(perr(line_no, format!("unknown key '{key}'")));
        }
        if let Some((prev, _)) = map.insert(key, (line_no, value)) {
            return Err(perr(line_no, format!("duplicate key '{key}' (first at line {prev})")));
        }
    }

    let get_f64 = |key: &str| -> Result<Option<f64>> {
        match map.get(key) {
            None => Ok(None),
            Some(&(line, v)) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| perr(line, format!("'{key}' must be a number, got '{v}'"))),
        }
    };
    let require_f64 = |key: &str| -> Result<f64> {
        get_f64(key)?.ok_or_else(|| perr(0, format!("missing required key '{key}'")))
    };

    let gamma = require_f64("gamma")?;
    let sigma0 = require_f64("sigma0")?;
    let params = Params::new(gamma, sigma0)?;
    let s0 = State::new(require_f64("x0")?, require_f64("y0")?)?;
    let horizon = require_f64("horizon")?;
    let dt = get_f64("dt")?.unwrap_or(0.01);
    let sigma_min = get_f64("sigma_min")?.unwrap_or(0.0);

    let has_calib = CALIBRATION_KEYS.iter().any(|k| map.contains_key(k));
    let has_explicit = EXPLICIT_COST_KEYS.iter().any(|k| map.contains_key(k));
    if has_calib && has_explicit {
        let key = EXPLICIT_COST_KEYS.iter().find(|k| map.contains_key(*k)).unwrap();
        let line = map[*key].0;
        return Err(perr(
            line,
            format!("'{key}' conflicts with the alpha/eta/epsilon calibration block"),
        ));
    }

    let (cost, calibration) = if has_calib {
        let missing = CALIBRATION_KEYS.iter().find(|k| !map.contains_key(*k));
        if let Some(k) = missing {
            return Err(perr(0, format!("calibration block is missing '{k}'")));
        }
        let calib = CovidCalibration {
            population: get_f64("population")?.unwrap_or(1.0),
            alpha: require_f64("alpha")?,
            eta: require_f64("eta")?,
            epsilon: require_f64("epsilon")?,
            life_days: get_f64("life_days")?.unwrap_or(1e4),
        };
        (calib.costs(), Some(calib))
    } else {
        let kind = map.get("cost").map(|&(_, v)| v).unwrap_or("zero");
        let c1 = get_f64("c1")?.unwrap_or(1.0);
        let cost = match kind {
            "zero" => CostSpec::zero(),
            "quadratic" => CostSpec::quadratic(require_f64("c2")?),
            "quadratic_plus_hospital" => CostSpec::quadratic_plus_hospital(
                require_f64("c2")?,
                require_f64("c3")?,
                require_f64("y_max")?,
            ),
            other => {
                let line = map["cost"].0;
                return Err(perr(line, format!("unknown cost kind '{other}'")));
            }
        };
        (cost.with_terminal_scale(c1), None)
    };

    let solver = match map.get("solver") {
        Some(&(line, v)) => SolverChoice::parse(v).map_err(|e| perr(line, e.to_string()))?,
        None => SolverChoice::Analytic,
    };
    let grid_dim = |key: &str, default: usize| -> Result<usize> {
        match map.get(key) {
            None => Ok(default),
            Some(&(line, v)) => v
                .parse::<usize>()
                .map_err(|_| perr(line, format!("'{key}' must be a positive integer"))),
        }
    };
    let grid = GridSettings {
        nx: grid_dim("grid_nx", 200)?,
        ny: grid_dim("grid_ny", 200)?,
    };
    let name = map
        .get("name")
        .map(|&(_, v)| v.to_string())
        .unwrap_or_else(|| "scenario".to_string());

    let config = ScenarioConfig {
        name,
        params,
        s0,
        horizon,
        dt,
        cost,
        sigma_min,
        solver,
        grid,
        calibration: None,
        output: None,
    };
    let config = ScenarioConfig { calibration, ..config };
    config.validate()?;
    Ok(config)
}

/// Per-solver results in a comparison run.
#[derive(Debug, Clone)]
pub struct SolverReport {
    pub solver: String,
    /// "ok" or an error description; other fields are meaningless unless ok.
    pub status: String,
    pub x_inf: f64,
    pub z_inf: f64,
    pub objective: f64,
    pub running_cost: f64,
    pub peak_y: f64,
    pub peak_y_time: f64,
    pub hospital_excess: f64,
    pub min_sigma: f64,
    pub min_sigma_time: f64,
    pub wall_seconds: f64,
}

impl SolverReport {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    fn failed(solver: &str, err: &Error) -> Self {
        SolverReport {
            solver: solver.to_string(),
            status: format!("error: {err}"),
            x_inf: f64::NAN,
            z_inf: f64::NAN,
            objective: f64::NAN,
            running_cost: f64::NAN,
            peak_y: f64::NAN,
            peak_y_time: f64::NAN,
            hospital_excess: f64::NAN,
            min_sigma: f64::NAN,
            min_sigma_time: f64::NAN,
            wall_seconds: 0.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub scenario: String,
    pub reports: Vec<SolverReport>,
    /// Populated when the run wrote trajectory files.
    pub outputs: Vec<PathBuf>,
    /// Cross-solver consistency warnings (e.g. analytic vs grid mismatch).
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn get(&self, solver: &str) -> Option<&SolverReport> {
        self.reports.iter().find(|r| r.solver == solver)
    }

    /// Human-readable summary followed by a machine-readable
    /// `[report]` block of `solver.field = value` lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario: {}", self.scenario);
        for r in &self.reports {
            let _ = writeln!(out, "-- {} ({})", r.solver, r.status);
            if r.is_ok() {
                let _ = writeln!(
                    out,
                    "   x_inf = {:.6}   z_inf = {:.6}   J = {:.6e}",
                    r.x_inf, r.z_inf, r.objective
                );
                let _ = writeln!(
                    out,
                    "   running cost = {:.6e}   peak y = {:.4} at t = {:.1}",
                    r.running_cost, r.peak_y, r.peak_y_time
                );
                let _ = writeln!(
                    out,
                    "   hospital excess = {:.4}   min sigma = {:.4} at t = {:.1}   wall = {:.2}s",
                    r.hospital_excess, r.min_sigma, r.min_sigma_time, r.wall_seconds
                );
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let _ = writeln!(out, "[report]");
        for r in &self.reports {
            let p = &r.solver;
            let _ = writeln!(out, "{p}.status = {}", r.status);
            if r.is_ok() {
                let _ = writeln!(out, "{p}.x_inf = {:.12e}", r.x_inf);
                let _ = writeln!(out, "{p}.z_inf = {:.12e}", r.z_inf);
                let _ = writeln!(out, "{p}.objective = {:.12e}", r.objective);
                let _ = writeln!(out, "{p}.running_cost = {:.12e}", r.running_cost);
                let _ = writeln!(out, "{p}.peak_y = {:.12e}", r.peak_y);
                let _ = writeln!(out, "{p}.peak_y_time = {:.12e}", r.peak_y_time);
                let _ = writeln!(out, "{p}.hospital_excess = {:.12e}", r.hospital_excess);
                let _ = writeln!(out, "{p}.min_sigma = {:.12e}", r.min_sigma);
                let _ = writeln!(out, "{p}.min_sigma_time = {:.12e}", r.min_sigma_time);
                let _ = writeln!(out, "{p}.wall_seconds = {:.3}", r.wall_seconds);
            }
        }
        out
    }
}

fn report_from_trajectory(
    solver: &str,
    traj: &Trajectory,
    config: &ScenarioConfig,
    wall: f64,
) -> Result<SolverReport> {
    let p = &config.params;
    let cost = &config.cost;
    let end = traj.last_state();
    let x_inf = x_infinity(end.x.max(0.0), end.y.max(0.0), p.sigma0)?;
    let running_cost = trapezoid_running_cost(traj, cost, p);
    let (peak_y_time, peak_y) = traj.peak_y();
    let mut min_sigma = f64::INFINITY;
    let mut min_sigma_time = 0.0;
    for (t, sig) in traj.times.iter().zip(&traj.sigmas) {
        if *sig < min_sigma {
            min_sigma = *sig;
            min_sigma_time = *t;
        }
    }
    let hospital_excess = traj
        .states
        .iter()
        .map(|s| (s.y - cost.y_max).max(0.0))
        .fold(0.0f64, f64::max);
    Ok(SolverReport {
        solver: solver.to_string(),
        status: "ok".to_string(),
        x_inf,
        z_inf: 1.0 - x_inf,
        objective: -cost.c1 * x_inf + running_cost,
        running_cost,
        peak_y,
        peak_y_time,
        hospital_excess: if cost.kind == CostKind::QuadraticPlusHospital {
            hospital_excess
        } else {
            0.0
        },
        min_sigma,
        min_sigma_time,
        wall_seconds: wall,
    })
}

fn run_one(
    choice: SolverChoice,
    config: &ScenarioConfig,
) -> Result<(Trajectory, ControlSchedule)> {
    let p = &config.params;
    match choice {
        SolverChoice::Analytic => {
            let sol = if config.sigma_min > 0.0 {
                analytic::optimal_bang_bang_floored(config.s0, p, config.horizon, config.sigma_min)?
            } else {
                analytic::optimal_bang_bang(config.s0, p, config.horizon)?
            };
            let schedule = sol.schedule()?;
            let traj = sir::integrate(config.s0, &schedule, p, config.horizon, config.dt)?;
            Ok((traj, schedule))
        }
        SolverChoice::Sweep => {
            let sol = pmp::forward_backward_sweep(config.s0, p, &config.cost, config.horizon, {
                // The sweep mesh does not need the fine reporting step.
                config.dt.max(0.05)
            })?;
            Ok((sol.trajectory, sol.schedule))
        }
        SolverChoice::Hjb => {
            let grid = hjb::Grid::new(config.grid.nx, config.grid.ny)?;
            let sol = hjb::solve(&grid, p, &config.cost, config.horizon, Some(0.5))?;
            let syn = hjb::synthesize_trajectory(
                &sol.policy,
                config.s0,
                p,
                &config.cost,
                config.horizon,
                config.dt,
            )?;
            Ok((syn.trajectory, syn.schedule))
        }
        SolverChoice::All => unreachable!("expanded by the caller"),
    }
}

/// Execute the scenario: the uncontrolled baseline plus every requested
/// solver. Solver failures yield a report entry with an error status
/// instead of aborting the whole run. Trajectory CSVs are written when
/// `config.output` is set.
pub fn run(config: &ScenarioConfig) -> Result<RunReport> {
    config.validate()?;
    let p = &config.params;
    let mut reports = Vec::new();
    let mut outputs = Vec::new();
    let mut x_inf_by_solver: BTreeMap<String, f64> = BTreeMap::new();

    let mut emit = |name: &str, traj: &Trajectory, sched: &ControlSchedule, p: &Params| -> Result<()> {
        if let Some(dir) = &config.output {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            let path = dir.join(format!("{}_{name}.csv", config.name));
            emit_csv(traj, sched, p, &path)?;
            outputs.push(path);
        }
        Ok(())
    };

    // Baseline: no control.
    let t0 = Instant::now();
    let baseline_sched = ControlSchedule::constant(p.sigma0, config.horizon, p.sigma0)?;
    let baseline = sir::integrate(config.s0, &baseline_sched, p, config.horizon, config.dt)?;
    let rep = report_from_trajectory("baseline", &baseline, config, t0.elapsed().as_secs_f64())?;
    x_inf_by_solver.insert("baseline".into(), rep.x_inf);
    reports.push(rep);
    emit("baseline", &baseline, &baseline_sched, p)?;

    for choice in config.solver.members() {
        let label = choice.as_str();
        if choice == SolverChoice::Analytic && config.cost.kind != CostKind::Zero {
            // In an `all` run with running costs the closed form does not
            // apply; skip it rather than reporting a misleading number.
            continue;
        }
        let t0 = Instant::now();
        match run_one(choice, config) {
            Ok((traj, sched)) => {
                let rep = report_from_trajectory(label, &traj, config, t0.elapsed().as_secs_f64())?;
                x_inf_by_solver.insert(label.into(), rep.x_inf);
                reports.push(rep);
                emit(label, &traj, &sched, p)?;
            }
            Err(e) => reports.push(SolverReport::failed(label, &e)),
        }
    }

    let mut warnings = Vec::new();
    if config.cost.kind == CostKind::Zero {
        if let (Some(&a), Some(&h)) = (x_inf_by_solver.get("analytic"), x_inf_by_solver.get("hjb"))
        {
            if (a - h).abs() > 5e-3 {
                warnings.push(format!(
                    "analytic and hjb disagree on x_inf beyond 5e-3: {a:.6} vs {h:.6}"
                ));
            }
        }
    }

    Ok(RunReport {
        scenario: config.name.clone(),
        reports,
        outputs,
        warnings,
    })
}

/// Trajectory CSV with columns exactly
/// `t,x,y,z,sigma,sigma_over_sigma0,x_inf_current`, 12 significant digits.
pub fn emit_csv(
    traj: &Trajectory,
    schedule: &ControlSchedule,
    p: &Params,
    path: &Path,
) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(f);
    w.write_all(b"t,x,y,z,sigma,sigma_over_sigma0,x_inf_current\n")
        .map_err(|e| Error::io(path, e))?;
    for i in 0..traj.len() {
        let t = traj.times[i];
        let s = traj.states[i];
        let sigma = schedule.sigma_at(t);
        let x_inf = x_infinity(s.x.max(0.0), s.y.max(0.0), p.sigma0)?;
        let line = format!(
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}\n",
            t,
            s.x,
            s.y,
            s.recovered(),
            sigma,
            sigma / p.sigma0,
            x_inf
        );
        w.write_all(line.as_bytes()).map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

/// Parse a file produced by [`emit_csv`] back into columns.
pub fn read_trajectory_csv(path: &Path) -> Result<Vec<[f64; 7]>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 {
            if line != "t,x,y,z,sigma,sigma_over_sigma0,x_inf_current" {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    line: 1,
                    msg: format!("unexpected header '{line}'"),
                });
            }
            continue;
        }
        let mut row = [0.0; 7];
        let mut count = 0;
        for (i, field) in line.split(',').enumerate() {
            if i >= 7 {
                count = 8;
                break;
            }
            row[i] = field.parse::<f64>().map_err(|_| Error::Parse {
                path: path.display().to_string(),
                line: idx + 1,
                msg: format!("bad number '{field}'"),
            })?;
            count = i + 1;
        }
        if count != 7 {
            return Err(Error::Parse {
                path: path.display().to_string(),
                line: idx + 1,
                msg: format!("expected 7 columns, got {count}"),
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

/// One row of a 1-D parameter study.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    pub report: SolverReport,
}

/// Re-run the scenario once per parameter value, overriding `param` each
/// time. Supported parameters: `c2`, `c3`, `y_max`, `horizon`, `sigma_min`,
/// `sigma0`.
pub fn sweep_param(config: &ScenarioConfig, param: &str, values: &[f64]) -> Result<Vec<SweepRow>> {
    if values.is_empty() {
        return Err(Error::Validation("sweep needs at least one value".into()));
    }
    let solver_label = match config.solver {
        SolverChoice::All => {
            return Err(Error::Validation(
                "sweep-param requires a single solver, not 'all'".into(),
            ))
        }
        one => one.as_str(),
    };
    let mut rows = Vec::new();
    for &v in values {
        let mut c = config.clone();
        c.output = None;
        match param {
            "c2" => c.cost.c2 = v,
            "c3" => c.cost.c3 = v,
            "y_max" => c.cost.y_max = v,
            "horizon" => c.horizon = v,
            "sigma_min" => c.sigma_min = v,
            "sigma0" => c.params = Params::new(c.params.gamma, v)?,
            other => {
                return Err(Error::Validation(format!(
                    "unsupported sweep parameter '{other}'"
                )))
            }
        }
        c.validate()?;
        let t0 = Instant::now();
        let report = match run_one(config.solver, &c) {
            Ok((traj, _)) => {
                report_from_trajectory(solver_label, &traj, &c, t0.elapsed().as_secs_f64())?
            }
            Err(e) => SolverReport::failed(solver_label, &e),
        };
        rows.push(SweepRow { value: v, report });
    }
    Ok(rows)
}

/// Text table for a parameter study.
pub fn render_sweep(param: &str, rows: &[SweepRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>12}  {:>14}  {:>14}  {:>10}  {:>10}  status",
        param, "x_inf", "objective", "peak_y", "min_sigma"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>12.6}  {:>14.8}  {:>14.6e}  {:>10.4}  {:>10.4}  {}",
            r.value,
            r.report.x_inf,
            r.report.objective,
            r.report.peak_y,
            r.report.min_sigma,
            r.report.status
        );
    }
    out
}
