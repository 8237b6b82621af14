//! Pontryagin necessary-condition machinery: Hamiltonian, adjoint ODEs,
//! pointwise optimality condition, and a forward-backward sweep solver for
//! nonzero running costs. Used to cross-validate the grid HJB solutions.

use crate::cost::{CostKind, CostSpec};
use crate::error::{Error, Result};
use crate::long_term::x_infinity_gradient;
use crate::sir::{ControlSchedule, Params, State, Trajectory};
use crate::{long_term, sir};

/// Costates `(lambda1, lambda2)` for `(x, y)`.
#[derive(Debug, Clone, Copy)]
pub struct AdjointState {
    pub lambda1: f64,
    pub lambda2: f64,
}

/// `H = -l1 g s y x + l2 g y (s x - 1) + L(x, y, s)`.
pub fn hamiltonian(s: State, sigma: f64, adj: AdjointState, p: &Params, cost: &CostSpec) -> f64 {
    let g = p.gamma;
    -adj.lambda1 * g * sigma * s.y * s.x
        + adj.lambda2 * g * s.y * (sigma * s.x - 1.0)
        + cost.running(s.x, s.y, sigma, p.sigma0)
}

/// `(dl1/dt, dl2/dt) = (-dH/dx, -dH/dy)`.
pub fn adjoint_derivative(
    s: State,
    adj: AdjointState,
    sigma: f64,
    p: &Params,
    cost: &CostSpec,
) -> (f64, f64) {
    let g = p.gamma;
    let diff = adj.lambda1 - adj.lambda2;
    let dl1 = diff * g * sigma * s.y - cost.d_dx();
    let dl2 = diff * g * sigma * s.x + adj.lambda2 * g - cost.d_dy(s.y);
    (dl1, dl2)
}

/// Terminal costates from the gradient of the terminal payoff `-x_inf`:
/// `l2(T) = sigma0 x_inf / (1 - sigma0 x_inf)` and
/// `l1(T) = (1 - 1/(x(T) sigma0)) l2(T)`.
///
/// Errors near the herd-immunity corner where the gradient is singular.
pub fn terminal_adjoint(s_end: State, sigma0: f64) -> Result<AdjointState> {
    let grad = x_infinity_gradient(s_end.x, s_end.y, sigma0)?;
    Ok(AdjointState {
        lambda1: -grad.d_dx,
        lambda2: -grad.d_dy,
    })
}

/// Pointwise minimizer of the Hamiltonian in `sigma`.
///
/// For quadratic costs the stationarity condition gives
/// `sigma_hat = sigma0 (1 - sigma0 gamma x y (l2 - l1) / (2 c2))`,
/// clamped to `[0, sigma0]`. For zero cost (or `c2 = 0`) the rule is
/// bang-bang: `0` when `l1 < l2`, `sigma0` when `l1 > l2`.
pub fn pointwise_optimal_sigma(
    s: State,
    adj: AdjointState,
    p: &Params,
    cost: &CostSpec,
) -> f64 {
    if cost.kind == CostKind::Zero || cost.c2 == 0.0 {
        return if adj.lambda1 < adj.lambda2 { 0.0 } else { p.sigma0 };
    }
    let raw = p.sigma0
        * (1.0
            - p.sigma0 * p.gamma * s.x * s.y * (adj.lambda2 - adj.lambda1) / (2.0 * cost.c2));
    raw.clamp(0.0, p.sigma0)
}

/// Converged output of the forward-backward sweep.
#[derive(Debug, Clone)]
pub struct SweepSolution {
    /// Shared time mesh for states, costates, and control.
    pub times: Vec<f64>,
    pub states: Vec<State>,
    pub adjoints: Vec<AdjointState>,
    pub sigmas: Vec<f64>,
    /// Control as a schedule (mesh samples, linear interpolation).
    pub schedule: ControlSchedule,
    pub trajectory: Trajectory,
    /// `J = -c1 x_inf(x(T), y(T)) + integral of L`.
    pub objective: f64,
    pub running_cost: f64,
    pub iterations: usize,
    /// Control residual per iteration.
    pub residuals: Vec<f64>,
    /// Objective per iteration (after each forward pass).
    pub objective_history: Vec<f64>,
}

struct Mesh {
    n: usize,
    dt: f64,
}

impl Mesh {
    fn t(&self, i: usize) -> f64 {
        i as f64 * self.dt
    }
}

/// Forward pass at half-step resolution: returns states at `0, dt/2, dt, ...`
/// (length `2n + 1`). The control is linearly interpolated on the mesh.
fn forward_pass(s0: State, p: &Params, mesh: &Mesh, sigmas: &[f64]) -> Result<Vec<State>> {
    let sigma_at = |t: f64| -> f64 {
        let pos = (t / mesh.dt).clamp(0.0, (mesh.n) as f64);
        let i = (pos.floor() as usize).min(mesh.n - 1);
        let w = pos - i as f64;
        sigmas[i] * (1.0 - w) + sigmas[i + 1] * w
    };
    let traj = sir::integrate_with(s0, p, |t, _| sigma_at(t), mesh.n as f64 * mesh.dt, mesh.dt / 2.0)?;
    Ok(traj.states)
}

/// Backward pass for the costates on the mesh, RK4 with state values taken
/// from the half-step forward storage.
fn backward_pass(
    half_states: &[State],
    sigmas: &[f64],
    p: &Params,
    cost: &CostSpec,
    mesh: &Mesh,
    terminal: AdjointState,
) -> Vec<AdjointState> {
    let n = mesh.n;
    let dt = mesh.dt;
    let mut adj = vec![terminal; n + 1];
    for i in (0..n).rev() {
        let l = adj[i + 1];
        let s_hi = half_states[2 * i + 2];
        let s_mid = half_states[2 * i + 1];
        let s_lo = half_states[2 * i];
        let sig_hi = sigmas[i + 1];
        let sig_mid = 0.5 * (sigmas[i] + sigmas[i + 1]);
        let sig_lo = sigmas[i];

        let f = |s: State, a: AdjointState, sig: f64| adjoint_derivative(s, a, sig, p, cost);
        let k1 = f(s_hi, l, sig_hi);
        let l2 = AdjointState {
            lambda1: l.lambda1 - 0.5 * dt * k1.0,
            lambda2: l.lambda2 - 0.5 * dt * k1.1,
        };
        let k2 = f(s_mid, l2, sig_mid);
        let l3 = AdjointState {
            lambda1: l.lambda1 - 0.5 * dt * k2.0,
            lambda2: l.lambda2 - 0.5 * dt * k2.1,
        };
        let k3 = f(s_mid, l3, sig_mid);
        let l4 = AdjointState {
            lambda1: l.lambda1 - dt * k3.0,
            lambda2: l.lambda2 - dt * k3.1,
        };
        let k4 = f(s_lo, l4, sig_lo);
        adj[i] = AdjointState {
            lambda1: l.lambda1 - dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            lambda2: l.lambda2 - dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        };
    }
    adj
}

fn trapezoid_cost(states: &[State], sigmas: &[f64], cost: &CostSpec, p: &Params, dt: f64) -> f64 {
    let l: Vec<f64> = states
        .iter()
        .zip(sigmas)
        .map(|(s, &sig)| cost.running(s.x, s.y, sig, p.sigma0))
        .collect();
    let mut sum = 0.0;
    for i in 0..l.len() - 1 {
        sum += 0.5 * (l[i] + l[i + 1]) * dt;
    }
    sum
}

/// Fixed-point iteration: integrate the state forward under the current
/// control, integrate the costates backward from the terminal condition,
/// then relax the control toward the pointwise minimizer
/// (`sigma <- (1 - w) sigma + w sigma_hat`, `w = 0.3`, halved whenever the
/// objective rises). Converged when `max_t |sigma_new - sigma_old|
/// <= 1e-6 sigma0`.
///
/// For `kind = zero` the bang-bang rule is relaxed the same way; this is
/// best-effort only and [`crate::analytic`] is the authoritative solver
/// there.
pub fn forward_backward_sweep(
    s0: State,
    p: &Params,
    cost: &CostSpec,
    horizon: f64,
    dt: f64,
) -> Result<SweepSolution> {
    forward_backward_sweep_with(s0, p, cost, horizon, dt, SweepOptions::default())
}

/// Tuning knobs for the sweep. Small cost weights make the pointwise
/// control update nearly discontinuous, and the fixed-point iteration then
/// needs heavier damping and a larger iteration budget.
#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub max_iter: usize,
    /// Initial relaxation weight.
    pub omega: f64,
    /// Damping floor; the weight never drops below this.
    pub omega_min: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            max_iter: 500,
            omega: 0.3,
            omega_min: 1e-3,
        }
    }
}

pub fn forward_backward_sweep_with(
    s0: State,
    p: &Params,
    cost: &CostSpec,
    horizon: f64,
    dt: f64,
    opts: SweepOptions,
) -> Result<SweepSolution> {
    let sigma0 = p.sigma0;
    forward_backward_sweep_from(s0, p, cost, horizon, dt, opts, |_| sigma0)
}

/// Like [`forward_backward_sweep_with`], but starts the fixed-point iteration
/// from a caller-supplied control guess `init(t)` instead of `sigma = sigma0`.
///
/// The iteration converges to a solution of the first-order necessary
/// conditions. These problems can admit several such extremals (e.g. a
/// mitigated-epidemic branch and a hold-until-the-horizon suppression branch
/// with different objective values); when they do, the initial guess selects
/// which basin the iteration lands in.
pub fn forward_backward_sweep_from(
    s0: State,
    p: &Params,
    cost: &CostSpec,
    horizon: f64,
    dt: f64,
    opts: SweepOptions,
    init: impl Fn(f64) -> f64,
) -> Result<SweepSolution> {
    cost.validate()?;
    if !(horizon > 0.0 && dt > 0.0 && dt < horizon) {
        return Err(Error::Validation(format!(
            "need 0 < dt < horizon (dt={dt}, horizon={horizon})"
        )));
    }
    let n = (horizon / dt).round().max(2.0) as usize;
    let mesh = Mesh {
        n,
        dt: horizon / n as f64,
    };

    let max_iter = opts.max_iter;
    let tol = 1e-6 * p.sigma0;
    // Relaxation weight: halved when the objective rises, damping the
    // oscillation of plain substitution around the fixed point.
    let mut omega: f64 = opts.omega;
    let mut sigmas: Vec<f64> = (0..=n)
        .map(|i| init(mesh.t(i)).clamp(0.0, p.sigma0))
        .collect();
    let mut residuals = Vec::new();
    let mut objective_history: Vec<f64> = Vec::new();
    let mut half_states = forward_pass(s0, p, &mesh, &sigmas)?;
    let mut converged = false;
    let mut iterations = 0;

    for iter in 0..max_iter {
        iterations = iter + 1;
        let mesh_states: Vec<State> = (0..=n).map(|i| half_states[2 * i]).collect();
        let objective = objective_of(&mesh_states, &sigmas, p, cost, mesh.dt)?;
        if let Some(&prev) = objective_history.last() {
            if objective > prev + 1e-12 {
                omega = (omega * 0.5).max(opts.omega_min);
            }
        }
        // A residual that has not shrunk at all over the last few
        // iterations signals a limit cycle of the relaxed iteration; damp
        // it even when the objective looks flat.
        if residuals.len() >= 4 && {
            let r = &residuals[residuals.len() - 4..];
            r[3] >= r[0]
        } {
            omega = (omega * 0.5).max(opts.omega_min);
        }
        objective_history.push(objective);

        let terminal = terminal_adjoint(mesh_states[n], p.sigma0)?;
        let terminal = AdjointState {
            lambda1: cost.c1 * terminal.lambda1,
            lambda2: cost.c1 * terminal.lambda2,
        };
        let adjoints = backward_pass(&half_states, &sigmas, p, cost, &mesh, terminal);

        let mut residual: f64 = 0.0;
        for i in 0..=n {
            let target = pointwise_optimal_sigma(mesh_states[i], adjoints[i], p, cost);
            let updated = (1.0 - omega) * sigmas[i] + omega * target;
            residual = residual.max((updated - sigmas[i]).abs());
            sigmas[i] = updated;
        }
        residuals.push(residual);
        half_states = forward_pass(s0, p, &mesh, &sigmas)?;
        if residual <= tol {
            converged = true;
            break;
        }
    }

    if !converged {
        return Err(Error::NonConvergence {
            iterations,
            last_residual: *residuals.last().unwrap(),
            residuals,
        });
    }

    let mesh_states: Vec<State> = (0..=n).map(|i| half_states[2 * i]).collect();
    let terminal = terminal_adjoint(mesh_states[n], p.sigma0)?;
    let terminal = AdjointState {
        lambda1: cost.c1 * terminal.lambda1,
        lambda2: cost.c1 * terminal.lambda2,
    };
    let adjoints = backward_pass(&half_states, &sigmas, p, cost, &mesh, terminal);
    let running_cost = trapezoid_cost(&mesh_states, &sigmas, cost, p, mesh.dt);
    let end = mesh_states[n];
    let objective = -cost.c1 * long_term::x_infinity(end.x, end.y, p.sigma0)? + running_cost;

    let schedule = ControlSchedule::sampled(sigmas.clone(), mesh.dt, p.sigma0, 0.0, true)?;
    let trajectory = Trajectory {
        times: (0..=n).map(|i| mesh.t(i)).collect(),
        states: mesh_states.clone(),
        sigmas: sigmas.clone(),
    };

    Ok(SweepSolution {
        times: (0..=n).map(|i| mesh.t(i)).collect(),
        states: mesh_states,
        adjoints,
        sigmas,
        schedule,
        trajectory,
        objective,
        running_cost,
        iterations,
        residuals,
        objective_history,
    })
}

fn objective_of(
    states: &[State],
    sigmas: &[f64],
    p: &Params,
    cost: &CostSpec,
    dt: f64,
) -> Result<f64> {
    let end = *states.last().unwrap();
    Ok(-cost.c1 * long_term::x_infinity(end.x, end.y, p.sigma0)?
        + trapezoid_cost(states, sigmas, cost, p, dt))
}

/// Objective of an arbitrary schedule, by direct integration; the baseline
/// comparison for sweep results.
pub fn schedule_objective(
    s0: State,
    schedule: &ControlSchedule,
    p: &Params,
    cost: &CostSpec,
    horizon: f64,
    dt: f64,
) -> Result<f64> {
    let traj = sir::integrate(s0, schedule, p, horizon, dt)?;
    let running = trapezoid_cost(&traj.states, &traj.sigmas, cost, p, dt);
    let end = traj.last_state();
    Ok(-cost.c1 * long_term::x_infinity(end.x, end.y, p.sigma0)? + running)
}

// Used by trajectory synthesis in the HJB module as well.
pub(crate) fn trapezoid_running_cost(traj: &Trajectory, cost: &CostSpec, p: &Params) -> f64 {
    let mut sum = 0.0;
    for i in 0..traj.len() - 1 {
        let l0 = cost.running(traj.states[i].x, traj.states[i].y, traj.sigmas[i], p.sigma0);
        let l1 = cost.running(
            traj.states[i + 1].x,
            traj.states[i + 1].y,
            traj.sigmas[i + 1],
            p.sigma0,
        );
        sum += 0.5 * (l0 + l1) * (traj.times[i + 1] - traj.times[i]);
    }
    sum
}
