//! Agreement checks between the three solution methods: the closed-form
//! switch construction, the forward-backward costate sweep, and the grid
//! dynamic-programming solver. Each method is implemented independently, so
//! agreement is strong evidence against a shared bug.

use sir_control::analytic;
use sir_control::hjb::{self, Grid};
use sir_control::pmp;
use sir_control::{CostSpec, Params, State};

const GAMMA: f64 = 0.1;
const SIGMA0: f64 = 3.0;

/// Sweep costates at `t = 0` match the value-function gradient at the start
/// state within 5% (the costate is the sensitivity of the optimal objective
/// to the initial state, which is exactly what the grid value encodes).
#[test]
fn costates_match_value_gradient() {
    let p = Params::new(GAMMA, SIGMA0).unwrap();
    let cost = CostSpec::quadratic(1e-1);
    // Interior start state: the finite-difference probe below steps h in
    // every direction and must stay inside the simplex.
    let s0 = State::new(0.8, 0.1).unwrap();
    let horizon = 40.0;

    let sweep = pmp::forward_backward_sweep(s0, &p, &cost, horizon, 0.05).unwrap();
    let lambda0 = sweep.adjoints[0];

    let grid = Grid::new(200, 200).unwrap();
    let sol = hjb::solve(&grid, &p, &cost, horizon, Some(1.0)).unwrap();
    let h = 2.0 * grid.dx;
    let u = |x: f64, y: f64| sol.value.at(&grid, x, y).unwrap();
    let ux = (u(s0.x + h, s0.y) - u(s0.x - h, s0.y)) / (2.0 * h);
    let uy = (u(s0.x, s0.y + h) - u(s0.x, s0.y - h)) / (2.0 * h);

    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-6);
    assert!(
        rel(lambda0.lambda1, ux) < 0.05,
        "lambda1(0)={} vs u_x(0,s0)={}",
        lambda0.lambda1,
        ux
    );
    assert!(
        rel(lambda0.lambda2, uy) < 0.05,
        "lambda2(0)={} vs u_y(0,s0)={}",
        lambda0.lambda2,
        uy
    );
}

/// Sweep and grid solver agree on the optimal objective for a quadratic
/// running cost, and both beat the do-nothing baseline.
#[test]
fn sweep_and_grid_agree_on_objective() {
    let p = Params::new(GAMMA, SIGMA0).unwrap();
    let cost = CostSpec::quadratic(1e-1);
    let s0 = State::new(0.9, 0.1).unwrap();
    let horizon = 40.0;

    let sweep = pmp::forward_backward_sweep(s0, &p, &cost, horizon, 0.05).unwrap();

    let grid = Grid::new(200, 200).unwrap();
    let sol = hjb::solve(&grid, &p, &cost, horizon, Some(0.5)).unwrap();
    let closed = hjb::synthesize_trajectory(&sol.policy, s0, &p, &cost, horizon, 0.02).unwrap();

    let baseline = {
        let sched = sir_control::ControlSchedule::constant(p.sigma0, horizon, p.sigma0).unwrap();
        pmp::schedule_objective(s0, &sched, &p, &cost, horizon, 0.02).unwrap()
    };

    assert!(
        (sweep.objective - closed.objective).abs() < 5e-3,
        "sweep J={} vs grid J={}",
        sweep.objective,
        closed.objective
    );
    assert!(sweep.objective < baseline - 1e-3);
    assert!(closed.objective < baseline - 1e-3);
    // The grid value at the start state is a third estimate of the same
    // number (exact objective of the optimal policy, up to truncation).
    let v0 = sol.value.at(&grid, s0.x, s0.y).unwrap();
    assert!(
        (v0 - sweep.objective).abs() < 5e-3,
        "u(0,s0)={} vs sweep J={}",
        v0,
        sweep.objective
    );
}

/// For the no-running-cost problem the closed-form switch solution is exact;
/// the grid solver's closed loop must reproduce its long-run limit on a
/// moderate grid.
#[test]
fn grid_policy_reproduces_exact_switch_solution() {
    let p = Params::new(GAMMA, SIGMA0).unwrap();
    let cost = CostSpec::zero();
    let s0 = State::new(0.99, 0.01).unwrap();
    let horizon = 100.0;

    let exact = analytic::optimal_bang_bang(s0, &p, horizon).unwrap();

    let grid = Grid::new(200, 200).unwrap();
    let sol = hjb::solve(&grid, &p, &cost, horizon, Some(0.5)).unwrap();
    let closed = hjb::synthesize_trajectory(&sol.policy, s0, &p, &cost, horizon, 0.02).unwrap();

    let end = closed.trajectory.last_state();
    let closed_x_inf = sir_control::long_term::x_infinity(end.x, end.y, p.sigma0).unwrap();
    assert!(
        (closed_x_inf - exact.x_inf_achieved).abs() < 1e-2,
        "grid x_inf={} vs exact {}",
        closed_x_inf,
        exact.x_inf_achieved
    );
    // The value at the start state is -x_inf of the optimum.
    let v0 = sol.value.at(&grid, s0.x, s0.y).unwrap();
    assert!(
        (v0 + exact.x_inf_achieved).abs() < 1e-2,
        "u(0,s0)={} vs -x_inf={}",
        v0,
        -exact.x_inf_achieved
    );
}
