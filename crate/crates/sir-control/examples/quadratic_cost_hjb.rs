//! Value-function solve with a quadratic control cost, followed by
//! closed-loop synthesis from the stored feedback policy. Compares the
//! realized objective against the value function at the start state and
//! against doing nothing.
//!
//! Run with `cargo run --example quadratic_cost_hjb` (about half a minute).

use sir_control::sir::{ControlSchedule, Params, State};
use sir_control::{hjb, pmp, CostSpec, Result};

fn main() -> Result<()> {
    let p = Params::new(0.1, 3.0)?;
    let s0 = State::new(0.9, 0.1)?;
    let horizon = 100.0;
    let cost = CostSpec::quadratic(1e-2);

    let grid = hjb::Grid::new(200, 200)?;
    println!(
        "solving on a {}x{} grid ({} active nodes, dt = {:.4}) ...",
        grid.nx,
        grid.ny,
        grid.active_count(),
        grid.cfl_dt(&p)
    );
    let sol = hjb::solve(&grid, &p, &cost, horizon, Some(0.5))?;
    println!("done in {} steps", sol.steps);

    let v0 = sol.value.at(&grid, s0.x, s0.y)?;
    let syn = hjb::synthesize_trajectory(&sol.policy, s0, &p, &cost, horizon, 0.01)?;
    let baseline = ControlSchedule::constant(p.sigma0, horizon, p.sigma0)?;
    let j_nothing = pmp::schedule_objective(s0, &baseline, &p, &cost, horizon, 0.01)?;

    println!("value function at start: {v0:.6}");
    println!("closed-loop objective:   {:.6}", syn.objective);
    println!("do-nothing objective:    {j_nothing:.6}");
    let (t_peak, y_peak) = syn.trajectory.peak_y();
    println!("peak infections {y_peak:.4} at t = {t_peak:.1}");

    // Sample the control profile.
    println!("\n{:>6} {:>8} {:>8}", "t", "sigma", "y");
    for k in 0..=10 {
        let t = horizon * k as f64 / 10.0;
        let i = ((t / 0.01) as usize).min(syn.trajectory.len() - 1);
        println!(
            "{t:>6.0} {:>8.4} {:>8.4}",
            syn.trajectory.sigmas[i], syn.trajectory.states[i].y
        );
    }
    Ok(())
}
