//! Two infinite-time controls that both steer the susceptible fraction to
//! exactly the herd-immunity threshold 1/sigma0: a constant contact rate
//! sigma_* held forever, and the threshold feedback that applies full
//! suppression once x drops to 1/sigma0.
//!
//! Run with `cargo run --example eradication_controls`.

use sir_control::sir::{integrate, ControlSchedule, Params, State};
use sir_control::{analytic, Result};

fn main() -> Result<()> {
    let p = Params::new(0.1, 3.0)?;
    let s0 = State::new(0.99, 0.01)?;

    let sigma_star = analytic::constant_eradication_sigma(s0, p.sigma0)?;
    println!(
        "constant control: sigma_* = {sigma_star:.6} ({:.4} sigma0)",
        sigma_star / p.sigma0
    );

    let horizon = 600.0;
    let sched = ControlSchedule::constant(sigma_star, horizon, p.sigma0)?;
    let traj = integrate(s0, &sched, &p, horizon, 0.01)?;
    println!(
        "  after {horizon} days: x = {:.6} (target 1/sigma0 = {:.6})",
        traj.last_state().x,
        p.herd_threshold()
    );

    let feedback = analytic::infinite_time_bang_bang(s0, &p)?;
    let traj = feedback.run(s0, &p, horizon, 0.01)?;
    println!(
        "threshold feedback: x = {:.6} after {horizon} days, peak y = {:.4}",
        traj.last_state().x,
        traj.peak_y().1
    );
    Ok(())
}
