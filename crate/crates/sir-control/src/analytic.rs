//! Exact optimal controls for the zero-running-cost problem.
//!
//! With no running cost the optimal finite-window control is unique and
//! bang-bang with a single switch: full contact (`sigma0`) until `t_star`,
//! then full suppression until the window closes. The switch time satisfies
//!
//! ```text
//! x(t_star; sigma0) * sigma0 * (1 - exp(-gamma (T - t_star))) = 1,
//! ```
//!
//! or `t_star = 0` when `x0 <= 1 / (sigma0 (1 - exp(-gamma T)))`.
//!
//! Also here: the single-switch optimum under a control floor `sigma_min`,
//! and the two infinite-horizon controls that drive the state to the
//! herd-immunity point exactly.

use crate::error::{Error, Result};
use crate::long_term::{lambert_w0, mu, x_infinity};
use crate::sir::{integrate, integrate_with, rates, ControlSchedule, Params, State, Trajectory};

/// Step used for the cached uncontrolled arc and auxiliary integrations.
const ARC_DT: f64 = 0.01;

/// Dense uncontrolled (`sigma = sigma0`) trajectory with cubic Hermite
/// evaluation at arbitrary times. Root-finding over switch times evaluates
/// the forward arc thousands of times; caching it once makes that cheap.
pub struct UncontrolledArc {
    traj: Trajectory,
    p: Params,
    dt: f64,
}

impl UncontrolledArc {
    pub fn new(s0: State, p: &Params, t_end: f64) -> Result<Self> {
        let sched = ControlSchedule::constant(p.sigma0, t_end, p.sigma0)?;
        let traj = integrate(s0, &sched, p, t_end, ARC_DT)?;
        Ok(UncontrolledArc {
            traj,
            p: *p,
            dt: ARC_DT,
        })
    }

    pub fn t_end(&self) -> f64 {
        *self.traj.times.last().unwrap()
    }

    /// State at time `t`, cubic Hermite interpolation between stored samples.
    pub fn state_at(&self, t: f64) -> State {
        let t = t.clamp(0.0, self.t_end());
        let i = ((t / self.dt) as usize).min(self.traj.states.len() - 2);
        let t0 = self.traj.times[i];
        let h = self.traj.times[i + 1] - t0;
        let s0 = self.traj.states[i];
        let s1 = self.traj.states[i + 1];
        let d0 = rates(s0, self.p.sigma0, &self.p);
        let d1 = rates(s1, self.p.sigma0, &self.p);
        let u = ((t - t0) / h).clamp(0.0, 1.0);
        let (u2, u3) = (u * u, u * u * u);
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        State {
            x: h00 * s0.x + h10 * h * d0.0 + h01 * s1.x + h11 * h * d1.0,
            y: h00 * s0.y + h10 * h * d0.1 + h01 * s1.y + h11 * h * d1.1,
        }
    }
}

/// Single-switch bang-bang control and the long-run limit it achieves.
#[derive(Debug, Clone, Copy)]
pub struct BangBangSolution {
    /// Switch time in `[0, T]`.
    pub t_star: f64,
    /// Control before the switch (always `sigma0`).
    pub sigma_high: f64,
    /// Control after the switch (`0`, or the floor `sigma_min`).
    pub sigma_low: f64,
    /// Intervention window length.
    pub horizon: f64,
    /// State at the switch time.
    pub switch_state: State,
    /// State at the end of the window.
    pub terminal: State,
    /// `x_infinity` of the terminal state: the achieved long-run limit.
    pub x_inf_achieved: f64,
    /// Set when the floor equals `sigma0` and the switch time is meaningless.
    pub degenerate: bool,
}

impl BangBangSolution {
    pub fn schedule(&self) -> Result<ControlSchedule> {
        ControlSchedule::single_switch(
            self.t_star,
            self.sigma_high,
            self.sigma_low,
            self.horizon,
            self.sigma_high,
        )
    }
}

/// Optimal switch time for the no-cost problem.
///
/// Returns 0 when the drop condition `x0 <= 1/(sigma0 (1 - e^{-gamma T}))`
/// holds; otherwise bisects the switching equation, whose root is unique
/// (the left side decreases in `t_star`, the right side increases).
/// Located to within 1e-8 days.
pub fn switching_time(s0: State, p: &Params, horizon: f64) -> Result<f64> {
    let arc = UncontrolledArc::new(s0, p, horizon)?;
    switching_time_on_arc(&arc, p, horizon)
}

fn switching_time_on_arc(arc: &UncontrolledArc, p: &Params, horizon: f64) -> Result<f64> {
    if !(horizon > 0.0) {
        return Err(Error::Validation(format!(
            "horizon must be > 0, got {horizon}"
        )));
    }
    let s0 = arc.state_at(0.0);
    let drop_threshold = 1.0 / (p.sigma0 * (1.0 - (-p.gamma * horizon).exp()));
    if s0.x <= drop_threshold {
        return Ok(0.0);
    }
    let residual = |t_star: f64| -> f64 {
        let x = arc.state_at(t_star).x;
        x * p.sigma0 * (1.0 - (-p.gamma * (horizon - t_star)).exp()) - 1.0
    };
    let (mut lo, mut hi) = (0.0, horizon);
    let (f_lo, f_hi) = (residual(lo), residual(hi));
    // The theorem guarantees a bracketed root; anything else is a bug here.
    assert!(
        f_lo > 0.0 && f_hi < 0.0,
        "switching equation not bracketed: f(0)={f_lo}, f(T)={f_hi}"
    );
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if residual(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Exact optimum of the no-cost problem: `sigma0` until the switch, full
/// suppression after. The suppression arc is closed-form (`x` frozen, `y`
/// decaying at rate `gamma`).
pub fn optimal_bang_bang(s0: State, p: &Params, horizon: f64) -> Result<BangBangSolution> {
    let arc = UncontrolledArc::new(s0, p, horizon)?;
    let t_star = switching_time_on_arc(&arc, p, horizon)?;
    let switch_state = arc.state_at(t_star);
    let terminal = State {
        x: switch_state.x,
        y: switch_state.y * (-p.gamma * (horizon - t_star)).exp(),
    };
    let x_inf_achieved = x_infinity(terminal.x, terminal.y, p.sigma0)?;
    Ok(BangBangSolution {
        t_star,
        sigma_high: p.sigma0,
        sigma_low: 0.0,
        horizon,
        switch_state,
        terminal,
        x_inf_achieved,
        degenerate: false,
    })
}

/// Objective integral `I = (sigma0/gamma) * y(t_star) * (1 - e^{-gamma (T - t_star)})`
/// accumulated by a full-suppression tail; satisfies `mu(T) = e^{gamma I} mu(0)`.
pub fn objective_integral(sol: &BangBangSolution, p: &Params) -> f64 {
    p.sigma0 / p.gamma
        * sol.switch_state.y
        * (1.0 - (-p.gamma * (sol.horizon - sol.t_star)).exp())
}

/// Single-switch optimum under a control floor `sigma(t) >= sigma_min`.
///
/// The optimum is still bang-bang with one switch, but there is no closed
/// switching equation; the switch time is found by golden-section
/// maximization of the achieved `x_infinity` (tolerance 1e-6 days).
/// Reduces exactly to [`optimal_bang_bang`] when `sigma_min = 0`.
pub fn optimal_bang_bang_floored(
    s0: State,
    p: &Params,
    horizon: f64,
    sigma_min: f64,
) -> Result<BangBangSolution> {
    if !(0.0..=p.sigma0).contains(&sigma_min) {
        return Err(Error::InvalidControl {
            sigma: sigma_min,
            sigma0: p.sigma0,
        });
    }
    if sigma_min == 0.0 {
        return optimal_bang_bang(s0, p, horizon);
    }
    if sigma_min >= p.sigma0 - 1e-12 {
        // No control authority at all.
        return Ok(BangBangSolution {
            t_star: 0.0,
            sigma_high: p.sigma0,
            sigma_low: sigma_min,
            horizon,
            switch_state: s0,
            terminal: UncontrolledArc::new(s0, p, horizon)?.state_at(horizon),
            x_inf_achieved: x_infinity(s0.x, s0.y, p.sigma0)?,
            degenerate: true,
        })
    }

    let arc = UncontrolledArc::new(s0, p, horizon)?;
    let tail_end = |t_star: f64| -> Result<State> {
        let s = arc.state_at(t_star);
        if horizon - t_star < 1e-12 {
            return Ok(s);
        }
        let sched = ControlSchedule::constant(sigma_min, horizon - t_star, p.sigma0)?;
        let traj = integrate(s, &sched, p, horizon - t_star, ARC_DT)?;
        Ok(traj.last_state())
    };
    let objective = |t_star: f64| -> Result<f64> {
        let end = tail_end(t_star)?;
        x_infinity(end.x, end.y, p.sigma0)
    };

    let t_star = golden_max(&objective, 0.0, horizon, 1e-6)?;
    let switch_state = arc.state_at(t_star);
    let terminal = tail_end(t_star)?;
    Ok(BangBangSolution {
        t_star,
        sigma_high: p.sigma0,
        sigma_low: sigma_min,
        horizon,
        switch_state,
        terminal,
        x_inf_achieved: x_infinity(terminal.x, terminal.y, p.sigma0)?,
        degenerate: false,
    })
}

/// Golden-section maximization of a unimodal function on `[lo, hi]`.
fn golden_max(f: &impl Fn(f64) -> Result<f64>, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Constant control `sigma_star` whose long-run limit is exactly the
/// herd-immunity threshold `1/sigma0`: the root of
/// `W0(-mu(x0, y0, s) * s) = -s / sigma0`, found by bisection on
/// `[1e-6, sigma0 - 1e-6]` to residual 1e-10.
///
/// Requires `x0 >= 1/sigma0`; below the threshold full suppression is the
/// relevant policy instead. At `x0 = 1/sigma0` exactly, no finite
/// intervention is needed and the limiting value `sigma0` is returned.
pub fn constant_eradication_sigma(s0: State, sigma0: f64) -> Result<f64> {
    if s0.x * sigma0 < 1.0 - 1e-12 {
        return Err(Error::Precondition(format!(
            "constant eradication control requires x0 >= 1/sigma0 (x0 = {}, 1/sigma0 = {})",
            s0.x,
            1.0 / sigma0
        )));
    }
    if s0.x * sigma0 <= 1.0 + 1e-12 {
        return Ok(sigma0);
    }
    let f = |sigma: f64| -> Result<f64> {
        let m = mu(s0.x, s0.y, sigma)?;
        Ok(lambert_w0(-m * sigma)? + sigma / sigma0)
    };
    let (mut lo, mut hi) = (1e-6, sigma0 - 1e-6);
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    assert!(
        f_lo < 0.0 && f_hi > 0.0,
        "eradication control not bracketed: f(lo)={f_lo}, f(hi)={f_hi}"
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm.abs() <= 1e-10 {
            return Ok(mid);
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let sigma = 0.5 * (lo + hi);
    let res = f(sigma)?;
    assert!(res.abs() <= 1e-10, "bisection stalled at residual {res}");
    Ok(sigma)
}

/// Infinite-horizon bang-bang feedback: no intervention while
/// `x > 1/sigma0`, full suppression afterwards. Drives `x(t)` to the
/// herd-immunity threshold as `t -> inf`.
#[derive(Debug, Clone, Copy)]
pub struct ThresholdFeedback {
    pub sigma0: f64,
}

impl ThresholdFeedback {
    pub fn sigma(&self, s: State) -> f64 {
        if s.x > 1.0 / self.sigma0 {
            self.sigma0
        } else {
            0.0
        }
    }

    /// Integrate the closed loop from `s0`.
    pub fn run(&self, s0: State, p: &Params, t_end: f64, dt: f64) -> Result<Trajectory> {
        integrate_with(s0, p, |_, s| self.sigma(s), t_end, dt)
    }
}

/// Threshold feedback rule; requires `x0 >= 1/sigma0` (below the threshold
/// it is identically zero and nothing is gained).
pub fn infinite_time_bang_bang(s0: State, p: &Params) -> Result<ThresholdFeedback> {
    if s0.x * p.sigma0 < 1.0 - 1e-12 {
        return Err(Error::Precondition(format!(
            "threshold feedback requires x0 >= 1/sigma0 (x0 = {}, 1/sigma0 = {})",
            s0.x,
            p.herd_threshold()
        )));
    }
    Ok(ThresholdFeedback { sigma0: p.sigma0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::long_term;

    fn p03() -> Params {
        Params::new(0.1, 3.0).unwrap()
    }

    #[test]
    fn drop_condition_fires_below_threshold() {
        let p = p03();
        let s0 = State::new(0.3, 0.05).unwrap();
        assert_eq!(switching_time(s0, &p, 100.0).unwrap(), 0.0);
    }

    #[test]
    fn below_threshold_solution_freezes_x_and_decays_y() {
        let p = p03();
        let s0 = State::new(0.3, 0.05).unwrap();
        let sol = optimal_bang_bang(s0, &p, 100.0).unwrap();
        assert_eq!(sol.t_star, 0.0);
        assert!((sol.terminal.x - 0.3).abs() < 1e-12);
        assert!((sol.terminal.y - 0.05 * (-10.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn switch_point_identity_holds() {
        let p = p03();
        let s0 = State::new(0.99, 0.01).unwrap();
        for horizon in [25.0, 50.0, 100.0] {
            let sol = optimal_bang_bang(s0, &p, horizon).unwrap();
            assert!(sol.t_star > 0.0);
            let lhs =
                sol.switch_state.x * 3.0 * (1.0 - (-0.1 * (horizon - sol.t_star)).exp());
            assert!((lhs - 1.0).abs() <= 1e-6, "T={horizon}: residual {}", lhs - 1.0);
        }
    }

    #[test]
    fn objective_integral_consistency() {
        // mu(T) = exp(gamma * I) * mu(0) along the optimal solution.
        let p = p03();
        let s0 = State::new(0.99, 0.01).unwrap();
        let sol = optimal_bang_bang(s0, &p, 100.0).unwrap();
        let i = objective_integral(&sol, &p);
        let mu0 = long_term::mu(0.99, 0.01, 3.0).unwrap();
        let mu_t = long_term::mu(sol.terminal.x, sol.terminal.y, 3.0).unwrap();
        let rel = (mu_t - (p.gamma * i).exp() * mu0) / mu_t;
        assert!(rel.abs() <= 1e-6, "relative error {rel}");
    }

    #[test]
    fn longer_windows_achieve_more() {
        let p = p03();
        let s0 = State::new(0.99, 0.01).unwrap();
        let mut prev = long_term::x_infinity(0.99, 0.01, 3.0).unwrap();
        for horizon in [25.0, 50.0, 75.0, 100.0] {
            let sol = optimal_bang_bang(s0, &p, horizon).unwrap();
            assert!(sol.x_inf_achieved > prev, "T={horizon}");
            assert!(sol.x_inf_achieved < 1.0 / 3.0);
            prev = sol.x_inf_achieved;
        }
    }

    #[test]
    fn objective_derivative_changes_sign_at_the_switch() {
        // dI/dt* = sigma0 y(t*) (sigma0 x(t*)(1 - e^{-gamma(T-t*)}) - 1)
        let p = p03();
        let s0 = State::new(0.99, 0.01).unwrap();
        let horizon = 100.0;
        let sol = optimal_bang_bang(s0, &p, horizon).unwrap();
        let arc = UncontrolledArc::new(s0, &p, horizon).unwrap();
        let didt = |t: f64| {
            let s = arc.state_at(t);
            3.0 * s.y * (3.0 * s.x * (1.0 - (-0.1 * (horizon - t)).exp()) - 1.0)
        };
        assert!(didt(sol.t_star - 0.5) > 0.0);
        assert!(didt(sol.t_star + 0.5) < 0.0);
    }

    #[test]
    fn floored_variant_degenerate_cases() {
        let p = p03();
        let s0 = State::new(0.99, 0.01).unwrap();
        let free = optimal_bang_bang(s0, &p, 100.0).unwrap();
        let floored = optimal_bang_bang_floored(s0, &p, 100.0, 0.0).unwrap();
        assert!((free.t_star - floored.t_star).abs() <= 1e-5);

        let pinned = optimal_bang_bang_floored(s0, &p, 100.0, 3.0).unwrap();
        assert!(pinned.degenerate);
        let baseline = long_term::x_infinity(0.99, 0.01, 3.0).unwrap();
        assert!((pinned.x_inf_achieved - baseline).abs() < 1e-12);
    }

    #[test]
    fn floored_variant_matches_brute_force_scan() {
        let p = p03();
        let s0 = State::new(0.99, 0.01).unwrap();
        let horizon = 100.0;
        let sigma_min = 0.4 * 3.0;
        let sol = optimal_bang_bang_floored(s0, &p, horizon, sigma_min).unwrap();

        let arc = UncontrolledArc::new(s0, &p, horizon).unwrap();
        let n = 2000;
        let spacing = horizon / n as f64;
        let mut best = (0.0, f64::NEG_INFINITY);
        for k in 0..=n {
            let t = k as f64 * spacing;
            let s = arc.state_at(t);
            let end = if horizon - t > 1e-12 {
                let sched = ControlSchedule::constant(sigma_min, horizon - t, 3.0).unwrap();
                integrate(s, &sched, &p, horizon - t, 0.01).unwrap().last_state()
            } else {
                s
            };
            let xi = long_term::x_infinity(end.x, end.y, 3.0).unwrap();
            if xi > best.1 {
                best = (t, xi);
            }
        }
        assert!(
            (sol.t_star - best.0).abs() <= spacing,
            "golden {} vs scan {}",
            sol.t_star,
            best.0
        );
        assert!(sol.x_inf_achieved >= best.1 - 1e-9);
    }

    #[test]
    fn eradication_sigma_is_rejected_below_threshold() {
        assert!(matches!(
            constant_eradication_sigma(State::new(0.2, 0.01).unwrap(), 3.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn eradication_sigma_limits() {
        // At the threshold with small y the required intervention vanishes.
        let s = State::new(1.0 / 3.0, 1e-9).unwrap();
        assert_eq!(constant_eradication_sigma(s, 3.0).unwrap(), 3.0);
        let s = State::new(1.0 / 3.0 + 1e-3, 1e-6).unwrap();
        let sigma = constant_eradication_sigma(s, 3.0).unwrap();
        assert!(sigma > 2.9 && sigma < 3.0, "sigma* = {sigma}");
    }

    #[test]
    fn eradication_sigma_residual_and_long_run() {
        let s0 = State::new(0.99, 0.01).unwrap();
        let sigma = constant_eradication_sigma(s0, 3.0).unwrap();
        let m = mu(0.99, 0.01, sigma).unwrap();
        let res = lambert_w0(-m * sigma).unwrap() + sigma / 3.0;
        assert!(res.abs() <= 1e-10);
        // Long-run limit under sigma* is exactly the herd threshold.
        let xi = -lambert_w0(-m * sigma).unwrap() / sigma;
        assert!((xi - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn threshold_feedback_is_idle_at_the_threshold() {
        let p = p03();
        let fb = infinite_time_bang_bang(State::new(1.0 / 3.0, 0.05).unwrap(), &p).unwrap();
        assert_eq!(fb.sigma(State { x: 1.0 / 3.0, y: 0.05 }), 0.0);
        assert_eq!(fb.sigma(State { x: 0.34, y: 0.05 }), 3.0);
    }

    #[test]
    fn threshold_feedback_beats_any_finite_window() {
        let p = p03();
        let s0 = State::new(0.99, 0.01).unwrap();
        let fb = infinite_time_bang_bang(s0, &p).unwrap();
        let traj = fb.run(s0, &p, 2000.0, 0.005).unwrap();
        let end = traj.last_state();
        assert!(end.x <= 1.0 / 3.0 + 1e-12 && end.x >= 1.0 / 3.0 - 1e-3);
        let finite = optimal_bang_bang(s0, &p, 100.0).unwrap();
        let xi = long_term::x_infinity(end.x, end.y, 3.0).unwrap();
        assert!(xi > finite.x_inf_achieved);
    }
}
