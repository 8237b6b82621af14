//! Controlled SIR dynamics and fixed-step trajectory integration.
//!
//! The state is the susceptible/infected pair `(x, y)` on the simplex
//! `D = { x >= 0, y >= 0, x + y <= 1 }`; the recovered fraction is
//! `z = 1 - x - y` and is never stored. The contact-rate control enters as a
//! time-dependent reproduction number `sigma(t) in [0, sigma0]`:
//!
//! ```text
//! x' = -gamma * sigma(t) * y * x
//! y' =  gamma * sigma(t) * y * x - gamma * y
//! ```

use crate::error::{Error, Result};

/// Absolute slack allowed before a state is considered outside the simplex.
pub const D_TOLERANCE: f64 = 1e-9;

/// Susceptible/infected phase point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub x: f64,
    pub y: f64,
}

impl State {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        let s = State { x, y };
        if !s.in_domain(D_TOLERANCE) {
            return Err(Error::OutsideDomain { x, y, tol: D_TOLERANCE });
        }
        Ok(s)
    }

    /// Recovered fraction `z = 1 - x - y`.
    pub fn recovered(&self) -> f64 {
        1.0 - self.x - self.y
    }

    pub fn in_domain(&self, tol: f64) -> bool {
        self.x >= -tol && self.y >= -tol && self.x + self.y <= 1.0 + tol
    }

    /// Copy with both components clamped to `[0, 1]`. Output formatting only;
    /// dynamics always use the raw values.
    pub fn clamped(&self) -> State {
        State {
            x: self.x.clamp(0.0, 1.0),
            y: self.y.clamp(0.0, 1.0),
        }
    }
}

/// Disease constants. The contact rate `beta = gamma * sigma0` is derived.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub gamma: f64,
    pub sigma0: f64,
}

impl Params {
    pub fn new(gamma: f64, sigma0: f64) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::Validation(format!("gamma must be > 0, got {gamma}")));
        }
        if !(sigma0 > 0.0) {
            return Err(Error::Validation(format!(
                "sigma0 must be > 0, got {sigma0}"
            )));
        }
        Ok(Params { gamma, sigma0 })
    }

    pub fn beta(&self) -> f64 {
        self.gamma * self.sigma0
    }

    /// Herd-immunity threshold `1 / sigma0`.
    pub fn herd_threshold(&self) -> f64 {
        1.0 / self.sigma0
    }
}

/// Raw vector field, no admissibility checks. Internal integrator stages may
/// sit marginally outside the simplex.
#[inline]
pub(crate) fn rates(s: State, sigma: f64, p: &Params) -> (f64, f64) {
    let infection = p.gamma * sigma * s.y * s.x;
    (-infection, infection - p.gamma * s.y)
}

/// Right-hand side of the controlled SIR system, `(dx/dt, dy/dt)`.
pub fn derivative(s: State, sigma: f64, p: &Params) -> Result<(f64, f64)> {
    check_sigma(sigma, p.sigma0)?;
    if !s.in_domain(D_TOLERANCE) {
        return Err(Error::OutsideDomain {
            x: s.x,
            y: s.y,
            tol: D_TOLERANCE,
        });
    }
    Ok(rates(s, sigma, p))
}

#[inline]
fn check_sigma(sigma: f64, sigma0: f64) -> Result<()> {
    if !(sigma >= -1e-12 && sigma <= sigma0 + 1e-12) {
        return Err(Error::InvalidControl { sigma, sigma0 });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub t_start: f64,
    pub t_end: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone)]
enum Repr {
    Piecewise(Vec<Segment>),
    Sampled {
        values: Vec<f64>,
        spacing: f64,
        linear: bool,
    },
}

/// Time-to-sigma mapping on `[0, horizon]`; the decision variable.
///
/// Evaluation is right-continuous at segment boundaries (the value at a
/// switch time is the post-switch value), and `sigma(t) = sigma0` for
/// `t > horizon`: intervention is only available on a finite window.
#[derive(Debug, Clone)]
pub struct ControlSchedule {
    repr: Repr,
    pub sigma_floor: f64,
    pub horizon: f64,
    pub sigma0: f64,
}

impl ControlSchedule {
    pub fn constant(sigma: f64, horizon: f64, sigma0: f64) -> Result<Self> {
        Self::piecewise(
            vec![Segment {
                t_start: 0.0,
                t_end: horizon,
                sigma,
            }],
            horizon,
            sigma0,
            0.0,
        )
    }

    /// `sigma_high` on `[0, t_star)`, `sigma_low` on `[t_star, horizon]`.
    pub fn single_switch(
        t_star: f64,
        sigma_high: f64,
        sigma_low: f64,
        horizon: f64,
        sigma0: f64,
    ) -> Result<Self> {
        if t_star <= 0.0 {
            return Self::constant(sigma_low, horizon, sigma0);
        }
        if t_star >= horizon {
            return Self::constant(sigma_high, horizon, sigma0);
        }
        Self::piecewise(
            vec![
                Segment {
                    t_start: 0.0,
                    t_end: t_star,
                    sigma: sigma_high,
                },
                Segment {
                    t_start: t_star,
                    t_end: horizon,
                    sigma: sigma_low,
                },
            ],
            horizon,
            sigma0,
            0.0,
        )
    }

    pub fn piecewise(
        segments: Vec<Segment>,
        horizon: f64,
        sigma0: f64,
        sigma_floor: f64,
    ) -> Result<Self> {
        if !(horizon > 0.0) {
            return Err(Error::Validation(format!(
                "schedule horizon must be > 0, got {horizon}"
            )));
        }
        if segments.is_empty() {
            return Err(Error::Validation("schedule has no segments".into()));
        }
        let mut t = 0.0;
        for seg in &segments {
            if (seg.t_start - t).abs() > 1e-9 || seg.t_end <= seg.t_start {
                return Err(Error::Validation(format!(
                    "schedule segments must be contiguous and increasing near t={t}"
                )));
            }
            if seg.sigma < sigma_floor - 1e-12 || seg.sigma > sigma0 + 1e-12 {
                return Err(Error::InvalidControl {
                    sigma: seg.sigma,
                    sigma0,
                });
            }
            t = seg.t_end;
        }
        if (t - horizon).abs() > 1e-9 {
            return Err(Error::Validation(format!(
                "schedule segments end at t={t}, horizon is {horizon}"
            )));
        }
        Ok(ControlSchedule {
            repr: Repr::Piecewise(segments),
            sigma_floor,
            horizon,
            sigma0,
        })
    }

    /// Uniformly sampled values with the given spacing. With `linear` the
    /// samples are interpolated; otherwise each sample holds until the next.
    pub fn sampled(
        values: Vec<f64>,
        spacing: f64,
        sigma0: f64,
        sigma_floor: f64,
        linear: bool,
    ) -> Result<Self> {
        if values.len() < 2 || !(spacing > 0.0) {
            return Err(Error::Validation(
                "sampled schedule needs >= 2 values and spacing > 0".into(),
            ));
        }
        for &v in &values {
            if v < sigma_floor - 1e-12 || v > sigma0 + 1e-12 {
                return Err(Error::InvalidControl { sigma: v, sigma0 });
            }
        }
        let horizon = spacing * (values.len() - 1) as f64;
        Ok(ControlSchedule {
            repr: Repr::Sampled {
                values,
                spacing,
                linear,
            },
            sigma_floor,
            horizon,
            sigma0,
        })
    }

    pub fn sigma_at(&self, t: f64) -> f64 {
        if t > self.horizon {
            return self.sigma0;
        }
        let t = t.max(0.0);
        match &self.repr {
            Repr::Piecewise(segments) => {
                // Right-continuous: pick the segment with t_start <= t < t_end.
                let mut lo = 0usize;
                let mut hi = segments.len();
                while hi - lo > 1 {
                    let mid = (lo + hi) / 2;
                    if segments[mid].t_start <= t {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                segments[lo].sigma
            }
            Repr::Sampled {
                values,
                spacing,
                linear,
            } => {
                let pos = t / spacing;
                let i = (pos.floor() as usize).min(values.len() - 1);
                if *linear && i + 1 < values.len() {
                    let w = pos - i as f64;
                    values[i] * (1.0 - w) + values[i + 1] * w
                } else {
                    values[i]
                }
            }
        }
    }
}

/// Time-stamped sequence of states with the control applied at each sample.
#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<State>,
    pub sigmas: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_state(&self) -> State {
        *self.states.last().expect("empty trajectory")
    }

    /// Peak infected fraction and the time it occurs.
    pub fn peak_y(&self) -> (f64, f64) {
        let mut best = (self.times[0], self.states[0].y);
        for (t, s) in self.times.iter().zip(&self.states) {
            if s.y > best.1 {
                best = (*t, s.y);
            }
        }
        best
    }

    fn push(&mut self, t: f64, s: State, sigma: f64) {
        self.times.push(t);
        self.states.push(s);
        self.sigmas.push(sigma);
    }
}

/// One classical fourth-order step of size `h` from `(t, s)`; the control is
/// re-evaluated at every stage, so state-feedback controls work too.
fn rk4_step(
    s: State,
    t: f64,
    h: f64,
    p: &Params,
    ctrl: &mut impl FnMut(f64, State) -> f64,
    sigma0: f64,
) -> Result<State> {
    let sig1 = ctrl(t, s);
    check_sigma(sig1, sigma0)?;
    let k1 = rates(s, sig1, p);

    let s2 = State {
        x: s.x + 0.5 * h * k1.0,
        y: s.y + 0.5 * h * k1.1,
    };
    let sig2 = ctrl(t + 0.5 * h, s2);
    check_sigma(sig2, sigma0)?;
    let k2 = rates(s2, sig2, p);

    let s3 = State {
        x: s.x + 0.5 * h * k2.0,
        y: s.y + 0.5 * h * k2.1,
    };
    let sig3 = ctrl(t + 0.5 * h, s3);
    check_sigma(sig3, sigma0)?;
    let k3 = rates(s3, sig3, p);

    let s4 = State {
        x: s.x + h * k3.0,
        y: s.y + h * k3.1,
    };
    let sig4 = ctrl(t + h, s4);
    check_sigma(sig4, sigma0)?;
    let k4 = rates(s4, sig4, p);

    Ok(State {
        x: s.x + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        y: s.y + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    })
}

/// Integrate under an arbitrary control law `sigma = ctrl(t, state)`.
///
/// Fixed step `dt` with a shortened final step so `t_end` is hit exactly.
/// Every accepted state must stay inside the simplex (within [`D_TOLERANCE`]);
/// a violation signals that `dt` is too large and rejects the step.
pub fn integrate_with(
    s0: State,
    p: &Params,
    mut ctrl: impl FnMut(f64, State) -> f64,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    if !(dt > 0.0) {
        return Err(Error::Validation(format!("dt must be > 0, got {dt}")));
    }
    if !s0.in_domain(D_TOLERANCE) {
        return Err(Error::OutsideDomain {
            x: s0.x,
            y: s0.y,
            tol: D_TOLERANCE,
        });
    }
    let mut traj = Trajectory::default();
    let sig0 = ctrl(0.0, s0);
    traj.push(0.0, s0, sig0);
    if t_end <= 0.0 {
        return Ok(traj);
    }

    let n_full = (t_end / dt).floor() as usize;
    let mut s = s0;
    let mut step = 0usize;
    loop {
        let t = step as f64 * dt;
        if t >= t_end - 1e-12 {
            break;
        }
        let h = if step < n_full { dt } else { t_end - t };
        let h = h.min(t_end - t);
        s = rk4_step(s, t, h, p, &mut ctrl, p.sigma0)?;
        let t_next = (t + h).min(t_end);
        if !s.in_domain(D_TOLERANCE) {
            return Err(Error::StepRejected {
                t: t_next,
                x: s.x,
                y: s.y,
            });
        }
        traj.push(t_next, s, ctrl(t_next, s));
        step += 1;
    }
    Ok(traj)
}

/// Integrate under a time-based control schedule.
pub fn integrate(
    s0: State,
    schedule: &ControlSchedule,
    p: &Params,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    integrate_with(s0, p, |t, _| schedule.sigma_at(t), t_end, dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::long_term;

    fn p(gamma: f64, sigma0: f64) -> Params {
        Params::new(gamma, sigma0).unwrap()
    }

    #[test]
    fn zero_infected_is_equilibrium() {
        let params = p(0.1, 3.0);
        let s = State::new(0.5, 0.0).unwrap();
        for sigma in [0.0, 1.0, 3.0] {
            assert_eq!(derivative(s, sigma, &params).unwrap(), (0.0, 0.0));
        }
    }

    #[test]
    fn herd_threshold_stalls_infection_growth() {
        let params = p(0.1, 3.0);
        let s = State::new(1.0 / 3.0, 0.2).unwrap();
        let (_, dy) = derivative(s, 3.0, &params).unwrap();
        assert!(dy.abs() < 1e-15);
    }

    #[test]
    fn derivative_direct_substitution() {
        let params = p(0.1, 3.0);
        let s = State::new(0.99, 0.01).unwrap();
        let (dx, dy) = derivative(s, 3.0, &params).unwrap();
        assert!((dx + 0.00297).abs() < 1e-15);
        assert!((dy - 0.00197).abs() < 1e-15);
    }

    #[test]
    fn derivative_rejects_bad_inputs() {
        let params = p(0.1, 3.0);
        let s = State::new(0.5, 0.1).unwrap();
        assert!(matches!(
            derivative(s, 3.5, &params),
            Err(Error::InvalidControl { .. })
        ));
        assert!(matches!(
            derivative(s, -0.1, &params),
            Err(Error::InvalidControl { .. })
        ));
        let bad = State { x: 0.8, y: 0.3 };
        assert!(matches!(
            derivative(bad, 1.0, &params),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn equilibrium_trajectory_is_constant() {
        let params = p(0.1, 3.0);
        let s0 = State::new(0.4, 0.0).unwrap();
        let sched = ControlSchedule::constant(1.5, 50.0, 3.0).unwrap();
        let traj = integrate(s0, &sched, &params, 50.0, 0.1).unwrap();
        for s in &traj.states {
            assert_eq!(s.x, 0.4);
            assert!(s.y.abs() < 1e-300);
        }
    }

    #[test]
    fn pure_decay_is_exact() {
        // sigma = 0: x frozen, y' = -gamma*y exactly.
        let params = p(0.1, 3.0);
        let s0 = State::new(0.99, 0.01).unwrap();
        let sched = ControlSchedule::constant(0.0, 10.0, 3.0).unwrap();
        let traj = integrate(s0, &sched, &params, 10.0, 0.01).unwrap();
        let end = traj.last_state();
        assert_eq!(end.x, 0.99);
        assert!((end.y - 0.01 * (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn mu_is_conserved_on_uncontrolled_arcs() {
        let params = p(0.1, 3.0);
        let s0 = State::new(0.99, 0.01).unwrap();
        let sched = ControlSchedule::constant(3.0, 100.0, 3.0).unwrap();
        let traj = integrate(s0, &sched, &params, 100.0, 0.01).unwrap();
        let mu0 = long_term::mu(0.99, 0.01, 3.0).unwrap();
        for s in &traj.states {
            let mu = long_term::mu(s.x, s.y, 3.0).unwrap();
            assert!((mu - mu0).abs() <= 1e-8, "mu drift {}", (mu - mu0).abs());
        }
    }

    #[test]
    fn uncontrolled_endpoint_lands_on_predicted_contour() {
        let params = p(0.1, 3.0);
        let s0 = State::new(0.99, 0.01).unwrap();
        let sched = ControlSchedule::constant(3.0, 200.0, 3.0).unwrap();
        let traj = integrate(s0, &sched, &params, 200.0, 0.01).unwrap();
        let end = traj.last_state();
        let predicted = long_term::x_infinity(0.99, 0.01, 3.0).unwrap();
        assert!((end.x - predicted).abs() <= 1e-4);
    }

    #[test]
    fn slope_relation_along_constant_control() {
        // dy/dx = -1 + 1/(sigma x) along any constant-sigma arc.
        let params = p(0.1, 3.0);
        let s0 = State::new(0.9, 0.05).unwrap();
        let sigma = 2.0;
        let sched = ControlSchedule::constant(sigma, 40.0, 3.0).unwrap();
        let traj = integrate(s0, &sched, &params, 40.0, 0.001).unwrap();
        for k in (10..traj.len() - 10).step_by(500) {
            let (a, b) = (traj.states[k - 1], traj.states[k + 1]);
            let emp = (b.y - a.y) / (b.x - a.x);
            let s = traj.states[k];
            let expected = -1.0 + 1.0 / (sigma * s.x);
            assert!((emp - expected).abs() < 1e-5, "{emp} vs {expected}");
        }
    }

    #[test]
    fn forward_invariance_under_random_schedules() {
        let params = p(0.1, 3.0);
        let s0 = State::new(0.6, 0.39).unwrap();
        let segs = vec![
            Segment { t_start: 0.0, t_end: 20.0, sigma: 2.5 },
            Segment { t_start: 20.0, t_end: 50.0, sigma: 0.3 },
            Segment { t_start: 50.0, t_end: 80.0, sigma: 3.0 },
        ];
        let sched = ControlSchedule::piecewise(segs, 80.0, 3.0, 0.0).unwrap();
        let traj = integrate(s0, &sched, &params, 120.0, 0.01).unwrap();
        for s in &traj.states {
            assert!(s.in_domain(1e-9));
        }
    }

    #[test]
    fn schedule_is_right_continuous_and_reverts_after_horizon() {
        let sched = ControlSchedule::single_switch(10.0, 3.0, 0.5, 50.0, 3.0).unwrap();
        assert_eq!(sched.sigma_at(10.0 - 1e-9), 3.0);
        assert_eq!(sched.sigma_at(10.0), 0.5);
        assert_eq!(sched.sigma_at(50.0), 0.5);
        assert_eq!(sched.sigma_at(50.0 + 1e-9), 3.0);
        assert_eq!(sched.sigma_at(1000.0), 3.0);
    }

    #[test]
    fn schedule_rejects_sigma_outside_bounds() {
        assert!(ControlSchedule::constant(3.5, 10.0, 3.0).is_err());
        assert!(ControlSchedule::sampled(vec![1.0, -0.5], 1.0, 3.0, 0.0, false).is_err());
    }

    #[test]
    fn oversized_step_is_rejected() {
        let params = p(1.0, 12.0);
        let s0 = State::new(0.5, 0.5).unwrap();
        let sched = ControlSchedule::constant(12.0, 10.0, 12.0).unwrap();
        assert!(matches!(
            integrate(s0, &sched, &params, 10.0, 5.0),
            Err(Error::StepRejected { .. })
        ));
    }
}
