//! Backward-in-time value-function solver on a rectangular `(x, eta)` grid
//! with `eta = ln y`, upwind one-sided differences, an explicit two-stage
//! time integrator under a CFL bound, and greedy trajectory synthesis from
//! the stored feedback policy.
//!
//! The dynamic-programming equation being marched is
//!
//! ```text
//! u_t = a(x, y, s) u_x + b(x, y, s) u_y - L(x, y, s)
//! a = g s x y >= 0,   b = g y (1 - s x)
//! ```
//!
//! with terminal data `u(T) = -c1 * x_inf(x, y)` and the control chosen
//! pointwise to minimize the right-hand side. In the log coordinate the
//! y-advection term becomes `b u_y = g (1 - s x) u_eta`, whose speed is
//! bounded away from both zero and infinity. This matters because the value
//! function varies on a logarithmic scale in `y` near the epidemic's early
//! phase (`u_y ~ 1/y` as `y -> 0`): a uniform-in-`y` grid cannot resolve
//! that boundary layer, and the resulting gradient noise corrupts the
//! feedback control exactly where realistic outbreaks start.

use crate::cost::CostSpec;
use crate::error::{Error, Result};
use crate::long_term::x_infinity;
use crate::pmp::trapezoid_running_cost;
use crate::sir::{self, ControlSchedule, Params, State, Trajectory};
use std::io::Write as _;
use std::path::Path;

// Safety factor applied to the per-dimension CFL bound. The scheme's true
// 2-D stability limit couples the two advection speeds (dt * (a/dx +
// b/deta) <= 1); taking 0.6 of the per-dimension minimum stays ~30% below
// that combined limit at the worst grid cell.
pub const CFL_SAFETY: f64 = 0.6;
const DOMAIN_LO: f64 = 1e-4;
const DOMAIN_HI: f64 = 1.0;

/// Grid over `[x_lo, x_hi] x [y_lo, y_hi]`, uniform in `x` and in
/// `eta = ln y`, restricted to the simplex `x + y <= 1` (with one-cell slack
/// so the boundary row is usable by the one-sided stencils).
#[derive(Debug, Clone)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
    pub dx: f64,
    /// Spacing in `eta = ln y`.
    pub deta: f64,
    eta_lo: f64,
    /// Row-major `ny * nx` mask; inactive nodes lie outside the simplex.
    active: Vec<bool>,
    /// Indices of active nodes, for tight iteration.
    active_idx: Vec<u32>,
}

impl Grid {
    pub fn new(nx: usize, ny: usize) -> Result<Self> {
        Self::with_bounds(nx, ny, DOMAIN_LO, DOMAIN_HI, DOMAIN_LO, DOMAIN_HI)
    }

    pub fn with_bounds(
        nx: usize,
        ny: usize,
        x_lo: f64,
        x_hi: f64,
        y_lo: f64,
        y_hi: f64,
    ) -> Result<Self> {
        if nx < 8 || ny < 8 {
            return Err(Error::Validation(format!(
                "grid must be at least 8x8, got {nx}x{ny}"
            )));
        }
        if !(x_lo < x_hi && y_lo < y_hi && x_lo >= 0.0 && y_lo > 0.0) {
            return Err(Error::Validation(format!(
                "bad grid bounds [{x_lo},{x_hi}]x[{y_lo},{y_hi}] (y_lo must be > 0)"
            )));
        }
        let dx = (x_hi - x_lo) / (nx - 1) as f64;
        let eta_lo = y_lo.ln();
        let deta = (y_hi.ln() - eta_lo) / (ny - 1) as f64;
        let mut active = vec![false; nx * ny];
        let mut active_idx = Vec::new();
        for j in 0..ny {
            let y = (eta_lo + j as f64 * deta).exp();
            // Local node gap in y; grows with y on the log-spaced axis.
            let gap = y * deta.exp_m1();
            for i in 0..nx {
                let x = x_lo + i as f64 * dx;
                if x + y <= 1.0 + dx.max(gap) {
                    active[j * nx + i] = true;
                    active_idx.push((j * nx + i) as u32);
                }
            }
        }
        Ok(Grid {
            nx,
            ny,
            x_lo,
            x_hi,
            y_lo,
            y_hi,
            dx,
            deta,
            eta_lo,
            active,
            active_idx,
        })
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x_lo + i as f64 * self.dx
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        (self.eta_lo + j as f64 * self.deta).exp()
    }

    #[inline]
    pub fn is_active(&self, i: usize, j: usize) -> bool {
        self.active[j * self.nx + i]
    }

    pub fn active_count(&self) -> usize {
        self.active_idx.len()
    }

    /// Largest stable explicit step for the given parameters: the fastest
    /// characteristic speeds are `max(a) = g s0 x y` in `x` and
    /// `max(|b| / y) = g max(1, s0 x - 1)` in `eta = ln y` over the grid.
    pub fn cfl_dt(&self, p: &Params) -> f64 {
        let mut amax: f64 = 0.0;
        let mut bmax: f64 = 0.0;
        for &k in &self.active_idx {
            let (i, j) = ((k as usize) % self.nx, (k as usize) / self.nx);
            let (x, y) = (self.x(i), self.y(j));
            amax = amax.max(p.gamma * p.sigma0 * x * y);
            bmax = bmax.max(p.gamma * (p.sigma0 * x - 1.0).max(1.0));
        }
        CFL_SAFETY * (self.dx / amax).min(self.deta / bmax)
    }
}

/// Value function samples on a grid at one time level. Inactive nodes hold
/// NaN.
#[derive(Debug, Clone)]
pub struct ValueFunction {
    pub u: Vec<f64>,
    pub t: f64,
}

/// `u(T, x, y) = -c1 * x_inf(x, y)`, extended by the limit `-c1 / sigma0`
/// at the herd-immunity corner.
pub fn terminal_value(grid: &Grid, p: &Params, cost: &CostSpec, horizon: f64) -> Result<ValueFunction> {
    let mut u = vec![f64::NAN; grid.nx * grid.ny];
    for &k in &grid.active_idx {
        let (i, j) = ((k as usize) % grid.nx, (k as usize) / grid.nx);
        let (x, y) = (grid.x(i), grid.y(j));
        // Grid slack can put nodes slightly outside the simplex; project.
        let scale = (x + y).max(1.0);
        u[k as usize] = -cost.c1 * x_infinity(x / scale, y / scale, p.sigma0)?;
    }
    Ok(ValueFunction { u, t: horizon })
}

/// Closed-form minimizer of `a u_x + b u_y - L` over `sigma in [0, sigma0]`
/// given the local gradient of `u`. The sigma-dependent part is
/// `g x y (u_x - u_y) sigma + c2 (1 - sigma/sigma0)^2`, a quadratic in
/// `sigma` (or linear when `c2 = 0`, giving a bang-bang rule).
#[inline]
pub fn optimal_sigma_from_gradients(
    x: f64,
    y: f64,
    ux: f64,
    uy: f64,
    p: &Params,
    cost: &CostSpec,
) -> f64 {
    // Coefficient of sigma in the Hamiltonian being minimized (sign flipped
    // relative to u_t because we pick sigma to make u_t - ... minimal; see
    // the derivation in the module docs: minimizing the running Hamiltonian
    // -a u_x - b u_y + L over sigma).
    let slope = p.gamma * x * y * (uy - ux);
    if cost.c2 == 0.0 {
        return if slope > 0.0 { 0.0 } else { p.sigma0 };
    }
    let raw = p.sigma0 * (1.0 - p.sigma0 * slope / (2.0 * cost.c2));
    raw.clamp(0.0, p.sigma0)
}

struct Stencil {
    /// For each active node: index, neighbor offsets usable for one-sided
    /// differences in each direction.
    idx: Vec<u32>,
    ix: Vec<u16>,
    iy: Vec<u16>,
    /// Number of usable backward neighbors in x (0, 1, or 2).
    bx: Vec<u8>,
    /// Whether the forward x neighbor exists (for the curvature limiter).
    fx: Vec<u8>,
    /// Usable neighbors below / above in y.
    by_dn: Vec<u8>,
    by_up: Vec<u8>,
}

fn build_stencil(grid: &Grid) -> Stencil {
    let n = grid.active_count();
    let mut st = Stencil {
        idx: Vec::with_capacity(n),
        ix: Vec::with_capacity(n),
        iy: Vec::with_capacity(n),
        bx: Vec::with_capacity(n),
        fx: Vec::with_capacity(n),
        by_dn: Vec::with_capacity(n),
        by_up: Vec::with_capacity(n),
    };
    for &k in &grid.active_idx {
        let i = (k as usize) % grid.nx;
        let j = (k as usize) / grid.nx;
        let bx = if i >= 2 && grid.is_active(i - 1, j) && grid.is_active(i - 2, j) {
            2
        } else if i >= 1 && grid.is_active(i - 1, j) {
            1
        } else {
            0
        };
        let by_dn = if j >= 2 && grid.is_active(i, j - 1) && grid.is_active(i, j - 2) {
            2
        } else if j >= 1 && grid.is_active(i, j - 1) {
            1
        } else {
            0
        };
        let by_up = if j + 2 < grid.ny && grid.is_active(i, j + 1) && grid.is_active(i, j + 2) {
            2
        } else if j + 1 < grid.ny && grid.is_active(i, j + 1) {
            1
        } else {
            0
        };
        let fx = u8::from(i + 1 < grid.nx && grid.is_active(i + 1, j));
        st.idx.push(k);
        st.ix.push(i as u16);
        st.iy.push(j as u16);
        st.bx.push(bx);
        st.fx.push(fx);
        st.by_dn.push(by_dn);
        st.by_up.push(by_up);
    }
    st
}

#[inline]
fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() <= b.abs() {
        a
    } else {
        b
    }
}

/// Upwind derivative toward decreasing index (ENO2): first-order backward
/// difference plus a minmod-limited curvature correction. The limiter
/// compares the one-sided curvature against the centered one and drops the
/// correction entirely where they disagree, which keeps the scheme second
/// order in smooth regions but prevents the oscillation (and eventual
/// blow-up through the control feedback) that an unlimited one-sided stencil
/// produces at value-function kinks.
#[inline]
fn upwind_dn(u0: f64, um1: f64, um2: Option<f64>, up1: Option<f64>, h: f64) -> f64 {
    let d1 = (u0 - um1) / h;
    let curv_b = um2.map(|v| (u0 - 2.0 * um1 + v) / (h * h));
    let curv_c = up1.map(|v| (v - 2.0 * u0 + um1) / (h * h));
    match (curv_b, curv_c) {
        (Some(a), Some(b)) => d1 + 0.5 * h * minmod(a, b),
        _ => d1, // boundary: first order
    }
}

/// Mirror of [`upwind_dn`] toward increasing index.
#[inline]
fn upwind_up(u0: f64, up1: f64, up2: Option<f64>, um1: Option<f64>, h: f64) -> f64 {
    let d1 = (up1 - u0) / h;
    let curv_f = up2.map(|v| (v - 2.0 * up1 + u0) / (h * h));
    let curv_c = um1.map(|v| (up1 - 2.0 * u0 + v) / (h * h));
    match (curv_f, curv_c) {
        (Some(a), Some(b)) => d1 - 0.5 * h * minmod(a, b),
        _ => d1,
    }
}

/// Right-hand side `u_t = a u_x + b u_y - L` for all active nodes, and the
/// minimizing control at each node.
fn rhs(
    u: &[f64],
    grid: &Grid,
    st: &Stencil,
    p: &Params,
    cost: &CostSpec,
    out: &mut [f64],
    sigma_out: Option<&mut [f32]>,
) {
    let nx = grid.nx;
    let (dx, deta) = (grid.dx, grid.deta);
    let mut sigmas = sigma_out;
    for m in 0..st.idx.len() {
        let k = st.idx[m] as usize;
        let x = grid.x(st.ix[m] as usize);
        let y = grid.y(st.iy[m] as usize);
        let u0 = u[k];

        // Each directional derivative is computed once; sigma selection uses
        // a symmetric eta-gradient (average of the upwind candidates) and the
        // Hamiltonian then uses the candidate matching the chosen drift sign.
        let ux = match st.bx[m] {
            2 => upwind_dn(
                u0,
                u[k - 1],
                Some(u[k - 2]),
                (st.fx[m] > 0).then(|| u[k + 1]),
                dx,
            ),
            1 => (u0 - u[k - 1]) / dx,
            _ => 0.0,
        };
        let ue_dn = match st.by_dn[m] {
            2 => Some(upwind_dn(
                u0,
                u[k - nx],
                Some(u[k - 2 * nx]),
                (st.by_up[m] > 0).then(|| u[k + nx]),
                deta,
            )),
            1 => Some((u0 - u[k - nx]) / deta),
            _ => None,
        };
        let ue_up = match st.by_up[m] {
            2 => Some(upwind_up(
                u0,
                u[k + nx],
                Some(u[k + 2 * nx]),
                (st.by_dn[m] > 0).then(|| u[k - nx]),
                deta,
            )),
            1 => Some((u[k + nx] - u0) / deta),
            _ => None,
        };
        let ue_c = match (ue_dn, ue_up) {
            (Some(a), Some(b)) => 0.5 * (a + b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => 0.0,
        };
        // u_y = u_eta / y under eta = ln y.
        let sigma = optimal_sigma_from_gradients(x, y, ux, ue_c / y, p, cost);
        // b u_y = gamma y (1 - sigma x) u_eta / y: the log-coordinate speed.
        let beff = p.gamma * (1.0 - sigma * x);
        let ue = if beff > 0.0 {
            ue_dn.unwrap_or(0.0)
        } else {
            ue_up.unwrap_or(0.0)
        };
        let a = p.gamma * sigma * x * y;
        out[k] = a * ux + beff * ue - cost.running(x, y, sigma, p.sigma0);
        if let Some(s) = sigmas.as_deref_mut() {
            s[k] = sigma as f32;
        }
    }
}

/// One explicit backward step of size `dt` (Heun's two-stage scheme).
/// Rejects steps violating the CFL bound.
pub fn step_backward(
    vf: &ValueFunction,
    grid: &Grid,
    p: &Params,
    cost: &CostSpec,
    dt: f64,
) -> Result<ValueFunction> {
    let dt_max = grid.cfl_dt(p) / CFL_SAFETY;
    if dt > dt_max {
        return Err(Error::CflViolation { dt, dt_max });
    }
    let st = build_stencil(grid);
    let mut k1 = vec![0.0; vf.u.len()];
    let mut k2 = vec![0.0; vf.u.len()];
    let mut stage = vf.u.clone();
    rhs(&vf.u, grid, &st, p, cost, &mut k1, None);
    for &k in &grid.active_idx {
        stage[k as usize] = vf.u[k as usize] - dt * k1[k as usize];
    }
    rhs(&stage, grid, &st, p, cost, &mut k2, None);
    let mut u = vf.u.clone();
    for &k in &grid.active_idx {
        u[k as usize] -= 0.5 * dt * (k1[k as usize] + k2[k as usize]);
    }
    Ok(ValueFunction { u, t: vf.t - dt })
}

/// Feedback control stored as time slices of the minimizing `sigma` on the
/// grid. Slices are thinned to roughly `slice_stride` apart in time; lookup
/// is nearest-in-time plus bilinear interpolation in `(x, y)`.
#[derive(Debug, Clone)]
pub struct FeedbackPolicy {
    pub grid: Grid,
    /// Slice timestamps, strictly decreasing (stored in march order T -> 0).
    pub times: Vec<f64>,
    slices: Vec<Vec<f32>>,
    pub sigma0: f64,
}

impl FeedbackPolicy {
    /// Control at `(t, x, y)`. States below the grid floor in `y` clamp to
    /// the bottom row (the epidemic dying out is normal); exiting above or
    /// to the right of the grid is an error.
    pub fn sigma(&self, t: f64, s: State) -> Result<f64> {
        let g = &self.grid;
        if s.x > g.x_hi + 1e-9 || s.y > g.y_hi + 1e-9 {
            return Err(Error::OutsideGrid { x: s.x, y: s.y });
        }
        let x = s.x.clamp(g.x_lo, g.x_hi);
        let y = s.y.clamp(g.y_lo, g.y_hi);
        // Nearest slice in time.
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        // times strictly decreasing: binary search.
        let (mut lo, mut hi) = (0usize, self.times.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.times[mid] >= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        for c in [lo.saturating_sub(1), lo, (lo + 1).min(self.times.len() - 1)] {
            let d = (self.times[c] - t).abs();
            if d < best_d {
                best_d = d;
                best = c;
            }
        }
        let slice = &self.slices[best];

        let fx = ((x - g.x_lo) / g.dx).clamp(0.0, (g.nx - 1) as f64);
        let fy = ((y.ln() - g.eta_lo) / g.deta).clamp(0.0, (g.ny - 1) as f64);
        let i = (fx.floor() as usize).min(g.nx - 2);
        let j = (fy.floor() as usize).min(g.ny - 2);
        let wx = fx - i as f64;
        let wy = fy - j as f64;
        let at = |ii: usize, jj: usize| -> f64 {
            let v = slice[jj * g.nx + ii] as f64;
            if v.is_nan() {
                // Inactive corner beyond the simplex: fall back to the
                // nearest active value in the cell.
                slice[j * g.nx + i] as f64
            } else {
                v
            }
        };
        let v = (1.0 - wx) * (1.0 - wy) * at(i, j)
            + wx * (1.0 - wy) * at(i + 1, j)
            + (1.0 - wx) * wy * at(i, j + 1)
            + wx * wy * at(i + 1, j + 1);
        Ok(v.clamp(0.0, self.sigma0))
    }
}

/// Full backward solve output.
pub struct HjbSolution {
    pub value: ValueFunction,
    pub policy: FeedbackPolicy,
    pub steps: usize,
    pub dt: f64,
}

/// March the value function from `t = horizon` back to `t = 0`, storing
/// policy slices roughly `slice_stride` apart (pass `None` for a default of
/// one slice per unit time).
pub fn solve(
    grid: &Grid,
    p: &Params,
    cost: &CostSpec,
    horizon: f64,
    slice_stride: Option<f64>,
) -> Result<HjbSolution> {
    cost.validate()?;
    if !(horizon > 0.0) {
        return Err(Error::Validation(format!("horizon must be > 0, got {horizon}")));
    }
    let dt_cfl = grid.cfl_dt(p);
    let steps = (horizon / dt_cfl).ceil() as usize;
    let dt = horizon / steps as f64;
    let stride = slice_stride.unwrap_or(1.0).max(dt);

    let st = build_stencil(grid);
    let mut u = terminal_value(grid, p, cost, horizon)?.u;
    let mut k1 = vec![0.0; u.len()];
    let mut k2 = vec![0.0; u.len()];
    let mut stage = u.clone();

    let mut times = Vec::new();
    let mut slices: Vec<Vec<f32>> = Vec::new();
    let mut sigma_buf = vec![f32::NAN; u.len()];
    let mut next_slice_t = horizon;

    let mut t = horizon;
    for _ in 0..steps {
        let want_slice = t <= next_slice_t + 1e-12;
        rhs(
            &u,
            grid,
            &st,
            p,
            cost,
            &mut k1,
            if want_slice { Some(&mut sigma_buf) } else { None },
        );
        if want_slice {
            times.push(t);
            slices.push(sigma_buf.clone());
            next_slice_t = t - stride;
        }
        for &k in &grid.active_idx {
            stage[k as usize] = u[k as usize] - dt * k1[k as usize];
        }
        rhs(&stage, grid, &st, p, cost, &mut k2, None);
        for &k in &grid.active_idx {
            u[k as usize] -= 0.5 * dt * (k1[k as usize] + k2[k as usize]);
        }
        t -= dt;
    }
    // Final slice at t = 0.
    rhs(&u, grid, &st, p, cost, &mut k1, Some(&mut sigma_buf));
    times.push(0.0);
    slices.push(sigma_buf);

    Ok(HjbSolution {
        value: ValueFunction { u, t: 0.0 },
        policy: FeedbackPolicy {
            grid: grid.clone(),
            times,
            slices,
            sigma0: p.sigma0,
        },
        steps,
        dt,
    })
}

impl ValueFunction {
    /// Bilinear sample of the value surface.
    pub fn at(&self, grid: &Grid, x: f64, y: f64) -> Result<f64> {
        if x < grid.x_lo - 1e-12
            || x > grid.x_hi + 1e-12
            || y < grid.y_lo - 1e-12
            || y > grid.y_hi + 1e-12
        {
            return Err(Error::OutsideGrid { x, y });
        }
        let fx = ((x - grid.x_lo) / grid.dx).clamp(0.0, (grid.nx - 1) as f64);
        let fy = ((y.max(grid.y_lo).ln() - grid.eta_lo) / grid.deta)
            .clamp(0.0, (grid.ny - 1) as f64);
        let i = (fx.floor() as usize).min(grid.nx - 2);
        let j = (fy.floor() as usize).min(grid.ny - 2);
        let wx = fx - i as f64;
        let wy = fy - j as f64;
        let base = self.u[j * grid.nx + i];
        if base.is_nan() {
            return Err(Error::OutsideGrid { x, y });
        }
        // Cells straddling the simplex boundary have masked (NaN) corners;
        // substitute the in-simplex base corner for those.
        let at = |ii: usize, jj: usize| {
            let v = self.u[jj * grid.nx + ii];
            if v.is_nan() {
                base
            } else {
                v
            }
        };
        Ok((1.0 - wx) * (1.0 - wy) * at(i, j)
            + wx * (1.0 - wy) * at(i + 1, j)
            + (1.0 - wx) * wy * at(i, j + 1)
            + wx * wy * at(i + 1, j + 1))
    }
}

/// Result of running the closed-loop policy from an initial state.
pub struct SynthesizedTrajectory {
    pub trajectory: Trajectory,
    pub schedule: ControlSchedule,
    pub running_cost: f64,
    /// `-c1 x_inf(x(T), y(T)) + integral of L`.
    pub objective: f64,
}

/// Integrate the closed loop `sigma = policy(t, x, y)` forward with RK4.
pub fn synthesize_trajectory(
    policy: &FeedbackPolicy,
    s0: State,
    p: &Params,
    cost: &CostSpec,
    horizon: f64,
    dt: f64,
) -> Result<SynthesizedTrajectory> {
    let mut err: Option<Error> = None;
    let traj = sir::integrate_with(
        s0,
        p,
        |t, s| match policy.sigma(t, s) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                p.sigma0
            }
        },
        horizon,
        dt,
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    let running_cost = trapezoid_running_cost(&traj, cost, p);
    let end = traj.last_state();
    let objective = -cost.c1 * x_infinity(end.x, end.y, p.sigma0)? + running_cost;
    let schedule = ControlSchedule::sampled(traj.sigmas.clone(), dt, p.sigma0, 0.0, true)?;
    Ok(SynthesizedTrajectory {
        trajectory: traj,
        schedule,
        running_cost,
        objective,
    })
}

/// Plain-text grid dump: one `key value` header line per metadata field,
/// then row-major node values, one row of the grid per line.
pub fn write_grid_dump(path: &Path, grid: &Grid, vf: &ValueFunction) -> Result<()> {
    let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(&mut f);
    let hdr = format!(
        "nx {}\nny {}\nx_lo {:.11e}\nx_hi {:.11e}\ny_lo {:.11e}\ny_hi {:.11e}\nt {:.11e}\n",
        grid.nx, grid.ny, grid.x_lo, grid.x_hi, grid.y_lo, grid.y_hi, vf.t
    );
    w.write_all(hdr.as_bytes()).map_err(|e| Error::io(path, e))?;
    let mut line = String::new();
    for j in 0..grid.ny {
        line.clear();
        for i in 0..grid.nx {
            if i > 0 {
                line.push(' ');
            }
            let v = vf.u[j * grid.nx + i];
            if v.is_nan() {
                line.push_str("nan");
            } else {
                line.push_str(&format!("{v:.11e}"));
            }
        }
        line.push('\n');
        w.write_all(line.as_bytes()).map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}
