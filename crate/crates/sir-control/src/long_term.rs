//! Long-time limit of the epidemic: the conserved quantity `mu`, the
//! closed-form final susceptible fraction `x_inf` through the principal
//! Lambert-W branch, and its gradients.
//!
//! Along uncontrolled trajectories the quantity
//! `mu(x, y, sigma0) = x * exp(-sigma0 * (x + y))` is constant, and
//!
//! ```text
//! x_inf(x, y, sigma0) = -W0(-mu * sigma0) / sigma0
//! ```
//!
//! is the susceptible fraction the trajectory converges to.

use crate::error::{Error, Result};
use crate::sir::{Params, State};

const INV_E: f64 = 1.0 / std::f64::consts::E;

/// Arguments this far below `-1/e` are clamped to the branch point rather
/// than rejected; `x` near the herd-immunity threshold with `y -> 0`
/// legitimately lands there up to rounding.
const BRANCH_CLAMP: f64 = 1e-14;

/// Denominators `1 - sigma0 * x_inf` smaller than this are treated as the
/// herd-immunity singularity; the gradients genuinely blow up there.
pub const SINGULARITY_THRESHOLD: f64 = 1e-10;

/// Principal branch of the Lambert W function on `[-1/e, inf)`.
///
/// Initial guess from the branch-point series (small `e*z + 1`) or from
/// log-asymptotics (large `z`), refined by Halley iteration. The result
/// satisfies `|w*e^w - z| <= 1e-12 * (1 + |z|)`.
pub fn lambert_w0(z: f64) -> Result<f64> {
    if z.is_nan() || z < -INV_E - BRANCH_CLAMP {
        return Err(Error::LambertDomain { z });
    }
    let z = z.max(-INV_E);
    if z == 0.0 {
        return Ok(0.0);
    }

    // q = e*z + 1 >= 0 measures distance from the branch point.
    let q = std::f64::consts::E * z + 1.0;
    if q <= 1e-12 {
        // Series about the branch point; Halley would divide by 1 + w ~ 0.
        let p = (2.0 * q).sqrt();
        return Ok(-1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p);
    }

    let mut w = if z < -0.25 {
        let p = (2.0 * q).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if z < 2.0 {
        // Crude start near zero; Halley converges in a few iterations.
        z / (1.0 + z)
    } else {
        let l1 = z.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    if !w.is_finite() {
        w = if z > 0.0 { z.ln().max(0.0) } else { -0.5 };
    }

    let tol = 1e-13 * (1.0 + z.abs());
    for _ in 0..60 {
        let ew = w.exp();
        let f = w * ew - z;
        if f.abs() <= tol {
            break;
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= 1e-16 * (1.0 + w.abs()) {
            break;
        }
    }
    debug_assert!((w * w.exp() - z).abs() <= 1e-12 * (1.0 + z.abs()));
    Ok(w.max(-1.0))
}

fn check_domain(x: f64, y: f64) -> Result<()> {
    let s = State { x, y };
    if !s.in_domain(crate::sir::D_TOLERANCE) {
        return Err(Error::OutsideDomain {
            x,
            y,
            tol: crate::sir::D_TOLERANCE,
        });
    }
    Ok(())
}

/// Conserved quantity `mu(x, y, sigma0) = x * exp(-sigma0 * (x + y))`.
pub fn mu(x: f64, y: f64, sigma0: f64) -> Result<f64> {
    check_domain(x, y)?;
    Ok(x * (-sigma0 * (x + y)).exp())
}

/// Final susceptible fraction reached from `(x, y)` with no further control.
///
/// Always lies in `(0, 1/sigma0]`; equals the fixed point
/// `x_inf = mu * exp(sigma0 * x_inf)`.
pub fn x_infinity(x: f64, y: f64, sigma0: f64) -> Result<f64> {
    let m = mu(x, y, sigma0)?;
    // -mu*sigma0 >= -1/e holds exactly on the simplex; only rounding can
    // push the argument below the branch point, which lambert_w0 clamps.
    let w = lambert_w0(-m * sigma0)?;
    Ok(-w / sigma0)
}

/// Partials of `x_inf` with respect to the current state and `mu`.
#[derive(Debug, Clone, Copy)]
pub struct XInfGradient {
    pub d_dx: f64,
    pub d_dy: f64,
    pub d_dmu: f64,
}

/// Gradient of `x_infinity`. Errors near the herd-immunity corner
/// (`x_inf -> 1/sigma0`) where all three partials are singular.
pub fn x_infinity_gradient(x: f64, y: f64, sigma0: f64) -> Result<XInfGradient> {
    let xi = x_infinity(x, y, sigma0)?;
    let denom = 1.0 - sigma0 * xi;
    if denom.abs() < SINGULARITY_THRESHOLD {
        return Err(Error::HerdImmunitySingularity { denom });
    }
    let d_dy = -sigma0 * xi / denom;
    let d_dx = (1.0 - 1.0 / (x * sigma0)) * d_dy;
    let d_dmu = (sigma0 * xi).exp() / denom;
    Ok(XInfGradient { d_dx, d_dy, d_dmu })
}

/// Instantaneous rate of change of `x_infinity` under control `sigma`:
/// `gamma * y * x_inf * (sigma0 - sigma) / (1 - sigma0 * x_inf)`.
///
/// Zero when no intervention is applied (`sigma = sigma0`) and proportional
/// to the infected fraction: intervention moves the long-run limit only
/// while people are infectious.
pub fn x_infinity_rate(s: State, sigma: f64, p: &Params) -> Result<f64> {
    if sigma < -1e-12 || sigma > p.sigma0 + 1e-12 {
        return Err(Error::InvalidControl {
            sigma,
            sigma0: p.sigma0,
        });
    }
    let xi = x_infinity(s.x, s.y, p.sigma0)?;
    let denom = 1.0 - p.sigma0 * xi;
    if denom.abs() < SINGULARITY_THRESHOLD {
        return Err(Error::HerdImmunitySingularity { denom });
    }
    Ok(p.gamma * s.y * xi * (p.sigma0 - sigma) / denom)
}
