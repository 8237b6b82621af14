//! Running and terminal cost specifications.
//!
//! The objective is `J = -c1 * x_inf(x(T), y(T), sigma0) + integral of L`,
//! with the running cost selected by [`CostKind`]:
//!
//! ```text
//! L(x, y, sigma) = c2 * (1 - sigma/sigma0)^2 + c3 * g(y - y_max)
//! ```
//!
//! where `g` is a smooth ramp penalizing infections beyond hospital capacity.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostKind {
    /// No running cost; the exact single-switch solution applies.
    Zero,
    /// Quadratic cost of contact reduction.
    Quadratic,
    /// Quadratic control cost plus a hospital-overflow penalty.
    QuadraticPlusHospital,
}

impl CostKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CostKind::Zero => "zero",
            CostKind::Quadratic => "quadratic",
            CostKind::QuadraticPlusHospital => "quadratic_plus_hospital",
        }
    }
}

/// Cost coefficients. `c1` scales the terminal cost (default 1), `c2` the
/// quadratic control cost, `c3` the hospital-overflow penalty with capacity
/// `y_max`.
#[derive(Debug, Clone, Copy)]
pub struct CostSpec {
    pub kind: CostKind,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub y_max: f64,
}

impl CostSpec {
    pub fn zero() -> Self {
        CostSpec {
            kind: CostKind::Zero,
            c1: 1.0,
            c2: 0.0,
            c3: 0.0,
            y_max: 1.0,
        }
    }

    pub fn quadratic(c2: f64) -> Self {
        CostSpec {
            kind: CostKind::Quadratic,
            c1: 1.0,
            c2,
            c3: 0.0,
            y_max: 1.0,
        }
    }

    pub fn quadratic_plus_hospital(c2: f64, c3: f64, y_max: f64) -> Self {
        CostSpec {
            kind: CostKind::QuadraticPlusHospital,
            c1: 1.0,
            c2,
            c3,
            y_max,
        }
    }

    pub fn with_terminal_scale(mut self, c1: f64) -> Self {
        self.c1 = c1;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c2 >= 0.0 && self.c3 >= 0.0) {
            return Err(Error::Validation(format!(
                "cost weights must be nonnegative (c2={}, c3={})",
                self.c2, self.c3
            )));
        }
        if !(self.y_max > 0.0 && self.y_max <= 1.0) {
            return Err(Error::Validation(format!(
                "y_max must lie in (0, 1], got {}",
                self.y_max
            )));
        }
        if self.kind == CostKind::Zero && (self.c2 != 0.0 || self.c3 != 0.0) {
            return Err(Error::Validation(
                "cost kind zero forces c2 = c3 = 0".into(),
            ));
        }
        if !(self.c1.is_finite()) {
            return Err(Error::Validation(format!("c1 must be finite, got {}", self.c1)));
        }
        Ok(())
    }

    /// Running cost `L(x, y, sigma)`.
    #[inline]
    pub fn running(&self, _x: f64, y: f64, sigma: f64, sigma0: f64) -> f64 {
        match self.kind {
            CostKind::Zero => 0.0,
            CostKind::Quadratic => {
                let q = 1.0 - sigma / sigma0;
                self.c2 * q * q
            }
            CostKind::QuadraticPlusHospital => {
                let q = 1.0 - sigma / sigma0;
                self.c2 * q * q + self.c3 * hospital_penalty(y - self.y_max)
            }
        }
    }

    /// `dL/dsigma`; the control-cost term only.
    #[inline]
    pub fn d_dsigma(&self, sigma: f64, sigma0: f64) -> f64 {
        match self.kind {
            CostKind::Zero => 0.0,
            _ => -2.0 * self.c2 * (1.0 - sigma / sigma0) / sigma0,
        }
    }

    /// `dL/dy`; nonzero only for the hospital-overflow term.
    #[inline]
    pub fn d_dy(&self, y: f64) -> f64 {
        match self.kind {
            CostKind::QuadraticPlusHospital => self.c3 * hospital_penalty_deriv(y - self.y_max),
            _ => 0.0,
        }
    }

    /// `dL/dx` is identically zero for all implemented costs.
    #[inline]
    pub fn d_dx(&self) -> f64 {
        0.0
    }
}

/// Smooth ramp `g(v) = v / (1 + exp(-100 v))`: nearly zero for `v < 0`,
/// nearly linear for `v > 0`, with `g(0) = 0`. Evaluated branch-wise so it
/// is overflow-safe for any argument.
///
/// Note the ramp is slightly *negative* just below the threshold (minimum
/// about `-2.8e-3` near `v = -0.0125`), so the capacity term mildly rewards
/// holding the infected fraction a little under capacity. This is a
/// property of the model's chosen ramp, not an implementation artifact; the
/// optimal hospital-capacity policies hold the infection plateau at that
/// shallow minimum rather than exactly at capacity.
#[inline]
pub fn hospital_penalty(v: f64) -> f64 {
    if v >= 0.0 {
        v / (1.0 + (-100.0 * v).exp())
    } else {
        // v e^{100v} / (1 + e^{100v}): overflow-safe for very negative v.
        let t = (100.0 * v).exp();
        v * t / (1.0 + t)
    }
}

/// Derivative of [`hospital_penalty`]:
/// `g'(v) = (1 + e^{-100v}(1 + 100v)) / (1 + e^{-100v})^2`, evaluated on
/// whichever exponential branch cannot overflow.
#[inline]
pub fn hospital_penalty_deriv(v: f64) -> f64 {
    if v >= 0.0 {
        let t = (-100.0 * v).exp();
        let d = 1.0 + t;
        (1.0 + t * (1.0 + 100.0 * v)) / (d * d)
    } else {
        let t = (100.0 * v).exp();
        let d = 1.0 + t;
        t * (d + 100.0 * v) / (d * d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_values() {
        assert_eq!(hospital_penalty(0.0), 0.0);
        assert!((hospital_penalty(1.0) - 1.0).abs() < 1e-40);
        assert!(hospital_penalty(-1.0).abs() < 1e-40);
        assert!(hospital_penalty(-1e6).is_finite());
        assert!((hospital_penalty(1e6) - 1e6).abs() < 1e-6);
        // Bounded between 0 and v on either side.
        for v in [-0.5, -0.01, 0.003, 0.2] {
            let g = hospital_penalty(v);
            assert!(g >= v.min(0.0) && g <= v.max(0.0));
        }
    }

    #[test]
    fn ramp_derivative_matches_finite_differences() {
        let h = 1e-7;
        // Central differences away from the kink at 0.
        for v in [-0.3, -0.02, 0.013, 0.4] {
            let fd = (hospital_penalty(v + h) - hospital_penalty(v - h)) / (2.0 * h);
            let d = hospital_penalty_deriv(v);
            assert!((d - fd).abs() < 1e-5, "v={v}: {d} vs {fd}");
        }
        // One-sided at the kink: flat below, slope 1/2 above.
        assert_eq!(hospital_penalty_deriv(0.0), 0.5);
        let fd_up = (hospital_penalty(h) - hospital_penalty(0.0)) / h;
        assert!((fd_up - 0.5).abs() < 1e-5);
        assert!(hospital_penalty_deriv(-1e6).abs() < 1e-300 || hospital_penalty_deriv(-1e6) == 0.0);
        assert!((hospital_penalty_deriv(1e6) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn validation_rules() {
        assert!(CostSpec::zero().validate().is_ok());
        assert!(CostSpec::quadratic(-1.0).validate().is_err());
        assert!(CostSpec::quadratic_plus_hospital(0.01, 1.0, 0.0).validate().is_err());
        let mut bad = CostSpec::zero();
        bad.c2 = 0.1;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn running_cost_shapes() {
        let c = CostSpec::quadratic(0.5);
        assert_eq!(c.running(0.5, 0.1, 3.0, 3.0), 0.0);
        assert!((c.running(0.5, 0.1, 0.0, 3.0) - 0.5).abs() < 1e-15);
        let c = CostSpec::quadratic_plus_hospital(0.0, 2.0, 0.1);
        assert_eq!(c.running(0.5, 0.1, 3.0, 3.0), 0.0); // g(0) = 0 exactly
        assert!(c.running(0.5, 0.3, 3.0, 3.0) > 0.39);
    }
}
