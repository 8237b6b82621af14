//! Optimal intervention controls for the SIR epidemic model over a finite
//! window.
//!
//! The library answers one question in three independent ways: given a
//! contact-reduction control `sigma(t)` in `[0, sigma0]`, how should it be
//! scheduled to leave as many people never-infected as possible (optionally
//! trading that off against the social cost of the control and a hospital
//! capacity penalty)?
//!
//! - [`analytic`] — the exact single-switch solution for the cost-free
//!   problem: do nothing until the switching time, then full suppression
//!   until the deadline.
//! - [`pmp`] — a forward-backward sweep on the first-order optimality
//!   system, for smooth running costs.
//! - [`hjb`] — a backward-induction grid solver producing a feedback
//!   policy, for any cost in [`cost`].
//!
//! Supporting modules: [`sir`] (dynamics and schedules), [`long_term`]
//! (final-size formulas built on the Lambert W function), [`cost`]
//! (running/terminal cost specifications), and [`scenario`] (config files,
//! presets, orchestration, CSV output).
//!
//! # Example
//!
//! ```
//! use sir_control::{analytic, sir::{Params, State}};
//!
//! let p = Params::new(0.1, 3.0).unwrap();
//! let s0 = State::new(0.99, 0.01).unwrap();
//! let sol = analytic::optimal_bang_bang(s0, &p, 100.0).unwrap();
//! assert!(sol.t_star > 0.0);
//! // The optimum leaves more susceptibles than doing nothing.
//! let uncontrolled = sir_control::long_term::x_infinity(0.99, 0.01, 3.0).unwrap();
//! assert!(sol.x_inf_achieved > uncontrolled);
//! ```

pub mod analytic;
pub mod cost;
pub mod error;
pub mod hjb;
pub mod long_term;
pub mod pmp;
pub mod scenario;
pub mod sir;

pub use cost::{CostKind, CostSpec};
pub use error::{Error, Result};
pub use sir::{ControlSchedule, Params, State, Trajectory};
