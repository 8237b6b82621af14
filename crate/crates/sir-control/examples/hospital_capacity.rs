//! Hospital-capacity scenarios: a soft penalty on infections above y_max
//! makes the optimal control flatten the curve just below capacity. With a
//! heavy penalty (c3 = 100) capacity is respected; with a light one
//! (c3 = 1) it is briefly exceeded in exchange for less overshoot.
//!
//! Run with `cargo run --example hospital_capacity` (a minute or two).

use sir_control::scenario::{self, SolverChoice};
use sir_control::Result;

fn main() -> Result<()> {
    for preset in ["min_hosp_1", "min_hosp_2"] {
        let mut config = scenario::load_preset(preset)?;
        config.solver = SolverChoice::Hjb;
        let report = scenario::run(&config)?;
        print!("{}", report.render());
        let hjb = report.get("hjb").expect("hjb report");
        let base = report.get("baseline").expect("baseline report");
        println!(
            "=> peak y {:.4} vs uncontrolled {:.4} (capacity {}), overshoot z_inf {:.4} vs {:.4}\n",
            hjb.peak_y, base.peak_y, config.cost.y_max, hjb.z_inf, base.z_inf
        );
    }
    Ok(())
}
