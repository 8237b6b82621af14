//! The three COVID-19 calibrations: baseline, severe (higher fatality,
//! cheaper control), and relaxed (costlier control). Writes trajectory
//! CSVs to ./covid_out and prints the comparison reports.
//!
//! Run with `cargo run --example covid_scenarios` (several minutes:
//! three 200-day value-function solves).

use sir_control::scenario;
use sir_control::Result;
use std::path::PathBuf;

fn main() -> Result<()> {
    let out = PathBuf::from("covid_out");
    for preset in ["covid_baseline", "covid_severe", "covid_relaxed"] {
        let mut config = scenario::load_preset(preset)?;
        config.output = Some(out.clone());
        let report = scenario::run(&config)?;
        print!("{}", report.render());
        if let Some(hjb) = report.get("hjb") {
            println!(
                "=> strongest control ({:.3} sigma0) at day {:.0}; infection peak at day {:.0}\n",
                hjb.min_sigma / config.params.sigma0,
                hjb.min_sigma_time,
                hjb.peak_y_time
            );
        }
    }
    println!("trajectory files in {}", out.display());
    Ok(())
}
