// scratch experiment - delete me
use sir_control::cost::CostSpec;
use sir_control::long_term::x_infinity;
use sir_control::pmp::{forward_backward_sweep_from, SweepOptions};
use sir_control::sir::{Params, State};

fn main() {
    let p = Params::new(0.1, 3.0).unwrap();
    let s0 = State::new(0.9, 0.01).unwrap();
    let horizon = 100.0;
    let cost = CostSpec::quadratic_plus_hospital(1e-2, 1.0, 0.1);
    let shapes: [(f64, f64); 5] = [(13.0, 1.7), (13.0, 1.2), (10.0, 2.0), (16.0, 1.5), (0.0, 3.0)];
    for (t_on, lvl) in shapes {
        let opts = SweepOptions { max_iter: 60000, omega: 0.1, omega_min: 1e-4 };
        let init = |t: f64| if t < t_on { 3.0 } else { lvl };
        match forward_backward_sweep_from(s0, &p, &cost, horizon, 0.02, opts, init) {
            Ok(sw) => {
                let (tp, yp) = sw.trajectory.peak_y();
                let end = sw.trajectory.last_state();
                let xi = x_infinity(end.x, end.y.max(1e-12), p.sigma0).unwrap();
                let sig_end = *sw.sigmas.last().unwrap();
                // time above capacity
                let above: f64 = sw.times.windows(2).zip(sw.trajectory.states.windows(2))
                    .map(|(t, s)| if s[0].y > 0.1 { t[1]-t[0] } else { 0.0 }).sum();
                println!("init({t_on},{lvl}): J={:+.5} peak y={yp:.4}@{tp:.1} above-cap {above:.1}d sigma(T)={sig_end:.3} x_inf={xi:.4} iters={}",
                    sw.objective, sw.iterations);
            }
            Err(e) => println!("init({t_on},{lvl}): failed: {e}"),
        }
    }
}
