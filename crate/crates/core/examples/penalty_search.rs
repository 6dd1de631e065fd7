//! A short penalized search for a state with a one-way gap on the
//! icosahedral inequality. Raise the restart count to approach the optimum.

use cyclic_steering::search::{multi_restart, NMParams, ObjectiveSpec};

fn main() -> cyclic_steering::Result<()> {
    let spec = ObjectiveSpec::scenario1();
    let result = multi_restart(&spec, 16, 7, &NMParams::default())?;
    for r in &result.log {
        println!("restart {:>2}: q = {:.6} after {} iterations", r.restart, r.q, r.iters);
    }
    println!("best q = {:.6}", result.best_q);
    println!("coefficients: {:?}", result.best_coeffs);
    Ok(())
}
