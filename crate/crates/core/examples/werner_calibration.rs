//! The Werner family has known thresholds: entangled above 1/3, steerable
//! above 1/2. Both should fall inside the computed brackets.

use cyclic_steering::entanglement::is_ppt;
use cyclic_steering::lhs::{critical_radius_bounds, RadiusParams};
use cyclic_steering::states::{singlet, werner};

fn main() -> cyclic_steering::Result<()> {
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if is_ppt(&werner(mid)?, &[0])? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    println!("PPT boundary in [{lo:.6}, {hi:.6}]");

    for level in [2, 3, 4] {
        let params = RadiusParams { hidden_level: level, ..RadiusParams::default() };
        let r = critical_radius_bounds(&singlet(), &params)?;
        println!("hidden level {level}: steering threshold in [{:.4}, {:.4}]", r.r_in, r.r_out);
    }
    Ok(())
}
