//! Brackets on the critical radius of a reduced pair in both directions.

use cyclic_steering::lhs::{one_way_report, RadiusParams};
use cyclic_steering::states::{BuiltinState, TriFamilyState};

fn main() -> cyclic_steering::Result<()> {
    let params = RadiusParams::default();
    for p in [1.0, 0.9] {
        let family = TriFamilyState::new(BuiltinState::B1.state()?, p)?;
        let r = one_way_report(&family, &params)?;
        println!("b1 at p = {p}");
        println!("  AB: {:.4} <= R <= {:.4}", r.ab.r_in, r.ab.r_out);
        println!("  BA: {:.4} <= R <= {:.4}", r.ba.r_in, r.ba.r_out);
        println!("  verdict: {}", r.verdict.as_str());
    }
    Ok(())
}
