//! Six-setting icosahedral inequality evaluated in both directions.

use cyclic_steering::states::{BuiltinState, PartyPair, TriFamilyState};
use cyclic_steering::steering::{one_way_gap_scenario1, SteeringFunctional};

fn main() -> cyclic_steering::Result<()> {
    let functional = SteeringFunctional::icosahedral();
    for b in [BuiltinState::Sc1, BuiltinState::W] {
        let rho = TriFamilyState::new(b.state()?, 1.0)?.pair(PartyPair::AB)?;
        let r = one_way_gap_scenario1(&rho, &functional)?;
        println!("{b:>4}: L = {:.6}  Q_AB = {:.6}  Q_BA = {:.6}  one-way = {}", r.l, r.q_ab, r.q_ba, r.is_one_way());
    }
    Ok(())
}
