//! Three copies of a reduced pair arranged in a ring. Tracing out the last
//! pair leaves one copy of the pair next to two single-qubit marginals.

use cyclic_steering::states::{
    cyclic_product_marginal_residual, cyclic_tensor_product, BuiltinState, PartyPair, TriFamilyState,
};

fn main() -> cyclic_steering::Result<()> {
    let family = TriFamilyState::new(BuiltinState::B2.state()?, 1.0)?;
    let ab = family.pair(PartyPair::AB)?;
    let bc = family.pair(PartyPair::BC)?;
    let ca = family.pair(PartyPair::CA)?;
    println!("shift invariance: |rho_AB - rho_BC| = {:.2e}", ab.matrix().max_abs_diff(bc.matrix()));
    let ring = cyclic_tensor_product(&ab, &bc, &ca)?;
    println!("composite dims {:?}, trace {:.12}", ring.dims(), ring.matrix().trace().re);
    println!("marginal residual {:.2e}", cyclic_product_marginal_residual(&ring, &ab, &bc, &ca)?);
    Ok(())
}
