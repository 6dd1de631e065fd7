//! Both outcomes of the LHS linear program on a Werner state: an explicit
//! model when one exists, and a witness that separates the assemblage from
//! every model when it does not.

use cyclic_steering::lhs::{detect_steerable, shrunk_lhs_model, SpherePolytope};
use cyclic_steering::states::werner;

fn main() -> cyclic_steering::Result<()> {
    let meas = SpherePolytope::new(0);
    let hidden = SpherePolytope::new(3);

    let rho = werner(0.4)?;
    if let Some(cert) = shrunk_lhs_model(&rho, &meas, &hidden)? {
        println!("W(0.4): model with {} hidden states, residual {:.1e}", cert.terms.len(), cert.residual);
        println!("  certifies W({:.4}) against all projective measurements", 0.4 * meas.eta());
    }

    let rho = werner(0.6)?;
    let d = detect_steerable(&rho, &meas.directions(), &hidden)?;
    if let Some(w) = d.witness {
        println!("W(0.6): witness value {:.6} exceeds bound {:.6}", w.value, w.bound);
    }
    Ok(())
}
