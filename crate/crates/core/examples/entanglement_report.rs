use cyclic_steering::entanglement::entanglement_report;
use cyclic_steering::states::{BuiltinState, TriFamilyState};

fn main() -> cyclic_steering::Result<()> {
    for b in [BuiltinState::B1, BuiltinState::B3, BuiltinState::Ghz] {
        let rho = TriFamilyState::new(b.state()?, 1.0)?.density()?;
        let report = entanglement_report(&rho)?;
        let cuts: Vec<String> = report.cuts.iter().map(|c| format!("{} {:.4}", c.cut, c.negativity)).collect();
        let gte = report.gte.expect("three-qubit report");
        println!("{b}: {}; pair AB {:.4}; {}", cuts.join(", "), report.pair_ab.unwrap().negativity, gte.status);
    }
    Ok(())
}
