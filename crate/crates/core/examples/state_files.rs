//! Writing and reading the JSON state formats.

use cyclic_steering::states::{werner, BuiltinState, LoadedState, StateFile, TriFamilyState};

fn main() -> cyclic_steering::Result<()> {
    let dir = std::env::temp_dir();

    let family = TriFamilyState::new(BuiltinState::B1.state()?, 0.95)?;
    let path = dir.join("b1_family.json");
    std::fs::write(&path, StateFile::from_family(&family).to_json())?;
    println!("wrote {}", path.display());

    let pair = werner(0.6)?;
    let pair_path = dir.join("werner_pair.json");
    std::fs::write(&pair_path, StateFile::from_density(&pair).to_json())?;

    for p in [&path, &pair_path] {
        match StateFile::read(p)?.load()? {
            LoadedState::Family(f) => println!("{}: family with p = {}", p.display(), f.p),
            LoadedState::Density(rho) => println!("{}: density matrix with dims {:?}", p.display(), rho.dims()),
        }
    }
    Ok(())
}
