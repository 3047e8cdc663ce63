//! Writes the 12-stick trefoil as JSON and OBJ into the system temp dir.

use lattice_links::build_lattice_link;
use lattice_links::export::{from_json, to_json, to_obj};

fn main() -> lattice_links::Result<()> {
    let trefoil = build_lattice_link(3, 1)?;
    let dir = std::env::temp_dir();

    let json = to_json(&trefoil)?;
    std::fs::write(dir.join("trefoil.json"), &json)?;
    std::fs::write(
        dir.join("trefoil.obj"),
        to_obj(&trefoil.link, "trefoil, 12 sticks"),
    )?;

    let back = from_json(&json)?.to_link()?;
    assert_eq!(back, trefoil.link);
    println!("{json}");
    println!("wrote trefoil.json and trefoil.obj to {}", dir.display());
    Ok(())
}
