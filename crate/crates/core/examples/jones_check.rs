//! Projects constructed links and compares them with the 4-plat diagram of
//! the same fraction: Jones polynomial, determinant, components.

use lattice_links::build_lattice_link;
use lattice_links::invariants::{
    component_count, determinant, jones_orientation_set, project_regular, reference_diagram,
};
use lattice_links::tangle::{expand_fraction, Fraction};

fn main() -> lattice_links::Result<()> {
    for (p, q) in [(3, 1), (5, 2), (7, 2), (7, 3), (8, 3), (10, 3)] {
        let ll = build_lattice_link(p, q)?;
        let (diagram, tilted) = project_regular(&ll.link)?;
        let word = expand_fraction(Fraction::new(p as u64, q as u64)?)?;
        let reference = reference_diagram(&word)?;

        let ours = jones_orientation_set(&diagram);
        let theirs = jones_orientation_set(&reference);
        println!(
            "{p}/{q} {word}: {} crossings{}, det {}, {} component(s), jones {}",
            diagram.crossing_count(),
            if tilted { " (tilted view)" } else { "" },
            determinant(&diagram)?,
            component_count(&diagram),
            if ours == theirs { "matches" } else { "DIFFERS" }
        );
        for j in &ours {
            println!("    V = {j}");
        }
    }
    Ok(())
}
