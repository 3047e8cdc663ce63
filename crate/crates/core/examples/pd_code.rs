//! Planar diagram code of a projected lattice link, dumped and read back.

use lattice_links::build_lattice_link;
use lattice_links::invariants::{bracket_memo, bracket_naive, project_regular, Diagram};

fn main() -> lattice_links::Result<()> {
    let ll = build_lattice_link(4, 1)?;
    let (d, _) = project_regular(&ll.link)?;
    let text = d.to_text();
    print!("{text}");

    let parsed = Diagram::parse(&text)?;
    assert_eq!(parsed, d);
    println!("writhe {}", d.writhe());
    println!("bracket {}", bracket_memo(&d));
    if d.crossing_count() <= 12 {
        assert_eq!(bracket_naive(&d, 12)?, bracket_memo(&d));
    }
    Ok(())
}
