//! Draws the regular 2-circuit of p/q as SVG on stdout.
//!
//!     cargo run --example circuit_svg -- 8 3 > circuit.svg

use lattice_links::circuit::build_circuit;
use lattice_links::export::circuit_svg;

fn main() -> lattice_links::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (p, q) = match args[..] {
        [p, q] => (p, q),
        _ => (8, 3),
    };
    print!("{}", circuit_svg(&build_circuit(p, q)?));
    Ok(())
}
