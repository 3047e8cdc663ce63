//! Stick counts through the three construction stages.
//!
//!     cargo run --example build_stages -- 7 3

use lattice_links::build_stages;
use lattice_links::lattice::{stick_census, validate_embedding};

fn main() -> lattice_links::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (p, q) = match args[..] {
        [p, q] => (p, q),
        _ => (7, 3),
    };
    let stages = build_stages(p, q)?;
    let c = &stages.circuit;
    println!(
        "circuit: {} vertical, {} horizontal segments, {} drops",
        c.vertical_count(),
        c.horizontal_count(),
        c.drops().len()
    );
    for ll in stages.all() {
        let ok = validate_embedding(&ll.link).is_valid();
        println!(
            "{:>15}: {} valid={ok}",
            ll.stage.as_str(),
            stick_census(&ll.link)
        );
    }
    for lp in stages.final_link.link.loops() {
        let pts: Vec<String> = lp.iter().map(|v| v.to_string()).collect();
        println!("loop {}", pts.join(" "));
    }
    Ok(())
}
