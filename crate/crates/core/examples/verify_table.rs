//! Verification table for small p.

use lattice_links::verify::{format_table, verify_sweep, VerifyOptions};

fn main() {
    let rows = verify_sweep(VerifyOptions {
        max_p: 9,
        jones_max_p: 9,
    });
    print!("{}", format_table(&rows));
}
