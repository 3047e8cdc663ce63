//! Conway word and pillowcase trace of a fraction.
//!
//!     cargo run --example tangle_trace -- 17 7

use lattice_links::tangle::{expand_fraction, pillow_of_word, pillow_trace, Fraction};

fn main() -> lattice_links::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (p, q) = match args[..] {
        [p, q] => (p, q),
        _ => (17, 7),
    };
    let word = expand_fraction(Fraction::new(p, q)?)?;
    println!("{p}/{q} = {word}");
    for step in pillow_trace(&word)? {
        println!("  {step:?}");
    }
    let end = pillow_of_word(&word)?;
    assert_eq!((end.t, end.s), (p, q));
    Ok(())
}
