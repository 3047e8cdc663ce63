//! Stick presentations of rational links in the cubic lattice using exactly
//! four z-sticks, with geometric and topological verification.
//!
//! Pipeline: [`tangle`] turns `p/q` into a Conway word, [`circuit`] draws the
//! regular 2-circuit, [`lift`] embeds and reduces it, [`invariants`] checks
//! the result against a reference 4-plat diagram, and [`export`] writes it.

pub mod circuit;
pub mod cli;
pub mod error;
pub mod export;
pub mod invariants;
pub mod lattice;
pub mod lift;
pub mod tangle;
pub mod verify;

pub use error::{Error, Result};
pub use lift::{build_lattice_link, build_stages, LiftedLink, Stage};
