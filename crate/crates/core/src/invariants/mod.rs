//! Topological checks on constructed links: planar projection, Kauffman
//! bracket and Jones polynomial, determinant, component count, and the
//! reference 4-plat diagrams they are compared against.

pub mod bracket;
pub mod diagram;
pub mod goeritz;
pub mod poly;
pub mod project;
pub mod reference;

pub use bracket::{
    bracket_memo, bracket_naive, jones_orientation_set, kauffman_bracket, normalized_jones,
    DEFAULT_NAIVE_LIMIT,
};
pub use diagram::{Crossing, Diagram, DiagramBuilder};
pub use goeritz::{determinant, determinant_from_bracket};
pub use poly::LaurentPoly;
pub use project::{project, project_regular, project_tilted, Tilt};
pub use reference::{reference_diagram, reference_diagram_with};

/// Number of components, traced through crossings.
pub fn component_count(d: &Diagram) -> usize {
    d.component_count()
}
