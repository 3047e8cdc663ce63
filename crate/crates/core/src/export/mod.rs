//! Serializers for constructed links and circuits.

pub mod json;
pub mod obj;
pub mod svg;

pub use json::{from_json, to_json, LinkDocument};
pub use obj::to_obj;
pub use svg::circuit_svg;
