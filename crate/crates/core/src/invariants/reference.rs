//! Standard 4-plat diagram of a rational link from its Conway word.
//!
//! Twist regions alternate between horizontal and vertical, ending with a
//! horizontal one, and every crossing is drawn with its NE-SW strand on
//! top. Horizontal crossings are appended on the east side of the tangle,
//! vertical ones on the south side. The numerator closure then joins NW to
//! NE and SW to SE.
//!
//! With this handedness the diagram for `p/q` shows the same link as the
//! lattice construction for `p/q`, not its mirror image.

use super::diagram::{Diagram, DiagramBuilder, Node};
use crate::error::Result;
use crate::tangle::ConwayWord;

// crossing ends counterclockwise from the north-east
const NE: usize = 0;
const NW: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

/// `mirror = true` draws every crossing with the NW-SE strand on top.
pub fn reference_diagram_with(word: &ConwayWord, mirror: bool) -> Result<Diagram> {
    let mut b = DiagramBuilder::new();
    let (nw, ne, sw, se) = (b.junction(), b.junction(), b.junction(), b.junction());
    // boundary ports [NW, NE, SW, SE]
    let mut ports = [nw, ne, sw, se];
    if word.len() % 2 == 1 {
        // zero tangle: two horizontal arcs
        b.wire(nw, ne);
        b.wire(sw, se);
    } else {
        // infinity tangle: two vertical arcs
        b.wire(nw, sw);
        b.wire(ne, se);
    }
    for (k, &a) in word.entries().iter().enumerate() {
        let horizontal = word.is_horizontal(k);
        for _ in 0..a {
            let c = b.crossing(mirror);
            let end = |e| Node::End(c, e);
            if horizontal {
                b.wire(ports[1], end(NW));
                b.wire(ports[3], end(SW));
                ports[1] = end(NE);
                ports[3] = end(SE);
            } else {
                b.wire(ports[2], end(NW));
                b.wire(ports[3], end(NE));
                ports[2] = end(SW);
                ports[3] = end(SE);
            }
        }
    }
    b.wire(ports[0], ports[1]);
    b.wire(ports[2], ports[3]);
    b.build()
}

pub fn reference_diagram(word: &ConwayWord) -> Result<Diagram> {
    reference_diagram_with(word, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::poly::LaurentPoly;
    use crate::invariants::{component_count, determinant, normalized_jones};
    use crate::tangle::{expand_fraction, gcd, Fraction};

    fn word(v: &[u64]) -> ConwayWord {
        ConwayWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trefoil() {
        let d = reference_diagram(&word(&[3])).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(component_count(&d), 1);
        assert_eq!(determinant(&d).unwrap(), 3);
        let j = normalized_jones(&d);
        let left = LaurentPoly::from_terms([(16, -1), (12, 1), (4, 1)]);
        assert!(j == left || j == left.invert_variable(), "{j}");
    }

    #[test]
    fn seventeen_sevenths() {
        let d = reference_diagram(&word(&[3, 2, 2])).unwrap();
        assert_eq!(d.crossing_count(), 7);
        assert_eq!(determinant(&d).unwrap(), 17);
        assert_eq!(component_count(&d), 1);
    }

    #[test]
    fn determinant_is_numerator() {
        for p in 2..=25u64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let w = expand_fraction(Fraction::new(p, q).unwrap()).unwrap();
                let d = reference_diagram(&w).unwrap();
                assert_eq!(d.crossing_count() as u64, w.crossing_count());
                assert_eq!(determinant(&d).unwrap(), p as u128, "{p}/{q} {w}");
                assert_eq!(
                    component_count(&d),
                    if p % 2 == 0 { 2 } else { 1 },
                    "{p}/{q}"
                );
            }
        }
    }

    #[test]
    fn mirror_flag_mirrors() {
        let w = word(&[2, 3]);
        let d = reference_diagram(&w).unwrap();
        let m = reference_diagram_with(&w, true).unwrap();
        assert_eq!(normalized_jones(&m), normalized_jones(&d).invert_variable());
    }
}
