use std::fmt::Write;

use crate::circuit::{Point2, RegularCircuit};

const UNIT: i64 = 10;
const MARGIN: i64 = 3;
const COLOURS: [&str; 2] = ["#1f77b4", "#d62728"];

/// Top view of a regular 2-circuit at 10 px per lattice unit. `P1` and `P2`
/// get their own colours; the labelled endpoints are dots with names.
pub fn circuit_svg(c: &RegularCircuit) -> String {
    let pts: Vec<Point2> = [c.p1(), c.p2()]
        .iter()
        .flat_map(|a| a.vertices().to_vec())
        .collect();
    let min_x = pts.iter().map(|p| p.x).min().unwrap_or(0) - MARGIN;
    let max_x = pts.iter().map(|p| p.x).max().unwrap_or(0) + MARGIN;
    let min_y = pts.iter().map(|p| p.y).min().unwrap_or(0) - MARGIN;
    let max_y = pts.iter().map(|p| p.y).max().unwrap_or(0) + MARGIN;
    // svg y grows downward
    let sx = |x: i64| (x - min_x) * UNIT;
    let sy = |y: i64| (max_y - y) * UNIT;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        (max_x - min_x) * UNIT,
        (max_y - min_y) * UNIT,
        (max_x - min_x) * UNIT,
        (max_y - min_y) * UNIT
    );
    let _ = writeln!(out, "  <title>regular circuit {}/{}</title>", c.p(), c.q());
    for (i, (arc, name)) in [(c.p1(), "P1"), (c.p2(), "P2")].into_iter().enumerate() {
        let points: Vec<String> = arc
            .vertices()
            .iter()
            .map(|v| format!("{},{}", sx(v.x), sy(v.y)))
            .collect();
        let _ = writeln!(
            out,
            r#"  <polyline id="{name}" points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            points.join(" "),
            COLOURS[i]
        );
    }
    let labels = [
        (c.v1(), "v1"),
        (c.v1_prime(), "v'1"),
        (c.v2(), "v2"),
        (c.v2_prime(), "v'2"),
    ];
    for (v, name) in labels {
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{}" r="3" fill="black"/>"#,
            sx(v.x),
            sy(v.y)
        );
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="10" font-family="sans-serif">{name}</text>"#,
            sx(v.x) + 4,
            sy(v.y) - 4
        );
    }
    out.push_str("</svg>\n");
    out
}
