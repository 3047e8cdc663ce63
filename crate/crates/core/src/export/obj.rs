use std::fmt::Write;

use crate::lattice::LatticeLink;

/// Wavefront OBJ: one `v` per stick endpoint and one closed `l` polyline
/// per loop.
pub fn to_obj(link: &LatticeLink, comment: &str) -> String {
    let mut out = String::new();
    for line in comment.lines() {
        let _ = writeln!(out, "# {line}");
    }
    for v in link.loops().iter().flatten() {
        let _ = writeln!(out, "v {} {} {}", v.x, v.y, v.z);
    }
    let mut base = 1;
    for lp in link.loops() {
        out.push('l');
        for i in 0..lp.len() {
            let _ = write!(out, " {}", base + i);
        }
        let _ = writeln!(out, " {base}");
        base += lp.len();
    }
    out
}
