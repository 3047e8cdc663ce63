//! Planar projections of lattice links.
//!
//! The plain projection along an axis usually is not regular for lattice
//! links (collinear images, z-sticks collapsing to points on other sticks).
//! [`project_tilted`] views the link along a slightly oblique direction
//! instead, which is the same as shearing the link by
//! `(u, v, h) -> (N u + a h, N v + b h, h)` and projecting straight down. The
//! shear is orientation preserving, so the diagram shows the same link.

use std::cmp::Ordering;

use super::diagram::{Diagram, DiagramBuilder, Node};
use crate::error::{Error, Result};
use crate::lattice::{Axis, LatticeLink, Point3};

/// Height direction and image coordinates `(u, v)`, right-handed.
fn frame(axis: Axis) -> (Axis, Axis) {
    match axis {
        Axis::X => (Axis::Y, Axis::Z),
        Axis::Y => (Axis::Z, Axis::X),
        Axis::Z => (Axis::X, Axis::Y),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tilt {
    pub a: i64,
    pub b: i64,
}

impl Tilt {
    pub const NONE: Tilt = Tilt { a: 0, b: 0 };
    /// Two distinct generic directions.
    pub const PRIMARY: Tilt = Tilt { a: 1, b: 3 };
    pub const SECONDARY: Tilt = Tilt { a: 3, b: -1 };
}

#[derive(Clone, Copy, Debug)]
struct Seg {
    p: [i128; 2],
    q: [i128; 2],
    hp: i128,
    hq: i128,
    lp: usize,
    index: usize,
}

fn cross(a: [i128; 2], b: [i128; 2]) -> i128 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: [i128; 2], b: [i128; 2]) -> [i128; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn dot(a: [i128; 2], b: [i128; 2]) -> i128 {
    a[0] * b[0] + a[1] * b[1]
}

/// Exact fraction `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug)]
struct Param {
    num: i128,
    den: i128,
}

impl Param {
    fn cmp(&self, other: &Param) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

#[derive(Clone, Copy, Debug)]
struct Passage {
    crossing: usize,
    at: Param,
    over: bool,
}

/// Projection along `axis` without perturbation.
pub fn project(link: &LatticeLink, axis: Axis) -> Result<Diagram> {
    project_tilted(link, axis, Tilt::NONE)
}

/// Projection along `axis` sheared by `tilt`; larger height is over.
pub fn project_tilted(link: &LatticeLink, axis: Axis, tilt: Tilt) -> Result<Diagram> {
    let (u, v) = frame(axis);
    let heights = link.loops().iter().flatten().map(|p| p.coord(axis));
    let (lo, hi) = heights.fold((i64::MAX, i64::MIN), |(l, h), z| (l.min(z), h.max(z)));
    let span = i128::from(hi - lo) + 1;
    let scale = 1 + span * i128::from(tilt.a.abs().max(tilt.b.abs()));
    let image = |p: Point3| -> [i128; 2] {
        let h = i128::from(p.coord(axis));
        [
            scale * i128::from(p.coord(u)) + i128::from(tilt.a) * h,
            scale * i128::from(p.coord(v)) + i128::from(tilt.b) * h,
        ]
    };

    // image segments per loop; sticks seen end-on are dropped
    let mut loops: Vec<Vec<Seg>> = Vec::new();
    for (li, lp) in link.loops().iter().enumerate() {
        let mut segs = Vec::new();
        for i in 0..lp.len() {
            let (a, b) = (lp[i], lp[(i + 1) % lp.len()]);
            let (pa, pb) = (image(a), image(b));
            if pa == pb {
                continue;
            }
            segs.push(Seg {
                p: pa,
                q: pb,
                hp: i128::from(a.coord(axis)),
                hq: i128::from(b.coord(axis)),
                lp: li,
                index: 0,
            });
        }
        if segs.len() < 3 {
            return Err(Error::NonRegularProjection(format!(
                "loop {li} projects onto a segment"
            )));
        }
        for (k, s) in segs.iter_mut().enumerate() {
            s.index = k;
        }
        loops.push(segs);
    }
    let all: Vec<Seg> = loops.iter().flatten().copied().collect();
    let adjacent = |s: &Seg, t: &Seg| -> Option<[i128; 2]> {
        if s.lp != t.lp {
            return None;
        }
        let n = loops[s.lp].len();
        if (s.index + 1) % n == t.index {
            Some(s.q)
        } else if (t.index + 1) % n == s.index {
            Some(t.q)
        } else {
            None
        }
    };

    let mut passages: Vec<Vec<Vec<Passage>>> =
        loops.iter().map(|l| vec![Vec::new(); l.len()]).collect();
    let mut crossing_dirs: Vec<([i128; 2], [i128; 2])> = Vec::new();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let (s, t) = (all[i], all[j]);
            let shared = adjacent(&s, &t);
            let r = sub(s.q, s.p);
            let w = sub(t.q, t.p);
            let d = sub(t.p, s.p);
            let den = cross(r, w);
            let describe = || {
                format!(
                    "loop {} segment {} and loop {} segment {}",
                    s.lp, s.index, t.lp, t.index
                )
            };
            if den == 0 {
                if cross(d, r) != 0 {
                    continue;
                }
                // collinear: compare extents along r
                let rr = dot(r, r);
                let (t0, t1) = (dot(sub(t.p, s.p), r), dot(sub(t.q, s.p), r));
                let (lo, hi) = (t0.min(t1), t0.max(t1));
                let (olo, ohi) = (lo.max(0), hi.min(rr));
                if olo > ohi {
                    continue;
                }
                if olo == ohi && shared.is_some() {
                    continue;
                }
                return Err(Error::NonRegularProjection(format!(
                    "{} have overlapping images",
                    describe()
                )));
            }
            let (mut tn, mut un, mut dn) = (cross(d, w), cross(d, r), den);
            if dn < 0 {
                (tn, un, dn) = (-tn, -un, -dn);
            }
            if tn < 0 || tn > dn || un < 0 || un > dn {
                continue;
            }
            let at_end = tn == 0 || tn == dn || un == 0 || un == dn;
            if at_end {
                let point = [s.p[0] * dn + tn * r[0], s.p[1] * dn + tn * r[1]];
                let is_shared = shared.is_some_and(|x| [x[0] * dn, x[1] * dn] == point);
                if is_shared {
                    continue;
                }
                return Err(Error::NonRegularProjection(format!(
                    "{} meet at a vertex image",
                    describe()
                )));
            }
            if shared.is_some() {
                return Err(Error::NonRegularProjection(format!(
                    "{} fold over each other",
                    describe()
                )));
            }
            let hs = s.hp * dn + tn * (s.hq - s.hp);
            let ht = t.hp * dn + un * (t.hq - t.hp);
            let s_over = match hs.cmp(&ht) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => {
                    return Err(Error::Structural(format!(
                        "{} intersect in space",
                        describe()
                    )))
                }
            };
            let c = crossing_dirs.len();
            let (over_dir, under_dir) = if s_over { (r, w) } else { (w, r) };
            crossing_dirs.push((over_dir, under_dir));
            passages[s.lp][s.index].push(Passage {
                crossing: c,
                at: Param { num: tn, den: dn },
                over: s_over,
            });
            passages[t.lp][t.index].push(Passage {
                crossing: c,
                at: Param { num: un, den: dn },
                over: !s_over,
            });
        }
    }

    let mut b = DiagramBuilder::new();
    // ends counterclockwise from the incoming under strand; the over strand
    // enters at end 3 when the crossing is positive
    let mut in_end = Vec::with_capacity(crossing_dirs.len());
    for &(over, under) in &crossing_dirs {
        b.crossing(true);
        let positive = cross(over, under) > 0;
        in_end.push(if positive { 3 } else { 1 });
    }
    for per_seg in passages.iter_mut() {
        let mut seq: Vec<Passage> = Vec::new();
        for list in per_seg.iter_mut() {
            list.sort_by(|x, y| x.at.cmp(&y.at));
            seq.extend(list.iter().copied());
        }
        if seq.is_empty() {
            b.free_loop();
            continue;
        }
        let end_in = |p: &Passage| if p.over { in_end[p.crossing] } else { 0 };
        for k in 0..seq.len() {
            let (x, y) = (seq[k], seq[(k + 1) % seq.len()]);
            let out = (end_in(&x) + 2) % 4;
            b.wire(
                Node::End(x.crossing, out),
                Node::End(y.crossing, end_in(&y)),
            );
        }
    }
    b.build()
}

/// Regular projection along `z`, sheared if the plain one is not regular.
/// Returns the diagram and whether a shear was needed.
pub fn project_regular(link: &LatticeLink) -> Result<(Diagram, bool)> {
    match project(link, Axis::Z) {
        Ok(d) => Ok((d, false)),
        Err(Error::NonRegularProjection(_)) => {
            Ok((project_tilted(link, Axis::Z, Tilt::PRIMARY)?, true))
        }
        Err(e) => Err(e),
    }
}
