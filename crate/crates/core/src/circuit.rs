//! Planar lattice circuits and the construction of the regular 2-circuit of a
//! rational `p/q`-link.
//!
//! The construction starts from the pillowcase billiard of slopes `±p/q` in
//! the square `A(0,0) B(0,-1) C(1,-1) D(1,0)`, maps it by the integer matrix
//! `[[p, -q], [p, q]]` so every segment becomes axis-parallel, and then
//! rewrites it in four phases until the two arcs are disjoint:
//!
//! 1. [`move_horizontals`] lifts the `q` horizontals near `D'` above `y = p`
//!    and pushes the `q` horizontals near `B'` below `y = -q`;
//! 2. [`reroute_long_horizontals`] sends each of the remaining `p - q - 1`
//!    horizontals around the top-right of the picture;
//! 3. [`extend_boundary`] stretches the two boundary verticals so the
//!    labelled endpoint pairs share a `y` coordinate, dropping any horizontal
//!    the stretched verticals would cut;
//! 4. [`assemble_circuit`] traces the two arcs and labels their endpoints.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tangle::Fraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point2 {
    pub x: i64,
    pub y: i64,
}

impl Point2 {
    pub const fn new(x: i64, y: i64) -> Self {
        Point2 { x, y }
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Lattice path; consecutive vertices differ in exactly one coordinate.
/// Arcs of a circuit are simple; the billiard arcs of [`central_segments`]
/// are diagram arcs and cross themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arc2D {
    vertices: Vec<Point2>,
}

impl Arc2D {
    /// A simple arc.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let arc = Arc2D::polyline(vertices)?;
        if let Some((i, j)) = arc.segments_as_set(Provenance::NONE).conflicts().first() {
            return Err(Error::Structural(format!(
                "arc is not simple: segments {i} and {j} meet"
            )));
        }
        Ok(arc)
    }

    /// An axis-parallel path that may cross itself.
    pub fn polyline(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Structural(
                "an arc needs at least two vertices".into(),
            ));
        }
        for w in vertices.windows(2) {
            if (w[0].x == w[1].x) == (w[0].y == w[1].y) {
                return Err(Error::Structural(format!(
                    "{} -> {} is not an axis-parallel step",
                    w[0], w[1]
                )));
            }
        }
        Ok(Arc2D { vertices })
    }

    pub fn is_simple(&self) -> bool {
        self.segments_as_set(Provenance::NONE)
            .conflicts()
            .is_empty()
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn start(&self) -> Point2 {
        self.vertices[0]
    }

    pub fn end(&self) -> Point2 {
        *self.vertices.last().unwrap()
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn reversed(&self) -> Arc2D {
        let mut v = self.vertices.clone();
        v.reverse();
        Arc2D { vertices: v }
    }

    fn segments_as_set(&self, tag: Provenance) -> SegmentSet {
        SegmentSet {
            segs: self
                .segments()
                .map(|(a, b)| Segment { a, b, tag })
                .collect(),
        }
    }
}

/// Disjoint planar arcs whose endpoints are labelled `v_i`, `v'_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NCircuit {
    arcs: Vec<Arc2D>,
    /// `labels[i] = [v_{i+1}, v'_{i+1}]`.
    labels: Vec<[Point2; 2]>,
}

impl NCircuit {
    pub fn new(arcs: Vec<Arc2D>, labels: Vec<[Point2; 2]>) -> Result<Self> {
        let mut endpoints: Vec<Point2> = arcs.iter().flat_map(|a| [a.start(), a.end()]).collect();
        let mut labelled: Vec<Point2> = labels.iter().flatten().copied().collect();
        endpoints.sort();
        labelled.sort();
        if endpoints != labelled {
            return Err(Error::Structural(
                "every arc endpoint must carry exactly one label".into(),
            ));
        }
        let all = SegmentSet {
            segs: arcs
                .iter()
                .flat_map(|a| a.segments())
                .map(|(a, b)| Segment {
                    a,
                    b,
                    tag: Provenance::NONE,
                })
                .collect(),
        };
        if let Some((i, j)) = all.conflicts().first() {
            return Err(Error::Structural(format!(
                "arcs are not disjoint: segments {i} and {j} meet"
            )));
        }
        Ok(NCircuit { arcs, labels })
    }

    pub fn arcs(&self) -> &[Arc2D] {
        &self.arcs
    }

    pub fn labels(&self) -> &[[Point2; 2]] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    /// Label indices (0-based) whose pair shares neither `x` nor `y`.
    pub r1: Vec<usize>,
    /// Index pairs whose `x` intervals and `y` intervals both overlap.
    pub r2: Vec<(usize, usize)>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.r1.is_empty() && self.r2.is_empty()
    }
}

fn closed_overlap(a: (i64, i64), b: (i64, i64)) -> bool {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    let (b0, b1) = (b.0.min(b.1), b.0.max(b.1));
    a0.max(b0) <= a1.min(b1)
}

pub fn check_regular(c: &NCircuit) -> RegularityReport {
    let mut report = RegularityReport::default();
    let l = c.labels();
    for (i, [v, w]) in l.iter().enumerate() {
        if v.x != w.x && v.y != w.y {
            report.r1.push(i);
        }
    }
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            let x = closed_overlap((l[i][0].x, l[i][1].x), (l[j][0].x, l[j][1].x));
            let y = closed_overlap((l[i][0].y, l[i][1].y), (l[j][0].y, l[j][1].y));
            if x && y {
                report.r2.push((i, j));
            }
        }
    }
    report
}

/// Which construction phases produced or touched a segment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Provenance(u8);

impl Provenance {
    pub const NONE: Provenance = Provenance(0);
    pub const CENTRAL: Provenance = Provenance(1);
    pub const MOVED: Provenance = Provenance(2);
    pub const REROUTED: Provenance = Provenance(4);
    pub const EXTENDED: Provenance = Provenance(8);
    pub const DROPPED: Provenance = Provenance(16);

    pub fn contains(self, other: Provenance) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn union(self, other: Provenance) -> Provenance {
        Provenance(self.0 | other.0)
    }

    pub fn names(self) -> Vec<&'static str> {
        [
            (Self::CENTRAL, "central"),
            (Self::MOVED, "moved"),
            (Self::REROUTED, "rerouted"),
            (Self::EXTENDED, "extended"),
            (Self::DROPPED, "dropped"),
        ]
        .into_iter()
        .filter(|&(p, _)| self.contains(p))
        .map(|(_, n)| n)
        .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
    pub tag: Provenance,
}

impl Segment {
    pub fn is_vertical(&self) -> bool {
        self.a.x == self.b.x
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y
    }

    pub fn has_endpoint(&self, p: Point2) -> bool {
        self.a == p || self.b == p
    }

    fn same_as(&self, a: Point2, b: Point2) -> bool {
        (self.a == a && self.b == b) || (self.a == b && self.b == a)
    }

    fn other_end(&self, p: Point2) -> Point2 {
        if self.a == p {
            self.b
        } else {
            self.a
        }
    }

    fn x_range(&self) -> (i64, i64) {
        (self.a.x.min(self.b.x), self.a.x.max(self.b.x))
    }

    fn y_range(&self) -> (i64, i64) {
        (self.a.y.min(self.b.y), self.a.y.max(self.b.y))
    }

    /// True if the two segments share any point other than a common endpoint.
    pub fn conflicts_with(&self, other: &Segment) -> bool {
        let (ax, bx) = (self.x_range(), other.x_range());
        let (ay, by) = (self.y_range(), other.y_range());
        let (x0, x1) = (ax.0.max(bx.0), ax.1.min(bx.1));
        let (y0, y1) = (ay.0.max(by.0), ay.1.min(by.1));
        if x0 > x1 || y0 > y1 {
            return false;
        }
        if x0 == x1 && y0 == y1 {
            let p = Point2::new(x0, y0);
            return !(self.has_endpoint(p) && other.has_endpoint(p));
        }
        true
    }
}

/// Loose collection of axis-parallel segments, the working state of the
/// circuit construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SegmentSet {
    segs: Vec<Segment>,
}

impl SegmentSet {
    pub fn from_arcs(arcs: &[Arc2D], tag: Provenance) -> SegmentSet {
        SegmentSet {
            segs: arcs
                .iter()
                .flat_map(|a| a.segments())
                .map(|(a, b)| Segment { a, b, tag })
                .collect(),
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn vertical_count(&self) -> usize {
        self.segs.iter().filter(|s| s.is_vertical()).count()
    }

    pub fn horizontal_count(&self) -> usize {
        self.segs.iter().filter(|s| s.is_horizontal()).count()
    }

    fn find(&self, a: Point2, b: Point2) -> Option<usize> {
        self.segs.iter().position(|s| s.same_as(a, b))
    }

    fn require(&self, a: Point2, b: Point2, what: &str) -> Result<usize> {
        self.find(a, b).ok_or_else(|| {
            Error::Construction(format!("expected {what} segment {a}-{b} is absent"))
        })
    }

    fn attached_vertical(&self, p: Point2, skip: usize) -> Option<usize> {
        self.segs
            .iter()
            .enumerate()
            .position(|(i, s)| i != skip && s.is_vertical() && s.has_endpoint(p))
    }

    /// Index pairs of segments that meet anywhere other than a shared
    /// endpoint.
    pub fn conflicts(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.segs.len() {
            for j in i + 1..self.segs.len() {
                if self.segs[i].conflicts_with(&self.segs[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn degrees(&self) -> HashMap<Point2, Vec<usize>> {
        let mut m: HashMap<Point2, Vec<usize>> = HashMap::new();
        for (i, s) in self.segs.iter().enumerate() {
            m.entry(s.a).or_default().push(i);
            m.entry(s.b).or_default().push(i);
        }
        m
    }

    /// Joins collinear segments meeting end to end at a degree-2 point.
    pub fn merge_collinear(&mut self) {
        loop {
            let deg = self.degrees();
            let hit = deg.iter().find_map(|(&p, ix)| match ix[..] {
                [i, j]
                    if (self.segs[i].is_vertical() && self.segs[j].is_vertical())
                        || (self.segs[i].is_horizontal() && self.segs[j].is_horizontal()) =>
                {
                    Some((p, i, j))
                }
                _ => None,
            });
            let Some((p, i, j)) = hit else { break };
            let merged = Segment {
                a: self.segs[i].other_end(p),
                b: self.segs[j].other_end(p),
                tag: self.segs[i].tag.union(self.segs[j].tag),
            };
            let (lo, hi) = (i.min(j), i.max(j));
            self.segs.remove(hi);
            self.segs[lo] = merged;
        }
    }

    /// Moves horizontal `idx` to height `new_y`, stretching the verticals
    /// attached at its endpoints (or creating them at bare corners).
    fn relocate_horizontal(&mut self, idx: usize, new_y: i64, tag: Provenance) -> Result<()> {
        let old = self.segs[idx];
        for e in [old.a, old.b] {
            let target = Point2::new(e.x, new_y);
            match self.attached_vertical(e, idx) {
                Some(v) => {
                    let far = self.segs[v].other_end(e);
                    if (far.y - e.y).signum() == (new_y - e.y).signum() {
                        return Err(Error::Construction(format!(
                            "moving {}-{} to y={new_y} would shorten the vertical at {e}",
                            old.a, old.b
                        )));
                    }
                    let seg = &mut self.segs[v];
                    *seg = Segment {
                        a: far,
                        b: target,
                        tag: seg.tag.union(Provenance::EXTENDED),
                    };
                }
                None => self.segs.push(Segment {
                    a: e,
                    b: target,
                    tag: Provenance::EXTENDED,
                }),
            }
        }
        self.segs[idx] = Segment {
            a: Point2::new(old.a.x, new_y),
            b: Point2::new(old.b.x, new_y),
            tag: old.tag.union(tag),
        };
        Ok(())
    }

    /// Paths traced through the segment graph, starting from every degree-1
    /// point. Closed components are reported as an error.
    fn trace_paths(&self) -> Result<Vec<Arc2D>> {
        let deg = self.degrees();
        if let Some((p, _)) = deg.iter().find(|(_, ix)| ix.len() > 2) {
            return Err(Error::Construction(format!(
                "three or more segments meet at {p}"
            )));
        }
        let mut ends: Vec<Point2> = deg
            .iter()
            .filter(|(_, ix)| ix.len() == 1)
            .map(|(&p, _)| p)
            .collect();
        ends.sort();
        let mut used = vec![false; self.segs.len()];
        let mut arcs = Vec::new();
        for start in ends {
            let first = deg[&start][0];
            if used[first] {
                continue;
            }
            let mut verts = vec![start];
            let (mut at, mut seg) = (start, first);
            loop {
                used[seg] = true;
                at = self.segs[seg].other_end(at);
                verts.push(at);
                match deg[&at].iter().find(|&&s| !used[s]) {
                    Some(&s) => seg = s,
                    None => break,
                }
            }
            arcs.push(Arc2D::new(verts)?);
        }
        if used.iter().any(|u| !u) {
            return Err(Error::Construction(
                "segment set contains a closed loop".into(),
            ));
        }
        Ok(arcs)
    }
}

fn pq_i64(p: i64, q: i64) -> Result<(i64, i64)> {
    if p < 1 || q < 1 {
        return Err(Error::Domain(format!(
            "p and q must be positive, got {p}/{q}"
        )));
    }
    let f = Fraction::new(p as u64, q as u64)?;
    if f.p() <= f.q() {
        return Err(Error::Domain(format!(
            "construction requires p > q, got {p}/{q}"
        )));
    }
    if f.p() > crate::tangle::MAX_SUPPORTED_P {
        return Err(Error::Domain(format!(
            "p = {p} exceeds the supported ceiling {}",
            crate::tangle::MAX_SUPPORTED_P
        )));
    }
    Ok((p, q))
}

type Q = Ratio<i64>;

/// Billiard path in the unit square `[0,1] x [-1,0]` from a corner until it
/// reaches another corner.
fn billiard(start: (Q, Q), dir: (i64, i64), max_bounces: usize) -> Result<Vec<(Q, Q)>> {
    let zero = Q::from_integer(0);
    let one = Q::from_integer(1);
    let (mut x, mut y) = start;
    let (mut dx, mut dy) = dir;
    let mut verts = vec![(x, y)];
    for _ in 0..max_bounces {
        let tx = match dx.signum() {
            1 => (one - x) / dx,
            _ => (zero - x) / dx,
        };
        let ty = match dy.signum() {
            1 => (zero - y) / dy,
            _ => (-one - y) / dy,
        };
        let t = tx.min(ty);
        x += t * dx;
        y += t * dy;
        verts.push((x, y));
        if tx == ty {
            return Ok(verts);
        }
        if tx < ty {
            dx = -dx;
        } else {
            dy = -dy;
        }
    }
    Err(Error::Construction(
        "billiard path did not reach a corner".into(),
    ))
}

/// The two pillowcase billiard arcs, mapped by `[[p, -q], [p, q]]`. The first
/// arc starts at `A' = (0,0)`; the second starts at the first of `B'`, `C'`,
/// `D'` not already reached.
pub fn central_segments(p: i64, q: i64) -> Result<Vec<Arc2D>> {
    let (p, q) = pq_i64(p, q)?;
    let map = |(x, y): (Q, Q)| -> Result<Point2> {
        let u = x * p - y * q;
        let v = x * p + y * q;
        if !u.is_integer() || !v.is_integer() {
            return Err(Error::Construction(format!(
                "image of ({x},{y}) is not integral"
            )));
        }
        Ok(Point2::new(u.to_integer(), v.to_integer()))
    };
    let bound = 4 * (p + q) as usize + 8;
    let zero = Q::from_integer(0);
    let one = Q::from_integer(1);
    // Corners A, B, C, D with the one inward direction of slope ±p/q.
    let corners = [
        ((zero, zero), (q, -p)),
        ((zero, -one), (q, p)),
        ((one, -one), (-q, p)),
        ((one, zero), (-q, -p)),
    ];
    let first = billiard(corners[0].0, corners[0].1, bound)?;
    let reached = *first.last().unwrap();
    let &(start, dir) = corners[1..]
        .iter()
        .find(|(c, _)| *c != reached)
        .expect("three corners remain");
    let second = billiard(start, dir, bound)?;
    [first, second]
        .into_iter()
        .map(|path| {
            let pts = path.into_iter().map(map).collect::<Result<Vec<_>>>()?;
            Arc2D::polyline(pts)
        })
        .collect()
}

pub fn move_horizontals(mut segs: SegmentSet, p: i64, q: i64) -> Result<SegmentSet> {
    let (p, q) = pq_i64(p, q)?;
    for i in 1..=q {
        let top = segs.require(Point2::new(p - i, p - i), Point2::new(p + i, p - i), "top")?;
        segs.relocate_horizontal(top, p + i, Provenance::MOVED)?;
        let bottom = segs.require(
            Point2::new(q - i, -q + i),
            Point2::new(q + i, -q + i),
            "bottom",
        )?;
        segs.relocate_horizontal(bottom, -q - i, Provenance::MOVED)?;
    }
    segs.merge_collinear();
    Ok(segs)
}

pub fn reroute_long_horizontals(mut segs: SegmentSet, p: i64, q: i64) -> Result<SegmentSet> {
    let (p, q) = pq_i64(p, q)?;
    for i in 1..p - q {
        let left = Point2::new(p - q - i, p - q - i);
        let right = Point2::new(p + q - i, p - q - i);
        let idx = segs.require(left, right, "long horizontal")?;
        let path = [
            left,
            Point2::new(p - q - i, p + q + i),
            Point2::new(p + q + i, p + q + i),
            Point2::new(p + q + i, p - q - i),
            right,
        ];
        segs.segs.remove(idx);
        for w in path.windows(2) {
            segs.segs.push(Segment {
                a: w[0],
                b: w[1],
                tag: Provenance::REROUTED,
            });
        }
    }
    segs.merge_collinear();
    Ok(segs)
}

/// Outcome of [`extend_boundary`]: the new segment set and, for each dropped
/// horizontal, its original and final height.
#[derive(Clone, Debug)]
pub struct BoundaryExtension {
    pub segments: SegmentSet,
    pub drops: Vec<Drop>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Drop {
    pub from_y: i64,
    pub to_y: i64,
    pub x_range: (i64, i64),
}

pub fn extend_boundary(mut segs: SegmentSet, p: i64, q: i64) -> Result<BoundaryExtension> {
    let (p, q) = pq_i64(p, q)?;
    let left = segs.require(Point2::new(0, 0), Point2::new(0, -2 * q), "left boundary")?;
    segs.segs[left] = Segment {
        a: Point2::new(0, p),
        b: Point2::new(0, -2 * q),
        tag: segs.segs[left].tag.union(Provenance::EXTENDED),
    };
    let right = segs.require(
        Point2::new(p + q, p - q),
        Point2::new(p + q, p + q),
        "right boundary",
    )?;
    segs.segs[right] = Segment {
        a: Point2::new(p + q, -q),
        b: Point2::new(p + q, p + q),
        tag: segs.segs[right].tag.union(Provenance::EXTENDED),
    };

    // Horizontals cut by either stretched vertical, innermost first.
    let mut pending: Vec<(Point2, Point2)> = segs
        .segs
        .iter()
        .enumerate()
        .filter(|&(i, s)| {
            s.is_horizontal()
                && i != left
                && i != right
                && (s.conflicts_with(&segs.segs[left]) || s.conflicts_with(&segs.segs[right]))
        })
        .map(|(_, s)| (s.a, s.b))
        .collect();
    pending.sort_by_key(|(a, b)| ((a.x - b.x).abs(), a.y, a.x.min(b.x)));

    let mut drops = Vec::new();
    while !pending.is_empty() {
        let (a, b) = pending.remove(0);
        let idx = segs.require(a, b, "crossed horizontal")?;
        let mut done = false;
        for k in 1..=4 * p {
            let mut trial = segs.clone();
            trial.relocate_horizontal(idx, a.y - k, Provenance::DROPPED)?;
            let moved: Vec<usize> = std::iter::once(idx)
                .chain(
                    [a, b]
                        .iter()
                        .filter_map(|&e| trial.attached_vertical(Point2::new(e.x, a.y - k), idx)),
                )
                .collect();
            let still_pending = |s: &Segment| pending.iter().any(|&(u, v)| s.same_as(u, v));
            let clear =
                moved.iter().all(|&m| {
                    trial.segs.iter().enumerate().all(|(j, s)| {
                        j == m || still_pending(s) || !trial.segs[m].conflicts_with(s)
                    })
                });
            if clear {
                drops.push(Drop {
                    from_y: a.y,
                    to_y: a.y - k,
                    x_range: (a.x.min(b.x), a.x.max(b.x)),
                });
                segs = trial;
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::Construction(format!(
                "no drop of at most {} clears horizontal {a}-{b}",
                4 * p
            )));
        }
    }
    segs.merge_collinear();
    if let Some(&(i, j)) = segs.conflicts().first() {
        return Err(Error::Construction(format!(
            "segments {:?} and {:?} still meet after boundary extension",
            segs.segs[i], segs.segs[j]
        )));
    }
    Ok(BoundaryExtension {
        segments: segs,
        drops,
    })
}

/// Regular 2-circuit with its arcs identified: `P1` contains `v1`.
#[derive(Clone, Debug, Serialize)]
pub struct RegularCircuit {
    circuit: NCircuit,
    p: i64,
    q: i64,
    segments: SegmentSet,
    drops: Vec<Drop>,
}

impl RegularCircuit {
    pub fn circuit(&self) -> &NCircuit {
        &self.circuit
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Arc starting at `v1`.
    pub fn p1(&self) -> &Arc2D {
        &self.circuit.arcs()[0]
    }

    /// The other arc, oriented from its endpoint with the lower label.
    pub fn p2(&self) -> &Arc2D {
        &self.circuit.arcs()[1]
    }

    pub fn v1(&self) -> Point2 {
        self.circuit.labels()[0][0]
    }

    pub fn v1_prime(&self) -> Point2 {
        self.circuit.labels()[0][1]
    }

    pub fn v2(&self) -> Point2 {
        self.circuit.labels()[1][0]
    }

    pub fn v2_prime(&self) -> Point2 {
        self.circuit.labels()[1][1]
    }

    /// Segments with provenance tags, for diagnostics and rendering.
    pub fn segments(&self) -> &SegmentSet {
        &self.segments
    }

    pub fn drops(&self) -> &[Drop] {
        &self.drops
    }

    pub fn vertical_count(&self) -> usize {
        self.segments.vertical_count()
    }

    pub fn horizontal_count(&self) -> usize {
        self.segments.horizontal_count()
    }

    /// True when `P2` joins `v2` and `v'2`, i.e. the link has two components.
    pub fn p2_joins_v2_pair(&self) -> bool {
        let (s, e) = (self.p2().start(), self.p2().end());
        (s == self.v2() && e == self.v2_prime()) || (s == self.v2_prime() && e == self.v2())
    }
}

pub fn assemble_circuit(mut segs: SegmentSet, p: i64, q: i64) -> Result<RegularCircuit> {
    let (p, q) = pq_i64(p, q)?;
    segs.merge_collinear();
    let v1 = Point2::new(0, p);
    let v1p = Point2::new(p, p);
    let v2 = Point2::new(q, -q);
    let v2p = Point2::new(p + q, -q);

    let arcs = segs.trace_paths()?;
    if arcs.len() != 2 {
        return Err(Error::Construction(format!(
            "expected two open arcs, traced {}",
            arcs.len()
        )));
    }
    let orient = |arc: &Arc2D, from: Point2| -> Option<Arc2D> {
        if arc.start() == from {
            Some(arc.clone())
        } else if arc.end() == from {
            Some(arc.reversed())
        } else {
            None
        }
    };
    let (p1, other) = match (orient(&arcs[0], v1), orient(&arcs[1], v1)) {
        (Some(a), None) => (a, &arcs[1]),
        (None, Some(a)) => (a, &arcs[0]),
        _ => {
            return Err(Error::Construction(
                "v1 is not the endpoint of exactly one arc".into(),
            ))
        }
    };
    let p2 = orient(other, v2)
        .or_else(|| orient(other, v1p))
        .ok_or_else(|| Error::Construction("second arc has unexpected endpoints".into()))?;

    let circuit = NCircuit::new(vec![p1, p2], vec![[v1, v1p], [v2, v2p]])?;
    let report = check_regular(&circuit);
    if !report.is_regular() {
        return Err(Error::Construction(format!(
            "circuit is not regular: {report:?}"
        )));
    }
    Ok(RegularCircuit {
        circuit,
        p,
        q,
        segments: segs,
        drops: Vec::new(),
    })
}

/// All construction phases for `p/q`.
pub fn build_circuit(p: i64, q: i64) -> Result<RegularCircuit> {
    let arcs = central_segments(p, q)?;
    let segs = SegmentSet::from_arcs(&arcs, Provenance::CENTRAL);
    let segs = move_horizontals(segs, p, q)?;
    let segs = reroute_long_horizontals(segs, p, q)?;
    let ext = extend_boundary(segs, p, q)?;
    let mut rc = assemble_circuit(ext.segments, p, q)?;
    rc.drops = ext.drops;
    Ok(rc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn matrix_makes_directions_axis_parallel() {
        // the direction (q, p) maps to (0, 2pq) and (q, -p) to (2pq, 0)
        for (p, q) in [(2i64, 1i64), (5, 3), (17, 7)] {
            assert_eq!((p * q - q * p, p * q + q * p), (0, 2 * p * q));
            assert_eq!((p * q + q * p, p * q - q * p), (2 * p * q, 0));
        }
    }

    #[test]
    fn central_two_one() {
        let arcs = central_segments(2, 1).unwrap();
        let mut ends: Vec<Point2> = arcs.iter().flat_map(|a| [a.start(), a.end()]).collect();
        ends.sort();
        // images of A, B, C, D
        let mut corners = vec![pt(0, 0), pt(1, -1), pt(3, 1), pt(2, 2)];
        corners.sort();
        assert_eq!(ends, corners);
        assert_eq!(arcs[0].vertices(), &[pt(0, 0), pt(2, 0), pt(2, 2)]);
        assert_eq!(arcs[1].vertices(), &[pt(1, -1), pt(1, 1), pt(3, 1)]);
    }

    #[test]
    fn central_gap_counts_match_pillowcase_form() {
        // Contacts on the side A'D' (y = x) and on D'C' (x + y = 2p), corners
        // excluded; gaps = contacts + 1.
        for (p, q) in [(3i64, 1i64), (7, 5), (17, 7)] {
            let arcs = central_segments(p, q).unwrap();
            let pts: Vec<Point2> = arcs.iter().flat_map(|a| a.vertices().to_vec()).collect();
            let top = pts
                .iter()
                .filter(|v| v.x == v.y && v.x > 0 && v.x < p)
                .count() as i64;
            let side = pts
                .iter()
                .filter(|v| v.x + v.y == 2 * p && v.x > p && v.x < p + q)
                .count() as i64;
            assert_eq!((top + 1, side + 1), (p, q));
        }
    }

    #[test]
    fn central_rejects_bad_input() {
        assert!(matches!(central_segments(4, 2), Err(Error::Domain(_))));
        assert!(matches!(central_segments(2, 3), Err(Error::Domain(_))));
        assert!(matches!(central_segments(3, 3), Err(Error::Domain(_))));
    }

    fn after_moves(p: i64, q: i64) -> SegmentSet {
        let arcs = central_segments(p, q).unwrap();
        move_horizontals(SegmentSet::from_arcs(&arcs, Provenance::CENTRAL), p, q).unwrap()
    }

    #[test]
    fn moves_two_one() {
        let arcs = central_segments(2, 1).unwrap();
        let before = SegmentSet::from_arcs(&arcs, Provenance::CENTRAL);
        let h_before = before.horizontal_count();
        let s = move_horizontals(before, 2, 1).unwrap();
        assert!(s.find(pt(1, 3), pt(3, 3)).is_some());
        assert!(s.find(pt(0, -2), pt(2, -2)).is_some());
        assert!(s.find(pt(1, 1), pt(3, 1)).is_none());
        assert_eq!(s.horizontal_count(), h_before);
    }

    #[test]
    fn reroute_three_one() {
        let s = reroute_long_horizontals(after_moves(3, 1), 3, 1).unwrap();
        assert!(s.find(pt(1, 1), pt(3, 1)).is_none());
        assert!(s.find(pt(1, 5), pt(5, 5)).is_some());
        assert!(s.find(pt(5, 5), pt(5, 1)).is_some());
        assert!(s.find(pt(5, 1), pt(3, 1)).is_some());
        // merged with the vertical that ended at (1,1)
        assert!(s.find(pt(1, -1), pt(1, 5)).is_some());
    }

    #[test]
    fn reroute_counts() {
        let s = after_moves(2, 1);
        assert_eq!(reroute_long_horizontals(s.clone(), 2, 1).unwrap(), {
            let mut t = s;
            t.merge_collinear();
            t
        });
        let s = reroute_long_horizontals(after_moves(5, 2), 5, 2).unwrap();
        let rerouted = s
            .segments()
            .iter()
            .filter(|g| g.is_horizontal() && g.tag.contains(Provenance::REROUTED))
            .count();
        assert_eq!(rerouted, 2 * 2);
    }

    #[test]
    fn boundary_examples() {
        let s = reroute_long_horizontals(after_moves(2, 1), 2, 1).unwrap();
        let ext = extend_boundary(s, 2, 1).unwrap();
        assert!(ext.segments.find(pt(0, 2), pt(0, -2)).is_some());
        assert!(ext.drops.is_empty());

        let s = reroute_long_horizontals(after_moves(3, 1), 3, 1).unwrap();
        let ext = extend_boundary(s, 3, 1).unwrap();
        assert!(ext.segments.find(pt(4, -1), pt(4, 4)).is_some());
        assert_eq!(ext.drops.len(), 1);
        assert_eq!(
            ext.drops[0],
            Drop {
                from_y: 1,
                to_y: -2,
                x_range: (3, 5)
            }
        );
    }

    // Brute-force oracle: horizontals hit by the stretched verticals before
    // any drop is applied.
    fn crossed_before_drop(p: i64, q: i64) -> usize {
        let s = reroute_long_horizontals(after_moves(p, q), p, q).unwrap();
        let left = Segment {
            a: pt(0, p),
            b: pt(0, -2 * q),
            tag: Provenance::NONE,
        };
        let right = Segment {
            a: pt(p + q, -q),
            b: pt(p + q, p + q),
            tag: Provenance::NONE,
        };
        s.segments()
            .iter()
            .filter(|g| g.is_horizontal())
            .filter(|g| {
                let hits = |v: &Segment| {
                    let (x0, x1) = g.x_range();
                    let (y0, y1) = v.y_range();
                    x0 <= v.a.x
                        && v.a.x <= x1
                        && y0 <= g.a.y
                        && g.a.y <= y1
                        && !g.has_endpoint(v.a)
                        && !g.has_endpoint(v.b)
                };
                hits(&left) || hits(&right)
            })
            .count()
    }

    #[test]
    fn drops_match_intersection_scan() {
        for (p, q) in [(2, 1), (3, 1), (5, 2), (7, 3), (9, 2), (11, 7)] {
            let rc = build_circuit(p, q).unwrap();
            assert_eq!(rc.drops().len(), crossed_before_drop(p, q), "{p}/{q}");
        }
    }

    #[test]
    fn assemble_three_one() {
        let rc = build_circuit(3, 1).unwrap();
        assert_eq!(rc.vertical_count(), 6);
        assert_eq!(rc.horizontal_count(), 4);
        assert!(rc
            .p1()
            .segments()
            .filter(|(a, b)| a.x == b.x)
            .all(|(a, _)| a.x % 2 == 0));
        assert!(rc
            .p2()
            .segments()
            .filter(|(a, b)| a.x == b.x)
            .all(|(a, _)| a.x.rem_euclid(2) == 1));
        assert_eq!(
            rc.p1().vertices(),
            &[
                pt(0, 3),
                pt(0, -2),
                pt(2, -2),
                pt(2, 4),
                pt(4, 4),
                pt(4, -1)
            ]
        );
        assert_eq!(
            rc.p2().vertices(),
            &[
                pt(1, -1),
                pt(1, 5),
                pt(5, 5),
                pt(5, -2),
                pt(3, -2),
                pt(3, 3)
            ]
        );
        assert!(!rc.p2_joins_v2_pair());
    }

    #[test]
    fn assemble_four_one_joins_v1_pair() {
        let rc = build_circuit(4, 1).unwrap();
        assert_eq!(rc.p1().start(), rc.v1());
        assert_eq!(rc.p1().end(), rc.v1_prime());
        assert!(rc.p2_joins_v2_pair());
    }

    #[test]
    fn regularity_checker() {
        let a = Arc2D::new(vec![pt(0, 0), pt(0, 2), pt(3, 2), pt(3, 0)]).unwrap();
        let c = NCircuit::new(vec![a.clone()], vec![[pt(0, 0), pt(3, 0)]]).unwrap();
        assert!(check_regular(&c).is_regular());

        let b = Arc2D::new(vec![pt(1, 1), pt(4, 1), pt(4, 3)]).unwrap();
        let c = NCircuit::new(vec![a, b], vec![[pt(0, 0), pt(3, 0)], [pt(1, 1), pt(4, 3)]]);
        // the arcs themselves cross
        assert!(c.is_err());

        let a = Arc2D::new(vec![pt(0, 0), pt(0, 5), pt(5, 5), pt(5, 0)]).unwrap();
        let b = Arc2D::new(vec![pt(1, 0), pt(1, 3), pt(3, 3), pt(3, 2)]).unwrap();
        let c =
            NCircuit::new(vec![a, b], vec![[pt(0, 0), pt(5, 0)], [pt(1, 0), pt(3, 2)]]).unwrap();
        let r = check_regular(&c);
        assert_eq!(r.r1, vec![1]);
        assert_eq!(r.r2, vec![(0, 1)]);
    }

    #[test]
    fn circuit_label_mismatch() {
        let a = Arc2D::new(vec![pt(0, 0), pt(0, 2)]).unwrap();
        assert!(NCircuit::new(vec![a], vec![[pt(0, 0), pt(0, 3)]]).is_err());
    }

    #[test]
    fn arc_must_be_simple() {
        let r = Arc2D::new(vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(1, 2), pt(1, -1)]);
        assert!(r.is_err());
    }
}
