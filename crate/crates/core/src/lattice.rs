//! Integer points, axis-parallel sticks and closed lattice polygons.
//!
//! Everything here is exact integer arithmetic. Two sticks meet iff their
//! closed coordinate intervals overlap on all three axes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Point3 {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Point3 { x, y, z }
    }

    pub fn coord(&self, axis: Axis) -> i64 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn translate(&self, d: Point3) -> Point3 {
        Point3::new(self.x + d.x, self.y + d.y, self.z + d.z)
    }
}

impl From<[i64; 3]> for Point3 {
    fn from(v: [i64; 3]) -> Self {
        Point3::new(v[0], v[1], v[2])
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// The axis along which `a` and `b` differ, if they differ in exactly one
/// coordinate.
pub fn axis_between(a: Point3, b: Point3) -> Option<Axis> {
    let diff: Vec<Axis> = Axis::ALL
        .into_iter()
        .filter(|&ax| a.coord(ax) != b.coord(ax))
        .collect();
    match diff[..] {
        [ax] => Some(ax),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Stick {
    a: Point3,
    b: Point3,
    axis: Axis,
}

impl Stick {
    pub fn new(a: Point3, b: Point3) -> Result<Stick> {
        let axis = axis_between(a, b).ok_or_else(|| {
            Error::Structural(format!("{a} -> {b} is not an axis-parallel stick"))
        })?;
        Ok(Stick { a, b, axis })
    }

    pub fn a(&self) -> Point3 {
        self.a
    }

    pub fn b(&self) -> Point3 {
        self.b
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn len(&self) -> i64 {
        (self.a.coord(self.axis) - self.b.coord(self.axis)).abs()
    }

    pub fn is_empty(&self) -> bool {
        self.a == self.b
    }

    fn interval(&self, axis: Axis) -> (i64, i64) {
        let (u, v) = (self.a.coord(axis), self.b.coord(axis));
        (u.min(v), u.max(v))
    }

    /// Closed-box intersection of two sticks, as per-axis intervals.
    pub fn overlap(&self, other: &Stick) -> Option<[(i64, i64); 3]> {
        let mut out = [(0, 0); 3];
        for ax in Axis::ALL {
            let (a0, a1) = self.interval(ax);
            let (b0, b1) = other.interval(ax);
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            if lo > hi {
                return None;
            }
            out[ax.index()] = (lo, hi);
        }
        Some(out)
    }
}

/// Closed loops of lattice vertices. Each loop is a cyclic vertex list with
/// the first vertex not repeated at the end.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeLink {
    loops: Vec<Vec<Point3>>,
}

impl LatticeLink {
    /// Accepts any loops without repeated consecutive vertices. Geometric
    /// validity is the job of [`validate_embedding`].
    pub fn new(loops: Vec<Vec<Point3>>) -> Result<Self> {
        if loops.is_empty() {
            return Err(Error::Structural("a link needs at least one loop".into()));
        }
        for (li, lp) in loops.iter().enumerate() {
            if lp.is_empty() {
                return Err(Error::Structural(format!("loop {li} is empty")));
            }
            for i in 0..lp.len() {
                let j = (i + 1) % lp.len();
                if lp.len() > 1 && lp[i] == lp[j] {
                    return Err(Error::Structural(format!(
                        "loop {li} repeats vertex {} at positions {i} and {j}",
                        lp[i]
                    )));
                }
            }
        }
        Ok(LatticeLink { loops })
    }

    pub fn loops(&self) -> &[Vec<Point3>] {
        &self.loops
    }

    pub fn into_loops(self) -> Vec<Vec<Point3>> {
        self.loops
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    /// Sticks of loop `li` in cyclic order; stick `i` runs from vertex `i` to
    /// vertex `i + 1`.
    pub fn loop_sticks(&self, li: usize) -> impl Iterator<Item = (Point3, Point3)> + '_ {
        let lp = &self.loops[li];
        (0..lp.len()).map(move |i| (lp[i], lp[(i + 1) % lp.len()]))
    }

    pub fn stick_count(&self) -> usize {
        self.loops.iter().map(Vec::len).sum()
    }

    pub fn map_points(&self, f: impl Fn(Point3) -> Point3) -> LatticeLink {
        LatticeLink {
            loops: self
                .loops
                .iter()
                .map(|lp| lp.iter().map(|&v| f(v)).collect())
                .collect(),
        }
    }

    pub fn translate(&self, d: Point3) -> LatticeLink {
        self.map_points(|v| v.translate(d))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StickCensus {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl StickCensus {
    pub fn total(&self) -> usize {
        self.x + self.y + self.z
    }

    pub fn get(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }
}

impl fmt::Display for StickCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} sticks (x:{}, y:{}, z:{})",
            self.total(),
            self.x,
            self.y,
            self.z
        )
    }
}

/// Counts sticks per axis. Sticks that are not axis-parallel are skipped;
/// run [`validate_embedding`] first if that matters.
pub fn stick_census(link: &LatticeLink) -> StickCensus {
    let mut c = StickCensus::default();
    for li in 0..link.loop_count() {
        for (a, b) in link.loop_sticks(li) {
            match axis_between(a, b) {
                Some(Axis::X) => c.x += 1,
                Some(Axis::Y) => c.y += 1,
                Some(Axis::Z) => c.z += 1,
                None => {}
            }
        }
    }
    c
}

/// Position of a stick: loop index and the index of its first vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StickId {
    pub loop_index: usize,
    pub stick_index: usize,
}

impl fmt::Display for StickId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "loop {} stick {}", self.loop_index, self.stick_index)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub not_axis_parallel: Vec<StickId>,
    /// Consecutive sticks that continue in the same direction.
    pub not_maximal: Vec<(StickId, StickId)>,
    /// Loops with fewer than four vertices.
    pub short_loops: Vec<usize>,
    pub intersections: Vec<(StickId, StickId)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.not_axis_parallel.is_empty()
            && self.not_maximal.is_empty()
            && self.short_loops.is_empty()
            && self.intersections.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid embedding");
        }
        let mut parts = Vec::new();
        if let Some(s) = self.not_axis_parallel.first() {
            parts.push(format!("{s} is not axis-parallel"));
        }
        if let Some((a, b)) = self.not_maximal.first() {
            parts.push(format!("{a} and {b} are collinear"));
        }
        if let Some(l) = self.short_loops.first() {
            parts.push(format!("loop {l} has fewer than 4 vertices"));
        }
        if let Some((a, b)) = self.intersections.first() {
            parts.push(format!("{a} meets {b}"));
        }
        write!(f, "invalid embedding: {}", parts.join("; "))
    }
}

pub fn validate_embedding(link: &LatticeLink) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut sticks: Vec<(StickId, Stick)> = Vec::new();

    for (li, lp) in link.loops().iter().enumerate() {
        if lp.len() < 4 {
            report.short_loops.push(li);
        }
        let n = lp.len();
        for i in 0..n {
            let id = StickId {
                loop_index: li,
                stick_index: i,
            };
            match Stick::new(lp[i], lp[(i + 1) % n]) {
                Ok(s) => sticks.push((id, s)),
                Err(_) => report.not_axis_parallel.push(id),
            }
        }
        for i in 0..n {
            let (a, b, c) = (lp[i], lp[(i + 1) % n], lp[(i + 2) % n]);
            if let (Some(ax1), Some(ax2)) = (axis_between(a, b), axis_between(b, c)) {
                let same_dir = (b.coord(ax1) - a.coord(ax1)).signum()
                    == (c.coord(ax2) - b.coord(ax2)).signum();
                if ax1 == ax2 && same_dir && n > 2 {
                    report.not_maximal.push((
                        StickId {
                            loop_index: li,
                            stick_index: i,
                        },
                        StickId {
                            loop_index: li,
                            stick_index: (i + 1) % n,
                        },
                    ));
                }
            }
        }
    }

    for i in 0..sticks.len() {
        for j in i + 1..sticks.len() {
            let (ida, sa) = sticks[i];
            let (idb, sb) = sticks[j];
            let Some(bx) = sa.overlap(&sb) else { continue };
            if let Some(shared) = shared_vertex(link, ida, idb) {
                let is_point = bx.iter().all(|&(lo, hi)| lo == hi);
                if is_point && Point3::new(bx[0].0, bx[1].0, bx[2].0) == shared {
                    continue;
                }
            }
            report.intersections.push((ida, idb));
        }
    }
    report
}

/// The vertex joining two sticks that are consecutive in the same loop.
fn shared_vertex(link: &LatticeLink, a: StickId, b: StickId) -> Option<Point3> {
    if a.loop_index != b.loop_index {
        return None;
    }
    let lp = &link.loops()[a.loop_index];
    let n = lp.len();
    if n < 3 {
        return None;
    }
    if (a.stick_index + 1) % n == b.stick_index {
        Some(lp[b.stick_index])
    } else if (b.stick_index + 1) % n == a.stick_index {
        Some(lp[a.stick_index])
    } else {
        None
    }
}

/// Merges collinear runs and drops zero-length steps so every listed segment
/// is a maximal stick.
pub fn canonicalize(raw: Vec<Vec<Point3>>) -> Result<LatticeLink> {
    let mut loops = Vec::with_capacity(raw.len());
    for (li, mut lp) in raw.into_iter().enumerate() {
        if lp.len() > 1 && lp.first() == lp.last() {
            lp.pop();
        }
        lp.dedup();
        while lp.len() > 1 && lp.first() == lp.last() {
            lp.pop();
        }
        for (a, b) in lp.iter().zip(lp.iter().cycle().skip(1)) {
            if axis_between(*a, *b).is_none() {
                return Err(Error::Structural(format!(
                    "loop {li}: {a} -> {b} is not axis-parallel"
                )));
            }
        }
        // Drop vertices whose neighbours lie on a common axis line through
        // them; repeat until stable since removals can expose new ones.
        loop {
            let n = lp.len();
            if n < 3 {
                break;
            }
            let pos = (0..n).find(|&i| {
                let (a, b, c) = (lp[(i + n - 1) % n], lp[i], lp[(i + 1) % n]);
                a == c || matches!((axis_between(a, b), axis_between(b, c)), (Some(x), Some(y)) if x == y)
            });
            match pos {
                Some(i) => {
                    lp.remove(i);
                    lp.dedup();
                    while lp.len() > 1 && lp.first() == lp.last() {
                        lp.pop();
                    }
                }
                None => break,
            }
        }
        if lp.len() < 4 {
            return Err(Error::Structural(format!(
                "loop {li} degenerates to {} vertices",
                lp.len()
            )));
        }
        loops.push(lp);
    }
    LatticeLink::new(loops)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> Point3 {
        Point3::new(x, y, z)
    }

    fn square(z: i64) -> Vec<Point3> {
        vec![p(0, 0, z), p(1, 0, z), p(1, 1, z), p(0, 1, z)]
    }

    #[test]
    fn unit_square() {
        let link = LatticeLink::new(vec![square(0)]).unwrap();
        assert!(validate_embedding(&link).is_valid());
        assert_eq!(stick_census(&link), StickCensus { x: 2, y: 2, z: 0 });
    }

    #[test]
    fn disjoint_squares() {
        let link = LatticeLink::new(vec![square(0), square(5)]).unwrap();
        assert!(validate_embedding(&link).is_valid());
        assert_eq!(link.loop_count(), 2);
    }

    #[test]
    fn shared_edge_fails() {
        let other = vec![p(1, 0, 0), p(2, 0, 0), p(2, 1, 0), p(1, 1, 0)];
        let link = LatticeLink::new(vec![square(0), other]).unwrap();
        let r = validate_embedding(&link);
        assert!(!r.is_valid());
        // square stick 1 is (1,0)-(1,1); the other loop's stick 3 is (1,1)-(1,0)
        let a = StickId {
            loop_index: 0,
            stick_index: 1,
        };
        let b = StickId {
            loop_index: 1,
            stick_index: 3,
        };
        assert!(r.intersections.contains(&(a, b)));
    }

    #[test]
    fn touching_at_a_vertex_fails() {
        let other = vec![p(1, 1, 0), p(2, 1, 0), p(2, 2, 0), p(1, 2, 0)];
        let link = LatticeLink::new(vec![square(0), other]).unwrap();
        assert!(!validate_embedding(&link).is_valid());
    }

    #[test]
    fn non_axis_and_backtracking() {
        let diag =
            LatticeLink::new(vec![vec![p(0, 0, 0), p(1, 1, 0), p(0, 1, 0), p(0, 2, 0)]]).unwrap();
        assert!(!validate_embedding(&diag).not_axis_parallel.is_empty());
        // goes right then straight back left
        let back =
            LatticeLink::new(vec![vec![p(0, 0, 0), p(2, 0, 0), p(1, 0, 0), p(1, 1, 0)]]).unwrap();
        assert!(!validate_embedding(&back).is_valid());
    }

    #[test]
    fn repeated_vertex_is_structural() {
        let r = LatticeLink::new(vec![vec![p(0, 0, 0), p(0, 0, 0), p(1, 0, 0)]]);
        assert!(matches!(r, Err(Error::Structural(_))));
    }

    #[test]
    fn canonicalize_merges() {
        let raw = vec![vec![
            p(0, 0, 0),
            p(1, 0, 0),
            p(2, 0, 0),
            p(2, 1, 0),
            p(0, 1, 0),
        ]];
        let link = canonicalize(raw).unwrap();
        assert_eq!(
            link.loops()[0],
            vec![p(0, 0, 0), p(2, 0, 0), p(2, 1, 0), p(0, 1, 0)]
        );
        let sq = canonicalize(vec![square(0)]).unwrap();
        assert_eq!(sq.loops()[0], square(0));
    }

    #[test]
    fn canonicalize_merges_across_the_seam() {
        // the first vertex sits in the middle of a stick
        let raw = vec![vec![
            p(1, 0, 0),
            p(2, 0, 0),
            p(2, 1, 0),
            p(0, 1, 0),
            p(0, 0, 0),
        ]];
        let link = canonicalize(raw).unwrap();
        assert_eq!(link.loops()[0].len(), 4);
        assert!(validate_embedding(&link).is_valid());
    }

    #[test]
    fn canonicalize_rejects_degenerate() {
        let raw = vec![vec![p(0, 0, 0), p(1, 0, 0), p(2, 0, 0)]];
        assert!(canonicalize(raw).is_err());
    }
}
