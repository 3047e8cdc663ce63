//! Lifting a regular 2-circuit into the cubic lattice and the two moves that
//! bring the stick count down from `4p + 4`.
//!
//! Stage totals, all with exactly four z-sticks:
//!
//! | stage            | sticks                      |
//! |------------------|-----------------------------|
//! | baseline         | `4p + 4`                    |
//! | corner reduced   | `4p + 3`                    |
//! | final            | `2p + 6`, or `2p + 5` for two components |
//!
//! When `p = 2q` (only `2/1`) the corner move collapses a zero-length stick
//! and the counts come out lower than the table; see
//! [`LiftedLink::stage_violations`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::{build_circuit, Point2, RegularCircuit};
use crate::error::{Error, Result};
use crate::lattice::{canonicalize, stick_census, validate_embedding, LatticeLink, Point3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Baseline,
    CornerReduced,
    Final,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Baseline => "baseline",
            Stage::CornerReduced => "corner_reduced",
            Stage::Final => "final",
        }
    }

    /// Stick total the construction promises at this stage.
    pub fn expected_total(self, p: i64, components: usize) -> i64 {
        match self {
            Stage::Baseline => 4 * p + 4,
            Stage::CornerReduced => 4 * p + 3,
            Stage::Final if components == 2 => 2 * p + 5,
            Stage::Final => 2 * p + 6,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedLink {
    pub link: LatticeLink,
    pub stage: Stage,
    pub p: i64,
    pub q: i64,
    /// 2 when `p` is even, 1 otherwise.
    pub expected_components: usize,
    /// Endpoints of the planar arc `P2`, needed by the push-down move.
    pub p2_endpoints: [Point2; 2],
    /// Which labelled points are the circuit's `v1, v'1, v2, v'2`.
    pub labels: [Point2; 4],
}

impl LiftedLink {
    pub fn total(&self) -> usize {
        self.link.stick_count()
    }

    /// Every stage invariant this value breaks, as readable messages.
    pub fn stage_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let census = stick_census(&self.link);
        if census.z != 4 {
            out.push(format!(
                "{} stage has {} z-sticks, expected 4",
                self.stage, census.z
            ));
        }
        let expected = self.stage.expected_total(self.p, self.expected_components);
        if census.total() as i64 != expected {
            out.push(format!(
                "{} stage has {} sticks, expected {expected}",
                self.stage,
                census.total()
            ));
        }
        let report = validate_embedding(&self.link);
        if !report.is_valid() {
            out.push(format!("{} stage: {report}", self.stage));
        }
        out
    }
}

fn at(p: Point2, z: i64) -> Point3 {
    Point3::new(p.x, p.y, z)
}

/// Embeds the circuit at `z = 0` and closes each labelled pair with an arc
/// made of two z-sticks and one x-stick at `z = 1`.
pub fn lift_baseline(c: &RegularCircuit) -> Result<LiftedLink> {
    let (v1, v1p, v2, v2p) = (c.v1(), c.v1_prime(), c.v2(), c.v2_prime());
    if v1.y != v1p.y || v2.y != v2p.y {
        return Err(Error::Construction(
            "labelled endpoint pairs must share a y coordinate".into(),
        ));
    }
    // Pieces: P1, P2 (planar), l1, l2 (bridges). Walk them into loops.
    let bridge = |a: Point2, b: Point2| vec![at(a, 0), at(a, 1), at(b, 1), at(b, 0)];
    let planar = |arc: &crate::circuit::Arc2D| -> Vec<Point3> {
        arc.vertices().iter().map(|&v| at(v, 0)).collect()
    };
    let mut pieces: Vec<Vec<Point3>> = vec![
        planar(c.p1()),
        planar(c.p2()),
        bridge(v1, v1p),
        bridge(v2, v2p),
    ];
    let mut used = vec![false; pieces.len()];
    let mut loops = Vec::new();
    while let Some(start) = used.iter().position(|u| !u) {
        used[start] = true;
        let mut lp = pieces[start].clone();
        loop {
            let tail = *lp.last().unwrap();
            if tail == lp[0] {
                lp.pop();
                break;
            }
            let next = (0..pieces.len()).find(|&i| {
                !used[i] && (pieces[i][0] == tail || *pieces[i].last().unwrap() == tail)
            });
            let Some(i) = next else {
                return Err(Error::Construction(format!("open chain ends at {tail}")));
            };
            used[i] = true;
            if pieces[i][0] != tail {
                pieces[i].reverse();
            }
            lp.extend_from_slice(&pieces[i][1..]);
        }
        loops.push(lp);
    }
    let link = canonicalize(loops)?;
    Ok(LiftedLink {
        link,
        stage: Stage::Baseline,
        p: c.p(),
        q: c.q(),
        expected_components: if c.p() % 2 == 0 { 2 } else { 1 },
        p2_endpoints: [c.p2().start(), c.p2().end()],
        labels: [v1, v1p, v2, v2p],
    })
}

/// Finds `pattern` as consecutive vertices (in either direction) of some
/// loop; returns the loop index and that loop rotated/reversed so the
/// pattern sits at the front.
fn align(link: &LatticeLink, pattern: &[Point3]) -> Option<(usize, Vec<Point3>)> {
    for (li, lp) in link.loops().iter().enumerate() {
        let n = lp.len();
        if n < pattern.len() {
            continue;
        }
        for dir in [false, true] {
            let mut seq = lp.clone();
            if dir {
                seq.reverse();
            }
            for s in 0..n {
                if (0..pattern.len()).all(|k| seq[(s + k) % n] == pattern[k]) {
                    seq.rotate_left(s);
                    return Some((li, seq));
                }
            }
        }
    }
    None
}

fn replace_loop(link: &LatticeLink, li: usize, new_loop: Vec<Point3>) -> Vec<Vec<Point3>> {
    let mut loops = link.loops().to_vec();
    loops[li] = new_loop;
    loops
}

/// Replaces the five sticks through `(p,p,1) (0,p,1) (0,p,0) (0,-2q,0)` by
/// four sticks running over the top at `z = 2`.
pub fn reduce_corner(ll: &LiftedLink) -> Result<LiftedLink> {
    if ll.stage != Stage::Baseline {
        return Err(Error::Construction(format!(
            "corner reduction applies to the baseline stage, got {}",
            ll.stage
        )));
    }
    let (p, q) = (ll.p, ll.q);
    let old = [
        Point3::new(p, p, 0),
        Point3::new(p, p, 1),
        Point3::new(0, p, 1),
        Point3::new(0, p, 0),
        Point3::new(0, -2 * q, 0),
        Point3::new(2 * q, -2 * q, 0),
    ];
    let new = [
        Point3::new(p, p, 0),
        Point3::new(p, p, 2),
        Point3::new(p, -2 * q, 2),
        Point3::new(2 * q, -2 * q, 2),
        Point3::new(2 * q, -2 * q, 0),
    ];
    let (li, seq) = align(&ll.link, &old).ok_or_else(|| {
        Error::Construction("corner path through (0,p,1) and (0,-2q,0) not found".into())
    })?;
    let mut lp = new.to_vec();
    lp.extend_from_slice(&seq[old.len()..]);
    let link = canonicalize(replace_loop(&ll.link, li, lp))?;
    Ok(LiftedLink {
        link,
        stage: Stage::CornerReduced,
        ..ll.clone()
    })
}

/// Pushes `P2` down to `z = -1` and replaces it with one x-stick (endpoints
/// share `y`) or an L-shaped pair of sticks.
pub fn push_down_p2(ll: &LiftedLink) -> Result<LiftedLink> {
    if ll.stage != Stage::CornerReduced {
        return Err(Error::Construction(format!(
            "push-down applies to the corner-reduced stage, got {}",
            ll.stage
        )));
    }
    let [e1, e2] = ll.p2_endpoints;
    let two_component = ll.p % 2 == 0;
    let joins_v2 = {
        let v2 = [ll.labels[2], ll.labels[3]];
        v2.contains(&e1) && v2.contains(&e2)
    };
    if joins_v2 != two_component {
        return Err(Error::Construction(format!(
            "P2 endpoints {e1}, {e2} do not match the parity of p = {}",
            ll.p
        )));
    }

    // Locate P2: the z = 0 chain from e1 to e2.
    let start = at(e1, 0);
    let (li, pos) = ll
        .link
        .loops()
        .iter()
        .enumerate()
        .find_map(|(li, lp)| lp.iter().position(|&v| v == start).map(|i| (li, i)))
        .ok_or_else(|| Error::Construction(format!("P2 endpoint {start} not found")))?;
    let mut seq = ll.link.loops()[li].clone();
    let n = seq.len();
    seq.rotate_left(pos);
    if seq[1].z != 0 || seq[1].x == start.x && seq[1].y == start.y {
        seq[1..].reverse();
    }
    let end = at(e2, 0);
    let chain_len = seq
        .iter()
        .position(|&v| v == end)
        .ok_or_else(|| Error::Construction(format!("P2 endpoint {end} not on the same loop")))?;
    if seq[..=chain_len].iter().any(|v| v.z != 0) {
        return Err(Error::Construction("P2 does not lie in z = 0".into()));
    }
    if chain_len as i64 != 2 * ll.p - 1 {
        return Err(Error::Construction(format!(
            "P2 has {chain_len} sticks, expected {}",
            2 * ll.p - 1
        )));
    }

    let candidates: Vec<Vec<Point3>> = if e1.y == e2.y {
        vec![vec![at(e1, -1), at(e2, -1)]]
    } else {
        // Corner under the endpoint at y = p first, then the other corner.
        let (hi, lo) = if e1.y > e2.y { (e1, e2) } else { (e2, e1) };
        let corner_a = Point3::new(hi.x, lo.y, -1);
        let corner_b = Point3::new(lo.x, hi.y, -1);
        vec![
            vec![
                at(e1, -1),
                if hi == e1 { corner_a } else { corner_b },
                at(e2, -1),
            ],
            vec![
                at(e1, -1),
                if hi == e1 { corner_b } else { corner_a },
                at(e2, -1),
            ],
        ]
    };
    let rest = &seq[chain_len + 1..n];
    let mut last_err = None;
    for replacement in candidates {
        let mut lp = replacement;
        lp.extend_from_slice(rest);
        let link = canonicalize(replace_loop(&ll.link, li, lp))?;
        let report = validate_embedding(&link);
        if report.is_valid() {
            return Ok(LiftedLink {
                link,
                stage: Stage::Final,
                ..ll.clone()
            });
        }
        last_err = Some(report.to_string());
    }
    Err(Error::Construction(format!(
        "no replacement path for P2 at z = -1 is valid: {}",
        last_err.unwrap_or_default()
    )))
}

/// Every stage of the construction for `p/q`.
#[derive(Clone, Debug, Serialize)]
pub struct Stages {
    pub circuit: RegularCircuit,
    pub baseline: LiftedLink,
    pub corner: LiftedLink,
    pub final_link: LiftedLink,
}

impl Stages {
    pub fn get(&self, stage: Stage) -> &LiftedLink {
        match stage {
            Stage::Baseline => &self.baseline,
            Stage::CornerReduced => &self.corner,
            Stage::Final => &self.final_link,
        }
    }

    pub fn all(&self) -> [&LiftedLink; 3] {
        [&self.baseline, &self.corner, &self.final_link]
    }
}

pub fn build_stages(p: i64, q: i64) -> Result<Stages> {
    if p == 1 {
        return Err(Error::Domain(
            "p = 1 is the trivial knot and is not constructed".into(),
        ));
    }
    let circuit = build_circuit(p, q)?;
    let baseline = lift_baseline(&circuit)?;
    let corner = reduce_corner(&baseline)?;
    let final_link = push_down_p2(&corner)?;
    Ok(Stages {
        circuit,
        baseline,
        corner,
        final_link,
    })
}

/// Full pipeline; returns the final stage.
pub fn build_lattice_link(p: i64, q: i64) -> Result<LiftedLink> {
    Ok(build_stages(p, q)?.final_link)
}
