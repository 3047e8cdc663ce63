//! Planar diagram codes.
//!
//! A crossing lists the four incident edge labels counterclockwise, starting
//! with the incoming under edge. `over_in` is the slot (1 or 3) of the
//! incoming over edge; the crossing is positive exactly when it is 3.
//!
//! Text format, one crossing per line:
//!
//! ```text
//! # trefoil
//! 1 4 2 5 : 1
//! 3 6 4 1 : 1
//! 5 2 6 3 : 1
//! loops 0
//! ```
//!
//! `loops n` (optional) adds `n` crossingless unknotted components.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing {
    pub slots: [u32; 4],
    pub over_in: u8,
}

impl Crossing {
    pub fn new(slots: [u32; 4], over_in: u8) -> Result<Self> {
        if over_in != 1 && over_in != 3 {
            return Err(Error::Structural(format!(
                "over-in slot must be 1 or 3, got {over_in}"
            )));
        }
        Ok(Crossing { slots, over_in })
    }

    pub fn sign(&self) -> i32 {
        if self.over_in == 3 {
            1
        } else {
            -1
        }
    }

    fn is_in_slot(&self, k: usize) -> bool {
        k == 0 || k == self.over_in as usize
    }

    /// Same crossing seen in a mirror: over and under swap.
    pub fn mirrored(&self) -> Crossing {
        let r = self.over_in as usize;
        let slots = std::array::from_fn(|i| self.slots[(i + r) % 4]);
        Crossing {
            slots,
            over_in: 4 - self.over_in,
        }
    }

    /// Reverses the orientation of the under strand, the over strand, or both.
    pub fn reoriented(&self, flip_under: bool, flip_over: bool) -> Crossing {
        let mut c = *self;
        if flip_under {
            c.slots = std::array::from_fn(|i| self.slots[(i + 2) % 4]);
            c.over_in = 4 - c.over_in;
        }
        if flip_over {
            c.over_in = 4 - c.over_in;
        }
        c
    }
}

/// Oriented link diagram. Labels are arbitrary, each used by exactly two
/// crossing slots (once entering, once leaving).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    /// Component of each edge label.
    edge_component: BTreeMap<u32, usize>,
    components: usize,
}

impl Diagram {
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self> {
        let mut seen: BTreeMap<u32, (u8, u8)> = BTreeMap::new();
        for c in &crossings {
            for (k, &l) in c.slots.iter().enumerate() {
                let e = seen.entry(l).or_default();
                if c.is_in_slot(k) {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        if let Some((l, _)) = seen.iter().find(|(_, &(i, o))| i != 1 || o != 1) {
            return Err(Error::Structural(format!(
                "edge {l} must enter exactly one crossing and leave exactly one"
            )));
        }
        let mut d = Diagram {
            crossings,
            free_loops,
            edge_component: BTreeMap::new(),
            components: 0,
        };
        d.label_components();
        d.check_planar()?;
        Ok(d)
    }

    /// Reads a KnotTheory-style PD code (`X[i,j,k,l]` as `[i,j,k,l]`) where
    /// labels increase along each component; over direction is inferred from
    /// the label order on `j, l`.
    pub fn from_pd_code(code: &[[u32; 4]]) -> Result<Self> {
        let crossings = code
            .iter()
            .map(|&[i, j, k, l]| {
                let positive = j == l + 1 || l > j + 1;
                Crossing::new([i, j, k, l], if positive { 3 } else { 1 })
            })
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(crossings, 0)
    }

    pub fn unknot() -> Self {
        Diagram::new(Vec::new(), 1).expect("one free loop is a valid diagram")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn edge_component(&self, label: u32) -> Option<usize> {
        self.edge_component.get(&label).copied()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    /// `(crossing, slot)` occurrences of each label.
    pub(crate) fn occurrences(&self) -> BTreeMap<u32, Vec<(usize, usize)>> {
        let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for (k, &l) in c.slots.iter().enumerate() {
                occ.entry(l).or_default().push((ci, k));
            }
        }
        occ
    }

    /// Traces strands straight through crossings and numbers the components
    /// in order of their smallest label. Free loops come last.
    fn label_components(&mut self) {
        let occ = self.occurrences();
        let mut comp: BTreeMap<u32, usize> = BTreeMap::new();
        let mut next = 0;
        for &start in occ.keys() {
            if comp.contains_key(&start) {
                continue;
            }
            let mut label = start;
            loop {
                comp.insert(label, next);
                // leave through the far end of this edge's exit slot
                let &(ci, k) = occ[&label]
                    .iter()
                    .find(|&&(ci, k)| self.crossings[ci].is_in_slot(k))
                    .expect("validated");
                label = self.crossings[ci].slots[(k + 2) % 4];
                if label == start {
                    break;
                }
            }
            next += 1;
        }
        self.edge_component = comp;
        self.components = next + self.free_loops;
    }

    /// Faces of the diagram as lists of corners `(crossing, k)` meaning the
    /// corner between slots `k` and `k + 1`.
    pub(crate) fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let occ = self.occurrences();
        let n = self.crossings.len();
        let mut used = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for c0 in 0..n {
            for k0 in 0..4 {
                if used[c0][k0] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut c, mut k) = (c0, k0);
                while !used[c][k] {
                    used[c][k] = true;
                    face.push((c, k));
                    // walk along the edge at slot k+1 to its other end, then
                    // turn to the next slot counterclockwise there
                    let l = self.crossings[c].slots[(k + 1) % 4];
                    let other = occ[&l]
                        .iter()
                        .copied()
                        .find(|&o| o != (c, (k + 1) % 4))
                        .unwrap_or((c, (k + 1) % 4));
                    (c, k) = other;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Groups crossings into connected pieces of the projection graph.
    pub(crate) fn crossing_groups(&self) -> usize {
        let occ = self.occurrences();
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for v in occ.values() {
            let (a, b) = (find(&mut parent, v[0].0), find(&mut parent, v[1].0));
            parent[a] = b;
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }

    fn check_planar(&self) -> Result<()> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        let faces = self.faces().len();
        let groups = self.crossing_groups();
        if faces != n + 2 * groups {
            return Err(Error::Structural(format!(
                "{n} crossings in {groups} pieces bound {faces} faces; not a planar diagram"
            )));
        }
        Ok(())
    }

    pub fn mirror(&self) -> Diagram {
        let crossings = self.crossings.iter().map(Crossing::mirrored).collect();
        Diagram::new(crossings, self.free_loops).expect("mirror preserves validity")
    }

    /// Reverses the orientation of the listed components.
    pub fn reverse_components(&self, which: &BTreeSet<usize>) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let comp = |k: usize| self.edge_component[&c.slots[k]];
                c.reoriented(
                    which.contains(&comp(0)),
                    which.contains(&comp(c.over_in as usize)),
                )
            })
            .collect();
        Diagram::new(crossings, self.free_loops).expect("reorientation preserves validity")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.crossings {
            let [a, b, d, e] = c.slots;
            s.push_str(&format!("{a} {b} {d} {e} : {}\n", c.over_in));
        }
        if self.free_loops > 0 {
            s.push_str(&format!("loops {}\n", self.free_loops));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut crossings = Vec::new();
        let mut loops = 0;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Structural(format!("line {}: cannot parse {line:?}", no + 1));
            if let Some(rest) = line.strip_prefix("loops") {
                loops = rest.trim().parse().map_err(|_| bad())?;
                continue;
            }
            let (labels, over) = line.split_once(':').ok_or_else(bad)?;
            let labels: Vec<u32> = labels
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            let slots: [u32; 4] = labels.try_into().map_err(|_| bad())?;
            let over: u8 = over.trim().parse().map_err(|_| bad())?;
            crossings.push(Crossing::new(slots, over)?);
        }
        Diagram::new(crossings, loops)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A crossing end: crossing index and position `0..4` counterclockwise.
pub type End = (usize, usize);

/// Assembles an unoriented diagram from crossings and wires, then orients
/// it. Strands run through ends `0-2` and `1-3`; `over_odd` selects `1-3`
/// as the over strand.
#[derive(Clone, Debug, Default)]
pub struct DiagramBuilder {
    over_odd: Vec<bool>,
    wires: Vec<(Node, Node)>,
    virtuals: usize,
    free_loops: usize,
}

/// Wire endpoint: a crossing end or a pass-through point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    End(usize, usize),
    Virtual(usize),
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn crossing(&mut self, over_odd: bool) -> usize {
        self.over_odd.push(over_odd);
        self.over_odd.len() - 1
    }

    /// A degree-two junction, for joining wires whose far ends are not yet
    /// known.
    pub fn junction(&mut self) -> Node {
        self.virtuals += 1;
        Node::Virtual(self.virtuals - 1)
    }

    /// Wires `from` to `to`. Direction is honoured when orienting: each
    /// component is traversed starting at the first end that some wire
    /// enters.
    pub fn wire(&mut self, from: Node, to: Node) {
        self.wires.push((from, to));
    }

    pub fn free_loop(&mut self) {
        self.free_loops += 1;
    }

    pub fn build(self) -> Result<Diagram> {
        let n = self.over_odd.len();
        // contract junctions: adjacency over nodes
        let mut adj: BTreeMap<Node, Vec<(usize, bool)>> = BTreeMap::new();
        for (i, &(a, b)) in self.wires.iter().enumerate() {
            adj.entry(a).or_default().push((i, true));
            adj.entry(b).or_default().push((i, false));
        }
        for c in 0..n {
            for k in 0..4 {
                if adj.get(&Node::End(c, k)).map_or(0, Vec::len) != 1 {
                    return Err(Error::Structural(format!(
                        "crossing end ({c},{k}) must carry exactly one wire"
                    )));
                }
            }
        }
        for v in 0..self.virtuals {
            if adj.get(&Node::Virtual(v)).map_or(0, Vec::len) != 2 {
                return Err(Error::Structural(format!(
                    "junction {v} must join exactly two wires"
                )));
            }
        }
        // follow wires through junctions; returns the far crossing end and
        // whether the first wire was entered along its direction
        let mut wire_used = vec![false; self.wires.len()];
        let mut partner: BTreeMap<End, End> = BTreeMap::new();
        let mut entered: BTreeSet<End> = BTreeSet::new();
        let mut free = self.free_loops;
        for start in 0..self.wires.len() {
            if wire_used[start] {
                continue;
            }
            // walk forward from the head, then backward from the tail
            let mut ends = Vec::new();
            for node0 in [self.wires[start].1, self.wires[start].0] {
                let (mut node, mut via) = (node0, start);
                loop {
                    match node {
                        Node::End(c, k) => {
                            ends.push((c, k));
                            break;
                        }
                        Node::Virtual(_) => {
                            let next = adj[&node].iter().find(|&&(w, _)| w != via).copied();
                            let Some((w, at_tail)) = next.filter(|&(w, _)| w != start) else {
                                break;
                            };
                            wire_used[w] = true;
                            via = w;
                            let (a, b) = self.wires[w];
                            node = if at_tail { b } else { a };
                        }
                    }
                }
            }
            wire_used[start] = true;
            match ends[..] {
                [] => free += 1,
                [head, tail] => {
                    partner.insert(head, tail);
                    partner.insert(tail, head);
                    entered.insert(head);
                }
                _ => return Err(Error::Structural("dangling wire".into())),
            }
        }
        // orient by traversal
        let mut label: BTreeMap<End, u32> = BTreeMap::new();
        let mut is_in: BTreeMap<End, bool> = BTreeMap::new();
        let mut next_label = 1u32;
        let mut starts: Vec<End> = (0..n).flat_map(|c| (0..4).map(move |k| (c, k))).collect();
        starts.sort_by_key(|e| !entered.contains(e));
        for s in starts {
            if is_in.contains_key(&s) {
                continue;
            }
            let mut e = s;
            loop {
                is_in.insert(e, true);
                let out = (e.0, (e.1 + 2) % 4);
                is_in.insert(out, false);
                let nxt = partner[&out];
                label.insert(out, next_label);
                label.insert(nxt, next_label);
                next_label += 1;
                if nxt == s {
                    break;
                }
                e = nxt;
            }
        }
        let mut crossings = Vec::with_capacity(n);
        for c in 0..n {
            let under = if self.over_odd[c] { 0 } else { 1 };
            let u_in = if is_in[&(c, under)] { under } else { under + 2 };
            let o_in = if is_in[&(c, under + 1)] {
                under + 1
            } else {
                (under + 3) % 4
            };
            let slots = std::array::from_fn(|i| label[&(c, (u_in + i) % 4)]);
            crossings.push(Crossing::new(slots, ((o_in + 4 - u_in) % 4) as u8)?);
        }
        Diagram::new(crossings, free)
    }
}
