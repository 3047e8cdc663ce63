//! Kauffman bracket by state sum.
//!
//! At a crossing with slots `s0..s3` the A-smoothing joins `s0-s1` and
//! `s2-s3`; the B-smoothing joins `s0-s3` and `s1-s2`. A state with `a`
//! A-smoothings, `b` B-smoothings and `k` loops contributes
//! `A^(a-b) d^(k-1)` with `d = -A^2 - A^-2`.

use std::collections::{BTreeSet, HashMap};

use super::diagram::Diagram;
use super::poly::LaurentPoly;
use crate::error::{Error, Result};

pub const DEFAULT_NAIVE_LIMIT: usize = 24;

fn smoothing(slots: [u32; 4], a: bool) -> [(u32, u32); 2] {
    let [s0, s1, s2, s3] = slots;
    if a {
        [(s0, s1), (s2, s3)]
    } else {
        [(s0, s3), (s1, s2)]
    }
}

/// Sum over all `2^c` states. Errors above `limit` crossings.
pub fn bracket_naive(d: &Diagram, limit: usize) -> Result<LaurentPoly> {
    let n = d.crossing_count();
    if n > limit {
        return Err(Error::CrossingLimit {
            crossings: n,
            limit,
        });
    }
    let delta = LaurentPoly::loop_value();
    if n == 0 {
        return Ok(delta.pow(d.free_loops().saturating_sub(1) as u32));
    }
    let labels: Vec<u32> = d.occurrences().into_keys().collect();
    let index: HashMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let slots: Vec<[usize; 4]> = d
        .crossings()
        .iter()
        .map(|c| c.slots.map(|l| index[&l]))
        .collect();
    // loop counts per A-exponent, then expand
    let mut by_shape: HashMap<(i32, usize), i128> = HashMap::new();
    let mut parent = vec![0usize; labels.len()];
    for state in 0u64..(1u64 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut loops = labels.len();
        for (ci, s) in slots.iter().enumerate() {
            let a = state >> ci & 1 == 0;
            let pairs = if a {
                [(s[0], s[1]), (s[2], s[3])]
            } else {
                [(s[0], s[3]), (s[1], s[2])]
            };
            for (x, y) in pairs {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                    loops -= 1;
                }
            }
        }
        let a_count = n as i32 - state.count_ones() as i32;
        *by_shape.entry((2 * a_count - n as i32, loops)).or_default() += 1;
    }
    let mut out = LaurentPoly::zero();
    let extra = d.free_loops();
    for ((exp, loops), mult) in by_shape {
        let term = delta.pow((loops + extra - 1) as u32).shift(exp).scale(mult);
        out = &out + &term;
    }
    Ok(out)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Processing order for the frontier sweep: always take the crossing that
/// closes the most open edges.
fn sweep_order(d: &Diagram) -> Vec<usize> {
    let n = d.crossing_count();
    let mut done = vec![false; n];
    let mut open: BTreeSet<u32> = BTreeSet::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&i| !done[i])
            .max_by_key(|&i| {
                let s = &d.crossings()[i].slots;
                let shared = s.iter().filter(|l| open.contains(l)).count() as i64;
                (shared, -(i as i64))
            })
            .expect("crossings remain");
        done[best] = true;
        order.push(best);
        for &l in &d.crossings()[best].slots {
            if !open.remove(&l) {
                open.insert(l);
            }
        }
    }
    order
}

type Matching = Vec<(u32, u32)>;

/// Joins an existing matching of open edge ends with the two arcs of one
/// smoothing. Returns the new matching and the number of loops closed.
fn absorb(matching: &Matching, arcs: [(u32, u32); 2]) -> (Matching, usize) {
    let touched: BTreeSet<u32> = arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(6);
    let mut kept: Matching = Vec::with_capacity(matching.len() + 1);
    for &(a, b) in matching {
        if touched.contains(&a) || touched.contains(&b) {
            edges.push((a, b));
        } else {
            kept.push((a, b));
        }
    }
    edges.extend_from_slice(&arcs);
    let mut incident: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident.entry(a).or_default().push(i);
        incident.entry(b).or_default().push(i);
    }
    let mut used = vec![false; edges.len()];
    let walk = |start: u32, used: &mut Vec<bool>| -> u32 {
        let mut node = start;
        loop {
            let Some(&e) = incident[&node].iter().find(|&&e| !used[e]) else {
                return node;
            };
            used[e] = true;
            let (a, b) = edges[e];
            node = if a == node { b } else { a };
        }
    };
    let mut ends: Vec<u32> = incident
        .iter()
        .filter(|(_, es)| es.len() == 1)
        .map(|(&n, _)| n)
        .collect();
    ends.sort_unstable();
    for start in ends {
        if incident[&start].iter().all(|&e| used[e]) {
            continue;
        }
        let other = walk(start, &mut used);
        kept.push((start.min(other), start.max(other)));
    }
    let mut cycles = 0;
    for e in 0..edges.len() {
        if !used[e] {
            walk(edges[e].0, &mut used);
            cycles += 1;
        }
    }
    kept.sort_unstable();
    (kept, cycles)
}

/// Bracket by a left-to-right sweep over crossings, merging states that
/// leave the same connection pattern on the open edges.
pub fn bracket_memo(d: &Diagram) -> LaurentPoly {
    let delta = LaurentPoly::loop_value();
    if d.crossing_count() == 0 {
        return delta.pow(d.free_loops().saturating_sub(1) as u32);
    }
    // key: open matching, whether a loop has been closed yet
    let mut states: HashMap<(Matching, bool), LaurentPoly> = HashMap::new();
    states.insert((Vec::new(), d.free_loops() > 0), LaurentPoly::one());
    for ci in sweep_order(d) {
        let slots = d.crossings()[ci].slots;
        let mut next: HashMap<(Matching, bool), LaurentPoly> =
            HashMap::with_capacity(states.len() * 2);
        for ((m, closed), w) in &states {
            for a in [true, false] {
                let (m2, cycles) = absorb(m, smoothing(slots, a));
                let mut term = w.shift(if a { 1 } else { -1 });
                let mut closed2 = *closed;
                if cycles > 0 {
                    let extra = if closed2 { cycles } else { cycles - 1 };
                    term = &term * &delta.pow(extra as u32);
                    closed2 = true;
                }
                let slot = next.entry((m2, closed2)).or_default();
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let mut out = LaurentPoly::zero();
    for ((m, _), w) in states {
        debug_assert!(m.is_empty());
        out = &out + &w;
    }
    if d.free_loops() > 1 {
        out = &out * &delta.pow(d.free_loops() as u32 - 1);
    }
    out
}

/// Memoized bracket; the default evaluator.
pub fn kauffman_bracket(d: &Diagram) -> LaurentPoly {
    bracket_memo(d)
}

/// `(-A^3)^(-w) <D>`: the Jones polynomial in `A`, with `t = A^-4`.
pub fn normalized_jones(d: &Diagram) -> LaurentPoly {
    let w = d.writhe();
    let b = kauffman_bracket(d);
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    b.shift(-3 * w).scale(sign)
}

/// Normalized Jones polynomials over every relative orientation of the
/// components (component 0 fixed), sorted and deduplicated.
pub fn jones_orientation_set(d: &Diagram) -> Vec<LaurentPoly> {
    let k = d.component_count() - d.free_loops();
    let mut out: Vec<LaurentPoly> = (0u32..1 << k.saturating_sub(1))
        .map(|mask| {
            let which: BTreeSet<usize> = (1..k).filter(|&c| mask >> (c - 1) & 1 == 1).collect();
            normalized_jones(&d.reverse_components(&which))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
