//! Exact arithmetic between Conway words, continued-fraction values and
//! pillowcase `(t, s)`-forms of positive rational tangles.
//!
//! A word `[a1, ..., an]` is read so that the last twist region `an` is
//! horizontal and the regions alternate backwards from there. Its value is
//! `an + 1/(a(n-1) + 1/(... + 1/a1))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest numerator the construction pipeline is documented to support.
pub const MAX_SUPPORTED_P: u64 = 1_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A coprime pair `p/q` with `p, q >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fraction {
    p: u64,
    q: u64,
}

impl Fraction {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::Domain(format!(
                "p and q must be positive, got {p}/{q}"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(Error::Domain("p and q must be coprime".into()));
        }
        Ok(Fraction { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Conway notation `T(a1, ..., an)` with every entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConwayWord(Vec<u64>);

impl ConwayWord {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Domain(
                "a Conway word needs at least one entry".into(),
            ));
        }
        if entries.contains(&0) {
            return Err(Error::Domain("Conway word entries must be positive".into()));
        }
        Ok(ConwayWord(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of crossings in the standard diagram of the word.
    pub fn crossing_count(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Whether entry `k` (0-based) is a horizontal twist region.
    pub fn is_horizontal(&self, k: usize) -> bool {
        (self.0.len() - 1 - k).is_multiple_of(2)
    }
}

impl fmt::Display for ConwayWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Gap counts of a tangle drawn on the boundary of a pillowcase: `t` across
/// the top and bottom, `s` across each side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PillowForm {
    pub t: u64,
    pub s: u64,
}

impl PillowForm {
    /// The form of the 0-tangle.
    pub const ZERO_TANGLE: PillowForm = PillowForm { t: 0, s: 1 };

    pub fn new(t: u64, s: u64) -> Result<Self> {
        if t == 0 && s == 0 {
            return Err(Error::Domain("(t, s) cannot both be zero".into()));
        }
        if gcd(t, s) != 1 {
            return Err(Error::Domain(format!("({t}, {s}) is not coprime")));
        }
        Ok(PillowForm { t, s })
    }

    /// Reflection in the diagonal plane, which swaps the roles of the two
    /// gap counts.
    pub fn reflect(self) -> PillowForm {
        PillowForm {
            t: self.s,
            s: self.t,
        }
    }
}

impl fmt::Display for PillowForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t, self.s)
    }
}

pub fn evaluate_conway(word: &ConwayWord) -> Result<Fraction> {
    let entries = word.entries();
    let (mut num, mut den) = (entries[0], 1u64);
    for &a in &entries[1..] {
        let next = a
            .checked_mul(num)
            .and_then(|v| v.checked_add(den))
            .ok_or(Error::Overflow("evaluate_conway"))?;
        (num, den) = (next, num);
    }
    Fraction::new(num, den)
}

/// Greedy all-positive continued-fraction expansion of `p/q`, returned in
/// Conway order (last entry is the integer part).
pub fn expand_fraction(frac: Fraction) -> Result<ConwayWord> {
    let (mut p, mut q) = (frac.p(), frac.q());
    if p <= q {
        return Err(Error::Domain(format!(
            "expansion requires p > q, got {frac}"
        )));
    }
    let mut quotients = Vec::new();
    while q != 0 {
        quotients.push(p / q);
        (p, q) = (q, p % q);
    }
    quotients.reverse();
    ConwayWord::new(quotients)
}

pub fn twist_vertical(form: PillowForm) -> Result<PillowForm> {
    let s = form
        .t
        .checked_add(form.s)
        .ok_or(Error::Overflow("twist_vertical"))?;
    let out = PillowForm { t: form.t, s };
    debug_assert_eq!(gcd(out.t, out.s), 1);
    Ok(out)
}

pub fn twist_horizontal(form: PillowForm) -> Result<PillowForm> {
    let t = form
        .t
        .checked_add(form.s)
        .ok_or(Error::Overflow("twist_horizontal"))?;
    let out = PillowForm { t, s: form.s };
    debug_assert_eq!(gcd(out.t, out.s), 1);
    Ok(out)
}

/// One step of the pillowcase recursion, as printed by the `tangle` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceStep {
    Horizontal(PillowForm),
    Vertical(PillowForm),
    Reflect(PillowForm),
}

impl TraceStep {
    pub fn form(&self) -> PillowForm {
        match *self {
            TraceStep::Horizontal(f) | TraceStep::Vertical(f) | TraceStep::Reflect(f) => f,
        }
    }
}

/// Single-twist trace from `(0,1)`: `a1` horizontal twists, `a2` vertical,
/// alternating. Words of even length end with a vertical region and get a
/// closing reflection so the final region reads as horizontal.
pub fn pillow_trace(word: &ConwayWord) -> Result<Vec<TraceStep>> {
    let mut form = PillowForm::ZERO_TANGLE;
    let mut steps = Vec::with_capacity(word.crossing_count() as usize + 1);
    for (k, &a) in word.entries().iter().enumerate() {
        for _ in 0..a {
            if k % 2 == 0 {
                form = twist_horizontal(form)?;
                steps.push(TraceStep::Horizontal(form));
            } else {
                form = twist_vertical(form)?;
                steps.push(TraceStep::Vertical(form));
            }
        }
    }
    if word.len().is_multiple_of(2) {
        form = form.reflect();
        steps.push(TraceStep::Reflect(form));
    }
    Ok(steps)
}

pub fn pillow_of_word(word: &ConwayWord) -> Result<PillowForm> {
    Ok(pillow_trace(word)?
        .last()
        .map(TraceStep::form)
        .expect("a word has at least one positive entry"))
}

/// Recovers a word from a form by undoing twists (subtractive Euclid).
/// Always yields an odd-length word, so it is an expansion path independent
/// of [`expand_fraction`].
pub fn untwist(form: PillowForm) -> Result<ConwayWord> {
    let PillowForm { mut t, mut s } = PillowForm::new(form.t, form.s)?;
    if t == 0 {
        return Err(Error::Domain("the 0-tangle has no twists to undo".into()));
    }
    let mut runs: Vec<u64> = Vec::new();
    let mut horizontal = true;
    while (t, s) != (0, 1) {
        let mut run = 0;
        if horizontal {
            while t >= s && t > 0 {
                t -= s;
                run += 1;
            }
        } else {
            while s > t {
                s -= t;
                run += 1;
            }
        }
        if run == 0 {
            return Err(Error::Construction(format!(
                "untwisting stalled at ({t},{s})"
            )));
        }
        runs.push(run);
        horizontal = !horizontal;
    }
    runs.reverse();
    ConwayWord::new(runs)
}
