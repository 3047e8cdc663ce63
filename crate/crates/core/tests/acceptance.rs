//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the report is always printed; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use lattice_links::circuit::build_circuit;
use lattice_links::invariants::{
    bracket_memo, bracket_naive, component_count, determinant, jones_orientation_set,
    project_tilted, reference_diagram, Diagram, Tilt,
};
use lattice_links::lattice::{stick_census, validate_embedding, Axis};
use lattice_links::lift::{build_lattice_link, build_stages};
use lattice_links::tangle::{expand_fraction, gcd, pillow_of_word, Fraction};
use lattice_links::verify::{coprime_pairs, verify_pair, verify_sweep, VerifyOptions};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if took > limit {
        out.pass = false;
        out.detail = format!("{}; took {took:?}, limit {limit:?}", out.detail);
    } else {
        out.detail = format!("{} ({took:.2?})", out.detail);
    }
    out
}

fn summarize(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: ok,
        }
    } else {
        let shown: Vec<&str> = failures.iter().take(6).map(String::as_str).collect();
        Outcome {
            pass: false,
            detail: format!("{} failure(s): {}", failures.len(), shown.join("; ")),
        }
    }
}

fn totient_pairs(max_p: i64) -> usize {
    (2..=max_p)
        .map(|n| (1..n).filter(|&k| gcd(n as u64, k as u64) == 1).count())
        .sum()
}

fn known_values() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut failures = Vec::new();
        for (p, q, want) in [(3, 1, 12), (5, 1, 16), (4, 1, 13)] {
            match build_lattice_link(p, q) {
                Ok(ll) if ll.total() == want => {}
                Ok(ll) => failures.push(format!("{p}/{q}: {} sticks, want {want}", ll.total())),
                Err(e) => failures.push(format!("{p}/{q}: {e}")),
            }
        }
        summarize(failures, "3/1 -> 12, 5/1 -> 16, 4/1 -> 13".into())
    })
}

fn stage_sweep() -> Outcome {
    timed(Duration::from_secs(10), || {
        let pairs = coprime_pairs(30);
        let mut failures = Vec::new();
        if pairs.len() != totient_pairs(30) {
            failures.push(format!(
                "enumerated {} pairs, expected {}",
                pairs.len(),
                totient_pairs(30)
            ));
        }
        for &(p, q) in &pairs {
            let stages = match build_stages(p, q) {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!("{p}/{q}: {e}"));
                    continue;
                }
            };
            let regular = lattice_links::circuit::check_regular(stages.circuit.circuit());
            if !regular.is_regular() {
                failures.push(format!("{p}/{q}: circuit not regular"));
            }
            for ll in stages.all() {
                let census = stick_census(&ll.link);
                let want = ll.stage.expected_total(p, if p % 2 == 0 { 2 } else { 1 });
                if !validate_embedding(&ll.link).is_valid() {
                    failures.push(format!("{p}/{q} {}: invalid embedding", ll.stage));
                }
                if census.z != 4 {
                    failures.push(format!("{p}/{q} {}: {} z-sticks", ll.stage, census.z));
                }
                if census.total() as i64 != want {
                    failures.push(format!(
                        "{p}/{q} {}: {} sticks, want {want}",
                        ll.stage,
                        census.total()
                    ));
                }
            }
        }
        summarize(
            failures,
            format!(
                "{} pairs, all stages valid with 4 z-sticks and exact totals",
                pairs.len()
            ),
        )
    })
}

fn circuit_census() -> Outcome {
    let mut failures = Vec::new();
    for (p, q) in coprime_pairs(30) {
        let c = match build_circuit(p, q) {
            Ok(c) => c,
            Err(e) => {
                failures.push(format!("{p}/{q}: {e}"));
                continue;
            }
        };
        let n = p as usize;
        if c.vertical_count() != 2 * n || c.horizontal_count() != 2 * n - 2 {
            failures.push(format!(
                "{p}/{q}: {}v {}h",
                c.vertical_count(),
                c.horizontal_count()
            ));
        }
        if c.p1().segment_count() != 2 * n - 1 || c.p2().segment_count() != 2 * n - 1 {
            failures.push(format!(
                "{p}/{q}: arc lengths {} {}",
                c.p1().segment_count(),
                c.p2().segment_count()
            ));
        }
        let parity_ok = |arc: &lattice_links::circuit::Arc2D, want: i64| {
            arc.segments()
                .filter(|(a, b)| a.x == b.x)
                .all(|(a, _)| a.x.rem_euclid(2) == want)
        };
        if !parity_ok(c.p1(), 0) || !parity_ok(c.p2(), 1) {
            failures.push(format!("{p}/{q}: vertical x-parity not split"));
        }
    }
    summarize(
        failures,
        "2p verticals, 2p-2 horizontals, arcs of 2p-1, parity split".into(),
    )
}

fn pillow_identity() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut failures = Vec::new();
        let mut count = 0;
        for p in 2..=200u64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                count += 1;
                let form = Fraction::new(p, q)
                    .and_then(expand_fraction)
                    .and_then(|w| pillow_of_word(&w));
                match form {
                    Ok(f) if (f.t, f.s) == (p, q) => {}
                    Ok(f) => failures.push(format!("{p}/{q} -> ({},{})", f.t, f.s)),
                    Err(e) => failures.push(format!("{p}/{q}: {e}")),
                }
            }
        }
        summarize(failures, format!("{count} fractions round-trip"))
    })
}

fn topology() -> Outcome {
    timed(Duration::from_secs(120), || {
        let mut failures = Vec::new();
        let mut checked = (0, 0);
        for (p, q) in coprime_pairs(12) {
            let result = (|| -> lattice_links::Result<()> {
                let ll = build_lattice_link(p, q)?;
                let d = project_tilted(&ll.link, Axis::Z, Tilt::PRIMARY)?;
                if p <= 10 {
                    let word = expand_fraction(Fraction::new(p as u64, q as u64)?)?;
                    let reference = reference_diagram(&word)?;
                    if jones_orientation_set(&d) != jones_orientation_set(&reference) {
                        failures.push(format!("{p}/{q}: Jones differs"));
                    }
                    checked.0 += 1;
                }
                let det = determinant(&d)?;
                if det != p as u128 {
                    failures.push(format!("{p}/{q}: determinant {det}"));
                }
                checked.1 += 1;
                Ok(())
            })();
            if let Err(e) = result {
                failures.push(format!("{p}/{q}: {e}"));
            }
        }
        summarize(
            failures,
            format!(
                "Jones equal on {} pairs (p <= 10), det = p on {} pairs (p <= 12)",
                checked.0, checked.1
            ),
        )
    })
}

fn component_parity() -> Outcome {
    let mut failures = Vec::new();
    let pairs = coprime_pairs(30);
    for &(p, q) in &pairs {
        let result = (|| -> lattice_links::Result<()> {
            let stages = build_stages(p, q)?;
            let d = project_tilted(&stages.final_link.link, Axis::Z, Tilt::PRIMARY)?;
            let even = p % 2 == 0;
            if (component_count(&d) == 2) != even {
                failures.push(format!("{p}/{q}: {} components", component_count(&d)));
            }
            if stages.circuit.p2_joins_v2_pair() != even {
                failures.push(format!("{p}/{q}: P2 endpoint rule disagrees"));
            }
            Ok(())
        })();
        if let Err(e) = result {
            failures.push(format!("{p}/{q}: {e}"));
        }
    }
    summarize(
        failures,
        format!(
            "{} pairs: two components exactly when p is even",
            pairs.len()
        ),
    )
}

fn non_tightness() -> Outcome {
    let mut failures = Vec::new();
    match build_lattice_link(2, 1) {
        Ok(ll) if ll.total() == 9 => {}
        Ok(ll) => failures.push(format!("build(2,1) yields {} sticks, want 9", ll.total())),
        Err(e) => failures.push(format!("build(2,1): {e}")),
    }
    let row = verify_pair(2, 1, 0);
    if !row.bound_not_tight || !row.notes.iter().any(|n| n.contains("bound not tight")) {
        failures.push("verify row (2,1) is not flagged 'bound not tight'".into());
    }
    summarize(
        failures,
        "build(2,1) = 9 and the row is flagged 'bound not tight'".into(),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut failures = Vec::new();
    let mut diagrams: Vec<(String, Diagram)> = Vec::new();
    for (p, q) in coprime_pairs(30) {
        if let Ok(stages) = build_stages(p, q) {
            for ll in stages.all() {
                for tilt in [Tilt::PRIMARY, Tilt::SECONDARY] {
                    match project_tilted(&ll.link, Axis::Z, tilt) {
                        Ok(d) => diagrams.push((format!("{p}/{q} {}", ll.stage), d)),
                        Err(e) => failures.push(format!("{p}/{q}: {e}")),
                    }
                }
            }
        }
        if let Ok(word) = expand_fraction(Fraction::new(p as u64, q as u64).unwrap()) {
            if let Ok(d) = reference_diagram(&word) {
                diagrams.push((format!("4-plat {word}"), d));
            }
        }
    }
    diagrams.retain(|(_, d)| d.crossing_count() <= 8);
    for (name, d) in &diagrams {
        match bracket_naive(d, 8) {
            Ok(b) if b == bracket_memo(d) => {}
            Ok(_) => failures.push(format!("{name}: brackets differ")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    summarize(
        failures,
        format!("{} diagrams with <= 8 crossings agree", diagrams.len()),
    )
}

fn general_bound_column() -> Outcome {
    let rows = verify_sweep(VerifyOptions {
        max_p: 30,
        jones_max_p: 0,
    });
    let mut failures = Vec::new();
    for r in rows.iter().filter(|r| r.q == 1) {
        // crossing number of p/1 is p
        if r.general_bound != 3 * r.p + 2 {
            failures.push(format!("{}/1: general bound {}", r.p, r.general_bound));
        }
        if (2 * r.p + 6 < r.general_bound) != (r.p > 4) {
            failures.push(format!("{}/1: comparison wrong", r.p));
        }
    }
    summarize(failures, "2p+6 < 3p+2 exactly when p > 4".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 known values", known_values),
        ("2 stage totals over the sweep", stage_sweep),
        ("3 circuit census", circuit_census),
        ("4 pillowcase identity", pillow_identity),
        ("5 Jones and determinant", topology),
        ("6 component parity", component_parity),
        ("7 non-tightness at 2/1", non_tightness),
        ("8 bracket oracle equivalence", oracle_equivalence),
        ("  general bound column", general_bound_column),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let out = check();
        if !out.pass {
            failed += 1;
        }
        println!(
            "[{}] {name}: {}",
            if out.pass { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
