use proptest::prelude::*;

use lattice_links::export::{from_json, to_json};
use lattice_links::invariants::{
    bracket_memo, bracket_naive, determinant, determinant_from_bracket, jones_orientation_set,
    normalized_jones, project_tilted, reference_diagram, Diagram, Tilt,
};
use lattice_links::lattice::{canonicalize, stick_census, validate_embedding, Axis, Point3};
use lattice_links::lift::build_lattice_link;
use lattice_links::tangle::{
    evaluate_conway, expand_fraction, gcd, pillow_of_word, ConwayWord, Fraction,
};

fn coprime(max_p: i64) -> impl Strategy<Value = (i64, i64)> {
    (2..=max_p)
        .prop_flat_map(|p| (Just(p), 1..p))
        .prop_filter("coprime", |&(p, q)| gcd(p as u64, q as u64) == 1)
}

fn word(max_len: usize, max_entry: u64) -> impl Strategy<Value = ConwayWord> {
    prop::collection::vec(1..=max_entry, 1..=max_len).prop_map(|mut e| {
        // leading entry 1 is allowed only for a single-entry word
        if e.len() > 1 && e[0] == 1 {
            e[0] = 2;
        }
        ConwayWord::new(e).unwrap()
    })
}

/// Signed permutation of the axes: `perm[i]` is the source axis of output
/// axis `i`.
fn symmetry() -> impl Strategy<Value = ([usize; 3], [i64; 3])> {
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    (0..6usize, prop::array::uniform3(prop::bool::ANY))
        .prop_map(move |(k, s)| (perms[k], s.map(|neg| if neg { -1 } else { 1 })))
}

fn small_reference(w: &ConwayWord) -> Diagram {
    reference_diagram(w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_symmetries_preserve_validity_and_census(
        (p, q) in coprime(20),
        (perm, sign) in symmetry(),
        shift in prop::array::uniform3(-50i64..50),
    ) {
        let link = build_lattice_link(p, q).unwrap().link;
        let moved = link
            .map_points(|v| {
                let a = v.as_array();
                Point3::new(sign[0] * a[perm[0]], sign[1] * a[perm[1]], sign[2] * a[perm[2]])
            })
            .translate(Point3::from(shift));
        prop_assert!(validate_embedding(&moved).is_valid());
        let (before, after) = (stick_census(&link), stick_census(&moved));
        let axes = [Axis::X, Axis::Y, Axis::Z];
        for i in 0..3 {
            prop_assert_eq!(after.get(axes[i]), before.get(axes[perm[i]]));
        }
    }

    #[test]
    fn canonicalize_is_idempotent((p, q) in coprime(30)) {
        let link = build_lattice_link(p, q).unwrap().link;
        let again = canonicalize(link.loops().to_vec()).unwrap();
        prop_assert_eq!(again, link);
    }

    #[test]
    fn json_round_trip((p, q) in coprime(30)) {
        let ll = build_lattice_link(p, q).unwrap();
        let doc = from_json(&to_json(&ll).unwrap()).unwrap();
        prop_assert_eq!((doc.p, doc.q, doc.stage), (p, q, ll.stage));
        prop_assert_eq!(doc.to_link().unwrap(), ll.link);
    }

    #[test]
    fn fraction_round_trips(p in 2u64..100_000, q in 1u64..100_000) {
        prop_assume!(q < p && gcd(p, q) == 1);
        let f = Fraction::new(p, q).unwrap();
        let w = expand_fraction(f).unwrap();
        prop_assert_eq!(evaluate_conway(&w).unwrap(), f);
        let form = pillow_of_word(&w).unwrap();
        prop_assert_eq!((form.t, form.s), (p, q));
    }

    #[test]
    fn bracket_oracles_agree(w in word(4, 3)) {
        prop_assume!(w.crossing_count() <= 10);
        let d = small_reference(&w);
        prop_assert_eq!(bracket_naive(&d, 12).unwrap(), bracket_memo(&d));
    }

    #[test]
    fn mirror_inverts_jones(w in word(4, 3)) {
        let d = small_reference(&w);
        prop_assert_eq!(normalized_jones(&d.mirror()), normalized_jones(&d).invert_variable());
    }

    #[test]
    fn determinants_agree(w in word(4, 4)) {
        let d = small_reference(&w);
        let det = determinant(&d).unwrap();
        prop_assert_eq!(det, determinant_from_bracket(&d).unwrap());
        prop_assert_eq!(det as u64, evaluate_conway(&w).unwrap().p());
    }

    #[test]
    fn diagram_text_round_trip(w in word(4, 4)) {
        let d = small_reference(&w);
        let back = Diagram::parse(&d.to_text()).unwrap();
        prop_assert_eq!(normalized_jones(&back), normalized_jones(&d));
        prop_assert_eq!(back.crossing_count(), d.crossing_count());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn jones_survives_tilt_change((p, q) in coprime(9)) {
        let link = build_lattice_link(p, q).unwrap().link;
        let a = project_tilted(&link, Axis::Z, Tilt::PRIMARY).unwrap();
        let b = project_tilted(&link, Axis::Z, Tilt::SECONDARY).unwrap();
        prop_assert_eq!(jones_orientation_set(&a), jones_orientation_set(&b));
    }
}
