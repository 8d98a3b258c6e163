use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use fillperm::census::enumerate_filling;
use fillperm::filling::{big_q, opposite_map, tau};
use fillperm::surgery::{self, attachment_site};
use fillperm::twist::{self, TwistGroup};
use fillperm::{fixtures, validate, FillingPermutation, Permutation};
use proptest::prelude::*;

fn all_fillings(n: usize) -> Vec<Permutation> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<Permutation>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| enumerate_filling(n, false).unwrap())
        .clone()
}

fn group(n: usize) -> TwistGroup {
    static CACHE: OnceLock<Mutex<HashMap<usize, TwistGroup>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| TwistGroup::with_limits(n, 32, twist::DEFAULT_ELEMENT_CAP).unwrap())
        .clone()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn arb_permutation() -> impl Strategy<Value = Permutation> {
    (1usize..40)
        .prop_flat_map(|size| Just((1..=size).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn arb_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..30).prop_flat_map(|size| {
        let one = || Just((1..=size).collect::<Vec<_>>()).prop_shuffle();
        (one(), one(), one()).prop_map(|(a, b, c)| {
            (
                Permutation::from_images(a).unwrap(),
                Permutation::from_images(b).unwrap(),
                Permutation::from_images(c).unwrap(),
            )
        })
    })
}

fn arb_filling() -> impl Strategy<Value = FillingPermutation> {
    (1usize..=6, any::<prop::sample::Index>()).prop_map(|(n, index)| {
        let all = all_fillings(n);
        validate(index.get(&all).clone(), Some(n)).unwrap()
    })
}

fn pieces() -> Vec<FillingPermutation> {
    vec![
        fixtures::zeta(),
        fixtures::zeta_prime(),
        fixtures::sigma_z(),
        fixtures::z5(),
    ]
}

fn hosts() -> Vec<FillingPermutation> {
    vec![fixtures::torus(), fixtures::sigma_f(), fixtures::f4()]
}

/// Minimal permutations built by gluing a known piece onto a known host,
/// then relabeled by a twist.
fn arb_assembled() -> impl Strategy<Value = FillingPermutation> {
    (
        0..hosts().len(),
        0..pieces().len(),
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
    )
        .prop_map(|(h, p, site_index, twist_index)| {
            let host = &hosts()[h];
            let piece = &pieces()[p];
            let odd: Vec<usize> = (1..=2 * host.n()).step_by(2).collect();
            let site = attachment_site(host, *site_index.get(&odd)).unwrap();
            let glued = surgery::assemble(host, piece, site).unwrap().result;
            let g = group(glued.n());
            glued.conjugate_by(twist_index.get(g.elements())).unwrap()
        })
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn composition_is_associative((a, b, c) in arb_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn inverse_cancels(p in arb_permutation()) {
        prop_assert!((&p * &p.inverse()).is_identity());
        prop_assert!((&p.inverse() * &p).is_identity());
        prop_assert!(p.power(p.order() as i64).is_identity());
    }

    #[test]
    fn cycle_text_round_trips(p in arb_permutation()) {
        let text = p.to_string();
        prop_assert_eq!(Permutation::parse_cycles(&text, p.size()).unwrap(), p.clone());
        let record = p.to_record();
        prop_assert_eq!(Permutation::try_from(record).unwrap(), p);
    }

    #[test]
    fn q_sigma_has_order_dividing_four(fp in arb_filling()) {
        let qs = &big_q(fp.n()).power(2 * fp.n() as i64) * fp.sigma();
        prop_assert!(qs.power(4).is_identity());
        for e in 1..=fp.size() {
            prop_assert_eq!(fp.vertex_orbit(e).len(), 4);
        }
    }

    #[test]
    fn genus_formula(fp in arb_filling()) {
        let c = fp.region_count();
        prop_assert_eq!(2 * fp.genus(), 2 + fp.n() - c);
    }

    #[test]
    fn twist_conjugation_preserves_validity(fp in arb_filling(), index in any::<prop::sample::Index>()) {
        let g = group(fp.n());
        let t = index.get(g.elements());
        let moved = fp.sigma().conjugate_by(t);
        let valid = validate(moved, Some(fp.n())).unwrap();
        prop_assert_eq!(valid.genus(), fp.genus());
        prop_assert_eq!(valid.region_count(), fp.region_count());
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(fp in arb_filling(), index in any::<prop::sample::Index>()) {
        let g = group(fp.n());
        let other = fp.conjugate_by(index.get(g.elements())).unwrap();
        let there = g.are_equivalent(&fp, &other).unwrap().expect("twisted copy is equivalent");
        prop_assert_eq!(fp.sigma().conjugate_by(&there.witness), other.sigma().clone());
        let back = g.are_equivalent(&other, &fp).unwrap().expect("symmetric");
        prop_assert_eq!(other.sigma().conjugate_by(&back.witness), fp.sigma().clone());
        prop_assert!(g.are_equivalent(&fp, &fp).unwrap().is_some());
    }

    #[test]
    fn canonical_form_is_an_orbit_invariant(fp in arb_filling(), index in any::<prop::sample::Index>()) {
        let g = group(fp.n());
        let form = g.canonical_form(&fp).unwrap();
        let other = fp.conjugate_by(index.get(g.elements())).unwrap();
        prop_assert_eq!(g.canonical_form(&other).unwrap(), form.clone());
        let again = validate(form.clone(), Some(fp.n())).unwrap();
        prop_assert_eq!(g.canonical_form(&again).unwrap(), form);
    }

    #[test]
    fn equivalence_is_transitive(
        fp in arb_filling(),
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let g = group(fp.n());
        let b = fp.conjugate_by(i.get(g.elements())).unwrap();
        let c = b.conjugate_by(j.get(g.elements())).unwrap();
        prop_assert!(g.are_equivalent(&fp, &c).unwrap().is_some());
    }
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn found_decompositions_separate(fp in arb_assembled()) {
        let found = surgery::find_decompositions(&fp).unwrap();
        prop_assert!(!found.is_empty());
        for d in &found {
            prop_assert_ne!(d.l, 2);
            prop_assert_eq!(d.k + d.l, fp.genus());
            prop_assert!(surgery::verify_separating(&fp, d).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn decompositions_round_trip(fp in arb_assembled()) {
        for d in surgery::find_decompositions(&fp).unwrap() {
            let trip = surgery::round_trip_check(&fp, &d).unwrap();
            prop_assert!(trip.reassembled.is_minimal());
        }
    }
}

#[test]
fn tau_and_q_power_anticommute() {
    for n in 1..=12 {
        let t = tau(n);
        let qn = big_q(n).power(2 * n as i64);
        assert_eq!(qn, opposite_map(n));
        assert_eq!(&t * &qn, &qn * &t.inverse(), "n = {n}");
    }
}

#[test]
fn exhaustive_small_cases() {
    for n in 1..=4 {
        let g = group(n);
        assert_eq!(g.len(), 8 * n * n);
        let opp = opposite_map(n);
        for sigma in all_fillings(n) {
            assert!((&opp * &sigma).power(4).is_identity());
            for t in g.elements() {
                validate(sigma.conjugate_by(t), Some(n)).unwrap();
            }
        }
    }
    for n in 5..=6 {
        let opp = opposite_map(n);
        for sigma in all_fillings(n) {
            assert!((&opp * &sigma).power(4).is_identity());
        }
    }
}

#[test]
fn exhaustive_genus_three_decompositions() {
    for sigma in enumerate_filling(5, true).unwrap() {
        let fp = validate(sigma, Some(5)).unwrap();
        for d in surgery::find_decompositions(&fp).unwrap() {
            assert_eq!(d.k, 2);
            assert_ne!(d.l, 2);
            assert!(surgery::verify_separating(&fp, &d).unwrap());
        }
    }
}

#[test]
fn printed_eta_breaks_validity() {
    let fp = fixtures::zeta();
    assert!(fp.conjugate_by(&twist::literal_eta(6)).is_err());
    assert!(fp.conjugate_by(&twist::eta(6)).is_ok());
    for n in 3..=5 {
        let printed = twist::printed_generators(n);
        assert!(!group(n).contains(&printed.eta));
        for sigma in all_fillings(n) {
            assert!(validate(sigma.conjugate_by(&printed.eta), Some(n)).is_err());
        }
    }
}
