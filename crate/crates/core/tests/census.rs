use fillperm::census::{self, enumerate_filling, upper_bound};
use fillperm::{fixtures, twist, validate};

#[test]
fn genus_one() {
    let raw = enumerate_filling(1, true).unwrap();
    assert_eq!(raw.len(), 2);
    let c = census::classify(1, &raw).unwrap();
    assert_eq!(c.orbit_count(), 1);
    assert!(raw.contains(fixtures::torus().sigma()));
}

#[test]
fn no_minimal_genus_two() {
    assert!(enumerate_filling(3, true).unwrap().is_empty());
}

#[test]
fn genus_three_within_bound() {
    let c = census::count_orbits(5).unwrap();
    let bound = upper_bound(3).unwrap();
    assert_eq!(bound, 672u32.into());
    assert!(c.orbit_count() >= 1 && (c.orbit_count() as u64) <= 672);
    let raw = enumerate_filling(5, true).unwrap();
    assert!(census::is_closed_under_twists(5, &raw));
    assert!(raw.contains(fixtures::sigma_f().sigma()));
    assert_eq!(c.records.iter().map(|r| r.orbit_size_raw).sum::<usize>(), raw.len());
}

#[test]
fn genus_four_contains_f4() {
    let raw = enumerate_filling(7, true).unwrap();
    assert!(raw.contains(fixtures::f4().sigma()));
    let c = census::classify(7, &raw).unwrap();
    assert!((c.orbit_count() as u64) <= 84480);
    assert_eq!(upper_bound(4).unwrap(), 84480u32.into());
    let g = twist::twist_group(7).unwrap();
    let form = g.canonical_form(&fixtures::f4()).unwrap();
    assert!(c.records.iter().any(|r| r.canonical_form == form.images()));
}

#[test]
fn records_describe_their_orbits() {
    let c = census::count_orbits(5).unwrap();
    for r in &c.records {
        let fp = census::record_permutation(r).unwrap();
        assert_eq!((fp.n(), fp.region_count(), fp.genus()), (r.n, r.c, r.genus));
        assert_eq!(validate(fp.sigma().clone(), Some(5)).unwrap(), fp);
        let g = twist::twist_group(5).unwrap();
        assert_eq!(g.orbit(&fp).unwrap().len(), r.orbit_size_raw);
        assert!(r.decomposable);
    }
}
