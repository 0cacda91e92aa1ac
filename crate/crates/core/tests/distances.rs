mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use submod_core::constructions::{gadget, random_nonincreasing, reduce_monotone, Lattice};
use submod_core::extendability::{distance_to_monotone, distance_to_submodular, Distance};
use submod_core::{Function, Point, Rational, TotalFunction};

fn function(n: usize, values: &[i64]) -> Function {
    TotalFunction::new(n, values.iter().map(|&v| Rational::from_integer(v.into())).collect()).unwrap()
}

fn random_values(rng: &mut ChaCha8Rng, n: usize, spread: i64) -> Vec<i64> {
    (0..1 << n).map(|_| rng.gen_range(-spread..=spread)).collect()
}

#[test]
fn submodular_distance_matches_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..40 {
        let n = if trial < 20 { 2 } else { 3 };
        let values = random_values(&mut rng, n, 3);
        let got = distance_to_submodular(&function(n, &values), None).unwrap();
        assert_eq!(
            got,
            Distance::Exact(common::brute_distance_to_submodular(n, &values)),
            "{values:?}"
        );
    }
}

#[test]
fn monotone_distance_matches_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [1, 2, 3] {
        for _ in 0..20 {
            let values = random_values(&mut rng, n, 2);
            let got = distance_to_monotone(&function(n, &values), None).unwrap();
            assert_eq!(
                got,
                Distance::Exact(common::brute_distance_to_monotone(n, &values)),
                "{values:?}"
            );
        }
    }
}

#[test]
fn monotone_distance_examples() {
    assert_eq!(
        distance_to_monotone(&function(1, &[0, 1]), None).unwrap(),
        Distance::Exact(1)
    );
    assert_eq!(
        distance_to_monotone(&function(2, &[0, 1, 1, 2]), None).unwrap(),
        Distance::Exact(2)
    );
    assert_eq!(
        distance_to_monotone(&function(2, &[2, 1, 1, 0]), None).unwrap(),
        Distance::Exact(0)
    );
}

#[test]
fn reduction_never_shrinks_the_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 1..=3 {
        for _ in 0..12 {
            let f = function(n, &random_values(&mut rng, n, 2));
            let g = reduce_monotone(&f).unwrap();
            let dm = distance_to_monotone(&f, None).unwrap().exact().unwrap();
            let ds = distance_to_submodular(&g, None).unwrap().exact().unwrap();
            assert!(ds >= dm, "f={:?}: {ds} < {dm}", f.values());
        }
    }
}

#[test]
fn reduction_of_nonincreasing_is_submodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 1..=6 {
        for _ in 0..10 {
            let f: Function = random_nonincreasing(n, 0, 5, &mut rng).unwrap();
            assert!(f.is_monotone_nonincreasing());
            assert!(reduce_monotone(&f).unwrap().is_submodular());
        }
    }
}

#[test]
fn gadget_distances_at_small_n() {
    let one = |s: &str| Lattice::singleton(s.parse::<Point>().unwrap());
    let g2: Function = gadget(&one("10")).unwrap();
    assert_eq!(distance_to_submodular(&g2, None).unwrap(), Distance::Exact(1));
    let g4: Function = gadget(&one("1100")).unwrap();
    assert_eq!(distance_to_submodular(&g4, None).unwrap(), Distance::Exact(4));
    assert_eq!(
        distance_to_submodular(&g4, Some(3)).unwrap(),
        Distance::ExceedsBudget { budget: 3 }
    );
}

#[test]
fn distance_never_exceeds_census() {
    // releasing one corner of every violated square always suffices
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..20 {
        let values = random_values(&mut rng, 3, 4);
        let census = common::raw_census(3, &values) as usize;
        let d = distance_to_submodular(&function(3, &values), None)
            .unwrap()
            .exact()
            .unwrap();
        assert!(d <= census);
        assert_eq!(d == 0, census == 0);
    }
}
