mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use submod_core::constructions::{gadget, lattice_distance_fn, paired_lattice, Lattice};
use submod_core::extendability::distance_to_submodular;
use submod_core::repair::repair;
use submod_core::{Point, Rational, TotalFunction};

fn nonzero_count(f: &TotalFunction<i64>) -> usize {
    f.values().iter().filter(|&&v| v != 0).count()
}

#[test]
fn lattice_functions_are_submodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..60 {
        let n = rng.gen_range(3..=8);
        let lattice = Lattice::random(n, rng.gen_range(1..=4), &mut rng).unwrap();
        let f: TotalFunction<i64> = lattice_distance_fn(&lattice);
        assert!(f.is_submodular());
        assert_eq!(common::raw_census(n, f.values()), 0);
    }
}

#[test]
fn gadget_census_counts_lattice_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..40 {
        let n = rng.gen_range(3..=6);
        let lattice = Lattice::random(n, rng.gen_range(1..=4), &mut rng).unwrap();
        let g: TotalFunction<i64> = gadget(&lattice).unwrap();
        let census = g.violated_census(true).unwrap();
        assert_eq!(census.count, lattice.len() as u64);
        assert_eq!(common::raw_census(n + 2, g.values()), census.count);
        for sq in census.witnesses.unwrap() {
            assert_eq!(sq.coords(), (1, 2));
            let x = Point::new(n, sq.bottom().bits() >> 2).unwrap();
            assert!(lattice.contains(x));
        }
    }
}

#[test]
fn paired_gadget_census() {
    for n in [2, 4, 6] {
        let g: TotalFunction<i64> = gadget(&paired_lattice(n).unwrap()).unwrap();
        assert_eq!(g.violated_census(false).unwrap().count, 1 << (n / 2));
    }
}

#[test]
fn one_minus_x1_meets_nonzero_bound() {
    for n in 1..=6 {
        let g = TotalFunction::from_fn(n, |x| 1 - x.get(1) as i64).unwrap();
        assert!(g.is_submodular());
        assert_eq!(nonzero_count(&g), 1 << (n - 1));
    }
}

/// Repairs a random function, then shifts it so that `f(0) > 0` while as
/// many other points as possible sit at zero.
fn shifted_submodular(rng: &mut ChaCha8Rng, n: usize) -> TotalFunction<i64> {
    let raw: Vec<i64> = (0..1 << n).map(|_| rng.gen_range(-4..=4)).collect();
    let f = repair(&TotalFunction::new(n, raw).unwrap()).unwrap().result;
    let origin = f.values()[0];
    let mut below: Vec<i64> = f.values().iter().copied().filter(|&v| v < origin).collect();
    below.sort();
    let shift = below
        .chunk_by(|a, b| a == b)
        .max_by_key(|run| run.len())
        .map_or(origin - 1, |run| run[0]);
    f.map(|_, v| v - shift)
}

#[test]
fn positive_origin_forces_half_nonzero() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let g = shifted_submodular(&mut rng, n);
        assert!(g.is_submodular());
        assert!(g.values()[0] > 0);
        assert!(nonzero_count(&g) >= 1 << (n - 1), "{:?}", g.values());
    }
}

#[test]
fn repair_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..60 {
        let n = if trial < 30 {
            rng.gen_range(2..=4)
        } else {
            rng.gen_range(5..=8)
        };
        let raw: Vec<i64> = (0..1 << n).map(|_| rng.gen_range(-5..=5)).collect();
        let f = TotalFunction::new(n, raw.clone()).unwrap();
        let report = repair(&f).unwrap();
        assert!(report.result.is_submodular());
        assert_eq!(report.census_trace[0], common::raw_census(n, &raw));
        assert_eq!(*report.census_trace.last().unwrap(), 0);
        assert!(report.census_trace.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(report.census_trace.len(), report.fixes_applied + 1);
        for x in f.points() {
            if f.value(x) != report.result.value(x) {
                assert!(report.modified.contains(&x));
            }
        }
        if n <= 4 {
            let exact = TotalFunction::new(n, raw.iter().map(|&v| Rational::from_integer(v.into())).collect()).unwrap();
            let d = distance_to_submodular(&exact, None).unwrap().exact().unwrap();
            assert!(report.modified.len() >= d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn repair_is_idempotent_on_its_output(values in proptest::collection::vec(-6i64..=6, 8)) {
        let f = TotalFunction::new(3, values).unwrap();
        let once = repair(&f).unwrap();
        let twice = repair(&once.result).unwrap();
        prop_assert_eq!(twice.fixes_applied, 0);
        prop_assert_eq!(twice.result, once.result);
    }

    #[test]
    fn census_matches_raw_loops(values in proptest::collection::vec(-3i64..=3, 16)) {
        let f = TotalFunction::new(4, values.clone()).unwrap();
        prop_assert_eq!(f.violated_census(false).unwrap().count, common::raw_census(4, &values));
        prop_assert_eq!(f.is_submodular(), common::raw_census(4, &values) == 0);
    }
}
