mod common;

use std::collections::BTreeMap;

use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use submod_core::constructions::build_minimal_nonextendable;
use submod_core::extendability::{
    check_path_certificate, extension_system, is_extendable, solve_feasibility, verify_farkas, verify_path_certificate,
    PathCertificate,
};
use submod_core::{PartialFunction, Point, Rational};

fn partial(n: usize, defined: &BTreeMap<u32, i64>) -> PartialFunction<Rational> {
    PartialFunction::from_pairs(
        n,
        defined
            .iter()
            .map(|(&x, &v)| (Point::new(n, x).unwrap(), Rational::from_integer(v.into()))),
    )
    .unwrap()
}

fn random_partial(rng: &mut ChaCha8Rng) -> (usize, BTreeMap<u32, i64>) {
    let n = rng.gen_range(2..=4);
    let size = rng.gen_range(0..=8usize.min(1 << n));
    let mut defined = BTreeMap::new();
    while defined.len() < size {
        defined.insert(rng.gen_range(0..1u32 << n), rng.gen_range(-3..=3));
    }
    (n, defined)
}

fn assert_agrees(n: usize, defined: &BTreeMap<u32, i64>) {
    let pf = partial(n, defined);
    let sys = extension_system(&pf).unwrap();
    let result = solve_feasibility(&sys).unwrap();
    assert_eq!(
        result.is_feasible(),
        common::fm_extendable(n, defined),
        "n={n} {defined:?}"
    );
    match result.extension() {
        Some(g) => {
            assert!(g.is_submodular());
            for (x, v) in pf.iter() {
                assert_eq!(g.value(x), v);
            }
        }
        None => assert!(verify_farkas(&sys, result.farkas().unwrap())),
    }
}

#[test]
fn lp_matches_fourier_motzkin_on_seeded_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut infeasible = 0;
    for _ in 0..300 {
        let (n, defined) = random_partial(&mut rng);
        assert_agrees(n, &defined);
        if !common::fm_extendable(n, &defined) {
            infeasible += 1;
        }
    }
    // the sample must exercise both verdicts
    assert!(infeasible > 10, "only {infeasible} infeasible instances");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lp_matches_fourier_motzkin(
        n in 2usize..=3,
        raw in proptest::collection::btree_map(0u32..8, -4i64..=4, 0..=6),
    ) {
        let defined: BTreeMap<u32, i64> = raw.into_iter().filter(|(x, _)| *x < 1 << n).collect();
        assert_agrees(n, &defined);
    }
}

#[test]
fn minimal_instance_verdicts_do_not_depend_on_base_value() {
    for v in [0i64, 7, -3] {
        let inst = build_minimal_nonextendable(2, Rational::from_integer(v.into())).unwrap();
        let pf = &inst.function;
        assert_eq!(pf.len(), 16);
        let (ok, result) = is_extendable(pf).unwrap();
        assert!(!ok, "v={v}");
        assert!(verify_farkas(&extension_system(pf).unwrap(), result.farkas().unwrap()));
        let check = check_path_certificate(pf, &inst.certificate).unwrap();
        assert_eq!(check.value, Rational::from_integer((-1).into()));
        assert!(check.is_valid());
        for x in pf.domain() {
            let (ok, result) = is_extendable(&pf.without(x).unwrap()).unwrap();
            assert!(ok, "v={v}, deleting {x}");
            assert!(result.extension().unwrap().is_submodular());
        }
    }
}

#[test]
fn minimal_instance_in_other_fields() {
    let inst = build_minimal_nonextendable(2, Ratio::<i64>::from_integer(5)).unwrap();
    assert!(!is_extendable(&inst.function).unwrap().0);
    let inst = build_minimal_nonextendable(2, Ratio::<i128>::from_integer(-2)).unwrap();
    assert!(!is_extendable(&inst.function).unwrap().0);
}

fn walk(n: usize, points: &[&str]) -> Vec<Point> {
    let walk: Vec<Point> = points.iter().map(|s| s.parse().unwrap()).collect();
    assert!(walk.iter().all(|p| p.dim() == n));
    walk
}

#[test]
fn valid_certificates_imply_non_extendable() {
    let p = |s: &str| s.parse::<Point>().unwrap();
    let r = |v: i64| Rational::from_integer(v.into());
    let cases: Vec<(PartialFunction<Rational>, PathCertificate)> = vec![
        (
            PartialFunction::from_pairs(2, [(p("00"), r(0)), (p("10"), r(0)), (p("01"), r(0)), (p("11"), r(1))])
                .unwrap(),
            PathCertificate {
                dim: 2,
                paths: vec![walk(2, &["00", "10"]), walk(2, &["11", "01"])],
                matching: None,
            },
        ),
        (
            PartialFunction::from_pairs(
                3,
                [(p("000"), r(0)), (p("010"), r(0)), (p("111"), r(1)), (p("101"), r(0))],
            )
            .unwrap(),
            PathCertificate {
                dim: 3,
                paths: vec![walk(3, &["000", "010"]), walk(3, &["111", "101"])],
                matching: None,
            },
        ),
    ];
    for (pf, cert) in &cases {
        assert!(verify_path_certificate(pf, cert).unwrap());
        assert!(!is_extendable(pf).unwrap().0);
    }
    let m3 = build_minimal_nonextendable(3, r(0)).unwrap();
    assert!(verify_path_certificate(&m3.function, &m3.certificate).unwrap());
}

#[test]
fn random_certificates_are_sound() {
    // short random walks on the 3-cube; whenever one verifies, the LP must agree
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 3;
    let mut verified = 0;
    for _ in 0..400 {
        let mut paths = Vec::new();
        let mut defined = BTreeMap::new();
        for _ in 0..rng.gen_range(1..=3) {
            let mut at = rng.gen_range(0..8u32);
            let mut path = vec![Point::new(n, at).unwrap()];
            for _ in 0..rng.gen_range(1..=3) {
                at ^= 1 << rng.gen_range(0..n);
                path.push(Point::new(n, at).unwrap());
            }
            for end in [path[0], *path.last().unwrap()] {
                defined.entry(end.bits()).or_insert_with(|| rng.gen_range(-2..=2i64));
            }
            paths.push(path);
        }
        let pf = partial(n, &defined);
        let cert = PathCertificate {
            dim: n,
            paths,
            matching: None,
        };
        if verify_path_certificate(&pf, &cert).unwrap() {
            verified += 1;
            assert!(!is_extendable(&pf).unwrap().0);
            assert!(!common::fm_extendable(n, &defined));
        }
    }
    assert!(verified > 0);
}
