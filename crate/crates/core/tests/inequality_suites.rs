use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wcheb_core::erdos_lax::{
    deformation_ratios, equality_suite, generalized_suite, radius_ladder, random_unimodular, turan_suite, Verdict,
    DEFAULT_TOL,
};
use wcheb_core::weighted_fn::WeightedRootFn;

#[test]
fn equality_holds_on_random_unimodular_functions() {
    for (f, r) in equality_suite(2024, 100, DEFAULT_TOL).unwrap() {
        assert!((r.lhs - r.rhs).abs() <= 1e-8 * r.lhs, "{f:?} {r:?}");
        assert_eq!(r.verdict, Verdict::EqualityWithinTol);
    }
}

#[test]
fn exterior_roots_stay_strictly_below_the_bound() {
    let reports = generalized_suite(2025, 100, DEFAULT_TOL).unwrap();
    let worst = reports.iter().map(|(_, r)| r.relative_margin()).fold(f64::INFINITY, f64::min);
    eprintln!("smallest relative margin {worst:e}");
    for (f, r) in &reports {
        assert_eq!(r.verdict, Verdict::StrictInequality, "{f:?}");
        assert!(r.relative_margin() >= 1e-6, "{f:?} {r:?}");
    }
}

#[test]
fn turan_bound_holds_in_the_disk() {
    for (f, r) in turan_suite(2026, 100, DEFAULT_TOL).unwrap() {
        assert_ne!(r.verdict, Verdict::Violation, "{f:?} {r:?}");
    }
}

#[test]
fn pushing_a_root_outward_lowers_the_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let radii = radius_ladder(1.5, 10);
    for _ in 0..20 {
        let f = random_unimodular(&mut rng);
        let mut factors = f.factors().to_vec();
        factors[0].exponent = factors[0].exponent.round();
        let g = WeightedRootFn::new(f.scale(), factors).unwrap();
        let ratios = deformation_ratios(&g, 0, &radii).unwrap();
        for w in ratios.windows(2) {
            assert!(w[1] < w[0], "{g:?} {ratios:?}");
        }
    }
}
