use causalot_core::convergence::{converge_diagnose, tent_dictionary, TestFunction};
use causalot_core::{BoxRegion, MinkowskiSpace};
use proptest::prelude::*;

fn unit() -> BoxRegion {
    BoxRegion::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap()
}

#[test]
fn diagnostics_are_reproducible() {
    let m = MinkowskiSpace::new(1);
    let dict = tent_dictionary(&unit(), 10, 2);
    let a = converge_diagnose(&m, &unit(), &[1e2, 1e3], &dict, 8).unwrap();
    let b = converge_diagnose(&m, &unit(), &[1e2, 1e3], &dict, 8).unwrap();
    assert_eq!(a, b);
}

#[test]
fn non_increasing_levels_are_rejected() {
    let m = MinkowskiSpace::new(1);
    assert!(converge_diagnose(&m, &unit(), &[1e3, 1e2], &[TestFunction::Constant], 0).is_err());
    assert!(converge_diagnose(&m, &unit(), &[1e2], &[], 0).is_err());
}

#[test]
fn most_seeds_decrease_over_two_decades() {
    let m = MinkowskiSpace::new(1);
    let decreasing = (0..40)
        .filter(|&seed| {
            let dict = tent_dictionary(&unit(), 20, seed);
            converge_diagnose(&m, &unit(), &[1e2, 1e3, 1e4], &dict, seed).unwrap().decreasing
        })
        .count();
    assert!(decreasing >= 36, "{decreasing}/40");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tents_stay_inside_the_region(seed in 0u64..1000, lo in -2.0f64..2.0, side in 0.5f64..3.0) {
        let region = BoxRegion::new(vec![lo, lo], vec![lo + side, lo + 2.0 * side]).unwrap();
        for f in tent_dictionary(&region, 8, seed) {
            let TestFunction::Tent { center, radius } = &f else { unreachable!() };
            for (k, c) in center.coords().iter().enumerate() {
                prop_assert!(c - radius >= region.lo[k] - 1e-12 && c + radius <= region.hi[k] + 1e-12);
            }
            prop_assert!(f.eval(center.coords()) > 0.0);
        }
    }

    #[test]
    fn discrepancies_are_non_negative(seed in 0u64..1000) {
        let m = MinkowskiSpace::new(1);
        let dict = tent_dictionary(&unit(), 5, seed);
        let d = converge_diagnose(&m, &unit(), &[50.0, 200.0], &dict, seed).unwrap();
        prop_assert!(d.discrepancies.iter().all(|x| *x >= 0.0 && x.is_finite()));
        prop_assert!(d.embeddings_isometric);
    }
}
