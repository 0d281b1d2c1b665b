use causalot_core::comparison::{
    bishop_gromov_mc, bishop_gromov_model_ratio, bonnet_myers_bound, hawking_bound, riccati_oracle, HawkingParams,
    StarShapedRegion,
};
use causalot_core::{Event, MinkowskiSpace};
use proptest::prelude::*;

fn diamond() -> StarShapedRegion {
    StarShapedRegion::diamond(Event::from([0.0, 0.0]), Event::from([3.0, 0.0])).unwrap()
}

#[test]
fn bishop_gromov_estimates_are_reproducible() {
    let m = MinkowskiSpace::new(1);
    let a = bishop_gromov_mc(&m, &diamond(), 1.0, 2.0, 50_000, 4).unwrap();
    let b = bishop_gromov_mc(&m, &diamond(), 1.0, 2.0, 50_000, 4).unwrap();
    assert_eq!(a, b);
    let c = bishop_gromov_mc(&m, &diamond(), 1.0, 2.0, 50_000, 5).unwrap();
    assert_ne!(a.hits_inner, c.hits_inner);
}

#[test]
fn diamond_ratio_matches_the_exact_volume() {
    // tau-balls about the apex of the diamond J+(0) ∩ J-((3, 0)) have volume
    // proportional to r^2 (1 + ln(9 / r^2)) for r <= 3
    let v = |r: f64| r * r * (1.0 + (9.0 / (r * r)).ln());
    let m = MinkowskiSpace::new(1);
    let e = bishop_gromov_mc(&m, &diamond(), 1.0, 2.0, 400_000, 1).unwrap();
    let exact = v(1.0) / v(2.0);
    assert!((e.ratio - exact).abs() <= e.half_width, "{} vs {exact}", e.ratio);
}

#[test]
fn truncated_cone_is_star_shaped() {
    let cone = StarShapedRegion::truncated_cone(Event::from([0.0, 0.0, 0.0]), 1.5).unwrap();
    assert!(cone.star_shaped_sampled(200, 16, 3));
    let m = MinkowskiSpace::new(2);
    let e = bishop_gromov_mc(&m, &cone, 0.5, 1.0, 100_000, 2).unwrap();
    assert!(e.holds);
}

#[test]
fn bonnet_myers_scales_with_curvature() {
    let a = bonnet_myers_bound(1.0, 3.0).unwrap();
    let b = bonnet_myers_bound(4.0, 3.0).unwrap();
    assert!((a - 2.0 * b).abs() < 1e-12);
    assert!(bonnet_myers_bound(0.0, 3.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flat_model_ratio_is_a_power(r in 0.01f64..1.0, big_r in 1.0f64..5.0, n in 1.5f64..6.0) {
        let ratio = bishop_gromov_model_ratio(0.0, n, r, big_r).unwrap();
        prop_assert!((ratio - (r / big_r).powf(n)).abs() <= 1e-9);
    }

    #[test]
    fn model_ratio_grows_with_the_inner_radius(k in -2.0f64..2.0, n in 2.0f64..5.0, a in 0.05f64..0.5, b in 0.5f64..0.95) {
        let big_r = 1.0;
        let lo = bishop_gromov_model_ratio(k, n, a, big_r).unwrap();
        let hi = bishop_gromov_model_ratio(k, n, b, big_r).unwrap();
        prop_assert!(lo <= hi && hi <= 1.0);
    }

    #[test]
    fn hawking_constant_grows_with_h0(k in 0.1f64..3.0, n in 1.5f64..6.0, h in -3.0f64..3.0, dh in 0.01f64..1.0) {
        let lo = hawking_bound(&HawkingParams::new(h, k, n).unwrap()).unwrap();
        let hi = hawking_bound(&HawkingParams::new(h + dh, k, n).unwrap()).unwrap();
        prop_assert!(lo < hi);
        prop_assert!(hi <= bonnet_myers_bound(k, n).unwrap() + 1e-12);
    }

    #[test]
    fn hawking_constant_shrinks_with_curvature(n in 1.5f64..6.0, h in -3.0f64..-0.1, k in 0.0f64..2.0, dk in 0.01f64..1.0) {
        let lo = hawking_bound(&HawkingParams::new(h, k + dk, n).unwrap()).unwrap();
        let hi = hawking_bound(&HawkingParams::new(h, k, n).unwrap()).unwrap();
        prop_assert!(lo < hi);
    }

    #[test]
    fn riccati_oracle_agrees(k in -2.0f64..2.0, n in 1.5f64..6.0, h in -4.0f64..2.0) {
        let params = HawkingParams::new(h, k, n).unwrap();
        prop_assume!(params.regime().is_ok());
        let d = hawking_bound(&params).unwrap();
        prop_assume!(d < 50.0);
        let ode = riccati_oracle(&params, 1e-3).unwrap();
        prop_assert!((d - ode).abs() <= 1e-6 * d.max(1.0), "{} vs {}", d, ode);
    }
}
