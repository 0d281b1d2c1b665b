//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
//! nonzero status if any criterion fails.
mod common;

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use causalot_core::comparison::{bishop_gromov_mc, hawking_bound, riccati_oracle, HawkingParams, StarShapedRegion};
use causalot_core::convergence::{converge_diagnose, tent_dictionary};
use causalot_core::curvature::{
    c_kappa, minkowski_suite, s_kappa, sigma, tcd_check, tmcp_check, uN_transform_check, vacuum_einstein_check,
    CurvatureParams, Remainder, VacuumParams, Verdict,
};
use causalot_core::geodesics::EntropyCurve;
use causalot_core::localization::{
    coarea_check, disintegrate, mcp_density_check, mean_curvature_estimate, AchronalSet, DisintegrationParams,
    MeanCurvatureParams, SampleRegion, Side, VariationProfile,
};
use causalot_core::measures::{Grid, GridMeasure};
use causalot_core::rng::stream;
use causalot_core::spacetime::{validate_prelength, CausalDagSpace, DagEdge};
use causalot_core::transport::{dual_solve_cost, reverse_triangle_ellp, solve_cost};
use causalot_core::{BoxRegion, CostMatrix, Event, MinkowskiSpace};
use common::{random_measure, vertex_enumeration_max};
use rand::Rng;
use serde_json::json;

struct Outcome {
    pass: bool,
    detail: String,
    /// Serialized results of the stochastic parts, compared across reruns.
    fingerprint: String,
}

impl Outcome {
    fn new(pass: bool, detail: String, fingerprint: serde_json::Value) -> Self {
        Outcome { pass, detail, fingerprint: fingerprint.to_string() }
    }
}

type Criterion = fn() -> Outcome;

fn within(start: Instant, budget: Duration) -> (bool, String) {
    let elapsed = start.elapsed();
    (elapsed < budget, format!("{:.1}s/{}s", elapsed.as_secs_f64(), budget.as_secs()))
}

fn axioms() -> Outcome {
    let start = Instant::now();
    let m = MinkowskiSpace::new(2);
    let mut rng = stream(1, 0);
    let points: Vec<Event> = (0..500)
        .map(|_| Event::from([rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]))
        .collect();
    let mink = validate_prelength(&m, &points);
    let mut dag_violations = 0;
    let mut dag_triples = 0;
    for seed in 0..20 {
        let mut rng = stream(seed, 1);
        let edges: Vec<DagEdge> = (0..12)
            .flat_map(|a| (a + 1..12).map(move |b| (a, b)))
            .filter_map(|(from, to)| {
                let (keep, null, w): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
                (keep < 0.3).then_some(DagEdge { from, to, weight: if null < 0.2 { 0.0 } else { w } })
            })
            .collect();
        let g = CausalDagSpace::new(12, edges).expect("edges point forward");
        let nodes: Vec<usize> = (0..12).collect();
        let r = validate_prelength(&g, &nodes);
        dag_violations += r.violation_count;
        dag_triples += r.triples_checked;
    }
    let (fast, time) = within(start, Duration::from_secs(10));
    Outcome::new(
        mink.is_valid() && dag_violations == 0 && fast,
        format!(
            "minkowski violations {} over {} triples, dag violations {dag_violations} over {dag_triples} triples, {time}",
            mink.violation_count, mink.triples_checked
        ),
        json!({ "minkowski": mink, "dag_violations": dag_violations }),
    )
}

fn lp_oracle() -> Outcome {
    let start = Instant::now();
    let m = MinkowskiSpace::new(1);
    let mut worst_diff: f64 = 0.0;
    let mut mismatched_feasibility = 0;
    let mut values = Vec::new();
    for seed in 0..50 {
        let mut rng = stream(seed, 20);
        let ka = rng.random_range(1..=4);
        let kb = rng.random_range(1..=4);
        let mu = random_measure(&mut rng, ka, 0.0, 1.0, 1.0);
        let nu = random_measure(&mut rng, kb, 1.0, 2.5, 1.0);
        let p = [0.25, 0.5, 0.75, 1.0][seed as usize % 4];
        let cost = CostMatrix::build(&m, &mu, &nu, p).unwrap();
        let r = solve_cost(&cost, mu.weights(), nu.weights()).unwrap();
        match vertex_enumeration_max(&cost, mu.weights(), nu.weights()) {
            Some(best) => worst_diff = worst_diff.max((r.objective - best).abs()),
            None if r.value == f64::NEG_INFINITY => {}
            None => mismatched_feasibility += 1,
        }
        values.push(r.value);
    }
    let mut gap_lo = f64::INFINITY;
    let mut gap_hi = f64::NEG_INFINITY;
    for seed in 0..50 {
        let mut rng = stream(seed, 21);
        let mu = random_measure(&mut rng, 10, 0.0, 1.0, 0.5);
        let nu = random_measure(&mut rng, 10, 2.0, 3.0, 0.5);
        let cost = CostMatrix::build(&m, &mu, &nu, 0.5).unwrap();
        let d = dual_solve_cost(&cost, mu.weights(), nu.weights()).unwrap();
        gap_lo = gap_lo.min(d.gap);
        gap_hi = gap_hi.max(d.gap);
    }
    let (fast, time) = within(start, Duration::from_secs(30));
    Outcome::new(
        worst_diff <= 1e-9 && mismatched_feasibility == 0 && gap_lo >= 0.0 && gap_hi <= 1e-8 && fast,
        format!("max |lp - enumeration| {worst_diff:.2e}, duality gap in [{gap_lo:.2e}, {gap_hi:.2e}], {time}"),
        json!({ "values": values, "gap": [gap_lo, gap_hi] }),
    )
}

fn reverse_triangle() -> Outcome {
    let m = MinkowskiSpace::new(1);
    let mut worst = f64::INFINITY;
    for seed in 0..100 {
        let mut rng = stream(seed, 30);
        // three slabs inside the diamond spanned by (0, 0) and (3, 0)
        let k = [rng.random_range(1..=4), rng.random_range(1..=4), rng.random_range(1..=4)];
        let a = random_measure(&mut rng, k[0], 0.6, 1.0, 0.3);
        let b = random_measure(&mut rng, k[1], 1.3, 1.7, 0.3);
        let c = random_measure(&mut rng, k[2], 2.0, 2.4, 0.3);
        let p = [0.25, 0.5, 0.75][seed as usize % 3];
        let r = reverse_triangle_ellp(&m, &a, &b, &c, p).unwrap();
        worst = worst.min(r.margin);
    }
    Outcome::new(worst >= -1e-8, format!("worst margin {worst:.3e} over 100 triples"), json!({ "worst": worst }))
}

fn coefficients() -> Outcome {
    let third = 1.0 / 3.0;
    let spot: Vec<(&str, f64, f64)> = vec![
        ("sigma k=0", sigma(0.0, 0.3, 5.0), 0.3),
        ("sigma theta=0", sigma(2.0, 0.7, 0.0), 0.7),
        ("sigma k=-1 theta=0", sigma(-1.0, 0.25, 0.0), 0.25),
        ("sigma k theta^2 = pi^2", sigma(1.0, 0.5, PI), f64::INFINITY),
        ("sigma k theta^2 > pi^2", sigma(4.0, 0.1, 2.0), f64::INFINITY),
        ("sigma k theta^2 >> pi^2", sigma(1.0, 0.9, 10.0), f64::INFINITY),
        ("sigma 1 1/2 pi/2", sigma(1.0, 0.5, FRAC_PI_2), 0.5f64.sqrt()),
        ("sigma 1 1/3 pi/2", sigma(1.0, third, FRAC_PI_2), 0.5),
        ("sigma 4 1/2 pi/4", sigma(4.0, 0.5, PI / 4.0), 0.5f64.sqrt()),
        ("sigma 1 1/2 2pi/3", sigma(1.0, 0.5, 2.0 * PI / 3.0), 1.0),
        ("sigma 1 1/2 1", sigma(1.0, 0.5, 1.0), 1.0 / (2.0 * 0.5f64.cos())),
        ("sigma -1 1/2 1", sigma(-1.0, 0.5, 1.0), 1.0 / (2.0 * 0.5f64.cosh())),
        ("sigma -4 1/2 1", sigma(-4.0, 0.5, 1.0), 1.0 / (2.0 * 1.0f64.cosh())),
        ("sigma -1 1/2 2ln2", sigma(-1.0, 0.5, 2.0 * 2f64.ln()), 0.4),
        ("sigma -1 1/3 3ln2", sigma(-1.0, third, 3.0 * 2f64.ln()), 0.75 * 16.0 / 63.0),
        ("sigma 1 0", sigma(1.0, 0.0, 1.0), 0.0),
        ("sigma 1 1", sigma(1.0, 1.0, 1.0), 1.0),
        ("sigma -1 1", sigma(-1.0, 1.0, 2.0), 1.0),
        ("s 0", s_kappa(0.0, 2.5), 2.5),
        ("s 1 pi/6", s_kappa(1.0, PI / 6.0), 0.5),
        ("s 4 pi/12", s_kappa(4.0, PI / 12.0), 0.25),
        ("s 1 pi/2", s_kappa(1.0, FRAC_PI_2), 1.0),
        ("s -1 ln2", s_kappa(-1.0, 2f64.ln()), 0.75),
        ("s -4 ln2/2", s_kappa(-4.0, 0.5 * 2f64.ln()), 0.375),
        ("c 0", c_kappa(0.0, 7.0), 1.0),
        ("c 1 pi/3", c_kappa(1.0, PI / 3.0), 0.5),
        ("c 4 pi/6", c_kappa(4.0, PI / 6.0), 0.5),
        ("c 1 pi", c_kappa(1.0, PI), -1.0),
        ("c -1 ln2", c_kappa(-1.0, 2f64.ln()), 1.25),
        ("c -1 0", c_kappa(-1.0, 0.0), 1.0),
    ];
    let mut worst: f64 = 0.0;
    let mut wrong = Vec::new();
    for (name, got, want) in &spot {
        let err = if want.is_infinite() {
            if got == want {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (got - want).abs()
        };
        worst = worst.max(err);
        if err > 1e-12 {
            wrong.push(*name);
        }
    }
    let mut monotone_breaks = 0;
    let kappas: Vec<f64> = (0..10).map(|i| -4.0 + 8.0 * i as f64 / 9.0).collect();
    for ti in 0..10 {
        let t = 0.05 + 0.1 * ti as f64;
        for hi in 0..10 {
            let theta = 0.2 + 0.2 * hi as f64;
            let vals: Vec<f64> = kappas.iter().map(|k| sigma(*k, t, theta)).collect();
            monotone_breaks += vals.windows(2).filter(|w| w[1] < w[0]).count();
        }
    }
    Outcome::new(
        wrong.is_empty() && monotone_breaks == 0,
        format!(
            "{} spot values, worst error {worst:.1e}, kappa-monotonicity breaks {monotone_breaks} {wrong:?}",
            spot.len()
        ),
        json!(null),
    )
}

fn tmcp_equality() -> Outcome {
    let start = Instant::now();
    let m = MinkowskiSpace::new(1);
    let unit = BoxRegion::new(vec![-0.5, -0.5], vec![0.5, 0.5]).unwrap();
    let mu0 = GridMeasure::uniform(Grid::square(unit, 256).unwrap()).unwrap();
    let target = Event::from([3.0, 0.0]);
    let times: Vec<f64> = (0..20).map(|k| k as f64 / 20.0).collect();
    let run = |p: f64, n: f64| {
        let params = CurvatureParams::new(p, 0.0, n).unwrap().with_tol(1e-9).unwrap();
        tmcp_check(&m, &mu0, &target, &params, &times).unwrap()
    };
    let equality = run(0.5, 2.0);
    let deviation = equality
        .u
        .iter()
        .zip(&times)
        .filter(|(_, t)| **t <= 0.8)
        .map(|(u, t)| (u - (1.0 - t) * equality.u0).abs() / ((1.0 - t) * equality.u0))
        .fold(0.0, f64::max);
    let mut verdicts = Vec::new();
    for n in [2.0, 4.0, 1.0] {
        let row: Vec<Verdict> = [0.25, 0.5, 0.75].iter().map(|p| run(*p, n).report.verdict).collect();
        verdicts.push(row);
    }
    // the slack vanishes at t = 0 by construction, so strictness is read off t > 0
    let n4 = CurvatureParams::new(0.5, 0.0, 4.0).unwrap().with_tol(1e-9).unwrap();
    let strict = tmcp_check(&m, &mu0, &target, &n4, &times[1..]).unwrap().report;
    let fail_one = run(0.5, 1.0).report;
    let p_independent = verdicts.iter().all(|row| row.iter().all(|v| *v == row[0]));
    let (fast, time) = within(start, Duration::from_secs(60));
    Outcome::new(
        deviation <= 0.02
            && equality.report.verdict == Verdict::Pass
            && strict.verdict == Verdict::Pass
            && strict.margin > 0.0
            && fail_one.verdict == Verdict::Fail
            && p_independent
            && fast,
        format!(
            "max deviation {deviation:.2e}, N=4 margin {:.3e}, N=1 {:?} margin {:.3e}, verdicts over p {verdicts:?}, {time}",
            strict.margin, fail_one.verdict, fail_one.margin
        ),
        json!(null),
    )
}

fn synthetic_curve(f: impl Fn(f64) -> f64, tau: f64) -> EntropyCurve {
    let t: Vec<f64> = (0..=64).map(|k| k as f64 / 64.0).collect();
    let e = t.iter().map(|x| f(*x)).collect();
    EntropyCurve::from_samples(t, e, tau, 2).unwrap()
}

fn tcd_equivalence() -> Outcome {
    // (curve, K, N, expected to satisfy TCD)
    let mut cases: Vec<(EntropyCurve, f64, f64, bool)> = Vec::new();
    for i in 0..10 {
        let n = [2.0, 3.0, 4.0][i % 3];
        let k: f64 = [0.0, 0.5, 1.0, -1.0, 2.0][i % 5];
        let theta = 0.8 + 0.1 * i as f64;
        // u = cos(w t + phi) with w^2 above K theta^2 / N satisfies the
        // transformed inequality strictly; K <= 0 uses a strictly concave u
        let w = ((k.max(0.0) * theta * theta / n) * 1.5 + 0.3).sqrt();
        let phi = -0.5 * w;
        cases.push((synthetic_curve(move |t| -n * (w * t + phi).cos().ln(), theta), k, n, true));
    }
    for i in 0..10 {
        let n = [2.0, 3.0, 4.0][i % 3];
        let k = [0.0, 0.5, 1.0, -0.5, 2.0][i % 5];
        let theta = 0.8 + 0.1 * i as f64;
        let c = 0.3 + 0.2 * i as f64;
        let planted: Box<dyn Fn(f64) -> f64> = if i % 2 == 0 {
            // concave entropy bump
            Box::new(move |t| c * t * (1.0 - t))
        } else {
            // u_N = 1 + c (t - 1/2)^2 is convex, never (K,N)-concave
            Box::new(move |t| -n * (1.0 + c * (t - 0.5).powi(2)).ln())
        };
        cases.push((synthetic_curve(planted, theta), k, n, false));
    }
    let mut agree = 0;
    let mut labelled = 0;
    let mut rows = Vec::new();
    for (curve, k, n, expected) in &cases {
        let params = CurvatureParams::new(0.5, *k, *n).unwrap().with_tol(1e-6).unwrap();
        let integrated = tcd_check(curve, &params).unwrap().verdict == Verdict::Pass;
        let diff = uN_transform_check(curve, *k, *n, 1e-6).unwrap();
        if integrated == diff.differential_pass && diff.agree {
            agree += 1;
        }
        if integrated == *expected {
            labelled += 1;
        }
        rows.push((integrated, diff.differential_pass, diff.transformed_pass));
    }
    Outcome::new(
        agree == cases.len() && labelled == cases.len(),
        format!("{agree}/{} agree, {labelled}/{} match the planted labels", cases.len(), cases.len()),
        json!(null),
    )
}

fn vacuum() -> Outcome {
    let start = Instant::now();
    let m = MinkowskiSpace::new(1);
    let suite = minkowski_suite(&m, 64).unwrap();
    let zero = vacuum_einstein_check(&m, &suite, &VacuumParams::new(0.0, 2.0, 0.5)).unwrap();
    let plus = vacuum_einstein_check(&m, &suite, &VacuumParams::new(1.0, 2.0, 0.5)).unwrap();
    let minus =
        vacuum_einstein_check(&m, &suite, &VacuumParams::new(-1.0, 2.0, 0.5).with_omega(Remainder::Zero)).unwrap();
    let (fast, time) = within(start, Duration::from_secs(120));
    Outcome::new(
        zero.verdict == Verdict::Pass && plus.lower == Verdict::Fail && minus.upper == Verdict::Fail && fast,
        format!(
            "lambda=0 {:?}, lambda=+1 lower {:?}, lambda=-1 upper {:?}, {time}",
            zero.verdict, plus.lower, minus.upper
        ),
        json!(null),
    )
}

fn hawking() -> Outcome {
    let start = Instant::now();
    let mut grid = Vec::new();
    for n in [2.0, 3.0, 5.0] {
        for h0 in [0.0, -1.0, 1.0] {
            grid.push((h0, 1.0, n));
        }
        for h0 in [-1.0, -2.0, -0.5] {
            grid.push((h0, 0.0, n));
        }
        for c in [1.5, 2.0, 4.0] {
            grid.push((-c * (n - 1.0f64).sqrt(), -1.0, n));
        }
    }
    let mut worst: f64 = 0.0;
    for &(h0, k, n) in &grid {
        let params = HawkingParams::new(h0, k, n).unwrap();
        let d = hawking_bound(&params).unwrap();
        let ode = riccati_oracle(&params, 1e-3).unwrap();
        worst = worst.max((d - ode).abs());
    }
    let half_pi = hawking_bound(&HawkingParams::new(0.0, 1.0, 2.0).unwrap()).unwrap();
    let one = hawking_bound(&HawkingParams::new(-1.0, 0.0, 2.0).unwrap()).unwrap();
    let spots = (half_pi - FRAC_PI_2).abs().max((one - 1.0).abs());
    let (fast, time) = within(start, Duration::from_secs(5));
    Outcome::new(
        grid.len() == 27 && worst <= 1e-6 && spots <= 1e-12 && fast,
        format!("{} points, max |D - oracle| {worst:.2e}, spot error {spots:.1e}, {time}", grid.len()),
        json!(null),
    )
}

fn bishop_gromov() -> Outcome {
    let start = Instant::now();
    let m = MinkowskiSpace::new(1);
    let diamond = StarShapedRegion::diamond(Event::from([0.0, 0.0]), Event::from([3.0, 0.0])).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    let mut estimates = Vec::new();
    for (r, big_r) in [(1.0, 2.0), (0.5, 2.0), (1.0, 1.5)] {
        let e = bishop_gromov_mc(&m, &diamond, r, big_r, 1_000_000, 9).unwrap();
        let model = (r / big_r) * (r / big_r);
        pass &= e.ratio + e.half_width >= model;
        parts.push(format!("({r},{big_r}) {:.4}+{:.4} vs {model:.4}", e.ratio, e.half_width));
        estimates.push(e);
    }
    let (fast, time) = within(start, Duration::from_secs(30));
    Outcome::new(pass && fast, format!("{}, {time}", parts.join(", ")), json!(estimates))
}

fn localization() -> Outcome {
    let start = Instant::now();
    let m1 = MinkowskiSpace::new(1);
    let m2 = MinkowskiSpace::new(2);
    let params = DisintegrationParams { resolution: 512, ray_bins: 16, tau_bins: 10, min_per_bin: 100, seed: 7 };

    let flat = AchronalSet::flat(0.0);
    let slab = SampleRegion::Box(BoxRegion::new(vec![0.0, -1.0], vec![1.0, 1.0]).unwrap());
    let flat_decomp = disintegrate(&m1, &flat, &slab, &params).unwrap();
    let flat_mcp = mcp_density_check(&flat_decomp, 0.0, 2.0, 100).unwrap();

    let origin = AchronalSet::points(vec![Event::from([0.0, 0.0])]).unwrap();
    let diamond =
        SampleRegion::Star(StarShapedRegion::diamond(Event::from([0.0, 0.0]), Event::from([2.0, 0.0])).unwrap());
    let point_params = DisintegrationParams { ray_bins: 8, ..params.clone() };
    let point_decomp = disintegrate(&m1, &origin, &diamond, &point_params).unwrap();
    let point_mcp = mcp_density_check(&point_decomp, 0.0, 2.0, 400).unwrap();
    let mut planted = point_decomp.clone();
    for ray in &mut planted.rays {
        ray.density = ray.bin_centers().iter().map(|s| 1.0 / s).collect();
    }
    let planted_mcp = mcp_density_check(&planted, 0.0, 2.0, 400).unwrap();
    let balance = flat_decomp.mass_balance.max(point_decomp.mass_balance);

    let unit = SampleRegion::Box(BoxRegion::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap());
    let tilted =
        SampleRegion::Star(StarShapedRegion::diamond(Event::from([0.2, 0.0]), Event::from([1.2, 0.3])).unwrap());
    let coarea_box = coarea_check(&m1, &flat, &unit, &params).unwrap();
    let coarea_diamond = coarea_check(&m1, &flat, &tilted, &params).unwrap();
    let coarea = coarea_box.relative_error.max(coarea_diamond.relative_error);

    let mc = MeanCurvatureParams { samples: 1 << 18, ..Default::default() };
    let line = VariationProfile::new(vec![-0.5], vec![0.5], 1.0).unwrap();
    let h_flat = mean_curvature_estimate(&m1, &flat, &line, Side::Upper, &mc).unwrap();
    let cone = AchronalSet::cone(Event::from([0.0, 0.0, 0.0]), -0.5).unwrap();
    let square = VariationProfile::new(vec![-1.0, -1.0], vec![1.0, 1.0], 1.0).unwrap();
    let h_cone = mean_curvature_estimate(&m2, &cone, &square, Side::Upper, &mc).unwrap();
    let hyperboloid = AchronalSet::hyperboloid(Event::from([0.0, 0.0]), 1.0).unwrap();
    let h_hyp = mean_curvature_estimate(&m1, &hyperboloid, &line, Side::Lower, &mc).unwrap();

    let (fast, time) = within(start, Duration::from_secs(300));
    let pass = balance <= 0.01
        && flat_mcp.holds
        && point_mcp.holds
        && !planted_mcp.holds
        && coarea <= 0.01
        && h_flat.value.abs() <= h_flat.half_width
        && h_cone.value <= h_cone.half_width
        && (h_hyp.value - 1.0).abs() <= 0.1
        && fast;
    Outcome::new(
        pass,
        format!(
            "mass balance {balance:.2e}, mcp flat {} point {} planted {}, coarea {coarea:.2e}, \
             H flat {:.3}+-{:.3} cone {:.3}+-{:.3} hyperboloid {:.3}+-{:.3}, {time}",
            flat_mcp.holds,
            point_mcp.holds,
            planted_mcp.holds,
            h_flat.value,
            h_flat.half_width,
            h_cone.value,
            h_cone.half_width,
            h_hyp.value,
            h_hyp.half_width
        ),
        json!({
            "decompositions": [flat_decomp, point_decomp],
            "mcp": [flat_mcp, point_mcp, planted_mcp],
            "coarea": [coarea_box, coarea_diamond],
            "mean_curvature": [h_flat, h_cone, h_hyp],
        }),
    )
}

fn convergence() -> Outcome {
    let start = Instant::now();
    let m = MinkowskiSpace::new(1);
    let unit = BoxRegion::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
    let mut decreasing = 0;
    let mut runs = Vec::new();
    for seed in 0..100 {
        let dict = tent_dictionary(&unit, 20, seed);
        let d = converge_diagnose(&m, &unit, &[1e2, 1e3, 1e4], &dict, seed).unwrap();
        decreasing += usize::from(d.decreasing);
        runs.push(d.discrepancies);
    }
    let (fast, time) = within(start, Duration::from_secs(60));
    Outcome::new(decreasing >= 95 && fast, format!("{decreasing}/100 seeds decreasing, {time}"), json!(runs))
}

fn main() -> ExitCode {
    let criteria: [(usize, Criterion); 11] = [
        (1, axioms),
        (2, lp_oracle),
        (3, reverse_triangle),
        (4, coefficients),
        (5, tmcp_equality),
        (6, tcd_equivalence),
        (7, vacuum),
        (8, hawking),
        (9, bishop_gromov),
        (10, localization),
        (11, convergence),
    ];
    let stochastic = [1, 2, 3, 9, 10, 11];
    let mut failures = 0;
    let mut fingerprints = Vec::new();
    for (id, run) in criteria {
        let o = run();
        println!("criterion {id}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failures += usize::from(!o.pass);
        if stochastic.contains(&id) {
            fingerprints.push((id, o.fingerprint));
        }
    }

    // rerun every stochastic criterion on a differently sized thread pool
    let pool = rayon::ThreadPoolBuilder::new().num_threads(2).build().expect("thread pool");
    let mut differing = Vec::new();
    for (id, first) in &fingerprints {
        let run = criteria.iter().find(|(c, _)| c == id).unwrap().1;
        let second = pool.install(run).fingerprint;
        if &second != first {
            differing.push(*id);
        }
    }
    let deterministic = differing.is_empty();
    println!(
        "criterion 12: {} {} stochastic criteria rerun, differing {differing:?}",
        if deterministic { "PASS" } else { "FAIL" },
        fingerprints.len()
    );
    failures += usize::from(!deterministic);

    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
