mod common;

use gnpmod_core::concentration::{
    binomial_tail_check, check_subset_events, chernoff_lower, chernoff_upper,
    default_size_schedule, f, g, h1, h2, h3, phi, subset_flags, verify_appendix, EventMode,
    GridSpec, Regime, SamplePlan, F_THRESHOLD, G_THRESHOLD,
};
use gnpmod_core::graph::edge_counts_mask;
use gnpmod_core::{sample_gnp, VertexSubset};
use proptest::prelude::*;

use common::{count_edges, membership_of_mask};

const LN2: f64 = std::f64::consts::LN_2;

#[test]
fn phi_examples() {
    assert_eq!(phi(0.0).unwrap(), 0.0);
    assert!((phi(1.0).unwrap() - (2.0 * LN2 - 1.0)).abs() < 1e-15);
    assert!((phi(1.0).unwrap() - 0.386294).abs() < 1e-6);
    assert!(phi(-1e-9).is_err());
    let grid: Vec<f64> = (1..=10_000).map(|i| phi(i as f64 * 1e-3).unwrap()).collect();
    assert!(grid.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn chernoff_examples() {
    let b = chernoff_upper(10.0, 0.0).unwrap();
    assert_eq!((b.bound_phi, b.bound_quad), (1.0, 1.0));
    let b = chernoff_upper(10.0, 10.0).unwrap();
    assert!((b.bound_phi - (-10.0 * (2.0 * LN2 - 1.0)).exp()).abs() < 1e-15);
    assert!((b.bound_phi - 0.021_006).abs() < 1e-5);
    assert!((b.bound_quad - (-3.75f64).exp()).abs() < 1e-15);
    assert_eq!(chernoff_lower(10.0, 0.0).unwrap(), 1.0);
    assert!((chernoff_lower(50.0, 10.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
    assert!(chernoff_upper(0.0, 1.0).is_err());
    assert!(chernoff_upper(-1.0, 1.0).is_err());
    assert!(chernoff_lower(1.0, -1.0).is_err());
}

#[test]
fn phi_bound_below_quadratic_bound() {
    for i in 1..=60 {
        let mu = 0.05 * 1.2f64.powi(i);
        for j in 0..=60 {
            let t = mu * 0.02 * 1.15f64.powi(j) - mu * 0.02;
            let b = chernoff_upper(mu, t).unwrap();
            assert!(b.bound_phi <= b.bound_quad, "mu {mu} t {t}: {b:?}");
        }
    }
}

#[test]
fn monte_carlo_tails() {
    let upper = binomial_tail_check(100, 0.1, 10.0, 1_000_000, 1).unwrap();
    assert!(upper.upper_freq <= 0.021_006_074_709_707_95 + 3.0 * upper.upper_se);
    let lower = binomial_tail_check(1000, 0.05, 15.0, 1_000_000, 2).unwrap();
    assert!(lower.lower_freq <= (-2.25f64).exp() + 3.0 * lower.lower_se);
    assert!(upper.holds(3.0) && lower.holds(3.0));
    // Exact P(X >= 20) for Bin(100, 0.1) is about 0.00198; the estimate
    // should sit near it, far below the bound.
    assert!((upper.upper_freq - 0.001_978).abs() < 5.0 * upper.upper_se + 1e-4);
}

/// Reference values computed with 50-digit arithmetic by
/// `data/gen_function_reference.py`.
#[test]
fn functions_match_high_precision_reference() {
    let text = include_str!("data/function_reference.csv");
    let mut checked = [0usize; 6];
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let [name, a, b, c, value] = cells[..] else {
            panic!("bad line {line}");
        };
        let (a, b, c): (f64, f64, f64) = (a.parse().unwrap(), b.parse().unwrap(), c.parse().unwrap());
        let expected: f64 = value.parse().unwrap();
        let (got, slot) = match name {
            "phi" => (phi(a).unwrap(), 0),
            "f" => (f(a, b, c).unwrap(), 1),
            "g" => (g(a, b).unwrap(), 2),
            "h1" => (h1(a, b).unwrap(), 3),
            "h2" => (h2(a, b).unwrap(), 4),
            "h3" => (h3(a).unwrap(), 5),
            other => panic!("unknown function {other}"),
        };
        let rel = ((got - expected) / expected).abs();
        assert!(rel <= 1e-10, "{name}({a}, {b}, {c}) = {got}, reference {expected}");
        checked[slot] += 1;
    }
    assert!(checked.iter().all(|&k| k >= 1000), "{checked:?}");
}

#[test]
fn function_domains() {
    assert!(f(0.0, 1.0, 1.0).is_err());
    assert!(f(1.0, -1.0, 1.0).is_err());
    assert!(g(1.0, 0.0).is_err());
    assert!(h1(-1.0, 1.0).is_err());
    assert!(h2(1.0, f64::NAN).is_err());
    assert!(h3(0.0).is_err());
}

#[test]
fn corner_values() {
    let corner_g = g(1.34, 1.999).unwrap();
    assert!((corner_g - 0.703_173_598_263_196_3).abs() < 1e-13);
    assert!(corner_g > LN2 + 0.01);
    let corner_f = 3.0 * g(3.95 / 3.0, 1.999).unwrap() - 3f64.ln() - 1.0;
    assert!((corner_f - 0.001_211_500_271_845_578).abs() < 1e-12);
    assert!((f(3.95 / 3.0, 3.95, 1.999).unwrap() - corner_f).abs() < 1e-12);
    assert!(corner_f > 0.001);
    let h = h3(1e-9).unwrap();
    assert!(h < 0.0 && h.abs() < 1e-17);
}

#[test]
fn default_grid_passes() {
    let r = verify_appendix(&GridSpec::default()).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(r.min_f > F_THRESHOLD && r.min_g > G_THRESHOLD);
    assert_eq!(r.monotonicity_violations.total(), 0);
    assert!((r.corner_f - 0.0012).abs() < 0.000_05);
    assert!((r.corner_g - 0.70318).abs() < 0.000_05);
    // The minimum of f sits at the corner y = 3.95, x = y/3, z = 1.999.
    assert!((r.min_f - r.corner_f).abs() < 1e-12);
}

/// Outside the declared domain, z = 1.5, the g bound fails. Printed for the
/// record; the claim only covers z >= 1.999.
#[test]
fn widened_grid_report() {
    let grid = GridSpec {
        z_values: vec![1.5],
        ..GridSpec::default()
    };
    let r = verify_appendix(&grid).unwrap();
    println!("z = 1.5: min_g = {} at {:?}, ln 2 = {LN2}", r.min_g, r.argmin_g);
}

#[test]
fn malformed_grid_rejected() {
    for grid in [
        GridSpec {
            x_step: 0.0,
            ..GridSpec::default()
        },
        GridSpec {
            z_values: vec![],
            ..GridSpec::default()
        },
        GridSpec {
            y_max: 1.0,
            ..GridSpec::default()
        },
    ] {
        assert!(verify_appendix(&grid).is_err());
    }
}

/// Flags recomputed from the thresholds written out directly.
fn oracle_flags(e: (u64, u64, u64), n: usize, k: usize, c: f64, d: f64) -> [bool; 3] {
    let s = k as f64 / n as f64;
    let nd = n as f64 * d;
    [
        (e.0 as f64) > s * (s + c / d.sqrt()) * nd / 2.0,
        (e.1 as f64) > (1.0 - s) * ((1.0 - s) + c / d.sqrt()) * nd / 2.0,
        (e.2 as f64) < (s * (1.0 - s) - c * (s * (1.0 - s)).sqrt() / d.sqrt()) * nd,
    ]
}

#[test]
fn event_flags_match_direct_thresholds() {
    let n = 12;
    let g = sample_gnp(n, 0.6, 4).unwrap();
    let d = n as f64 * 0.6;
    for c in [0.0, 0.3, 1.0, 1.999] {
        for mask in 0u64..1 << n {
            let inside = membership_of_mask(n, mask);
            let k = inside.iter().filter(|&&b| b).count();
            let fl = subset_flags(&g, &VertexSubset::from_membership(inside.clone()), c, d).unwrap();
            let expected = oracle_flags(count_edges(&g, &inside), n, k, c, d);
            assert_eq!([fl.inside_excess, fl.outside_excess, fl.cut_deficit], expected);
        }
    }
}

/// For `S = ∅` or `S = V` the cut event is impossible for every `C`. The
/// other two events then concern `e(G)` alone and hold at `C = 1.999`.
#[test]
fn trivial_subsets_never_violate() {
    for seed in 0..20 {
        let g = sample_gnp(40, 0.4, seed).unwrap();
        for s in [VertexSubset::empty(40), VertexSubset::full(40)] {
            for c in [0.0, 0.5, 1.999, 5.0] {
                assert!(!subset_flags(&g, &s, c, 16.0).unwrap().cut_deficit);
            }
            assert!(!subset_flags(&g, &s, 1.999, 16.0).unwrap().any());
        }
    }
}

#[test]
fn smaller_c_gives_more_violations() {
    let g = sample_gnp(18, 0.9, 3).unwrap();
    let d = 18.0 * 0.9;
    let mode = EventMode::Exhaustive { cap: 24 };
    let high = check_subset_events(&g, 1.999, d, &mode).unwrap();
    let low = check_subset_events(&g, 0.1, d, &mode).unwrap();
    assert_eq!(high.trials(), 1 << 18);
    println!(
        "G(18, 0.9, seed 3): {} violations at C = 1.999, {} at C = 0.1",
        high.total_violations(),
        low.total_violations()
    );
    assert!(low.total_violations() > high.total_violations());
}

#[test]
fn sampled_violations_are_confirmed_exhaustively() {
    let g = sample_gnp(18, 0.9, 3).unwrap();
    let d = 18.0 * 0.9;
    let c = 0.1;
    let exhaustive = check_subset_events(&g, c, d, &EventMode::Exhaustive { cap: 24 }).unwrap();
    let plan = SamplePlan {
        uniform_trials: 2000,
        per_size_trials: 100,
        sizes: default_size_schedule(18),
        seed: 8,
    };
    let sampled = check_subset_events(&g, c, d, &EventMode::Sampled(plan)).unwrap();
    assert!(sampled.total_violations() > 0);
    assert!(exhaustive.total_violations() > 0);
    for (labels, flags) in &sampled.examples {
        let mask = labels.iter().fold(0u64, |m, &v| m | 1 << (v - 1));
        let counts = edge_counts_mask(&g, mask).unwrap();
        let again = oracle_flags((counts.e_in, counts.e_out, counts.e_cross), 18, labels.len(), c, d);
        assert!(again.iter().any(|&b| b));
        assert_eq!(again, [flags.inside_excess, flags.outside_excess, flags.cut_deficit]);
    }
    // Per event, anything the sample finds the exhaustive pass finds too.
    let (s, e) = (sampled.violations(), exhaustive.violations());
    for i in 0..3 {
        assert!(s[i] == 0 || e[i] > 0);
    }
}

#[test]
fn sampled_mode_is_reproducible_and_stratified() {
    let g = sample_gnp(400, 0.05, 1).unwrap();
    let plan = SamplePlan {
        uniform_trials: 300,
        per_size_trials: 20,
        sizes: default_size_schedule(400),
        seed: 3,
    };
    let a = check_subset_events(&g, 1.999, 20.0, &EventMode::Sampled(plan.clone())).unwrap();
    let b = check_subset_events(&g, 1.999, 20.0, &EventMode::Sampled(plan.clone())).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.trials(), plan.trial_count());
    let per_regime = a.by_regime();
    for (regime, trials, _) in per_regime {
        assert!(trials > 0, "{regime:?}");
    }
    assert_eq!(per_regime[0].0, Regime::Small);
}

#[test]
fn event_domain_errors() {
    let g = sample_gnp(10, 0.5, 1).unwrap();
    let mode = EventMode::Exhaustive { cap: 24 };
    assert!(check_subset_events(&g, -1.0, 5.0, &mode).is_err());
    assert!(check_subset_events(&g, 1.0, 0.0, &mode).is_err());
    assert!(check_subset_events(&sample_gnp(25, 0.5, 1).unwrap(), 1.0, 5.0, &mode).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn raising_c_never_adds_violations(
        seed in any::<u64>(),
        p in 0.2f64..0.95,
        c_low in 0.0f64..2.0,
        extra in 0.0f64..2.0,
    ) {
        let n = 12;
        let g = sample_gnp(n, p, seed).unwrap();
        let d = n as f64 * p;
        for mask in 0u64..1 << n {
            let s = VertexSubset::from_mask(n, mask).unwrap();
            let lo = subset_flags(&g, &s, c_low, d).unwrap();
            let hi = subset_flags(&g, &s, c_low + extra, d).unwrap();
            prop_assert!(!hi.inside_excess || lo.inside_excess);
            prop_assert!(!hi.outside_excess || lo.outside_excess);
            prop_assert!(!hi.cut_deficit || lo.cut_deficit);
        }
    }

    #[test]
    fn phi_bound_ordering(mu in 1e-3f64..1e4, t in 0.0f64..1e4) {
        let b = chernoff_upper(mu, t).unwrap();
        prop_assert!(b.bound_phi <= b.bound_quad);
        prop_assert!(b.bound_quad <= 1.0);
    }
}
