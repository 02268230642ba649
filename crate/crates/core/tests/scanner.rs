use std::f64::consts::PI;

use grover_exact::oracle::oracle_success_probability;
use grover_exact::scanner::{
    exact_success_roots, lambda_lower_bound, lambda_lower_bound_with, optimize_alpha,
    probability_profile, xi_sensitivity, Grid, ScanConfig,
};
use grover_exact::{PhaseConfig, SearchInstance};

#[test]
fn reference_lower_bounds() {
    let b = lambda_lower_bound(0.268 * PI, 3, 0.8).unwrap();
    assert!((b.lambda_min - 0.14).abs() <= 0.005, "{b:?}");
    assert!(b.p_min_over_range >= 0.8 - 1e-6);

    let b = lambda_lower_bound(0.234 * PI, 3, 0.9).unwrap();
    assert!((b.lambda_min - 0.229).abs() <= 0.005, "{b:?}");
}

#[test]
fn certified_range_holds_on_a_finer_grid() {
    let b = lambda_lower_bound(0.268 * PI, 3, 0.8).unwrap();
    let lambdas = Grid::new(b.lambda_min, 1.0, 20_000).unwrap().points();
    let profile = probability_profile(0.268 * PI, 3, 1.0, &lambdas).unwrap();
    let worst = profile
        .iter()
        .map(|&(_, p)| p)
        .fold(f64::INFINITY, f64::min);
    assert!(worst >= 0.8 - 1e-6, "worst {worst}");
}

#[test]
fn lower_bound_is_monotone_in_threshold() {
    let mut prev = 0.0;
    for t in [0.5, 0.6, 0.7, 0.8, 0.85, 0.9, 0.95] {
        let b = lambda_lower_bound(0.268 * PI, 3, t).unwrap().lambda_min;
        assert!(b >= prev - 1e-9, "threshold {t}: {b} < {prev}");
        prev = b;
    }
}

#[test]
fn grid_refinement_is_stable() {
    for (alpha, m, t) in [
        (0.268 * PI, 3, 0.8),
        (0.234 * PI, 3, 0.9),
        (0.4 * PI, 2, 0.7),
    ] {
        let mut coarse = ScanConfig::new(m, t).unwrap();
        coarse.lambda_grid = Grid::new(0.001, 1.0, 1000).unwrap();
        let mut fine = coarse;
        fine.lambda_grid = Grid::new(0.001, 1.0, 1999).unwrap();
        let a = lambda_lower_bound_with(alpha, &coarse).unwrap().lambda_min;
        let b = lambda_lower_bound_with(alpha, &fine).unwrap().lambda_min;
        assert!((a - b).abs() < fine.lambda_grid.spacing(), "{a} vs {b}");
    }
}

#[test]
fn optimal_phase_for_three_iterations() {
    let r = optimize_alpha(&ScanConfig::new(3, 0.8).unwrap()).unwrap();
    assert!((r.alpha / PI - 0.268).abs() <= 0.005, "{r:?}");
    assert!((r.lambda_min - 0.14).abs() <= 0.005, "{r:?}");

    let r = optimize_alpha(&ScanConfig::new(3, 0.9).unwrap()).unwrap();
    assert!((r.alpha / PI - 0.234).abs() <= 0.01, "{r:?}");
    assert!((r.lambda_min - 0.229).abs() <= 0.01, "{r:?}");
}

#[test]
fn optimal_phase_for_one_iteration() {
    let r = optimize_alpha(&ScanConfig::new(1, 25.0 / 27.0).unwrap()).unwrap();
    assert!((r.alpha / PI - 0.5).abs() <= 0.01, "{r:?}");
    assert!((r.lambda_min - 1.0 / 3.0).abs() <= 0.005, "{r:?}");
}

#[test]
fn optimize_is_reproducible() {
    let mut c = ScanConfig::new(2, 0.8).unwrap();
    c.alpha_grid = Grid::new(0.1 * PI, 0.6 * PI, 200).unwrap();
    c.lambda_grid = Grid::new(0.001, 1.0, 800).unwrap();
    let a = optimize_alpha(&c).unwrap();
    let b = optimize_alpha(&c).unwrap();
    assert_eq!(a.alpha.to_bits(), b.alpha.to_bits());
    assert_eq!(a.lambda_min.to_bits(), b.lambda_min.to_bits());
    assert_eq!(a.roots, b.roots);
}

#[test]
fn reference_exact_success_root() {
    let alpha = 0.268 * PI;
    let roots = exact_success_roots(alpha, 3).unwrap();
    let root = roots
        .iter()
        .copied()
        .find(|r| (r - 0.2965).abs() <= 0.001)
        .unwrap_or_else(|| panic!("no root near 0.2965 in {roots:?}"));
    let inst = SearchInstance::new(root, 1.0, 3).unwrap();
    let p = oracle_success_probability(inst, PhaseConfig::matched(alpha).unwrap()).unwrap();
    assert!(p > 1.0 - 1e-6);
    for r in roots {
        let inst = SearchInstance::new(r, 1.0, 3).unwrap();
        assert!(
            oracle_success_probability(inst, PhaseConfig::matched(alpha).unwrap()).unwrap()
                > 1.0 - 1e-6
        );
    }
}

#[test]
fn standard_grover_roots_follow_closed_form() {
    // (2m + 1) arcsin√λ = π/2 + kπ
    for m in 1..5u64 {
        let roots = exact_success_roots(PI, m).unwrap();
        let expected: Vec<f64> = (0..=m)
            .map(|k| {
                ((PI / 2.0 + k as f64 * PI) / (2 * m + 1) as f64)
                    .sin()
                    .powi(2)
            })
            .filter(|&l| l < 1.0 - 1e-6)
            .collect();
        assert_eq!(roots.len(), expected.len(), "m = {m}: {roots:?}");
        for (r, e) in roots.iter().zip(&expected) {
            assert!((r - e).abs() < 1e-6, "m = {m}: {r} vs {e}");
        }
    }
}

#[test]
fn reference_sensitivity_ratio() {
    let s = xi_sensitivity(0.2, 0.268 * PI, 3).unwrap();
    assert!((s.ratio - 0.6).abs() <= 0.05, "{s:?}");
}

#[test]
fn sensitivity_matches_oracle() {
    for (lambda, alpha, m) in [(0.2, PI, 1), (0.5, 0.268 * PI, 3), (0.37, 1.3, 5)] {
        let s = xi_sensitivity(lambda, alpha, m).unwrap();
        let phases = PhaseConfig::matched(alpha).unwrap();
        let p1 = oracle_success_probability(SearchInstance::new(lambda, 1.0, m).unwrap(), phases)
            .unwrap();
        let p0 = oracle_success_probability(SearchInstance::new(lambda, 0.0, m).unwrap(), phases)
            .unwrap();
        assert!((s.ratio - p0 / p1).abs() < 1e-10, "{s:?}");
    }
}

#[test]
fn half_marked_dephased_start_is_insensitive_to_phases() {
    // At λ = 1/2 the dephased start is I/2, a fixed point of every unitary.
    let s = xi_sensitivity(0.5, 0.268 * PI, 3).unwrap();
    assert!((s.p_dephased - 0.5).abs() < 1e-12);
    assert!((s.p_coherent - 0.5).abs() > 0.1);
}

#[test]
fn scans_do_not_depend_on_thread_count() {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let b = lambda_lower_bound(0.3 * PI, 3, 0.8).unwrap();
                let roots = exact_success_roots(0.3 * PI, 3).unwrap();
                (b.lambda_min.to_bits(), b.p_min_over_range.to_bits(), roots)
            })
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
}
