//! Self-checks of the closed forms against the brute-force oracles and the
//! published reference numbers.
//!
//! Everything is sequential and seeded, so two runs with the same
//! [`ValidationOptions`] produce identical reports.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::closed_form::{
    self, build_g, build_initial_density, grover_optimal_iterations, li_li_polynomial,
    pauli_decompose,
};
use crate::error::{GroverError, Result};
use crate::oracle::{self, full_circuit_trajectory, MAX_QUBITS};
use crate::scanner::{self, ScanConfig};
use crate::types::{PhaseConfig, SearchInstance};

/// The analytic quantities under test. [`Exact`] is the library itself;
/// other implementations let callers confirm that the suite catches errors.
pub trait ClosedForm: Sync {
    fn success_probability(&self, inst: SearchInstance, phases: PhaseConfig) -> Result<f64>;
    fn dephased_success_probability(
        &self,
        lambda: f64,
        phases: PhaseConfig,
        iterations: u64,
    ) -> Result<f64>;
    fn coherence_ratio(&self, inst: SearchInstance, phases: PhaseConfig) -> Result<Complex64>;
}

pub struct Exact;

impl ClosedForm for Exact {
    fn success_probability(&self, inst: SearchInstance, phases: PhaseConfig) -> Result<f64> {
        closed_form::success_probability(inst, phases)
    }

    fn dephased_success_probability(
        &self,
        lambda: f64,
        phases: PhaseConfig,
        iterations: u64,
    ) -> Result<f64> {
        closed_form::dephased_success_probability(lambda, phases, iterations)
    }

    fn coherence_ratio(&self, inst: SearchInstance, phases: PhaseConfig) -> Result<Complex64> {
        closed_form::coherence_ratio(inst, phases)
    }
}

/// [`Exact`] with a constant offset added to every output.
pub struct Perturbed {
    pub offset: f64,
}

impl ClosedForm for Perturbed {
    fn success_probability(&self, inst: SearchInstance, phases: PhaseConfig) -> Result<f64> {
        Ok(Exact.success_probability(inst, phases)? + self.offset)
    }

    fn dephased_success_probability(
        &self,
        lambda: f64,
        phases: PhaseConfig,
        iterations: u64,
    ) -> Result<f64> {
        Ok(Exact.dephased_success_probability(lambda, phases, iterations)? + self.offset)
    }

    fn coherence_ratio(&self, inst: SearchInstance, phases: PhaseConfig) -> Result<Complex64> {
        Ok(Exact.coherence_ratio(inst, phases)? + self.offset)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationOptions {
    pub seed: u64,
    /// Largest register for the full-statevector reduction check.
    pub n_max: usize,
    pub random_instances: usize,
    pub coherence_instances: usize,
    pub reference_numbers: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            n_max: 10,
            random_instances: 10_000,
            coherence_instances: 1_000,
            reference_numbers: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub schema: String,
    pub seed: u64,
    pub n_max: usize,
    pub checks: Vec<CheckReport>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Running maximum of an error measure against a tolerance.
struct Tally {
    name: &'static str,
    tolerance: f64,
    samples: usize,
    max_error: f64,
    failures: usize,
    note: String,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            samples: 0,
            max_error: 0.0,
            failures: 0,
            note: String::new(),
        }
    }

    fn record(&mut self, error: f64) {
        self.samples += 1;
        if error.is_nan() || error > self.tolerance {
            self.failures += 1;
        }
        if error > self.max_error || error.is_nan() {
            self.max_error = error;
        }
    }

    fn fail(&mut self, why: String) {
        self.samples += 1;
        self.failures += 1;
        if self.note.is_empty() {
            self.note = why;
        }
    }

    fn finish(self) -> CheckReport {
        let detail = if self.failures == 0 {
            self.note
        } else if self.note.is_empty() {
            format!(
                "{} of {} samples out of tolerance",
                self.failures, self.samples
            )
        } else {
            format!(
                "{} of {} samples failed: {}",
                self.failures, self.samples, self.note
            )
        };
        CheckReport {
            name: self.name.to_string(),
            passed: self.failures == 0 && self.samples > 0,
            samples: self.samples,
            max_error: self.max_error,
            tolerance: self.tolerance,
            detail,
        }
    }
}

/// Randomized instances: uniform bulk plus points placed within `1e-7` of the
/// `mφ = kπ` singularity of the cotangent form and points with `|sin φ| ≤ 1e-8`.
pub fn sample_instances(seed: u64, count: usize) -> Vec<(SearchInstance, PhaseConfig)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let kind = out.len() % 10;
        let item = match kind {
            0 => near_cot_singularity(&mut rng),
            1 => near_degenerate(&mut rng),
            _ => Some(uniform_instance(&mut rng)),
        };
        out.extend(item);
    }
    out
}

fn uniform_instance(rng: &mut ChaCha8Rng) -> (SearchInstance, PhaseConfig) {
    let lambda = rng.gen_range(0.01..=0.99);
    let xi = rng.gen_range(-1.0..=1.0);
    let m = rng.gen_range(0..=50);
    let phases = PhaseConfig::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)).expect("finite");
    (
        SearchInstance::new(lambda, xi, m).expect("in range"),
        phases,
    )
}

fn near_cot_singularity(rng: &mut ChaCha8Rng) -> Option<(SearchInstance, PhaseConfig)> {
    let m: u64 = rng.gen_range(2..=50);
    let k = rng.gen_range(1..m);
    let offset = rng.gen_range(-1e-7..1e-7) / m as f64;
    let phi = k as f64 * PI / m as f64 + offset;
    // β = −α gives cos φ = 1 − 2λ sin²(α/2).
    let need = 0.5 * (1.0 - phi.cos());
    if need >= 0.99 {
        return None;
    }
    let lambda = rng.gen_range(need.max(0.01)..=0.99);
    let alpha = 2.0 * (need / lambda).sqrt().min(1.0).asin();
    let xi = rng.gen_range(-1.0..=1.0);
    Some((
        SearchInstance::new(lambda, xi, m).ok()?,
        PhaseConfig::matched(alpha).ok()?,
    ))
}

fn near_degenerate(rng: &mut ChaCha8Rng) -> Option<(SearchInstance, PhaseConfig)> {
    let lambda = rng.gen_range(0.01..=0.99);
    let alpha = if rng.gen_bool(0.5) {
        0.0
    } else {
        rng.gen_range(-1e-8..1e-8)
    };
    let xi = rng.gen_range(-1.0..=1.0);
    let m = rng.gen_range(0..=50);
    Some((
        SearchInstance::new(lambda, xi, m).ok()?,
        PhaseConfig::matched(alpha).ok()?,
    ))
}

pub fn run(options: &ValidationOptions, form: &dyn ClosedForm) -> Result<ValidationReport> {
    if options.n_max == 0 || options.n_max > MAX_QUBITS {
        return Err(GroverError::RegisterTooLarge(options.n_max));
    }
    let instances = sample_instances(options.seed, options.random_instances);
    let mut checks = vec![
        li_li_regression(form)?,
        oracle_equivalence(form, &instances)?,
        probability_range(form, &instances)?,
        dephased_closed_form(form, &instances)?,
        coherence_dynamics(form, options)?,
    ];
    checks.extend(structural(&instances)?);
    checks.push(standard_grover_collapse(form)?);
    checks.push(full_hilbert_reduction(form, options)?);
    if options.reference_numbers {
        checks.extend(reference_numbers()?);
    }
    Ok(ValidationReport {
        schema: "grover-exact/validate/v1".into(),
        seed: options.seed,
        n_max: options.n_max,
        checks,
    })
}

fn li_li_regression(form: &dyn ClosedForm) -> Result<CheckReport> {
    let phases = PhaseConfig::matched(PI / 2.0)?;
    let mut t = Tally::new("li_li_regression", 1e-12);
    let p = form.success_probability(SearchInstance::new(1.0 / 3.0, 1.0, 1)?, phases)?;
    t.record((p - 25.0 / 27.0).abs());
    for i in 0..100 {
        let lambda = i as f64 / 99.0;
        let p = form.success_probability(SearchInstance::new(lambda, 1.0, 1)?, phases)?;
        t.record((p - li_li_polynomial(lambda)?).abs());
    }
    Ok(t.finish())
}

fn oracle_equivalence(
    form: &dyn ClosedForm,
    instances: &[(SearchInstance, PhaseConfig)],
) -> Result<CheckReport> {
    let mut t = Tally::new("oracle_equivalence", 1e-10);
    let mut singular = 0;
    for &(inst, phases) in instances {
        let closed = form.success_probability(inst, phases)?;
        let brute = oracle::oracle_success_probability(inst, phases)?;
        t.record((closed - brute).abs());
        if let Err(GroverError::DegenerateRotation(_)) = pauli_decompose(phases, inst.lambda()) {
            singular += 1;
        }
    }
    t.note = format!("{singular} degenerate-rotation instances");
    Ok(t.finish())
}

fn probability_range(
    form: &dyn ClosedForm,
    instances: &[(SearchInstance, PhaseConfig)],
) -> Result<CheckReport> {
    let mut t = Tally::new("probability_range", 1e-10);
    for &(inst, phases) in instances {
        let p = form.success_probability(inst, phases)?;
        t.record((-p).max(p - 1.0).max(0.0));
    }
    Ok(t.finish())
}

fn dephased_closed_form(
    form: &dyn ClosedForm,
    instances: &[(SearchInstance, PhaseConfig)],
) -> Result<CheckReport> {
    let mut t = Tally::new("dephased_closed_form", 1e-10);
    for &(inst, phases) in instances {
        let dephased =
            form.dephased_success_probability(inst.lambda(), phases, inst.iterations())?;
        let general = SearchInstance::new(inst.lambda(), 0.0, inst.iterations())?;
        t.record((dephased - form.success_probability(general, phases)?).abs());
        t.record((dephased - oracle::oracle_success_probability(general, phases)?).abs());
    }
    Ok(t.finish())
}

fn coherence_dynamics(form: &dyn ClosedForm, options: &ValidationOptions) -> Result<CheckReport> {
    let mut t = Tally::new("coherence_dynamics", 1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0xc0de);
    for _ in 0..options.coherence_instances {
        let lambda = rng.gen_range(0.01..=0.99);
        let magnitude: f64 = rng.gen_range(0.05..=1.0);
        let xi = if rng.gen_bool(0.5) {
            magnitude
        } else {
            -magnitude
        };
        let m = rng.gen_range(0..=50);
        let phases = PhaseConfig::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI))?;
        let inst = SearchInstance::new(lambda, xi, m)?;
        let closed = form.coherence_ratio(inst, phases)?;
        let brute = oracle::oracle_coherence_ratio(inst, phases)?;
        t.record((closed - brute).norm());

        let start = form.coherence_ratio(SearchInstance::new(lambda, xi, 0)?, phases)?;
        if start != Complex64::new(1.0, 0.0) {
            t.fail(format!("m = 0 gave {start}"));
        }
    }
    Ok(t.finish())
}

fn structural(instances: &[(SearchInstance, PhaseConfig)]) -> Result<Vec<CheckReport>> {
    let mut unitarity = Tally::new("unitarity", 1e-12);
    let mut normalization = Tally::new("axis_normalization", 1e-10);
    let mut reconstruction = Tally::new("pauli_reconstruction", 1e-10);
    let mut density = Tally::new("density_invariants", 1e-12);
    for &(inst, phases) in instances {
        let g = build_g(phases, inst.lambda())?;
        unitarity.record(g.unitarity_defect().max((g.det().norm() - 1.0).abs()));
        if let Ok(d) = pauli_decompose(phases, inst.lambda()) {
            let norm: f64 = d.axis.iter().map(|v| v * v).sum();
            normalization.record((norm - 1.0).abs());
            reconstruction.record(crate::linalg::max_abs_diff(
                d.reconstruct().matrix(),
                g.matrix(),
            ));
        }
        let rho0 = build_initial_density(inst.lambda(), inst.xi())?;
        let rho = oracle::evolve_density(&g, &rho0, inst.iterations());
        let negativity = (-rho.eigenvalues()[0]).max(0.0);
        density.record(
            rho.hermiticity_defect()
                .max((rho.trace() - 1.0).norm())
                .max(negativity),
        );
    }
    Ok(vec![
        unitarity.finish(),
        normalization.finish(),
        reconstruction.finish(),
        density.finish(),
    ])
}

fn standard_grover_collapse(form: &dyn ClosedForm) -> Result<CheckReport> {
    let mut t = Tally::new("standard_grover_collapse", 1e-10);
    for i in 0..100u64 {
        let lambda = 0.005 + 0.99 * (i as f64 / 99.0);
        let m = i % 25;
        let p = form.success_probability(
            SearchInstance::new(lambda, 1.0, m)?,
            PhaseConfig::standard(),
        )?;
        let expected = ((2 * m + 1) as f64 * lambda.sqrt().asin()).sin().powi(2);
        t.record((p - expected).abs());
    }
    let k = grover_optimal_iterations(0.25)?;
    if k != 1.0 {
        t.fail(format!("optimal iterations at 1/4 gave {k}"));
    }
    Ok(t.finish())
}

fn full_hilbert_reduction(
    form: &dyn ClosedForm,
    options: &ValidationOptions,
) -> Result<CheckReport> {
    const PHASE_SAMPLES: usize = 20;
    const MAX_ITERATIONS: u64 = 20;
    let mut t = Tally::new("full_hilbert_reduction", 1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0xf011);
    for n in 2.min(options.n_max)..=options.n_max {
        let dim = 1usize << n;
        let sizes: BTreeSet<usize> = [1, 2, dim / 2, dim - 1]
            .into_iter()
            .filter(|&s| s >= 1 && s <= dim)
            .collect();
        for &size in &sizes {
            for _ in 0..PHASE_SAMPLES {
                let marked: BTreeSet<usize> = sample(&mut rng, dim, size).into_iter().collect();
                let phases = PhaseConfig::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI))?;
                let lambda = size as f64 / dim as f64;
                for xi in [1.0, 0.0] {
                    let trajectory =
                        full_circuit_trajectory(n, &marked, phases, MAX_ITERATIONS, xi)?;
                    for (m, &p_full) in trajectory.iter().enumerate() {
                        let inst = SearchInstance::new(lambda, xi, m as u64)?;
                        t.record((p_full - form.success_probability(inst, phases)?).abs());
                    }
                }
            }
        }
    }
    Ok(t.finish())
}

fn reference_numbers() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();

    let mut check = |name: &'static str, value: f64, target: f64, tol: f64, what: String| {
        let mut t = Tally::new(name, tol);
        t.record((value - target).abs());
        t.note = what;
        out.push(t.finish());
    };

    let b = scanner::lambda_lower_bound(0.268 * PI, 3, 0.8)?;
    check(
        "reference_lower_bound_0_8",
        b.lambda_min,
        0.14,
        0.005,
        format!("alpha = 0.268 pi, m = 3: lambda_min = {:.6}", b.lambda_min),
    );
    let b = scanner::lambda_lower_bound(0.234 * PI, 3, 0.9)?;
    check(
        "reference_lower_bound_0_9",
        b.lambda_min,
        0.229,
        0.005,
        format!("alpha = 0.234 pi, m = 3: lambda_min = {:.6}", b.lambda_min),
    );
    let r = scanner::optimize_alpha(&ScanConfig::new(3, 0.8)?)?;
    check(
        "reference_optimal_alpha",
        r.alpha / PI,
        0.268,
        0.005,
        format!(
            "optimal alpha = {:.6} pi, lambda_min = {:.6}",
            r.alpha / PI,
            r.lambda_min
        ),
    );
    let s = scanner::xi_sensitivity(0.2, 0.268 * PI, 3)?;
    check(
        "reference_xi_sensitivity",
        s.ratio,
        0.6,
        0.05,
        format!(
            "assumes alpha = -beta = 0.268 pi, m = 3: ratio = {:.6}",
            s.ratio
        ),
    );

    let alpha = 0.268 * PI;
    let roots = scanner::exact_success_roots(alpha, 3)?;
    let mut t = Tally::new("reference_exact_success_root", 0.001);
    match roots
        .iter()
        .copied()
        .min_by(|a, b| (a - 0.2965).abs().total_cmp(&(b - 0.2965).abs()))
    {
        Some(root) => {
            t.record((root - 0.2965).abs());
            let p = oracle::oracle_success_probability(
                SearchInstance::new(root, 1.0, 3)?,
                PhaseConfig::matched(alpha)?,
            )?;
            if p <= 1.0 - scanner::ROOT_TOL {
                t.fail(format!("oracle P = {p} at root {root}"));
            }
            t.note = format!("root = {root:.6}, oracle P = {p:.12}");
        }
        None => t.fail("no exact-success root found".into()),
    }
    out.push(t.finish());
    Ok(out)
}
