use std::f64::consts::PI;

use grover_exact::scanner::{self, ScanConfig};
use grover_exact::validation::{self, ClosedForm, Exact, Perturbed, ValidationOptions};
use grover_exact::{
    coherence_ratio, success_probability, GroverError, PhaseConfig, SearchInstance,
};
use serde_json::json;

use crate::args::{EvalArgs, Format, OptimizeArgs, ScanArgs, SensitivityArgs, ValidateArgs};
use crate::output::{emit, Cell, RunManifest, Table};
use crate::CliError;

const MATCHED: &str = "phase matching beta = -alpha";

pub fn eval(args: &EvalArgs) -> Result<(), CliError> {
    let beta = args.beta.unwrap_or(-args.alpha);
    let phases = PhaseConfig::new(args.alpha, beta)?;
    let inst = SearchInstance::new(args.lambda, args.xi, args.iters)?;
    let p = success_probability(inst, phases)?;
    let c = match coherence_ratio(inst, phases) {
        Ok(c) => Some(c),
        Err(e @ GroverError::UndefinedCoherence) if args.coherence => {
            return Err(CliError::Undefined(e.to_string()))
        }
        Err(GroverError::UndefinedCoherence) => None,
        Err(e) => return Err(e.into()),
    };

    let table = Table {
        header: vec![
            "lambda",
            "xi",
            "alpha",
            "beta",
            "iters",
            "probability",
            "coherence_re",
            "coherence_im",
        ],
        rows: vec![vec![
            Cell::Num(args.lambda),
            Cell::Num(args.xi),
            Cell::Num(phases.alpha()),
            Cell::Num(phases.beta()),
            Cell::Int(args.iters),
            Cell::Num(p),
            c.map_or(Cell::Missing, |c| Cell::Num(c.re)),
            c.map_or(Cell::Missing, |c| Cell::Num(c.im)),
        ]],
    };
    let manifest = RunManifest::new("eval")
        .param("lambda", args.lambda)
        .param("xi", args.xi)
        .angle("alpha", phases.alpha())
        .angle("beta", phases.beta())
        .param("iters", args.iters);
    let body = table.render(args.output.format, &manifest.output_schema)?;
    emit(&args.output, &body, &manifest)
}

pub fn scan(args: &ScanArgs) -> Result<(), CliError> {
    let lambdas = args.lambda_grid.points();
    let profile = scanner::probability_profile(args.alpha, args.iters, args.xi, &lambdas)?;
    let mut manifest = RunManifest::new("scan")
        .angle("alpha", args.alpha)
        .angle("beta", -args.alpha)
        .param("iters", args.iters)
        .param("xi", args.xi)
        .setting("lambda_grid", json!(args.lambda_grid))
        .assume(MATCHED);

    if let Some(threshold) = args.threshold {
        let config = ScanConfig {
            iterations: args.iters,
            threshold,
            alpha_grid: scanner::DEFAULT_ALPHA_GRID,
            lambda_grid: args.lambda_grid,
            refine_tol: args.refine_tol,
        };
        let bound = scanner::lambda_lower_bound_with(args.alpha, &config)?;
        manifest = manifest
            .param("threshold", threshold)
            .setting("refine_tol", args.refine_tol)
            .assume("lower bound certified with xi = 1");
        manifest.summary = Some(json!(bound));
    }

    let table = Table {
        header: vec!["lambda", "probability"],
        rows: profile
            .iter()
            .map(|&(l, p)| vec![Cell::Num(l), Cell::Num(p)])
            .collect(),
    };
    let body = table.render(args.output.format, &manifest.output_schema)?;
    emit(&args.output, &body, &manifest)
}

pub fn optimize(args: &OptimizeArgs) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for &m in &args.iters {
        let config = ScanConfig {
            iterations: m,
            threshold: args.threshold,
            alpha_grid: args.alpha_grid,
            lambda_grid: args.lambda_grid,
            refine_tol: args.refine_tol,
        };
        let r = scanner::optimize_alpha(&config)?;
        let roots: Vec<String> = r
            .roots
            .iter()
            .map(|x| crate::output::csv_number(*x))
            .collect();
        rows.push(vec![
            Cell::Int(r.iterations),
            Cell::Num(r.threshold),
            Cell::Num(r.alpha),
            Cell::Num(r.alpha / PI),
            Cell::Num(r.lambda_min),
            Cell::Num(r.p_min_over_range),
            Cell::Text(roots.join(";")),
        ]);
    }
    let manifest = RunManifest::new("optimize")
        .param("iters", json!(args.iters))
        .param("threshold", args.threshold)
        .setting(
            "alpha_grid",
            json!({
                "lo": crate::output::angle_value(args.alpha_grid.lo),
                "hi": crate::output::angle_value(args.alpha_grid.hi),
                "steps": args.alpha_grid.steps,
            }),
        )
        .setting("lambda_grid", json!(args.lambda_grid))
        .setting("refine_tol", args.refine_tol)
        .assume(MATCHED)
        .assume("xi = 1 (pure uniform start)");
    let table = Table {
        header: vec![
            "iters",
            "threshold",
            "alpha",
            "alpha_pi",
            "lambda_min",
            "p_min_over_range",
            "roots",
        ],
        rows,
    };
    let body = table.render(args.output.format, &manifest.output_schema)?;
    emit(&args.output, &body, &manifest)
}

pub fn sensitivity(args: &SensitivityArgs) -> Result<(), CliError> {
    let s = scanner::xi_sensitivity(args.lambda, args.alpha, args.iters)?;
    let manifest = RunManifest::new("sensitivity")
        .param("lambda", args.lambda)
        .angle("alpha", args.alpha)
        .angle("beta", -args.alpha)
        .param("iters", args.iters)
        .assume(MATCHED)
        .assume("ratio = P(xi = 0) / P(xi = 1)");
    let table = Table {
        header: vec![
            "lambda",
            "alpha",
            "alpha_pi",
            "iters",
            "p_coherent",
            "p_dephased",
            "ratio",
        ],
        rows: vec![vec![
            Cell::Num(args.lambda),
            Cell::Num(args.alpha),
            Cell::Num(args.alpha / PI),
            Cell::Int(args.iters),
            Cell::Num(s.p_coherent),
            Cell::Num(s.p_dephased),
            Cell::Num(s.ratio),
        ]],
    };
    let body = table.render(args.output.format, &manifest.output_schema)?;
    emit(&args.output, &body, &manifest)
}

/// Returns whether every check passed.
pub fn validate(args: &ValidateArgs) -> Result<bool, CliError> {
    let options = ValidationOptions {
        seed: args.seed,
        n_max: args.n_max,
        reference_numbers: !args.skip_reference,
        ..ValidationOptions::default()
    };
    let perturbed = Perturbed {
        offset: args.perturb,
    };
    let form: &dyn ClosedForm = if args.perturb != 0.0 {
        &perturbed
    } else {
        &Exact
    };
    let report = validation::run(&options, form)?;

    let mut manifest = RunManifest::new("validate")
        .param("seed", args.seed)
        .param("n_max", args.n_max)
        .param("reference_numbers", !args.skip_reference)
        .setting("random_instances", options.random_instances)
        .setting("coherence_instances", options.coherence_instances);
    if args.perturb != 0.0 {
        manifest = manifest.param("perturb", args.perturb);
    }
    manifest.summary = Some(json!({ "all_passed": report.all_passed() }));

    let body = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("json") + "\n",
        Format::Csv | Format::Text => {
            let table = Table {
                header: vec![
                    "status",
                    "check",
                    "samples",
                    "max_error",
                    "tolerance",
                    "detail",
                ],
                rows: report
                    .checks
                    .iter()
                    .map(|c| {
                        vec![
                            Cell::Text(if c.passed { "PASS" } else { "FAIL" }.into()),
                            Cell::Text(c.name.clone()),
                            Cell::Int(c.samples as u64),
                            Cell::Num(c.max_error),
                            Cell::Num(c.tolerance),
                            Cell::Text(c.detail.clone()),
                        ]
                    })
                    .collect(),
            };
            table.render(args.output.format, &report.schema)?
        }
    };
    emit(&args.output, &body, &manifest)?;
    Ok(report.all_passed())
}
