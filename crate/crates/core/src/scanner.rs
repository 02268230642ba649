//! Searches over the `β = −α` phase-matching family with a pure start (`ξ = 1`).
//!
//! Every scan is a dense grid pass followed by local refinement (bisection for
//! threshold crossings, golden-section search for extrema). Grid passes run on
//! the rayon pool; results are collected in grid order and reduced
//! sequentially, so the worker count never changes an output bit.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::{dephased_success_probability, success_probability};
use crate::error::{GroverError, Result};
use crate::types::{check_coherence, PhaseConfig, SearchInstance};

pub const DEFAULT_ALPHA_GRID: Grid = Grid {
    lo: 0.05 * PI,
    hi: PI,
    steps: 2000,
};
pub const DEFAULT_LAMBDA_GRID: Grid = Grid {
    lo: 0.001,
    hi: 1.0,
    steps: 4000,
};
pub const DEFAULT_REFINE_TOL: f64 = 1e-6;

/// A reported exact-success point must reach `P > 1 − ROOT_TOL`.
pub const ROOT_TOL: f64 = 1e-6;

const GOLDEN_TOL: f64 = 1e-12;
const ALPHA_REFINE_POINTS: usize = 41;
const ALPHA_REFINE_LEVELS: usize = 6;

/// `steps` evenly spaced points from `lo` to `hi`, both included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self> {
        let grid = Self { lo, hi, steps };
        grid.check()?;
        Ok(grid)
    }

    fn check(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(GroverError::ScanConfig("grid has no points".into()));
        }
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.lo > self.hi {
            return Err(GroverError::ScanConfig(format!(
                "grid bounds [{}, {}] are not an interval",
                self.lo, self.hi
            )));
        }
        if self.steps == 1 && self.lo != self.hi {
            return Err(GroverError::ScanConfig(
                "a single-point grid needs lo == hi".into(),
            ));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let last = (self.steps - 1) as f64;
        let mut pts: Vec<f64> = (0..self.steps)
            .map(|i| self.lo + (self.hi - self.lo) * (i as f64 / last))
            .collect();
        pts[self.steps - 1] = self.hi;
        pts
    }

    pub fn spacing(&self) -> f64 {
        if self.steps < 2 {
            0.0
        } else {
            (self.hi - self.lo) / (self.steps - 1) as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub iterations: u64,
    pub threshold: f64,
    pub alpha_grid: Grid,
    pub lambda_grid: Grid,
    pub refine_tol: f64,
}

impl ScanConfig {
    /// Default grids and tolerance for `iterations` and `threshold`.
    pub fn new(iterations: u64, threshold: f64) -> Result<Self> {
        let config = Self {
            iterations,
            threshold,
            alpha_grid: DEFAULT_ALPHA_GRID,
            lambda_grid: DEFAULT_LAMBDA_GRID,
            refine_tol: DEFAULT_REFINE_TOL,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(GroverError::ScanConfig(format!(
                "threshold {} outside (0, 1)",
                self.threshold
            )));
        }
        if !(self.refine_tol > 0.0 && self.refine_tol.is_finite()) {
            return Err(GroverError::ScanConfig(format!(
                "refine_tol {} must be positive",
                self.refine_tol
            )));
        }
        self.alpha_grid.check()?;
        self.lambda_grid.check()?;
        if self.lambda_grid.lo < 0.0 || self.lambda_grid.hi > 1.0 {
            return Err(GroverError::ScanConfig(
                "lambda grid must lie inside [0, 1]".into(),
            ));
        }
        Ok(())
    }
}

/// Smallest certified marked fraction and the lowest probability seen on `[lambda_min, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub lambda_min: f64,
    pub p_min_over_range: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub alpha: f64,
    pub iterations: u64,
    pub threshold: f64,
    pub lambda_min: f64,
    pub roots: Vec<f64>,
    pub p_min_over_range: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiSensitivity {
    pub p_coherent: f64,
    pub p_dephased: f64,
    pub ratio: f64,
}

/// `P(λ, ξ = 1, α, −α, m)` for `λ` known to lie in `[0, 1]`.
struct MatchedProfile {
    phases: PhaseConfig,
    iterations: u64,
}

impl MatchedProfile {
    fn new(alpha: f64, iterations: u64) -> Result<Self> {
        Ok(Self {
            phases: PhaseConfig::matched(alpha)?,
            iterations,
        })
    }

    fn at(&self, lambda: f64) -> f64 {
        let inst = SearchInstance::new(lambda.clamp(0.0, 1.0), 1.0, self.iterations)
            .expect("clamped lambda with xi = 1 is a valid instance");
        success_probability(inst, self.phases).expect("valid instance")
    }

    fn on(&self, pts: &[f64]) -> Vec<f64> {
        pts.par_iter().map(|&l| self.at(l)).collect()
    }

    /// Threshold crossing between a failing and a passing point; returns the
    /// passing end of the final bracket.
    fn crossing(&self, mut fail: f64, mut pass: f64, threshold: f64, tol: f64) -> f64 {
        while (pass - fail).abs() > tol {
            let mid = 0.5 * (fail + pass);
            if self.at(mid) < threshold {
                fail = mid;
            } else {
                pass = mid;
            }
        }
        pass
    }

    /// Golden-section search for the minimum (`sign = 1`) or maximum (`sign = -1`) on `[a, b]`.
    fn extremum(&self, mut a: f64, mut b: f64, sign: f64) -> (f64, f64) {
        let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
        let f = |l: f64| sign * self.at(l);
        let (fa, fb) = (f(a), f(b));
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let (mut fc, mut fd) = (f(c), f(d));
        while b - a > GOLDEN_TOL {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d);
            }
        }
        let mid = 0.5 * (a + b);
        let best = [(mid, f(mid)), (c, fc), (d, fd), (a, fa), (b, fb)]
            .into_iter()
            .fold(
                (mid, f(mid)),
                |acc, cand| if cand.1 < acc.1 { cand } else { acc },
            );
        (best.0, sign * best.1)
    }
}

/// [`lambda_lower_bound_with`] on the default λ grid and tolerance.
pub fn lambda_lower_bound(alpha: f64, iterations: u64, threshold: f64) -> Result<LowerBound> {
    lambda_lower_bound_with(alpha, &ScanConfig::new(iterations, threshold)?)
}

/// Smallest `λ*` such that `P(λ, 1, α, −α, m) ≥ threshold` for every λ in
/// `[λ*, hi]` of the λ grid.
///
/// The rightmost failing grid point is refined by bisection; then every grid
/// local minimum to its right is polished by golden-section search, and a
/// polished minimum below the threshold pushes `λ*` past it.
pub fn lambda_lower_bound_with(alpha: f64, config: &ScanConfig) -> Result<LowerBound> {
    config.validate()?;
    let threshold = config.threshold;
    let tol = config.refine_tol;
    let profile = MatchedProfile::new(alpha, config.iterations)?;
    let pts = config.lambda_grid.points();
    let p = profile.on(&pts);
    let last = pts.len() - 1;
    let infeasible = GroverError::NoFeasibleRange { threshold };

    if p[last] < threshold {
        return Err(infeasible);
    }
    let (mut lambda_min, mut start) = match p.iter().rposition(|&v| v < threshold) {
        None => (pts[0], 0),
        Some(k) => (profile.crossing(pts[k], pts[k + 1], threshold, tol), k + 1),
    };

    let mut p_min = profile.at(lambda_min);
    // A failing minimum moves the bound right and restarts the sweep from there.
    #[allow(clippy::mut_range_bound)]
    'certify: loop {
        for j in start..=last {
            let left_ok = j == 0 || p[j] <= p[j - 1];
            let right_ok = j == last || p[j] <= p[j + 1];
            if !(left_ok && right_ok) {
                continue;
            }
            let a = if j == 0 {
                pts[0]
            } else {
                pts[j - 1].max(lambda_min)
            };
            let b = pts[(j + 1).min(last)];
            let (at, value) = profile.extremum(a, b, 1.0);
            if value < threshold {
                if j == last {
                    return Err(infeasible);
                }
                lambda_min = profile.crossing(at, pts[j + 1], threshold, tol);
                start = j + 1;
                p_min = profile.at(lambda_min);
                continue 'certify;
            }
            p_min = p_min.min(value);
        }
        break;
    }
    let grid_min = p[start..].iter().copied().fold(f64::INFINITY, f64::min);
    Ok(LowerBound {
        lambda_min,
        p_min_over_range: p_min.min(grid_min),
    })
}

/// The `α` on the α grid (then locally refined) with the smallest λ lower
/// bound; ties keep the smaller `α`.
pub fn optimize_alpha(config: &ScanConfig) -> Result<ScanResult> {
    config.validate()?;
    let alphas = config.alpha_grid.points();
    let bounds: Vec<Result<LowerBound>> = alphas
        .par_iter()
        .map(|&a| lambda_lower_bound_with(a, config))
        .collect();

    let mut best: Option<(f64, LowerBound)> = None;
    for (&alpha, bound) in alphas.iter().zip(bounds) {
        match bound {
            Ok(b) => {
                if best.is_none_or(|(_, cur)| b.lambda_min < cur.lambda_min) {
                    best = Some((alpha, b));
                }
            }
            Err(GroverError::NoFeasibleRange { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let (mut alpha, mut bound) = best.ok_or(GroverError::NoFeasibleRange {
        threshold: config.threshold,
    })?;

    let mut half_width = config.alpha_grid.spacing();
    for _ in 0..ALPHA_REFINE_LEVELS {
        if half_width < config.refine_tol {
            break;
        }
        let local = Grid {
            lo: alpha - half_width,
            hi: alpha + half_width,
            steps: ALPHA_REFINE_POINTS,
        };
        let candidates = local.points();
        let local_bounds: Vec<Result<LowerBound>> = candidates
            .par_iter()
            .map(|&a| lambda_lower_bound_with(a, config))
            .collect();
        for (&a, b) in candidates.iter().zip(local_bounds) {
            if let Ok(b) = b {
                if b.lambda_min < bound.lambda_min {
                    alpha = a;
                    bound = b;
                }
            }
        }
        half_width = local.spacing();
    }

    Ok(ScanResult {
        alpha,
        iterations: config.iterations,
        threshold: config.threshold,
        lambda_min: bound.lambda_min,
        roots: exact_success_roots(alpha, config.iterations)?,
        p_min_over_range: bound.p_min_over_range,
    })
}

/// Marked fractions in `(0, 1)` where `P(λ, 1, α, −α, m)` reaches 1 within [`ROOT_TOL`].
///
/// Local maxima of `P` on a 4001-point grid are polished by golden-section
/// search; maxima above `1 − ROOT_TOL` are reported in increasing order.
pub fn exact_success_roots(alpha: f64, iterations: u64) -> Result<Vec<f64>> {
    let profile = MatchedProfile::new(alpha, iterations)?;
    let pts = Grid::new(0.0, 1.0, DEFAULT_LAMBDA_GRID.steps + 1)?.points();
    let p = profile.on(&pts);
    let mut roots: Vec<f64> = Vec::new();
    for j in 1..pts.len() - 1 {
        if !(p[j] >= p[j - 1] && p[j] >= p[j + 1]) || p[j] < 1.0 - 1e-3 {
            continue;
        }
        let (at, value) = profile.extremum(pts[j - 1], pts[j + 1], -1.0);
        if value > 1.0 - ROOT_TOL
            && at > 0.0
            && at < 1.0 - ROOT_TOL
            && roots.last().is_none_or(|&r| at - r > ROOT_TOL)
        {
            roots.push(at);
        }
    }
    Ok(roots)
}

/// Ratio of the dephased (`ξ = 0`) to the pure-start (`ξ = 1`) success
/// probability on the `β = −α` family.
pub fn xi_sensitivity(lambda: f64, alpha: f64, iterations: u64) -> Result<XiSensitivity> {
    let phases = PhaseConfig::matched(alpha)?;
    let p_coherent = success_probability(SearchInstance::new(lambda, 1.0, iterations)?, phases)?;
    if p_coherent < 1e-12 {
        return Err(GroverError::VanishingProbability(p_coherent));
    }
    let p_dephased = dephased_success_probability(lambda, phases, iterations)?;
    Ok(XiSensitivity {
        p_coherent,
        p_dephased,
        ratio: p_dephased / p_coherent,
    })
}

/// `(λ, P(λ, ξ, α, −α, m))` for every λ in `lambdas`, in input order.
pub fn probability_profile(
    alpha: f64,
    iterations: u64,
    xi: f64,
    lambdas: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let phases = PhaseConfig::matched(alpha)?;
    let xi = check_coherence(xi)?;
    lambdas
        .par_iter()
        .map(|&l| {
            let p = success_probability(SearchInstance::new(l, xi, iterations)?, phases)?;
            Ok((l, p))
        })
        .collect()
}
