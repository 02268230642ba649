//! Closed forms for the two-phase generalized Grover iteration.
//!
//! The iteration is `G(α, β) = V(β) · U(α)`: the oracle phase `U(α)` acts
//! first, then the diffuser `V(β)`, so one step from the uniform state
//! already moves population (`V` alone fixes |ψ⟩). In the (|R⟩, |T⟩) basis
//!
//! ```text
//! U(α) = I − (1 − e^{iα}) |T⟩⟨T|
//! V(β) = e^{iβ} I + (1 − e^{iβ}) |ψ⟩⟨ψ|,   |ψ⟩ = √(1−λ)|R⟩ + √λ|T⟩
//! ```
//!
//! `G` is written as `e^{iδ}(cos φ I − i sin φ n̂·σ)` with `δ = (α+β)/2` and
//!
//! ```text
//! cos φ = cos((α+β)/2) + 2λ sin(β/2) sin(α/2)
//! ```
//!
//! The textbook axis components (`n₁ = −2√(λ(1−λ)) cos(α/2) sin(β/2) / sin φ`,
//! etc.) describe the opposite rotation sense, `e^{+iφ m̂·σ}` with `m̂ = −n̂`.
//! The success probability and coherence closed forms below are stated for
//! `m̂`, so they are evaluated on [`PauliDecomposition::reversed_axis`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GroverError, Result};
use crate::linalg::{self, DensityMatrix2, Mat2, Unitary2};
use crate::oracle;
use crate::types::{check_coherence, check_marked_fraction, overlap, PhaseConfig, SearchInstance};

/// Below this `|sin φ|` the axis is undefined and callers fall back to the
/// matrix-power oracle.
pub const EPS_DEGENERATE: f64 = 1e-9;

fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Selective phase shift of the marked state, `U(α) = diag(1, e^{iα})`.
pub fn oracle_phase(alpha: f64) -> Unitary2 {
    let zero = Complex64::new(0.0, 0.0);
    Unitary2([[Complex64::new(1.0, 0.0), zero], [zero, cis(alpha)]])
}

/// Phase shift about the uniform state, `V(β) = e^{iβ} I + (1 − e^{iβ}) |ψ⟩⟨ψ|`.
pub fn diffuser_phase(beta: f64, lambda: f64) -> Result<Unitary2> {
    let lambda = check_marked_fraction(lambda)?;
    let psi = [(1.0 - lambda).sqrt(), lambda.sqrt()];
    let shift = cis(beta);
    let weight = Complex64::new(1.0, 0.0) - shift;
    let mut v: Mat2 = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in v.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = weight * (psi[i] * psi[j]);
            if i == j {
                *cell += shift;
            }
        }
    }
    Ok(Unitary2(v))
}

/// One generalized Grover iteration `G = V(β) · U(α)` in the (|R⟩, |T⟩) basis.
pub fn build_g(phases: PhaseConfig, lambda: f64) -> Result<Unitary2> {
    let v = diffuser_phase(phases.beta(), lambda)?;
    Ok(v.compose(&oracle_phase(phases.alpha())))
}

/// Initial register state
/// `ρ₀ = (1−λ)|R⟩⟨R| + λ|T⟩⟨T| + ξ√(λ(1−λ)) (|R⟩⟨T| + |T⟩⟨R|)`.
pub fn build_initial_density(lambda: f64, xi: f64) -> Result<DensityMatrix2> {
    let lambda = check_marked_fraction(lambda)?;
    let xi = check_coherence(xi)?;
    let off = Complex64::new(xi * overlap(lambda), 0.0);
    Ok(DensityMatrix2([
        [Complex64::new(1.0 - lambda, 0.0), off],
        [off, Complex64::new(lambda, 0.0)],
    ]))
}

/// `G = e^{iδ}(cos φ I − i sin φ n̂·σ)` with `φ ∈ (0, π)` and unit `n̂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliDecomposition {
    pub delta: f64,
    pub phi: f64,
    pub axis: [f64; 3],
}

impl PauliDecomposition {
    pub fn n1(&self) -> f64 {
        self.axis[0]
    }

    pub fn n2(&self) -> f64 {
        self.axis[1]
    }

    pub fn n3(&self) -> f64 {
        self.axis[2]
    }

    /// The axis for the `e^{+iφ m̂·σ}` rotation sense, `m̂ = −n̂`.
    pub fn reversed_axis(&self) -> [f64; 3] {
        self.axis.map(|n| -n)
    }

    pub fn reconstruct(&self) -> Unitary2 {
        reconstruct(self.delta, self.phi, self.axis)
    }
}

fn reconstruct(delta: f64, phi: f64, axis: [f64; 3]) -> Unitary2 {
    let (s, c) = phi.sin_cos();
    let mut generator = linalg::scale(&linalg::PAULI_X, Complex64::new(axis[0], 0.0));
    generator = linalg::add(
        &generator,
        &linalg::scale(&linalg::PAULI_Y, Complex64::new(axis[1], 0.0)),
    );
    generator = linalg::add(
        &generator,
        &linalg::scale(&linalg::PAULI_Z, Complex64::new(axis[2], 0.0)),
    );
    let rotation = linalg::add(
        &linalg::scale(&linalg::IDENTITY, Complex64::new(c, 0.0)),
        &linalg::scale(&generator, Complex64::new(0.0, -s)),
    );
    Unitary2(linalg::scale(&rotation, cis(delta)))
}

/// Global phase, rotation angle and axis of `G(α, β)` at marked fraction `λ`.
///
/// `sin φ · m̂` comes straight from the closed-form axis numerators; `φ` is
/// recovered as `atan2(|sin φ · m̂|, cos φ)`, which stays accurate when
/// `sin φ` is tiny. The sign of the returned axis is whichever of `±m̂`
/// reproduces [`build_g`].
pub fn pauli_decompose(phases: PhaseConfig, lambda: f64) -> Result<PauliDecomposition> {
    let lambda = check_marked_fraction(lambda)?;
    let (alpha, beta) = (phases.alpha(), phases.beta());
    let delta = 0.5 * (alpha + beta);
    let (sa, ca) = (0.5 * alpha).sin_cos();
    let sb = (0.5 * beta).sin();
    let q = overlap(lambda);

    let cos_phi = delta.cos() + 2.0 * lambda * sb * sa;
    let scaled = [
        -2.0 * q * ca * sb,
        2.0 * q * sa * sb,
        -delta.sin() + 2.0 * lambda * sb * ca,
    ];
    let sin_phi = scaled.iter().map(|v| v * v).sum::<f64>().sqrt();
    if sin_phi <= EPS_DEGENERATE {
        return Err(GroverError::DegenerateRotation(sin_phi));
    }
    let phi = sin_phi.atan2(cos_phi);
    let textbook = scaled.map(|v| v / sin_phi);

    let g = build_g(phases, lambda)?;
    let residual =
        |axis: [f64; 3]| linalg::max_abs_diff(reconstruct(delta, phi, axis).matrix(), g.matrix());
    let flipped = textbook.map(|v| -v);
    let axis = if residual(flipped) <= residual(textbook) {
        flipped
    } else {
        textbook
    };
    Ok(PauliDecomposition { delta, phi, axis })
}

/// Rotation-dependent pieces shared by the probability and coherence forms.
struct Evolution {
    /// `sin²(mφ)`
    s2: f64,
    /// `sin(mφ) cos(mφ)`
    sc: f64,
    m: [f64; 3],
}

impl Evolution {
    fn new(d: &PauliDecomposition, iterations: u64) -> Self {
        let (s, c) = (iterations as f64 * d.phi).sin_cos();
        Self {
            s2: s * s,
            sc: s * c,
            m: d.reversed_axis(),
        }
    }
}

/// Marked-state population `⟨T|G^m ρ₀ (G†)^m|T⟩`:
///
/// ```text
/// P = λ + sin²(mφ)(1 − m₃²)(1 − 2λ)
///       − 2ξ√(λ(1−λ)) [sin²(mφ) m₁m₃ + sin(mφ)cos(mφ) m₂]
/// ```
///
/// The `sin(mφ)cos(mφ)` factor replaces `sin²(mφ)cot(mφ)` so the expression
/// stays finite at `mφ = kπ`. Degenerate rotations use the oracle.
pub fn success_probability(inst: SearchInstance, phases: PhaseConfig) -> Result<f64> {
    let lambda = inst.lambda();
    if inst.iterations() == 0 {
        return Ok(lambda);
    }
    let d = match pauli_decompose(phases, lambda) {
        Ok(d) => d,
        Err(GroverError::DegenerateRotation(_)) => {
            return oracle::oracle_success_probability(inst, phases)
        }
        Err(e) => return Err(e),
    };
    let ev = Evolution::new(&d, inst.iterations());
    let [m1, m2, m3] = ev.m;
    let coherent = inst.xi() * inst.overlap();
    Ok(lambda + ev.s2 * (1.0 - m3 * m3) * (1.0 - 2.0 * lambda)
        - 2.0 * coherent * (ev.s2 * m1 * m3 + ev.sc * m2))
}

/// Success probability from the fully dephased start (`ξ = 0`):
/// `λ + sin²(mφ)[1 − m₃² − 2λ(1 − m₃²)]`.
pub fn dephased_success_probability(
    lambda: f64,
    phases: PhaseConfig,
    iterations: u64,
) -> Result<f64> {
    let lambda = check_marked_fraction(lambda)?;
    if iterations == 0 {
        return Ok(lambda);
    }
    match pauli_decompose(phases, lambda) {
        Ok(d) => {
            let ev = Evolution::new(&d, iterations);
            let m3 = ev.m[2];
            Ok(lambda + ev.s2 * (1.0 - m3 * m3 - 2.0 * lambda * (1.0 - m3 * m3)))
        }
        Err(GroverError::DegenerateRotation(_)) => oracle::oracle_success_probability(
            SearchInstance::new(lambda, 0.0, iterations)?,
            phases,
        ),
        Err(e) => Err(e),
    }
}

/// Single-iteration success probability at `α = −β = π/2`: `4λ³ − 8λ² + 5λ`.
pub fn li_li_polynomial(lambda: f64) -> Result<f64> {
    let lambda = check_marked_fraction(lambda)?;
    Ok(lambda * (5.0 + lambda * (-8.0 + 4.0 * lambda)))
}

/// Normalized coherence `C = ⟨T|ρ_m|R⟩ / ⟨T|ρ₀|R⟩`.
///
/// With `x = ξ√(λ(1−λ))`:
///
/// ```text
/// Re C = 1 + [sin²(mφ)(m₁m₃(1−2λ) − 2x(1−m₁²)) + sin(mφ)cos(mφ) m₂(2λ−1)] / x
/// Im C = −[sin²(mφ)(m₂m₃(2λ−1) − 2x m₁m₂) + sin(mφ)cos(mφ)(m₁(2λ−1) + 2x m₃)] / x
/// ```
///
/// The bracket in `Im C` is the imaginary part of `⟨R|ρ_m|T⟩ / ⟨R|ρ₀|T⟩`;
/// the two ratios are complex conjugates.
pub fn coherence_ratio(inst: SearchInstance, phases: PhaseConfig) -> Result<Complex64> {
    let lambda = inst.lambda();
    let x = inst.xi() * inst.overlap();
    if x == 0.0 {
        return Err(GroverError::UndefinedCoherence);
    }
    if inst.iterations() == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let d = match pauli_decompose(phases, lambda) {
        Ok(d) => d,
        Err(GroverError::DegenerateRotation(_)) => {
            return oracle::oracle_coherence_ratio(inst, phases)
        }
        Err(e) => return Err(e),
    };
    let ev = Evolution::new(&d, inst.iterations());
    let [m1, m2, m3] = ev.m;
    let tilt = 2.0 * lambda - 1.0;
    let re = 1.0 + (ev.s2 * (-m1 * m3 * tilt - 2.0 * x * (1.0 - m1 * m1)) + ev.sc * m2 * tilt) / x;
    let im_rt =
        (ev.s2 * (m2 * m3 * tilt - 2.0 * x * m1 * m2) + ev.sc * (m1 * tilt + 2.0 * x * m3)) / x;
    Ok(Complex64::new(re, -im_rt))
}

/// Real-valued optimal iteration count of textbook Grover search,
/// `π/(2θ) − 1/2` with `θ = 2 arcsin√λ`.
///
/// Evaluated as `arccos√λ / (2 arcsin√λ)`, the same quantity without the
/// cancellation in the subtraction (λ = 1/4 gives exactly 1).
pub fn grover_optimal_iterations(lambda: f64) -> Result<f64> {
    let lambda = check_marked_fraction(lambda)?;
    if lambda == 0.0 {
        return Err(GroverError::NoMarkedStates);
    }
    let root = lambda.sqrt();
    Ok(root.acos() / (2.0 * root.asin()))
}

/// [`grover_optimal_iterations`] rounded half-up and floored at zero.
///
/// Values within `1e-12` below a half-integer round up, so `λ = 1/2`
/// (exactly `0.5` in real arithmetic) gives 1.
pub fn grover_optimal_iterations_rounded(lambda: f64) -> Result<u64> {
    let k = grover_optimal_iterations(lambda)?;
    Ok((k + 0.5 + 1e-12).floor().max(0.0) as u64)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::linalg::{max_abs_diff, R, T};

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn standard_phases_give_textbook_rotation() {
        // At α = β = π, G = D·O is exactly the real rotation by θ = 2 arcsin√λ.
        for lambda in [0.1, 0.25, 0.5, 0.9] {
            let g = build_g(PhaseConfig::standard(), lambda).unwrap();
            let theta = 2.0 * f64::sqrt(lambda).asin();
            let (s, c) = theta.sin_cos();
            let rot: Mat2 = [
                [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
            ];
            assert!(max_abs_diff(g.matrix(), &rot) < 1e-15, "lambda = {lambda}");
        }
    }

    #[test]
    fn zero_phases_give_identity() {
        let g = build_g(PhaseConfig::new(0.0, 0.0).unwrap(), 0.3).unwrap();
        assert!(max_abs_diff(g.matrix(), &linalg::IDENTITY) < 1e-15);
        assert_eq!(
            pauli_decompose(PhaseConfig::new(0.0, 0.0).unwrap(), 0.3),
            Err(GroverError::DegenerateRotation(0.0))
        );
    }

    #[test]
    fn determinant_is_total_phase() {
        let p = PhaseConfig::new(0.7, -2.1).unwrap();
        let g = build_g(p, 0.42).unwrap();
        assert!((g.det() - cis(0.7 - 2.1)).norm() < 1e-14);
        assert!(g.unitarity_defect() < 1e-14);
    }

    #[test]
    fn build_g_rejects_bad_lambda() {
        assert_eq!(
            build_g(PhaseConfig::standard(), -0.1),
            Err(GroverError::MarkedFraction(-0.1))
        );
    }

    #[test]
    fn initial_density_examples() {
        let rho = build_initial_density(0.5, 0.0).unwrap();
        assert_eq!(rho[(R, R)].re, 0.5);
        assert_eq!(rho[(T, T)].re, 0.5);
        assert_eq!(rho[(R, T)].norm(), 0.0);

        let rho = build_initial_density(0.25, 1.0).unwrap();
        close(rho[(R, R)].re, 0.75, 1e-15);
        close(rho[(R, T)].re, 3f64.sqrt() / 4.0, 1e-15);
        close(rho[(T, R)].re, 3f64.sqrt() / 4.0, 1e-15);
        close(rho.purity(), 1.0, 1e-15);
        close(rho.eigenvalues()[0], 0.0, 1e-15);

        for xi in [-1.0, 0.0, 0.4, 1.0] {
            let rho = build_initial_density(0.0, xi).unwrap();
            assert_eq!(rho[(R, R)].re, 1.0);
            assert_eq!(rho[(T, T)].re, 0.0);
            assert_eq!(rho[(R, T)].norm(), 0.0);
        }
        assert!(build_initial_density(0.5, 1.5).is_err());
        assert!(build_initial_density(1.01, 0.0).is_err());
    }

    #[test]
    fn pure_start_is_uniform_projector() {
        let lambda: f64 = 0.37;
        let rho = build_initial_density(lambda, 1.0).unwrap();
        let psi = [(1.0 - lambda).sqrt(), lambda.sqrt()];
        for i in 0..2 {
            for j in 0..2 {
                close(rho[(i, j)].re, psi[i] * psi[j], 1e-15);
            }
        }
    }

    #[test]
    fn standard_phase_decomposition() {
        for lambda in [0.1, 0.3, 0.5, 0.8] {
            let d = pauli_decompose(PhaseConfig::standard(), lambda).unwrap();
            close(d.phi, (2.0 * lambda - 1.0).acos(), 1e-13);
            close(d.n1(), 0.0, 1e-15);
            close(d.n2().abs(), 1.0, 1e-13);
            close(d.n3(), 0.0, 1e-13);
            assert!(
                max_abs_diff(
                    d.reconstruct().matrix(),
                    build_g(PhaseConfig::standard(), lambda).unwrap().matrix()
                ) < 1e-13
            );
        }
    }

    #[test]
    fn zero_oracle_phase_decomposition() {
        let lambda: f64 = 0.3;
        for beta in [0.4, -1.2, 2.9] {
            let d = pauli_decompose(PhaseConfig::new(0.0, beta).unwrap(), lambda).unwrap();
            close(d.phi.cos(), (0.5 * beta).cos(), 1e-14);
            // n₁ = −2√(λ(1−λ)) sin(β/2)/sin φ in the textbook sense; stored axis is reversed.
            let expected =
                -2.0 * (lambda * (1.0 - lambda)).sqrt() * (0.5 * beta).sin() / d.phi.sin();
            close(-d.n1(), expected, 1e-13);
            close(d.n2(), 0.0, 1e-15);
        }
    }

    #[test]
    fn li_li_point() {
        let inst = SearchInstance::new(1.0 / 3.0, 1.0, 1).unwrap();
        let p = success_probability(inst, PhaseConfig::matched(PI / 2.0).unwrap()).unwrap();
        close(p, 25.0 / 27.0, 1e-12);
        close(li_li_polynomial(1.0 / 3.0).unwrap(), 25.0 / 27.0, 1e-15);
        assert_eq!(li_li_polynomial(0.0).unwrap(), 0.0);
        assert_eq!(li_li_polynomial(1.0).unwrap(), 1.0);
        assert!(li_li_polynomial(1.2).is_err());
    }

    #[test]
    fn fully_marked_database_always_succeeds() {
        for (alpha, beta) in [(0.3, 1.1), (PI, PI), (-2.0, 0.5)] {
            for m in [0, 1, 4, 17] {
                for xi in [-1.0, 0.0, 1.0] {
                    let inst = SearchInstance::new(1.0, xi, m).unwrap();
                    let p =
                        success_probability(inst, PhaseConfig::new(alpha, beta).unwrap()).unwrap();
                    close(p, 1.0, 1e-12);
                }
            }
        }
    }

    #[test]
    fn quarter_marked_single_grover_step() {
        let inst = SearchInstance::new(0.25, 1.0, 1).unwrap();
        close(
            success_probability(inst, PhaseConfig::standard()).unwrap(),
            1.0,
            1e-14,
        );
    }

    #[test]
    fn exact_success_near_reference_root() {
        let inst = SearchInstance::new(0.2965, 1.0, 3).unwrap();
        let p = success_probability(inst, PhaseConfig::matched(0.268 * PI).unwrap()).unwrap();
        close(p, 1.0, 1e-3);
    }

    #[test]
    fn zero_iterations_return_lambda_exactly() {
        let inst = SearchInstance::new(0.123, 0.7, 0).unwrap();
        assert_eq!(
            success_probability(inst, PhaseConfig::new(1.0, 2.0).unwrap()).unwrap(),
            0.123
        );
    }

    #[test]
    fn coherence_ratio_edge_cases() {
        let p = PhaseConfig::new(0.4, -0.9).unwrap();
        assert_eq!(
            coherence_ratio(SearchInstance::new(0.3, 0.0, 2).unwrap(), p),
            Err(GroverError::UndefinedCoherence)
        );
        assert_eq!(
            coherence_ratio(SearchInstance::new(0.0, 1.0, 2).unwrap(), p),
            Err(GroverError::UndefinedCoherence)
        );
        assert_eq!(
            coherence_ratio(SearchInstance::new(1.0, 1.0, 2).unwrap(), p),
            Err(GroverError::UndefinedCoherence)
        );
        assert_eq!(
            coherence_ratio(SearchInstance::new(0.3, 0.5, 0).unwrap(), p).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn coherence_ratio_matches_oracle_examples() {
        for (lambda, xi, alpha, beta, m) in
            [(0.25, 1.0, PI, PI, 1), (0.2, 0.5, PI / 2.0, -PI / 2.0, 2)]
        {
            let inst = SearchInstance::new(lambda, xi, m).unwrap();
            let p = PhaseConfig::new(alpha, beta).unwrap();
            let closed = coherence_ratio(inst, p).unwrap();
            let brute = oracle::oracle_coherence_ratio(inst, p).unwrap();
            assert!((closed - brute).norm() < 1e-12, "{closed} vs {brute}");
        }
    }

    #[test]
    fn optimal_iterations() {
        assert_eq!(grover_optimal_iterations(0.25).unwrap(), 1.0);
        assert_eq!(grover_optimal_iterations(1.0).unwrap(), 0.0);
        close(grover_optimal_iterations(0.5).unwrap(), 0.5, 1e-15);
        assert_eq!(grover_optimal_iterations_rounded(0.5).unwrap(), 1);
        assert_eq!(grover_optimal_iterations_rounded(1.0).unwrap(), 0);
        assert_eq!(grover_optimal_iterations_rounded(1.0 / 1024.0).unwrap(), 25);
        assert_eq!(
            grover_optimal_iterations(0.0),
            Err(GroverError::NoMarkedStates)
        );
    }
}
