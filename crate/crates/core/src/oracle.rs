//! Brute-force references for the closed forms.
//!
//! Two independent routes: iterated 2×2 conjugation `ρ ← G ρ G†` in the
//! (|R⟩, |T⟩) basis, and a full 2^n-amplitude statevector run of the
//! oracle/diffuser circuit that never forms the two-dimensional reduction.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::closed_form::{build_g, build_initial_density};
use crate::error::{GroverError, Result};
use crate::linalg::{DensityMatrix2, Unitary2, R, T};
use crate::types::{PhaseConfig, SearchInstance};

/// Largest register the full simulator accepts.
pub const MAX_QUBITS: usize = 14;

/// `G^m ρ₀ (G†)^m` by `m` successive conjugations.
pub fn evolve_density(g: &Unitary2, rho0: &DensityMatrix2, iterations: u64) -> DensityMatrix2 {
    (0..iterations).fold(*rho0, |rho, _| g.conjugate(&rho))
}

fn evolve_instance(inst: SearchInstance, phases: PhaseConfig) -> Result<DensityMatrix2> {
    let g = build_g(phases, inst.lambda())?;
    let rho0 = build_initial_density(inst.lambda(), inst.xi())?;
    Ok(evolve_density(&g, &rho0, inst.iterations()))
}

/// `⟨T|ρ_m|T⟩` via [`evolve_density`].
pub fn oracle_success_probability(inst: SearchInstance, phases: PhaseConfig) -> Result<f64> {
    Ok(evolve_instance(inst, phases)?.marked_population())
}

/// `⟨T|ρ_m|R⟩ / ⟨T|ρ₀|R⟩` via [`evolve_density`].
pub fn oracle_coherence_ratio(inst: SearchInstance, phases: PhaseConfig) -> Result<Complex64> {
    let initial = inst.xi() * inst.overlap();
    if initial == 0.0 {
        return Err(GroverError::UndefinedCoherence);
    }
    Ok(evolve_instance(inst, phases)?[(T, R)] / initial)
}

/// An `n`-qubit statevector with a distinguished set of marked basis states.
#[derive(Debug, Clone)]
pub struct FullRegister {
    n: usize,
    amplitudes: Vec<Complex64>,
    marked: Vec<bool>,
    marked_count: usize,
}

impl FullRegister {
    /// `H^{⊗n}|0…0⟩`, prepared by applying a Hadamard to every qubit.
    pub fn uniform(n: usize, marked: &BTreeSet<usize>) -> Result<Self> {
        let mut reg = Self::zero(n, marked)?;
        for qubit in 0..n {
            reg.hadamard(qubit);
        }
        Ok(reg)
    }

    fn zero(n: usize, marked: &BTreeSet<usize>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(GroverError::RegisterTooLarge(n));
        }
        let dim = 1usize << n;
        if marked.is_empty() {
            return Err(GroverError::MarkedSet("empty".into()));
        }
        if let Some(&bad) = marked.iter().find(|&&x| x >= dim) {
            return Err(GroverError::MarkedSet(format!(
                "index {bad} out of range for {n} qubits"
            )));
        }
        let mut flags = vec![false; dim];
        for &x in marked {
            flags[x] = true;
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n,
            amplitudes,
            marked: flags,
            marked_count: marked.len(),
        })
    }

    /// Uniform superposition over the marked (`marked_side`) or unmarked states.
    fn block(n: usize, marked: &BTreeSet<usize>, marked_side: bool) -> Result<Self> {
        let mut reg = Self::zero(n, marked)?;
        let count = if marked_side {
            reg.marked_count
        } else {
            reg.dim() - reg.marked_count
        };
        let amp = Complex64::new(1.0 / (count as f64).sqrt(), 0.0);
        for (a, &m) in reg.amplitudes.iter_mut().zip(&reg.marked) {
            *a = if m == marked_side {
                amp
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        Ok(reg)
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `|M| / 2^n`.
    pub fn marked_fraction(&self) -> f64 {
        self.marked_count as f64 / self.dim() as f64
    }

    fn hadamard(&mut self, qubit: usize) {
        let stride = 1usize << qubit;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for base in (0..self.dim()).step_by(2 * stride) {
            for i in base..base + stride {
                let (a, b) = (self.amplitudes[i], self.amplitudes[i + stride]);
                self.amplitudes[i] = (a + b) * h;
                self.amplitudes[i + stride] = (a - b) * h;
            }
        }
    }

    /// Multiply every marked amplitude by `e^{iα}`.
    pub fn apply_oracle(&mut self, alpha: f64) {
        let shift = Complex64::from_polar(1.0, alpha);
        for (a, &m) in self.amplitudes.iter_mut().zip(&self.marked) {
            if m {
                *a *= shift;
            }
        }
    }

    /// `x ← e^{iβ}x + (1 − e^{iβ})⟨ψ|x⟩|ψ⟩` with |ψ⟩ the uniform state, as a
    /// rank-one update.
    pub fn apply_diffuser(&mut self, beta: f64) {
        let shift = Complex64::from_polar(1.0, beta);
        let mean = self.amplitudes.iter().sum::<Complex64>() / self.dim() as f64;
        let pull = (Complex64::new(1.0, 0.0) - shift) * mean;
        for a in &mut self.amplitudes {
            *a = shift * *a + pull;
        }
    }

    pub fn step(&mut self, phases: PhaseConfig) {
        self.apply_oracle(phases.alpha());
        self.apply_diffuser(phases.beta());
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Probability that a computational-basis measurement lands in the marked set.
    pub fn marked_probability(&self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&self.marked)
            .filter(|(_, &m)| m)
            .map(|(a, _)| a.norm_sqr())
            .sum()
    }
}

/// Marked-state probability after each of `0..=max_iterations` circuit steps.
///
/// `xi = 1` starts from `H^{⊗n}|0…0⟩`. `xi = 0` evolves the unmarked and
/// marked blocks separately and mixes their marked populations with weights
/// `(1 − λ, λ)`.
pub fn full_circuit_trajectory(
    n: usize,
    marked: &BTreeSet<usize>,
    phases: PhaseConfig,
    max_iterations: u64,
    xi: f64,
) -> Result<Vec<f64>> {
    let run = |mut reg: FullRegister| {
        let mut probs = Vec::with_capacity(max_iterations as usize + 1);
        probs.push(reg.marked_probability());
        for _ in 0..max_iterations {
            reg.step(phases);
            probs.push(reg.marked_probability());
        }
        probs
    };
    if xi == 1.0 {
        Ok(run(FullRegister::uniform(n, marked)?))
    } else if xi == 0.0 {
        let target = FullRegister::block(n, marked, true)?;
        let lambda = target.marked_fraction();
        let from_target = run(target);
        if lambda == 1.0 {
            return Ok(from_target);
        }
        let from_rest = run(FullRegister::block(n, marked, false)?);
        Ok(from_rest
            .iter()
            .zip(&from_target)
            .map(|(r, t)| (1.0 - lambda) * r + lambda * t)
            .collect())
    } else {
        Err(GroverError::UnsupportedCoherence(xi))
    }
}

/// Marked-state probability after `iterations` steps of the full circuit.
pub fn full_circuit_probability(
    n: usize,
    marked: &BTreeSet<usize>,
    phases: PhaseConfig,
    iterations: u64,
    xi: f64,
) -> Result<f64> {
    let trajectory = full_circuit_trajectory(n, marked, phases, iterations, xi)?;
    Ok(trajectory[iterations as usize])
}
