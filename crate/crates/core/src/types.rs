//! Parameter types shared by the closed forms, the oracles and the scanner.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{GroverError, Result};

/// Oracle phase `alpha` and diffuser phase `beta`, in radians.
///
/// Both angles are folded into `(-π, π]` on construction. Angles already in
/// that interval are kept bit-for-bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseConfig {
    alpha: f64,
    beta: f64,
}

impl PhaseConfig {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Ok(Self {
            alpha: canonical_angle(alpha)?,
            beta: canonical_angle(beta)?,
        })
    }

    /// The `beta = -alpha` phase-matching family.
    pub fn matched(alpha: f64) -> Result<Self> {
        Self::new(alpha, -alpha)
    }

    /// Textbook Grover search (`alpha = beta = π`).
    pub fn standard() -> Self {
        Self {
            alpha: PI,
            beta: PI,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

fn canonical_angle(angle: f64) -> Result<f64> {
    if !angle.is_finite() {
        return Err(GroverError::NonFiniteAngle(angle));
    }
    if angle > -PI && angle <= PI {
        return Ok(angle);
    }
    let folded = angle.rem_euclid(TAU);
    Ok(if folded > PI { folded - TAU } else { folded })
}

/// Marked fraction `lambda`, coherence parameter `xi` and iteration count `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchInstance {
    lambda: f64,
    xi: f64,
    iterations: u64,
}

impl SearchInstance {
    pub fn new(lambda: f64, xi: f64, iterations: u64) -> Result<Self> {
        Ok(Self {
            lambda: check_marked_fraction(lambda)?,
            xi: check_coherence(xi)?,
            iterations,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    /// `sqrt(lambda (1 - lambda))`, the overlap scale of the off-diagonal terms.
    pub(crate) fn overlap(&self) -> f64 {
        overlap(self.lambda)
    }
}

pub(crate) fn overlap(lambda: f64) -> f64 {
    (lambda * (1.0 - lambda)).sqrt()
}

pub(crate) fn check_marked_fraction(lambda: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(lambda)
    } else {
        Err(GroverError::MarkedFraction(lambda))
    }
}

pub(crate) fn check_coherence(xi: f64) -> Result<f64> {
    if (-1.0..=1.0).contains(&xi) {
        Ok(xi)
    } else {
        Err(GroverError::Coherence(xi))
    }
}
