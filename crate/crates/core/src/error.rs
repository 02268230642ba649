use thiserror::Error;

pub type Result<T, E = GroverError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroverError {
    #[error("marked fraction {0} outside [0, 1]")]
    MarkedFraction(f64),

    #[error("coherence parameter {0} outside [-1, 1]")]
    Coherence(f64),

    #[error("angle {0} is not finite")]
    NonFiniteAngle(f64),

    /// `|sin φ|` fell below [`crate::EPS_DEGENERATE`]: G is a pure phase and has no rotation axis.
    #[error("degenerate rotation: |sin phi| = {0:e}, no axis defined")]
    DegenerateRotation(f64),

    #[error("coherence ratio undefined: xi * sqrt(lambda (1 - lambda)) vanishes")]
    UndefinedCoherence,

    #[error("optimal iteration count undefined for lambda = 0")]
    NoMarkedStates,

    #[error("register of {0} qubits exceeds the limit of {max}", max = crate::oracle::MAX_QUBITS)]
    RegisterTooLarge(usize),

    #[error("invalid marked set: {0}")]
    MarkedSet(String),

    #[error("full-register simulation supports xi = 0 or xi = 1 only, got {0}")]
    UnsupportedCoherence(f64),

    #[error("no feasible lambda range: success probability stays below {threshold} at lambda = 1")]
    NoFeasibleRange { threshold: f64 },

    #[error("invalid scan configuration: {0}")]
    ScanConfig(String),

    #[error("reference probability {0:e} too small to form a ratio")]
    VanishingProbability(f64),
}
