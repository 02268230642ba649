//! Exact success probability and coherence dynamics of Grover search with
//! a generic oracle phase `α` and diffuser phase `β`.
//!
//! * [`closed_form`]: operator construction, SU(2) decomposition and the
//!   closed-form success probability and coherence ratio.
//! * [`oracle`]: brute-force 2×2 density-matrix evolution and a full
//!   statevector simulator used to check the closed forms.
//! * [`scanner`]: searches over the `β = −α` family for λ lower bounds,
//!   optimal phases and exact-success points.
//! * [`validation`]: the self-check suite behind `grover-exact validate`.

pub mod closed_form;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod scanner;
pub mod types;
pub mod validation;

pub use closed_form::{
    build_g, build_initial_density, coherence_ratio, dephased_success_probability,
    grover_optimal_iterations, grover_optimal_iterations_rounded, li_li_polynomial,
    pauli_decompose, success_probability, PauliDecomposition, EPS_DEGENERATE,
};
pub use error::{GroverError, Result};
pub use linalg::{DensityMatrix2, Unitary2};
pub use types::{PhaseConfig, SearchInstance};
