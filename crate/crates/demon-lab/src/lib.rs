//! demon-lab: an exact simulator and verification engine for a small quantum
//! system under iterative measurement and feedback coupled to a labeled-Kraus
//! heat bath.
//!
//! The crate enumerates the full conditional-state history tree of a
//! measurement/feedback protocol, evaluates the thermodynamic and
//! information-flow quantities attached to it (entropy production, heat,
//! QC-transfer entropy, transfer entropy, the k-th-order feedback information
//! and its backward counterpart), unravels the dynamics into fine and coarse
//! trajectory ensembles, and verifies the generalized second laws and
//! fluctuation theorems that tie all of these together — exactly, by chain
//! contraction, not by sampling.
//!
//! Modules:
//! - [`qmath`]: dense complex linear algebra, entropies, Holevo information.
//! - [`channels`]: readout POVMs, feedback policies, bath channels, classical
//!   embeddings, thermal-operation validation.
//! - [`ensemble`]: exact history-tree evolution and ensemble-level ledgers.
//! - [`trajectory`]: fine/coarse unravelings, trajectory probabilities,
//!   stochastic records, exact fluctuation-theorem enumeration, experiment
//!   sampling, the experiment–numerics hybrid estimator, and the inverse
//!   process with detailed-FT / absolute-irreversibility checks.
//! - [`classical`]: fully classical dynamics, transfer entropy, backward
//!   transfer entropy, and the quantum-classical reduction checks.
//! - [`config`]: TOML configuration, named presets, validation.
//! - [`report`]: CSV/JSON serialization and run manifests.
//! - [`run`]: orchestration used by the `demon-lab` binary.
//!
//! See the crate examples for one runnable entry point per capability.

pub mod channels;
pub mod classical;
pub mod config;
pub mod ensemble;
pub mod qmath;
pub mod report;
pub mod run;
pub mod trajectory;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix or distribution failed a structural invariant.
    #[error("validation: {0}")]
    Validation(String),

    /// Configuration file or preset problem.
    #[error("config: {0}")]
    Config(String),

    /// Requested enumeration exceeds the configured cap.
    #[error("enumeration cap exceeded: {detail}")]
    CapExceeded { detail: String },

    /// Ratio estimators with empty denominators.
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    /// A forward conditional probability vanished where a stochastic
    /// quantity needs its logarithm.
    #[error(
        "zero-probability conditional at cycle {cycle} (outcome {outcome}, window {window:?}): {condition}"
    )]
    ZeroConditional {
        cycle: usize,
        outcome: usize,
        window: Vec<usize>,
        condition: String,
    },

    /// The inverse-process sufficient conditions are violated.
    #[error("sufficient condition violated at {0} branch(es); first: cycle {1}, outcome {2}, window {3:?}")]
    SufficientCondition(usize, usize, usize, Vec<usize>),

    /// A configuration passed to the classical pipeline is not fully classical.
    #[error("not fully classical: {0}")]
    NotClassical(String),

    /// Mismatched unraveling mode or order for the requested operation.
    #[error("unraveling mismatch: {0}")]
    UnravelingMismatch(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
