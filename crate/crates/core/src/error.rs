use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("a POVM needs at least one effect")]
    NoEffects,

    #[error("effect {outcome} is not Hermitian (max |A - A*| = {violation:e})")]
    NotHermitian { outcome: usize, violation: f64 },

    #[error("effect {outcome} is not positive (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { outcome: usize, min_eigenvalue: f64 },

    #[error("effects do not sum to the identity (max deviation {deviation:e})")]
    NotNormalized { deviation: f64 },

    #[error("eigen/singular value decomposition failed: {0}")]
    DecompositionFailure(String),

    #[error("sum of the effects is singular (min eigenvalue {min_eigenvalue:e})")]
    SingularSum { min_eigenvalue: f64 },

    #[error("kernel vector yields a vanishing perturbation")]
    DegenerateKernel,

    #[error("no perturbation scale keeps both mixing components positive")]
    NoFeasibleScale,

    #[error("the POVM is extreme; no mixing witness exists")]
    AlreadyExtreme,

    #[error("sum of squared ranks {squares} already equals d^2 = {limit}")]
    RankBudgetExhausted { squares: usize, limit: usize },

    #[error("outcome count {outcomes} outside [{min}, {max}]")]
    InvalidOutcomeCount {
        outcomes: usize,
        min: usize,
        max: usize,
    },

    #[error("outcome index {index} out of range for {outcomes} outcomes")]
    OutcomeIndex { index: usize, outcomes: usize },

    #[error("operation requires an extreme POVM")]
    NotExtreme,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("could not pad to an invertible sum within {attempts} rank-1 additions")]
    CannotComplete { attempts: usize },

    #[error("no rank-1 direction outside the operator span after {draws} draws")]
    SamplingFailed { draws: usize },

    #[error("bad partition: {0}")]
    BadPartition(String),

    #[error("brute-force oracle limited to d <= {limit}, got d = {dim}")]
    SizeGuard { dim: usize, limit: usize },

    #[error("formation has {phantoms} unmaterialized phantom boxes")]
    NotSymmetric { phantoms: usize },

    #[error("invalid formation: {0}")]
    InvalidFormation(String),

    #[error("extremality certification failed: {0}")]
    CertificationFailed(String),

    #[error("symmetric packing problem for {0} has no solution")]
    NoSymmetricSolution(String),

    #[error("random POVM missed the target ranks after {attempts} samples")]
    RankMiss { attempts: usize },

    #[error("derivation replay diverged: {0}")]
    ReplayMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
