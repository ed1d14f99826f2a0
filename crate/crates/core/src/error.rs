use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Every numerical routine reports failure through one of these variants
/// instead of letting a NaN or infinity escape.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("order {order} exceeds the supported ceiling {ceiling}")]
    OverflowCeiling { order: usize, ceiling: usize },

    #[error("result overflowed double precision in {what}")]
    Overflow { what: &'static str },

    #[error("gamma function pole at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(f64),

    #[error("series did not converge within {terms} terms (|z| = {abs_z})")]
    SeriesDivergence { terms: usize, abs_z: f64 },

    #[error("parameter pole: {0}")]
    ParameterPole(String),

    #[error("argument lies on the branch cut (negative real axis): z = {0}")]
    BranchCutEvaluation(f64),

    #[error("quadrature did not converge: {0}")]
    NonconvergentQuadrature(String),

    #[error("wavefunction does not decay at the domain edge (|psi| = {edge:e} > {tol:e})")]
    BoundaryDecayViolation { edge: f64, tol: f64 },

    #[error("imaginary part {max_imag:e} of the Wigner integrand exceeds {tol:e}")]
    NonHermitianResult { max_imag: f64, tol: f64 },

    #[error("grid metadata mismatch: {0}")]
    GridMismatch(String),

    #[error("stencil needs {needed} cells per side but the grid only has {available}")]
    StencilOutOfBounds { needed: usize, available: usize },

    #[error("time step violates the CFL bound: courant number {courant:.3} > {limit:.3}")]
    CflViolation { courant: f64, limit: f64 },

    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("truncation heuristic violated: {0}")]
    TruncationWarning(String),

    #[error("matrix is not a valid density matrix: {0}")]
    NonHermitianDensity(String),

    #[error("conjugated operator is outside the Wigner-operator family: {0}")]
    ParameterExtractionFailure(String),

    #[error("cosh overflow guard: |r| = {0} must be < 10")]
    OverflowGuard(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
