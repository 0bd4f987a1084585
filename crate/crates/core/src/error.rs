use thiserror::Error;

/// Errors raised by the potentials, quadrature, root finding and eigensolver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An angle was outside the open interval (0, π).
    #[error("theta = {theta} is outside the open interval (0, pi)")]
    AngleOutOfDomain { theta: f64 },

    /// `sin(theta)` underflowed so the inverse transform cannot divide by it.
    #[error("sin(theta) underflowed to zero at theta = {theta}")]
    SinUnderflow { theta: f64 },

    /// A quantum number violated its precondition.
    #[error("invalid quantum number: {0}")]
    InvalidQuantumNumber(String),

    /// The classical momentum has no real zero pair, so there is no allowed region.
    #[error("no classical region: {0}")]
    NoClassicalRegion(String),

    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("quadrature needs at least {min} nodes, got {got}")]
    TooFewNodes { got: usize, min: usize },

    /// The integrand of a square-root well was negative at a node.
    #[error("integrand negative ({value:e}) at theta = {theta}; wrong bracket?")]
    NegativeIntegrand { theta: f64, value: f64 },

    #[error("root not bracketed on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    RootNotBracketed {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error(
        "root finder stopped after {iterations} iterations at x = {x} with residual {residual:e}"
    )]
    NoConvergence {
        x: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Sturm bisection could not isolate the eigenvalue with the given index.
    #[error("eigenvalue {index} did not converge")]
    EigenNonConvergence { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
