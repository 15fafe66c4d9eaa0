use thiserror::Error;

/// Errors raised by the numerical kernels and closed-form evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("energy {energy} sits on the pole E = va = {va}")]
    PoleAtVa { energy: f64, va: f64 },
    #[error("energy {0} is too close to zero")]
    ZeroEnergyPole(f64),
    #[error("wavenumber vanishes at energy {0}")]
    ZeroK(f64),
    #[error("energy {energy} is outside the open gap (-{m}, {m})")]
    GapEdge { energy: f64, m: f64 },
    #[error("band roots failed verification at k = {k} (residual {residual:e})")]
    DegenerateRoots { k: f64, residual: f64 },
    #[error("configuration is not on the flat-band set required by {0}")]
    PlaneMismatch(&'static str),
    #[error("solution energy {0} lies outside the gap")]
    OutOfDomainSolution(f64),
    #[error("discontinuity factor has a pole at energy {0}")]
    MuPole(f64),
    #[error("spectrum type {0} has no such asymptotic form")]
    TypeMismatch(String),
    #[error("parameters outside the validity window: {0}")]
    OutOfValidityWindow(String),
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("no bound state: {0}")]
    NoBoundState(String),
    #[error("no finite-l state within {radius} of the limit energy {target} at l = {l}")]
    BranchLost { l: f64, target: f64, radius: f64 },
    #[error("interior coefficient pole inside the integration at energy {0}")]
    SPole(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
