use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InceError {
    #[error("photon energy must be positive, got {0} eV")]
    NonPositivePhotonEnergy(f64),
    #[error("intensity must be non-negative, got {0} W/cm^2")]
    NegativeIntensity(f64),
    #[error("plasma specification must be positive, got {0}")]
    NonPositivePlasma(f64),
    #[error(
        "wave does not propagate: plasmon energy {plasmon_ev} eV must be below photon energy {photon_ev} eV"
    )]
    NotPropagating { plasmon_ev: f64, photon_ev: f64 },
    #[error("coupling parameter a must be finite and non-negative, got {0}")]
    InvalidCoupling(f64),
    #[error("{family} requires n >= {min}, got n = {n}")]
    DegreeTooSmall { family: &'static str, n: usize, min: usize },
    #[error("q = {q} has the wrong parity for {family}")]
    ParityMismatch { family: &'static str, q: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("off-diagonal product at row {row} is negative ({product}); spectrum is not guaranteed real")]
    NegativeProduct { row: usize, product: f64 },
    #[error("band lengths inconsistent with matrix size {size}")]
    BandLength { size: usize },
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("inverse iteration failed to converge for eigenvalue {0}")]
    NoConvergence(f64),
    #[error("solutions passed together must share family, n and a")]
    MixedSolutions,
    #[error("Whittaker-Hill reduction needs a medium with k_p > 0")]
    Vacuum,
    #[error("lightlike degeneracy: k.p = 0")]
    LightlikeMomentum,
    #[error("state is evanescent; unbounded evaluation is not admissible")]
    Evanescent,
    #[error("state is a gap state (imaginary p_xi)")]
    GapState,
    #[error("solution (a = {sol_a}, q = {sol_q}) does not match momentum state (a = {state_a}, q = {state_q})")]
    StateMismatch { sol_a: f64, sol_q: usize, state_a: f64, state_q: usize },
    #[error("negative Bessel argument {0}")]
    NegativeArgument(f64),
}

pub type Result<T> = std::result::Result<T, InceError>;
