use thiserror::Error;

use crate::oracle::McResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("momentum must be finite and non-negative, got {0} MeV")]
    InvalidMomentum(f64),

    #[error("mass must be finite and positive, got {0} MeV")]
    InvalidMass(f64),

    #[error("temperature must be finite and positive, got {0} MeV")]
    InvalidTemperature(f64),

    #[error("fractional mass shift must be finite and greater than -1, got {0}")]
    InvalidShift(f64),

    #[error("unknown species preset `{0}`")]
    UnknownSpecies(String),

    #[error("invalid scan grid: {0}")]
    InvalidGrid(String),

    #[error("at k = {k} MeV: {source}")]
    AtMomentum {
        k: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(
        "Fock cutoff n_max = {n_max} leaves tail bound {tail_bound:e} above tolerance {tolerance:e}; \
         minimal adequate n_max is {minimal}"
    )]
    TruncationTooCoarse {
        n_max: usize,
        tail_bound: f64,
        tolerance: f64,
        minimal: usize,
    },

    #[error("invalid Monte Carlo configuration: {0}")]
    InvalidMcConfig(String),

    #[error("thermal occupancy is zero; the P-function is undefined")]
    VanishingOccupancy,

    #[error(
        "Monte Carlo did not reach relative standard error {target:e} after {} samples",
        result.n_samples
    )]
    McNotConverged { result: Box<McResult>, target: f64 },
}

impl Error {
    pub(crate) fn at(self, k: f64) -> Self {
        Error::AtMomentum {
            k,
            source: Box::new(self),
        }
    }
}
