//! Observable consequences of in-medium boson mass shifts.
//!
//! A scalar field whose mass is shifted from `m0` to `m_star` inside a hot
//! medium is diagonalized by quanta that differ from the vacuum quanta by a
//! two-mode Bogoliubov (squeezing) transformation mixing `k` and `-k`. If the
//! medium quanta are thermalized and freeze out suddenly, the observed
//! vacuum quanta carry a modified single-particle spectrum and a
//! back-to-back correlation `C2(k, -k) > 1`, while the identical-momentum
//! intercept stays exactly 2.
//!
//! - [`squeeze`] evaluates every per-mode quantity in closed form.
//! - [`oracle`] re-derives the same observables independently, by an exact
//!   trace over a truncated two-mode Fock space and by Monte Carlo sampling
//!   of the Glauber-Sudarshan P-function.
//! - [`scan`] produces momentum curves and holds the species presets.
//! - [`cli`] is the command-line front end (`scan` and `verify`).
//!
//! Units are MeV throughout with `hbar = c = k_B = 1`.

// negated comparisons are how NaN gets rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
mod error;
pub mod oracle;
pub mod scan;
pub mod squeeze;

pub use error::{Error, Result};
pub use oracle::{
    fock_observables, p_representation_mc, McConfig, McEstimate, McResult, OracleResult,
    TruncationConfig,
};
pub use scan::{preset, run_scan, species_presets, Curve, Grid, ScanRequest};
pub use squeeze::{
    c2_back_to_back, c2_identical, correlation_point, diagonalization_residual, dispersion,
    spectrum, squeeze_parameter, thermal_occupancy, CorrelationPoint, Diagonalization,
    MediumParams, ModeCoefficients, SpeciesParams,
};
