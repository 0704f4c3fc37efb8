//! Independent re-derivations of the closed-form observables.
//!
//! [`fock_observables`] traces the squeezed thermal state over a truncated
//! two-mode Fock space; [`p_representation_mc`] samples the Gaussian
//! P-function of the thermal state and averages coherent-state moments.
//! Neither calls into [`crate::squeeze`].

mod fock;
pub mod normal_order;
mod p_repr;

pub use fock::{
    boltzmann_ratio, fock_observables, minimal_n_max, tail_bound, OracleResult, TruncationConfig,
    TAIL_SAFETY_FACTOR,
};
pub use p_repr::{p_representation_mc, McConfig, McEstimate, McResult, MIN_SAMPLES};
