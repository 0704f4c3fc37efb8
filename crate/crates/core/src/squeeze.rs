//! Closed-form per-mode quantities of the two-mode squeezed thermal state.
//!
//! The vacuum quanta `a` and the in-medium quanta `b` of momentum pair
//! `(k, -k)` are related by
//!
//! ```text
//! a_k  = cosh(r) b_k  + sinh(r) b_{-k}^+
//! a_-k = cosh(r) b_-k + sinh(r) b_k^+
//! r    = 0.5 ln(omega_k / Omega_k)
//! ```
//!
//! with `omega_k = sqrt(m0^2 + k^2)` and `Omega_k = sqrt(m_star^2 + k^2)`.
//! The `b` quanta are thermal with occupancy `n_k = 1 / (exp(Omega_k / T) - 1)`.
//!
//! All coefficients are real, so the complex conjugations that appear in the
//! general two-particle formula (`c*_k s_k n_k + ...`) are identities here.
//! The system is taken to be uniform, `n_k = n_-k` and `r_k = r_-k`, so every
//! function takes the momentum magnitude only.

use crate::{Error, Result};

/// Occupancies below this are flushed to zero.
pub const OCCUPANCY_FLOOR: f64 = 1e-300;

/// A boson species by its vacuum mass.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeciesParams {
    pub label: String,
    /// Vacuum mass, MeV.
    pub m0: f64,
}

impl SpeciesParams {
    pub fn new(label: impl Into<String>, m0: f64) -> Result<Self> {
        check_mass(m0)?;
        Ok(Self {
            label: label.into(),
            m0,
        })
    }
}

/// The frozen-out medium: in-medium mass and temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    /// In-medium mass, MeV.
    pub m_star: f64,
    /// Freeze-out temperature, MeV.
    pub temperature: f64,
}

impl MediumParams {
    pub fn new(m_star: f64, temperature: f64) -> Result<Self> {
        check_mass(m_star)?;
        check_temperature(temperature)?;
        Ok(Self {
            m_star,
            temperature,
        })
    }

    /// Medium with `m_star = m0 * (1 + fraction)`; `-0.10` is a 10 % decrease.
    pub fn from_shift_fraction(
        species: &SpeciesParams,
        fraction: f64,
        temperature: f64,
    ) -> Result<Self> {
        if !(fraction.is_finite() && fraction > -1.0) {
            return Err(Error::InvalidShift(fraction));
        }
        Self::new(species.m0 * (1.0 + fraction), temperature)
    }

    /// `delta M = m_star - m0`.
    pub fn mass_shift(&self, species: &SpeciesParams) -> f64 {
        self.m_star - species.m0
    }

    pub fn shift_fraction(&self, species: &SpeciesParams) -> f64 {
        self.mass_shift(species) / species.m0
    }
}

/// Everything known about one momentum mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoefficients {
    pub k: f64,
    /// Vacuum energy `sqrt(m0^2 + k^2)`.
    pub omega: f64,
    /// In-medium energy `sqrt(m_star^2 + k^2)`.
    pub capital_omega: f64,
    /// Squeeze parameter; positive for a mass decrease.
    pub r: f64,
    pub c: f64,
    pub s: f64,
    /// Thermal occupancy of the in-medium quanta.
    pub n: f64,
}

impl ModeCoefficients {
    /// `N1 = c^2 n + s^2 n + s^2`.
    pub fn spectrum(&self) -> f64 {
        let (c, s, n) = (self.c, self.s, self.n);
        c * c * n + s * s * n + s * s
    }

    /// Anomalous expectation `<a_k a_-k> = c s (2n + 1)`.
    pub fn pair_amplitude(&self) -> f64 {
        self.c * self.s * (2.0 * self.n + 1.0)
    }

    /// Connected back-to-back pair density `N1^2 (C2(k,-k) - 1) = |<a_k a_-k>|^2`.
    pub fn pair_excess(&self) -> f64 {
        let amp = self.pair_amplitude();
        amp * amp
    }

    pub fn c2_back_to_back(&self) -> f64 {
        let n1 = self.spectrum();
        if n1 == 0.0 {
            // empty mode: only reachable with no squeezing and no occupancy
            return 1.0;
        }
        let ratio = self.pair_amplitude() / n1;
        1.0 + ratio * ratio
    }

    pub fn correlation_point(&self) -> CorrelationPoint {
        CorrelationPoint {
            k: self.k,
            n1: self.spectrum(),
            c2_back_to_back: self.c2_back_to_back(),
            c2_identical: 2.0,
        }
    }
}

/// One sample of the observable curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationPoint {
    pub k: f64,
    pub n1: f64,
    pub c2_back_to_back: f64,
    pub c2_identical: f64,
}

fn check_momentum(k: f64) -> Result<()> {
    if k.is_finite() && k >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidMomentum(k))
    }
}

fn check_mass(m: f64) -> Result<()> {
    if m.is_finite() && m > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidMass(m))
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTemperature(t))
    }
}

/// Relativistic energy `sqrt(m^2 + k^2)`.
pub fn dispersion(k: f64, m: f64) -> Result<f64> {
    check_momentum(k)?;
    check_mass(m)?;
    Ok((m * m + k * k).sqrt())
}

/// Bose-Einstein occupancy at energy `energy` and temperature `t`.
///
/// Saturates to zero instead of overflowing; never returns NaN for finite
/// positive inputs.
fn bose_einstein(energy: f64, t: f64) -> f64 {
    let n = (energy / t).exp_m1().recip();
    if n < OCCUPANCY_FLOOR {
        0.0
    } else {
        n
    }
}

/// Occupancy of the in-medium quanta, `1 / (exp(Omega_k / T) - 1)`.
pub fn thermal_occupancy(k: f64, medium: &MediumParams) -> Result<f64> {
    check_temperature(medium.temperature)?;
    let energy = dispersion(k, medium.m_star)?;
    Ok(bose_einstein(energy, medium.temperature))
}

pub fn squeeze_parameter(
    k: f64,
    species: &SpeciesParams,
    medium: &MediumParams,
) -> Result<ModeCoefficients> {
    check_temperature(medium.temperature)?;
    let omega = dispersion(k, species.m0)?;
    let capital_omega = dispersion(k, medium.m_star)?;
    // 0.5 ln(omega / Omega) without the cancellation in omega / Omega - 1
    let (m0, m_star) = (species.m0, medium.m_star);
    let r = 0.25 * ((m0 - m_star) * (m0 + m_star) / (capital_omega * capital_omega)).ln_1p();
    Ok(ModeCoefficients {
        k,
        omega,
        capital_omega,
        r,
        c: r.cosh(),
        s: r.sinh(),
        n: bose_einstein(capital_omega, medium.temperature),
    })
}

/// Final-state single-particle spectrum `N1(k) = <a_k^+ a_k>`.
pub fn spectrum(k: f64, species: &SpeciesParams, medium: &MediumParams) -> Result<f64> {
    Ok(squeeze_parameter(k, species, medium)?.spectrum())
}

/// `C2(k, -k) = 1 + [c s (2n + 1)]^2 / N1^2`.
///
/// Exactly 1 without a mass shift. An empty mode (`N1 = 0`) is assigned 1.
pub fn c2_back_to_back(k: f64, species: &SpeciesParams, medium: &MediumParams) -> Result<f64> {
    Ok(squeeze_parameter(k, species, medium)?.c2_back_to_back())
}

/// `C2(k, k)`, which is 2 for every squeezed thermal state.
pub fn c2_identical(k: f64, species: &SpeciesParams, medium: &MediumParams) -> Result<f64> {
    squeeze_parameter(k, species, medium)?;
    Ok(2.0)
}

pub fn correlation_point(
    k: f64,
    species: &SpeciesParams,
    medium: &MediumParams,
) -> Result<CorrelationPoint> {
    Ok(squeeze_parameter(k, species, medium)?.correlation_point())
}

/// The in-medium Hamiltonian of one `(k, -k)` pair rewritten in `b` quanta.
///
/// In `a` quanta the pair block reads
///
/// ```text
/// H = A (a_k^+ a_k + a_-k^+ a_-k) + B (a_k a_-k + a_k^+ a_-k^+)
/// A = omega + (m_star^2 - m0^2) / (2 omega)
/// B = 2 * (m_star^2 - m0^2) / (4 omega)
/// ```
///
/// where `B` collects the anomalous term from both `k` and `-k` in the
/// momentum integral. After the Bogoliubov map the `b b` coefficient is
/// `A sinh(2r) + B cosh(2r)` and the `b^+ b` coefficient is
/// `A cosh(2r) + B sinh(2r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagonalization {
    /// Coefficient of `b_k^+ b_k` after the map.
    pub diagonal: f64,
    /// Coefficient of `b_k b_-k` (and of `b_k^+ b_-k^+`) after the map.
    pub anomalous: f64,
    pub capital_omega: f64,
}

impl Diagonalization {
    /// `|anomalous| / Omega_k`.
    pub fn residual(&self) -> f64 {
        self.anomalous.abs() / self.capital_omega
    }

    /// `|diagonal - Omega_k| / Omega_k`.
    pub fn diagonal_error(&self) -> f64 {
        (self.diagonal - self.capital_omega).abs() / self.capital_omega
    }
}

pub fn diagonalization_residual(
    k: f64,
    species: &SpeciesParams,
    medium: &MediumParams,
) -> Result<Diagonalization> {
    let mode = squeeze_parameter(k, species, medium)?;
    let delta = medium.m_star * medium.m_star - species.m0 * species.m0;
    let per_k = delta / (4.0 * mode.omega);
    let diag_a = mode.omega + 2.0 * per_k;
    let anom_a = 2.0 * per_k;

    let (c, s) = (mode.c, mode.s);
    let cosh2 = c * c + s * s;
    let sinh2 = 2.0 * c * s;
    Ok(Diagonalization {
        diagonal: diag_a * cosh2 + anom_a * sinh2,
        anomalous: diag_a * sinh2 + anom_a * cosh2,
        capital_omega: mode.capital_omega,
    })
}
