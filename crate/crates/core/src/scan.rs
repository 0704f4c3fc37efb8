//! Observable curves over momentum grids, and species presets.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::squeeze::{correlation_point, CorrelationPoint, MediumParams, SpeciesParams};
use crate::{Error, Result};

/// Charged pion mass in MeV (PDG value).
pub const PION_MASS: f64 = 139.57;
pub const KAON_MASS: f64 = 494.0;
pub const PHI_MASS: f64 = 1020.0;

pub fn species_presets() -> Vec<SpeciesParams> {
    [("pion", PION_MASS), ("kaon", KAON_MASS), ("phi", PHI_MASS)]
        .into_iter()
        .map(|(label, m0)| SpeciesParams {
            label: label.to_string(),
            m0,
        })
        .collect()
}

/// Looks up a preset by label, ignoring case.
pub fn preset(label: &str) -> Result<SpeciesParams> {
    species_presets()
        .into_iter()
        .find(|s| s.label.eq_ignore_ascii_case(label))
        .ok_or_else(|| Error::UnknownSpecies(label.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Grid {
    #[default]
    Linear,
    Logarithmic,
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grid::Linear => "linear",
            Grid::Logarithmic => "log",
        })
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "lin" => Ok(Grid::Linear),
            "log" | "logarithmic" => Ok(Grid::Logarithmic),
            other => Err(Error::InvalidGrid(format!("unknown grid kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRequest {
    pub species: SpeciesParams,
    pub medium: MediumParams,
    pub k_min: f64,
    pub k_max: f64,
    pub n_points: usize,
    pub grid: Grid,
}

impl ScanRequest {
    pub fn new(
        species: SpeciesParams,
        medium: MediumParams,
        k_min: f64,
        k_max: f64,
        n_points: usize,
        grid: Grid,
    ) -> Result<Self> {
        let req = Self {
            species,
            medium,
            k_min,
            k_max,
            n_points,
            grid,
        };
        req.validate()?;
        Ok(req)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k_min.is_finite() && self.k_max.is_finite()) {
            return Err(Error::InvalidGrid("momentum bounds must be finite".into()));
        }
        if !(0.0 <= self.k_min && self.k_min < self.k_max) {
            return Err(Error::InvalidGrid(format!(
                "need 0 <= k_min < k_max, got [{}, {}]",
                self.k_min, self.k_max
            )));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {}",
                self.n_points
            )));
        }
        if self.grid == Grid::Logarithmic && self.k_min == 0.0 {
            return Err(Error::InvalidGrid(
                "a logarithmic grid needs k_min > 0".into(),
            ));
        }
        Ok(())
    }

    /// Momentum abscissae. Point `i` depends only on `i / (n_points - 1)`, so
    /// a grid with `2 (n - 1) + 1` points contains this one exactly.
    pub fn abscissae(&self) -> Vec<f64> {
        let last = self.n_points - 1;
        let denom = last as f64;
        (0..self.n_points)
            .map(|i| {
                if i == last {
                    return self.k_max;
                }
                let t = i as f64;
                match self.grid {
                    Grid::Linear => self.k_min + (self.k_max - self.k_min) * t / denom,
                    Grid::Logarithmic => {
                        let (lo, hi) = (self.k_min.ln(), self.k_max.ln());
                        (lo + (hi - lo) * t / denom).exp()
                    }
                }
            })
            .collect()
    }
}

/// A scanned curve together with the request that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub request: ScanRequest,
    pub points: Vec<CorrelationPoint>,
}

/// Evaluates the closed-form observables on every grid point.
pub fn run_scan(req: &ScanRequest) -> Result<Curve> {
    req.validate()?;
    let points = req
        .abscissae()
        .into_par_iter()
        .map(|k| correlation_point(k, &req.species, &req.medium).map_err(|e| e.at(k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Curve {
        request: req.clone(),
        points,
    })
}
