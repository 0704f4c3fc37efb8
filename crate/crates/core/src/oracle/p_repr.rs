//! Monte Carlo over the Glauber-Sudarshan P-function of the thermal state.
//!
//! The thermal density matrix of each `b` mode is a Gaussian mixture of
//! coherent states, `P(beta) = exp(-|beta|^2 / n) / n`. For each sampled pair
//! `(beta_k, beta_-k)` the observables are evaluated exactly as coherent-state
//! expectations of their normal-ordered expansions in `b`, then averaged.
//!
//! Samples are generated in fixed blocks, each with its own ChaCha stream
//! keyed by `(seed, block index)`. Blocks may run on any number of threads;
//! their moments are merged in block order, so the result is bit-identical
//! for a given seed regardless of thread count.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::normal_order::NormalOrdered;
use crate::squeeze::{MediumParams, SpeciesParams};
use crate::{Error, Result};

pub const MIN_SAMPLES: usize = 10_000;
const BLOCK_SIZE: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub n_samples: usize,
    pub seed: u64,
    /// Largest acceptable relative standard error of `n1` and `c2_bb`.
    pub standard_error_target: f64,
}

impl McConfig {
    pub fn new(n_samples: usize, seed: u64, standard_error_target: f64) -> Self {
        Self {
            n_samples,
            seed,
            standard_error_target,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
}

impl McEstimate {
    pub fn relative_error(&self) -> f64 {
        self.std_error / self.mean.abs()
    }

    /// Distance to `reference` in standard errors.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = (self.mean - reference).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }

    pub fn agrees_with(&self, reference: f64, sigmas: f64) -> bool {
        self.z_score(reference) <= sigmas
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McResult {
    pub n1: McEstimate,
    pub c2_bb: McEstimate,
    pub c2_id: McEstimate,
    pub n_samples: usize,
}

/// The four per-sample observables, normal-ordered once.
struct Observables {
    n_plus: NormalOrdered,
    n_minus: NormalOrdered,
    pair: NormalOrdered,
    same: NormalOrdered,
}

impl Observables {
    fn new(c: f64, s: f64) -> Self {
        // a_k = c b_0 + s b_1^+,  a_-k = c b_1 + s b_0^+
        let a_plus = NormalOrdered::annihilator(0).scale(c) + NormalOrdered::creator(1).scale(s);
        let a_minus = NormalOrdered::annihilator(1).scale(c) + NormalOrdered::creator(0).scale(s);
        let ad_plus = a_plus.adjoint();
        let ad_minus = a_minus.adjoint();
        Self {
            n_plus: &ad_plus * &a_plus,
            n_minus: &ad_minus * &a_minus,
            pair: &(&(&ad_plus * &ad_minus) * &a_plus) * &a_minus,
            same: &(&(&ad_plus * &ad_plus) * &a_plus) * &a_plus,
        }
    }

    fn evaluate(&self, beta: [Complex64; 2]) -> [f64; 4] {
        [
            self.n_plus.coherent_expectation(beta).re,
            self.n_minus.coherent_expectation(beta).re,
            self.pair.coherent_expectation(beta).re,
            self.same.coherent_expectation(beta).re,
        ]
    }
}

/// Running mean and co-moments of four variables.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: f64,
    mean: [f64; 4],
    comoment: [[f64; 4]; 4],
}

impl Moments {
    fn push(&mut self, x: [f64; 4]) {
        self.count += 1.0;
        let delta: [f64; 4] = std::array::from_fn(|i| x[i] - self.mean[i]);
        for (mean, d) in self.mean.iter_mut().zip(delta) {
            *mean += d / self.count;
        }
        for (row, d) in self.comoment.iter_mut().zip(delta) {
            for (cell, (xj, mj)) in row.iter_mut().zip(x.iter().zip(self.mean)) {
                *cell += d * (xj - mj);
            }
        }
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let delta: [f64; 4] = std::array::from_fn(|i| other.mean[i] - self.mean[i]);
        let mut out = Moments {
            count,
            mean: std::array::from_fn(|i| self.mean[i] + delta[i] * other.count / count),
            comoment: self.comoment,
        };
        for i in 0..4 {
            for j in 0..4 {
                out.comoment[i][j] +=
                    other.comoment[i][j] + delta[i] * delta[j] * self.count * other.count / count;
            }
        }
        out
    }

    /// Standard error of a smooth function of the means, from its gradient.
    fn delta_method(&self, gradient: [f64; 4]) -> f64 {
        let mut var = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                var += gradient[i] * gradient[j] * self.comoment[i][j];
            }
        }
        let var = var.max(0.0) / (self.count - 1.0);
        (var / self.count).sqrt()
    }
}

fn sample_block(
    observables: &Observables,
    sigma: f64,
    seed: u64,
    block: usize,
    len: usize,
) -> Moments {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block as u64);
    let mut moments = Moments::default();
    let mut gauss = || -> f64 { StandardNormal.sample(&mut rng) };
    for _ in 0..len {
        let beta = [
            Complex64::new(sigma * gauss(), sigma * gauss()),
            Complex64::new(sigma * gauss(), sigma * gauss()),
        ];
        moments.push(observables.evaluate(beta));
    }
    moments
}

/// Estimates `N1`, `C2(k,-k)` and `C2(k,k)` by sampling the P-function.
///
/// Fails with [`Error::McNotConverged`] (carrying the estimates) if the
/// relative standard error of `n1` or `c2_bb` exceeds the target.
pub fn p_representation_mc(
    k: f64,
    species: &SpeciesParams,
    medium: &MediumParams,
    cfg: McConfig,
) -> Result<McResult> {
    if cfg.n_samples < MIN_SAMPLES {
        return Err(Error::InvalidMcConfig(format!(
            "n_samples = {} is below the minimum of {MIN_SAMPLES}",
            cfg.n_samples
        )));
    }
    if !(cfg.standard_error_target > 0.0) {
        return Err(Error::InvalidMcConfig(format!(
            "standard_error_target must be positive, got {}",
            cfg.standard_error_target
        )));
    }
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::InvalidMomentum(k));
    }
    SpeciesParams::new(species.label.clone(), species.m0)?;
    MediumParams::new(medium.m_star, medium.temperature)?;

    let omega = species.m0.hypot(k);
    let capital_omega = medium.m_star.hypot(k);
    let n = (capital_omega / medium.temperature).exp_m1().recip();
    if !(n > 0.0) {
        return Err(Error::VanishingOccupancy);
    }
    let q = (omega / capital_omega).sqrt();
    let observables = Observables::new(0.5 * (q + q.recip()), 0.5 * (q - q.recip()));
    // E|beta|^2 = n, split evenly between real and imaginary parts
    let sigma = (0.5 * n).sqrt();

    let n_blocks = cfg.n_samples.div_ceil(BLOCK_SIZE);
    let blocks: Vec<Moments> = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let len = BLOCK_SIZE.min(cfg.n_samples - b * BLOCK_SIZE);
            sample_block(&observables, sigma, cfg.seed, b, len)
        })
        .collect();
    let moments = blocks.into_iter().fold(Moments::default(), Moments::merge);

    let [n_plus, n_minus, pair, same] = moments.mean;
    let c2_bb = pair / (n_plus * n_minus);
    let c2_id = same / (n_plus * n_plus);
    let result = McResult {
        n1: McEstimate {
            mean: n_plus,
            std_error: moments.delta_method([1.0, 0.0, 0.0, 0.0]),
        },
        c2_bb: McEstimate {
            mean: c2_bb,
            std_error: moments.delta_method([
                -c2_bb / n_plus,
                -c2_bb / n_minus,
                1.0 / (n_plus * n_minus),
                0.0,
            ]),
        },
        c2_id: McEstimate {
            mean: c2_id,
            std_error: moments.delta_method([
                -2.0 * c2_id / n_plus,
                0.0,
                0.0,
                1.0 / (n_plus * n_plus),
            ]),
        },
        n_samples: cfg.n_samples,
    };

    let worst = result
        .n1
        .relative_error()
        .max(result.c2_bb.relative_error());
    if !(worst <= cfg.standard_error_target) {
        return Err(Error::McNotConverged {
            result: Box::new(result),
            target: cfg.standard_error_target,
        });
    }
    Ok(result)
}
