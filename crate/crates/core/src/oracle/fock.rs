//! Exact trace over a truncated two-mode Fock space.
//!
//! The thermal density matrix of the `b` quanta is diagonal in the product
//! number basis `|i, j>` (mode `k`, mode `-k`). It is cut off at `n_max`
//! quanta per mode and renormalized. The `a` operators are built as sparse
//! matrices on a space padded by two quanta per mode, which is enough for the
//! columns inside the support of the density matrix to be exact under any
//! product of two `a` operators.
//!
//! Nothing here reuses the closed-form path: energies use `hypot`, the
//! Bogoliubov coefficients come from square roots of the energy ratio, and
//! the occupancy is the first moment of the truncated weights.

use crate::squeeze::{MediumParams, SpeciesParams};
use crate::{Error, Result};

/// The geometric tail bound is multiplied by this, since squeezing moves
/// some weight relative to the bare thermal distribution.
pub const TAIL_SAFETY_FACTOR: f64 = 10.0;

const PAD: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConfig {
    /// Largest occupation kept per mode.
    pub n_max: usize,
    /// The tail bound must stay below this for a result to be reported.
    pub tolerance: f64,
}

impl TruncationConfig {
    pub fn new(n_max: usize, tolerance: f64) -> Self {
        Self { n_max, tolerance }
    }

    /// Smallest adequate cutoff for the given point.
    pub fn adequate(k: f64, medium: &MediumParams, tolerance: f64) -> Result<Self> {
        let x = boltzmann_ratio(k, medium)?;
        Ok(Self::new(minimal_n_max(x, tolerance), tolerance))
    }

    /// Cutoff for observables accurate to roughly `relative`.
    ///
    /// Second-order moments are normalized by the squared occupancy, so the
    /// tail tolerance is `relative * min(1, N)^2` with `N = n + s^2` estimated
    /// from the Boltzmann ratio and the Bogoliubov coefficients.
    pub fn for_relative_accuracy(
        k: f64,
        species: &SpeciesParams,
        medium: &MediumParams,
        relative: f64,
    ) -> Result<Self> {
        let x = boltzmann_ratio(k, medium)?;
        SpeciesParams::new(species.label.clone(), species.m0)?;
        let (_, s) = bogoliubov(species.m0.hypot(k), medium.m_star.hypot(k));
        let scale = (x / (1.0 - x) + s * s).min(1.0);
        let tolerance = if scale > 0.0 {
            relative * scale * scale
        } else {
            relative
        };
        Ok(Self::new(minimal_n_max(x, tolerance), tolerance))
    }
}

/// `(cosh r, sinh r)` from `exp(r) = sqrt(omega / Omega)`.
fn bogoliubov(omega: f64, capital_omega: f64) -> (f64, f64) {
    let q = (omega / capital_omega).sqrt();
    (0.5 * (q + q.recip()), 0.5 * (q - q.recip()))
}

/// Observables obtained from an oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub n1: f64,
    pub c2_bb: f64,
    pub c2_id: f64,
    pub tail_bound: f64,
    pub n_max_used: usize,
    /// `cosh r` read back from the matrix of `a_k`.
    pub cosh_r: f64,
    /// `sinh r` read back from the matrix of `a_k`.
    pub sinh_r: f64,
    /// First moment of the truncated thermal weights.
    pub n_thermal: f64,
}

/// `x = exp(-Omega_k / T)`.
pub fn boltzmann_ratio(k: f64, medium: &MediumParams) -> Result<f64> {
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::InvalidMomentum(k));
    }
    let medium = MediumParams::new(medium.m_star, medium.temperature)?;
    Ok((-medium.m_star.hypot(k) / medium.temperature).exp())
}

/// `10 * 2 x^(n_max + 1) / (1 - x)`: bound on the thermal weight discarded
/// from the pair, with safety factor.
pub fn tail_bound(x: f64, n_max: usize) -> f64 {
    let exponent = i32::try_from(n_max + 1).unwrap_or(i32::MAX);
    TAIL_SAFETY_FACTOR * 2.0 * x.powi(exponent) / (1.0 - x)
}

/// Smallest `n_max >= 1` with `tail_bound(x, n_max) < tolerance`;
/// `usize::MAX` when no cutoff can reach the tolerance.
pub fn minimal_n_max(x: f64, tolerance: f64) -> usize {
    if tail_bound(x, 1) < tolerance {
        return 1;
    }
    if !(tolerance > 0.0 && x > 0.0 && x < 1.0) {
        return usize::MAX;
    }
    let estimate = (tolerance * (1.0 - x) / (2.0 * TAIL_SAFETY_FACTOR)).ln() / x.ln() - 1.0;
    if !(estimate < 1e9) {
        return usize::MAX;
    }
    let mut n = (estimate.floor() as usize).max(1);
    while n > 1 && tail_bound(x, n - 1) < tolerance {
        n -= 1;
    }
    while tail_bound(x, n) >= tolerance {
        n += 1;
    }
    n
}

/// Sparse matrix stored by columns.
#[derive(Debug, Clone)]
struct SparseMatrix {
    cols: Vec<Vec<(usize, f64)>>,
}

impl SparseMatrix {
    fn zeros(dim: usize) -> Self {
        Self {
            cols: vec![Vec::new(); dim],
        }
    }

    fn dim(&self) -> usize {
        self.cols.len()
    }

    fn push(&mut self, row: usize, col: usize, value: f64) {
        if value != 0.0 {
            self.cols[col].push((row, value));
        }
    }

    fn get(&self, row: usize, col: usize) -> f64 {
        self.cols[col]
            .iter()
            .filter(|&&(r, _)| r == row)
            .map(|&(_, v)| v)
            .sum()
    }

    /// `alpha * self + beta * other`.
    fn combine(&self, alpha: f64, other: &SparseMatrix, beta: f64) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim());
        for (j, col) in out.cols.iter_mut().enumerate() {
            let mut acc: Vec<(usize, f64)> = self.cols[j]
                .iter()
                .map(|&(r, v)| (r, alpha * v))
                .chain(other.cols[j].iter().map(|&(r, v)| (r, beta * v)))
                .collect();
            acc.sort_by_key(|&(r, _)| r);
            for (r, v) in acc {
                match col.last_mut() {
                    Some((last, sum)) if *last == r => *sum += v,
                    _ => col.push((r, v)),
                }
            }
            col.retain(|&(_, v)| v != 0.0);
        }
        out
    }

    /// Column `col` of `self * other`.
    fn product_column(&self, other: &SparseMatrix, col: usize) -> Vec<(usize, f64)> {
        let mut acc: Vec<(usize, f64)> = Vec::new();
        for &(mid, y) in &other.cols[col] {
            for &(row, x) in &self.cols[mid] {
                acc.push((row, x * y));
            }
        }
        acc.sort_by_key(|&(r, _)| r);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(acc.len());
        for (r, v) in acc {
            match merged.last_mut() {
                Some((last, sum)) if *last == r => *sum += v,
                _ => merged.push((r, v)),
            }
        }
        merged
    }
}

fn inner(u: &[(usize, f64)], v: &[(usize, f64)]) -> f64 {
    // both sorted by row
    let (mut i, mut j, mut sum) = (0, 0, 0.0);
    while i < u.len() && j < v.len() {
        match u[i].0.cmp(&v[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                sum += u[i].1 * v[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    sum
}

/// Ladder operators of the padded two-mode space.
struct TwoModeSpace {
    side: usize,
}

#[derive(Clone, Copy)]
enum Mode {
    Plus,
    Minus,
}

impl TwoModeSpace {
    fn index(&self, i: usize, j: usize) -> usize {
        i * self.side + j
    }

    fn annihilator(&self, mode: Mode) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.side * self.side);
        for i in 0..self.side {
            for j in 0..self.side {
                let col = self.index(i, j);
                match mode {
                    Mode::Plus if i > 0 => m.push(self.index(i - 1, j), col, (i as f64).sqrt()),
                    Mode::Minus if j > 0 => m.push(self.index(i, j - 1), col, (j as f64).sqrt()),
                    _ => {}
                }
            }
        }
        m
    }

    fn creator(&self, mode: Mode) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.side * self.side);
        for i in 0..self.side {
            for j in 0..self.side {
                let col = self.index(i, j);
                match mode {
                    Mode::Plus if i + 1 < self.side => {
                        m.push(self.index(i + 1, j), col, ((i + 1) as f64).sqrt())
                    }
                    Mode::Minus if j + 1 < self.side => {
                        m.push(self.index(i, j + 1), col, ((j + 1) as f64).sqrt())
                    }
                    _ => {}
                }
            }
        }
        m
    }
}

/// `Tr(rho L^+ R)` for `rho` diagonal with weight `w[i] w[j]` on `|i, j>`.
fn trace_weighted(
    space: &TwoModeSpace,
    weights: &[f64],
    left: impl Fn(usize) -> Vec<(usize, f64)>,
    right: impl Fn(usize) -> Vec<(usize, f64)>,
) -> f64 {
    let mut total = 0.0;
    for (i, &wi) in weights.iter().enumerate() {
        for (j, &wj) in weights.iter().enumerate() {
            let p = wi * wj;
            if p == 0.0 {
                continue;
            }
            let col = space.index(i, j);
            total += p * inner(&left(col), &right(col));
        }
    }
    total
}

fn ratio_or(numerator: f64, denominator: f64, empty: f64) -> f64 {
    if denominator == 0.0 {
        empty
    } else {
        numerator / denominator
    }
}

/// Observables of the squeezed thermal pair by exact trace.
///
/// Refuses a cutoff whose tail bound is not below `cfg.tolerance`, naming the
/// minimal adequate `n_max` in the error.
pub fn fock_observables(
    k: f64,
    species: &SpeciesParams,
    medium: &MediumParams,
    cfg: TruncationConfig,
) -> Result<OracleResult> {
    let x = boltzmann_ratio(k, medium)?;
    SpeciesParams::new(species.label.clone(), species.m0)?;
    let bound = tail_bound(x, cfg.n_max);
    if !(bound < cfg.tolerance) || cfg.n_max == 0 {
        return Err(Error::TruncationTooCoarse {
            n_max: cfg.n_max,
            tail_bound: bound,
            tolerance: cfg.tolerance,
            minimal: minimal_n_max(x, cfg.tolerance),
        });
    }

    let (c, s) = bogoliubov(species.m0.hypot(k), medium.m_star.hypot(k));

    // truncated thermal weights x^n, normalized
    let mut weights: Vec<f64> = std::iter::successors(Some(1.0), |w| Some(w * x))
        .take(cfg.n_max + 1)
        .collect();
    let z: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= z);
    let n_thermal: f64 = weights.iter().enumerate().map(|(n, w)| n as f64 * w).sum();

    let space = TwoModeSpace {
        side: cfg.n_max + 1 + PAD,
    };
    let b_plus = space.annihilator(Mode::Plus);
    let b_minus = space.annihilator(Mode::Minus);
    let bd_plus = space.creator(Mode::Plus);
    let bd_minus = space.creator(Mode::Minus);
    // a_k = c b_k + s b_-k^+,  a_-k = c b_-k + s b_k^+
    let a_plus = b_plus.combine(c, &bd_minus, s);
    let a_minus = b_minus.combine(c, &bd_plus, s);

    let cosh_r = a_plus.get(space.index(0, 0), space.index(1, 0));
    let sinh_r = a_plus.get(space.index(0, 1), space.index(0, 0));

    let col = |m: &SparseMatrix, j: usize| m.cols[j].clone();
    let n1 = trace_weighted(&space, &weights, |j| col(&a_plus, j), |j| col(&a_plus, j));
    let n1_minus = trace_weighted(&space, &weights, |j| col(&a_minus, j), |j| col(&a_minus, j));
    // a_k^+ a_-k^+ a_k a_-k = (a_-k a_k)^+ (a_k a_-k)
    let pair = trace_weighted(
        &space,
        &weights,
        |j| a_minus.product_column(&a_plus, j),
        |j| a_plus.product_column(&a_minus, j),
    );
    let same = trace_weighted(
        &space,
        &weights,
        |j| a_plus.product_column(&a_plus, j),
        |j| a_plus.product_column(&a_plus, j),
    );

    Ok(OracleResult {
        n1,
        c2_bb: ratio_or(pair, n1 * n1_minus, 1.0),
        c2_id: ratio_or(same, n1 * n1, 2.0),
        tail_bound: bound,
        n_max_used: cfg.n_max,
        cosh_r,
        sinh_r,
        n_thermal,
    })
}
