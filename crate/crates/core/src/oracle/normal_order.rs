//! Normal-ordered polynomials in two bosonic modes.
//!
//! A monomial `b1^+^p1 b1^q1 b2^+^p2 b2^q2` is stored by its four exponents.
//! Products are normal-ordered with the single-mode rule
//!
//! ```text
//! b^+^p b^q  b^+^r b^s = sum_j C(q,j) C(r,j) j!  b^+^(p+r-j) b^(q+s-j)
//! ```
//!
//! and the two modes commute. The coherent-state expectation of a
//! normal-ordered polynomial is obtained by substituting `b -> beta`,
//! `b^+ -> conj(beta)`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_complex::Complex64;

/// Exponents `[p1, q1, p2, q2]`.
type Exponents = [u32; 4];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct NormalOrdered {
    terms: BTreeMap<Exponents, f64>,
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Normal-ordered expansion of `b^+^p b^q b^+^r b^s` in a single mode.
fn reorder_single(p: u32, q: u32, r: u32, s: u32) -> Vec<((u32, u32), f64)> {
    (0..=q.min(r))
        .map(|j| {
            let coef = binomial(q, j) * binomial(r, j) * factorial(j);
            ((p + r - j, q + s - j), coef)
        })
        .collect()
}

impl NormalOrdered {
    pub fn constant(value: f64) -> Self {
        let mut terms = BTreeMap::new();
        if value != 0.0 {
            terms.insert([0; 4], value);
        }
        Self { terms }
    }

    fn monomial(exp: Exponents) -> Self {
        Self {
            terms: BTreeMap::from([(exp, 1.0)]),
        }
    }

    /// `b_mode`, with `mode` 0 or 1.
    pub fn annihilator(mode: usize) -> Self {
        let mut e = [0; 4];
        e[2 * mode + 1] = 1;
        Self::monomial(e)
    }

    pub fn creator(mode: usize) -> Self {
        let mut e = [0; 4];
        e[2 * mode] = 1;
        Self::monomial(e)
    }

    pub fn scale(mut self, factor: f64) -> Self {
        self.terms.values_mut().for_each(|v| *v *= factor);
        self.terms.retain(|_, v| *v != 0.0);
        self
    }

    /// Hermitian conjugate; coefficients are real.
    pub fn adjoint(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&[p1, q1, p2, q2], &v)| ([q1, p1, q2, p2], v))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: Exponents) -> f64 {
        self.terms.get(&exp).copied().unwrap_or(0.0)
    }

    fn add_term(&mut self, exp: Exponents, value: f64) {
        let entry = self.terms.entry(exp).or_insert(0.0);
        *entry += value;
        if *entry == 0.0 {
            self.terms.remove(&exp);
        }
    }

    /// Expectation in the coherent state `|beta[0], beta[1]>`.
    pub fn coherent_expectation(&self, beta: [Complex64; 2]) -> Complex64 {
        let conj = [beta[0].conj(), beta[1].conj()];
        self.terms
            .iter()
            .map(|(&[p1, q1, p2, q2], &v)| {
                conj[0].powu(p1) * beta[0].powu(q1) * conj[1].powu(p2) * beta[1].powu(q2) * v
            })
            .sum()
    }
}

impl Add for NormalOrdered {
    type Output = NormalOrdered;

    fn add(mut self, rhs: NormalOrdered) -> NormalOrdered {
        for (exp, v) in rhs.terms {
            self.add_term(exp, v);
        }
        self
    }
}

impl Mul for &NormalOrdered {
    type Output = NormalOrdered;

    fn mul(self, rhs: &NormalOrdered) -> NormalOrdered {
        let mut out = NormalOrdered::default();
        for (&[p1, q1, p2, q2], &u) in &self.terms {
            for (&[r1, s1, r2, s2], &v) in &rhs.terms {
                for ((a1, c1), w1) in reorder_single(p1, q1, r1, s1) {
                    for ((a2, c2), w2) in reorder_single(p2, q2, r2, s2) {
                        out.add_term([a1, c1, a2, c2], u * v * w1 * w2);
                    }
                }
            }
        }
        out
    }
}
