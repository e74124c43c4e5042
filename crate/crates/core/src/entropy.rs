//! Tsallis and Rényi entropies, the α-logarithm, and the index of coincidence
//! of finite probability distributions.
//!
//! All functionals treat `0^α` as `0` inside sums (including `α = 0`), so the
//! order-zero entropies count non-zero probabilities.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Entries below `-NEG_TOL` (or above `1 + NEG_TOL`) are rejected; entries in
/// the tolerance band are clamped into `[0, 1]`.
pub const NEG_TOL: f64 = 1e-10;
/// Allowed deviation of the raw sum from one before renormalization.
pub const NORM_TOL: f64 = 1e-9;
/// Orders closer than this to one are evaluated by the Shannon limit.
pub const SHANNON_SWITCH: f64 = 1e-8;

/// An entropic order `α ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct EntropyOrder(f64);

impl EntropyOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(domain(format!(
                "entropic order must be a finite real alpha >= 0, got {alpha}"
            )));
        }
        Ok(Self(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// True when the order is close enough to one to use Shannon formulas.
    pub fn is_shannon(self) -> bool {
        (self.0 - 1.0).abs() < SHANNON_SWITCH
    }

    /// Rejects orders outside the closed interval `[lo, hi]`.
    pub fn check_within(self, lo: f64, hi: f64) -> Result<Self> {
        if self.0 < lo || self.0 > hi {
            Err(domain(format!(
                "entropic order alpha must lie in [{lo}, {hi}], got {}",
                self.0
            )))
        } else {
            Ok(self)
        }
    }
}

impl TryFrom<f64> for EntropyOrder {
    type Error = Error;
    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

impl From<EntropyOrder> for f64 {
    fn from(order: EntropyOrder) -> f64 {
        order.0
    }
}

impl fmt::Display for EntropyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A probability vector with a fixed support size `n`.
///
/// Zero entries are kept in place: the bounds of this crate depend on `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validates, clamps tiny negatives, and renormalizes.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution(
                "a distribution needs at least one entry".into(),
            ));
        }
        for (j, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() {
                return Err(Error::InvalidDistribution(format!(
                    "entry {j} is not finite"
                )));
            }
            if *p < -NEG_TOL || *p > 1.0 + NEG_TOL {
                return Err(Error::InvalidDistribution(format!(
                    "entry {j} = {p} lies outside [0, 1]"
                )));
            }
            *p = p.clamp(0.0, 1.0);
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {sum}, not 1 (tolerance {NORM_TOL})"
            )));
        }
        for p in &mut probs {
            *p /= sum;
        }
        Ok(Self { probs })
    }

    /// `U_k`: `k` equal probabilities.
    pub fn uniform(k: usize) -> Result<Self> {
        Self::uniform_padded(k, k)
    }

    /// `U_k` embedded into an `n`-outcome support by trailing zeros.
    pub fn uniform_padded(k: usize, n: usize) -> Result<Self> {
        if k == 0 || n < k {
            return Err(domain(format!(
                "uniform distribution needs 1 <= k <= n, got k={k}, n={n}"
            )));
        }
        let mut probs = vec![0.0; n];
        probs[..k].iter_mut().for_each(|p| *p = 1.0 / k as f64);
        Self::new(probs)
    }

    /// A certain outcome on an `n`-outcome support.
    pub fn point_mass(n: usize) -> Result<Self> {
        Self::uniform_padded(1, n)
    }

    /// Parses a comma-separated list such as `0.5,0.3,0.2`.
    pub fn parse_list(s: &str) -> Result<Self> {
        let probs = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("not a number: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(probs)
    }

    /// Parses a JSON array of numbers.
    pub fn from_json(s: &str) -> Result<Self> {
        let probs: Vec<f64> = serde_json::from_str(s)?;
        Self::new(probs)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Support size.
    pub fn n(&self) -> usize {
        self.probs.len()
    }

    pub fn nonzero_count(&self) -> usize {
        self.probs.iter().filter(|&&p| p > 0.0).count()
    }
}

impl TryFrom<Vec<f64>> for Distribution {
    type Error = Error;
    fn try_from(probs: Vec<f64>) -> Result<Self> {
        Self::new(probs)
    }
}

impl From<Distribution> for Vec<f64> {
    fn from(d: Distribution) -> Vec<f64> {
        d.probs
    }
}

impl FromStr for Distribution {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_list(s)
    }
}

/// The α-logarithm `(x^{1-α} - 1)/(1 - α)`, `ln x` at `α = 1`.
pub fn ln_alpha(x: f64, alpha: EntropyOrder) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("ln_alpha needs x > 0, got {x}")));
    }
    Ok(ln_alpha_unchecked(x, alpha.value()))
}

// expm1 keeps the quotient accurate when 1 - alpha is small.
pub(crate) fn ln_alpha_unchecked(x: f64, alpha: f64) -> f64 {
    let ln = x.ln();
    if (alpha - 1.0).abs() < SHANNON_SWITCH {
        return ln;
    }
    let q = 1.0 - alpha;
    (q * ln).exp_m1() / q
}

/// `η_α(x) = (x^α - x)/(1 - α)`, `-x ln x` at `α = 1`; zero at both ends.
pub fn eta_alpha(x: f64, alpha: EntropyOrder) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("eta_alpha needs x in [0, 1], got {x}")));
    }
    Ok(eta_unchecked(x, alpha.value()))
}

pub(crate) fn eta_unchecked(x: f64, alpha: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    // x^α - x = x (x^{α-1} - 1) = -x (1-α) ln_α(1/x)
    x * ln_alpha_unchecked(1.0 / x, alpha)
}

/// Shannon entropy in nats.
pub fn shannon(p: &Distribution) -> f64 {
    p.probs.iter().map(|&q| eta_unchecked(q, 1.0)).sum()
}

/// Tsallis α-entropy `Σ η_α(p_j)`.
pub fn tsallis(p: &Distribution, alpha: EntropyOrder) -> f64 {
    let a = alpha.value();
    p.probs.iter().map(|&q| eta_unchecked(q, a)).sum()
}

/// Rényi α-entropy `ln(Σ p_j^α)/(1 - α)`.
pub fn renyi(p: &Distribution, alpha: EntropyOrder) -> f64 {
    if alpha.is_shannon() {
        return shannon(p);
    }
    let a = alpha.value();
    let s: f64 = p
        .probs
        .iter()
        .filter(|&&q| q > 0.0)
        .map(|&q| if a == 0.0 { 1.0 } else { q.powf(a) })
        .sum();
    s.ln() / (1.0 - a)
}

/// Maps a Tsallis value to the Rényi value of the same distribution.
pub fn tsallis_to_renyi(tsallis: f64, alpha: EntropyOrder) -> Result<f64> {
    if alpha.is_shannon() {
        return Ok(tsallis);
    }
    let q = 1.0 - alpha.value();
    let arg = q * tsallis;
    if !(arg > -1.0) {
        return Err(domain(format!(
            "1 + (1 - alpha) * H = {} must be positive",
            1.0 + arg
        )));
    }
    Ok(arg.ln_1p() / q)
}

/// Index of coincidence `Σ p_j²`.
pub fn coincidence(p: &Distribution) -> f64 {
    p.probs.iter().map(|q| q * q).sum()
}

pub fn max_probability(p: &Distribution) -> f64 {
    p.probs.iter().copied().fold(0.0, f64::max)
}

/// `R_∞ = -ln max_j p_j`.
pub fn min_entropy(p: &Distribution) -> f64 {
    -max_probability(p).ln()
}
