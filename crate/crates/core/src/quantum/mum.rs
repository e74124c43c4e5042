//! Complete sets of `d + 1` mutually unbiased measurements in any dimension.
//!
//! The traceless Hermitian operators of a Hilbert–Schmidt orthonormal basis
//! are split into `d + 1` groups of `d - 1`. For group `b` with members
//! `F_{1,b}, ..., F_{d-1,b}` and sum `F_b`, the operators
//!
//! ```text
//! F_n^{(b)} = F_b - (d + √d) F_{n,b}   (n < d),    F_d^{(b)} = (1 + √d) F_b
//! ```
//!
//! sum to zero, are orthogonal across groups and share the norm
//! `(1 + √d)²(d - 1)`. Then `E_n^{(b)} = 𝟙/d + t F_n^{(b)}` has efficiency
//! `κ = 1/d + t²(1 + √d)²(d - 1)`; positivity caps `|t|`.

use super::matrix::{c, ComplexMatrix};
use super::povm::{Family, MeasurementSet, Povm, SetKind};
use crate::error::{Error, Result};

/// Generalized Gell-Mann matrices with `tr(F_i F_j) = δ_ij`, ordered as the
/// symmetric/antisymmetric pair for each `j < k`, then the `d - 1` diagonal ones.
pub fn gell_mann_basis(d: usize) -> Vec<ComplexMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut ops = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            ops.push(ComplexMatrix::from_fn(d, d, |r, col| {
                if (r, col) == (j, k) || (r, col) == (k, j) {
                    c(s, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            }));
            ops.push(ComplexMatrix::from_fn(d, d, |r, col| {
                if (r, col) == (j, k) {
                    c(0.0, -s)
                } else if (r, col) == (k, j) {
                    c(0.0, s)
                } else {
                    c(0.0, 0.0)
                }
            }));
        }
    }
    for l in 1..d {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        ops.push(ComplexMatrix::from_fn(d, d, |r, col| {
            if r != col {
                c(0.0, 0.0)
            } else if r < l {
                c(norm, 0.0)
            } else if r == l {
                c(-(l as f64) * norm, 0.0)
            } else {
                c(0.0, 0.0)
            }
        }));
    }
    ops
}

/// The traceless directions `F_n^{(b)}`, one vector of `d` per measurement.
fn directions(d: usize) -> Vec<Vec<ComplexMatrix>> {
    let basis = gell_mann_basis(d);
    let sd = (d as f64).sqrt();
    basis
        .chunks(d - 1)
        .map(|group| {
            let total = group
                .iter()
                .fold(ComplexMatrix::zeros(d, d), |acc, f| &acc + f);
            let mut dirs: Vec<ComplexMatrix> = group
                .iter()
                .map(|f| &total - &f.scale(d as f64 + sd))
                .collect();
            dirs.push(total.scale(1.0 + sd));
            dirs
        })
        .collect()
}

fn norm_factor(d: usize) -> f64 {
    let sd = (d as f64).sqrt();
    (1.0 + sd).powi(2) * (d as f64 - 1.0)
}

/// Largest admissible `t` for each sign of the direction family.
fn t_limits(d: usize, dirs: &[Vec<ComplexMatrix>]) -> (f64, f64) {
    let inv_d = 1.0 / d as f64;
    let (mut pos, mut neg) = (f64::INFINITY, f64::INFINITY);
    for f in dirs.iter().flatten() {
        let ev = f.hermitian_eigenvalues();
        let (lo, hi) = (ev[0], ev[ev.len() - 1]);
        if lo < 0.0 {
            pos = pos.min(inv_d / -lo);
        }
        if hi > 0.0 {
            neg = neg.min(inv_d / hi);
        }
    }
    (pos, neg)
}

/// Largest efficiency this construction reaches with positive elements.
pub fn mum_kappa_max(d: usize) -> Result<f64> {
    check_dim(d)?;
    let dirs = directions(d);
    let (pos, neg) = t_limits(d, &dirs);
    let t = pos.max(neg);
    Ok(1.0 / d as f64 + t * t * norm_factor(d))
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::UnsupportedDimension {
            d,
            reason: "mutually unbiased measurements need d >= 2".into(),
        });
    }
    Ok(())
}

/// A complete set of `d + 1` MUMs of efficiency `kappa ∈ (1/d, κ_max(d)]`.
pub fn mum_set(d: usize, kappa: f64) -> Result<MeasurementSet> {
    check_dim(d)?;
    let inv_d = 1.0 / d as f64;
    let dirs = directions(d);
    let (pos, neg) = t_limits(d, &dirs);
    let t_max = pos.max(neg);
    let kappa_max = inv_d + t_max * t_max * norm_factor(d);
    if !(kappa > inv_d) || kappa > kappa_max + 1e-12 {
        return Err(Error::Domain(format!(
            "efficiency kappa must lie in (1/d, kappa_max] = ({inv_d}, {kappa_max}] for d = {d}, got {kappa}"
        )));
    }
    let magnitude = (((kappa - inv_d) / norm_factor(d)).max(0.0)).sqrt().min(t_max);
    let t = if pos >= neg { magnitude } else { -magnitude };
    let identity = ComplexMatrix::identity(d).scale(inv_d);
    let measurements = dirs
        .iter()
        .map(|group| {
            let elems = group.iter().map(|f| &identity + &f.scale(t)).collect();
            Povm::new(d, elems, Family::Mum { kappa })
        })
        .collect::<Result<Vec<_>>>()?;
    MeasurementSet::new(measurements, SetKind::Mum { kappa })
}
