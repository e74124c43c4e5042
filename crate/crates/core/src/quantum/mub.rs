//! Mutually unbiased bases in prime dimension.

use std::f64::consts::PI;

use super::matrix::{c, ComplexMatrix, Ket};
use super::povm::{Family, MeasurementSet, Povm, SetKind};
use crate::error::{Error, Result};

pub(crate) fn is_prime(d: usize) -> bool {
    d >= 2 && (2..).take_while(|q| q * q <= d).all(|q| d % q != 0)
}

/// All `d + 1` bases: the computational basis first, then for `d = 2` the
/// Pauli X and Y eigenbases, and for odd prime `d` the bases
/// `|ψ_{a,b}⟩ = d^{-1/2} Σ_j ω^{a j² + b j} |j⟩`, `a = 0..d-1`.
pub fn mub_bases(d: usize) -> Result<Vec<Vec<Ket>>> {
    if !is_prime(d) {
        return Err(Error::UnsupportedDimension {
            d,
            reason: "built-in MUBs need a prime dimension; supply a custom POVM file instead".into(),
        });
    }
    let computational: Vec<Ket> = (0..d)
        .map(|j| Ket::from_fn(d, |i, _| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }))
        .collect();
    let mut bases = vec![computational];
    let s = 1.0 / (d as f64).sqrt();
    if d == 2 {
        for phase in [c(1.0, 0.0), c(0.0, 1.0)] {
            bases.push(vec![
                Ket::from_vec(vec![c(s, 0.0), phase * s]),
                Ket::from_vec(vec![c(s, 0.0), -phase * s]),
            ]);
        }
    } else {
        for a in 0..d {
            let basis = (0..d)
                .map(|b| {
                    Ket::from_fn(d, |j, _| {
                        let e = (a * j * j + b * j) % d;
                        let ang = 2.0 * PI * e as f64 / d as f64;
                        c(s * ang.cos(), s * ang.sin())
                    })
                })
                .collect();
            bases.push(basis);
        }
    }
    Ok(bases)
}

/// The first `m` bases of [`mub_bases`] as projective measurements.
pub fn mub_set(d: usize, m: usize) -> Result<MeasurementSet> {
    if m == 0 || m > d + 1 {
        return Err(Error::Domain(format!(
            "number of bases M must lie in [1, d + 1] = [1, {}], got {m}",
            d + 1
        )));
    }
    let bases = mub_bases(d)?;
    let measurements = bases
        .into_iter()
        .take(m)
        .map(|basis| {
            let elems = basis.iter().map(ComplexMatrix::projector).collect();
            Povm::new(d, elems, Family::MubBasis)
        })
        .collect::<Result<Vec<_>>>()?;
    MeasurementSet::new(measurements, SetKind::Mub)
}
