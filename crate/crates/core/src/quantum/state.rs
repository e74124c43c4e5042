use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, StandardNormal};
use serde::{Deserialize, Serialize};

use super::matrix::{c, ComplexMatrix, Ket};
use crate::error::{Error, Result};

/// Tolerance for Hermiticity, unit trace and positivity of states.
pub const STATE_TOL: f64 = 1e-10;

/// A density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    /// Projector onto a Haar-random ket.
    Pure,
    /// Hilbert–Schmidt distributed mixed state.
    Mixed,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidState(format!(
                "density matrix must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let herm = mat.hermitian_deviation();
        if herm > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let mat = mat.hermitian_part();
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, not 1")));
        }
        let min_ev = mat.min_eigenvalue();
        if min_ev < -STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (eigenvalue {min_ev:e})"
            )));
        }
        Ok(Self { mat })
    }

    /// `|ψ⟩⟨ψ|/⟨ψ|ψ⟩`.
    pub fn pure(ket: &Ket) -> Result<Self> {
        let ket = super::matrix::normalized(ket.clone())?;
        Self::new(ComplexMatrix::projector(&ket))
    }

    /// `𝟙/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(d).scale(1.0 / d as f64),
        }
    }

    pub fn d(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn purity(&self) -> f64 {
        purity(self)
    }
}

/// `tr(ρ²)`, in `[1/d, 1]`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.mat.trace_product(&rho.mat).re
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    c(re, im)
}

/// A reproducible random state: `seed` fully determines the output.
pub fn random_state(d: usize, kind: StateKind, seed: u64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::InvalidState(format!(
            "random states need d >= 2, got {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        StateKind::Pure => {
            let ket = Ket::from_fn(d, |_, _| gaussian(&mut rng));
            DensityMatrix::pure(&ket)
        }
        StateKind::Mixed => {
            let g = DMatrix::from_fn(d, d, |_, _| gaussian(&mut rng));
            let gg = ComplexMatrix::from_inner(&g * g.adjoint());
            let tr = gg.trace().re;
            DensityMatrix::new(gg.scale(1.0 / tr))
        }
    }
}

/// `count` states with seeds `seed, seed + 1, ...`.
pub fn random_states(d: usize, kind: StateKind, count: usize, seed: u64) -> Result<Vec<DensityMatrix>> {
    (0..count as u64)
        .map(|i| random_state(d, kind, seed.wrapping_add(i)))
        .collect()
}
