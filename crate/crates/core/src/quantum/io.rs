//! JSON file formats for states, frames and custom POVMs.
//!
//! ```text
//! state: {"d": 2, "re": [[...], ...], "im": [[...], ...]}
//! frame: {"d": 2, "vectors": [{"re": [...], "im": [...]}, ...]}
//! povm:  {"d": 2, "elements": [{"re": [[...]], "im": [[...]]}, ...]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::etf::Frame;
use super::matrix::{c, ComplexMatrix, Ket};
use super::povm::{Family, Povm};
use super::state::DensityMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub d: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VectorJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameFile {
    pub d: usize,
    pub vectors: Vec<VectorJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PovmFile {
    pub d: usize,
    pub elements: Vec<MatrixJson>,
}

fn matrix_with_dim(re: &[Vec<f64>], im: &[Vec<f64>], d: usize) -> Result<ComplexMatrix> {
    let m = ComplexMatrix::from_parts(re, im)?;
    if m.rows() != d || m.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: m.rows().max(m.cols()),
        });
    }
    Ok(m)
}

impl StateFile {
    pub fn into_state(self) -> Result<DensityMatrix> {
        DensityMatrix::new(matrix_with_dim(&self.re, &self.im, self.d)?)
    }

    pub fn from_state(rho: &DensityMatrix) -> Self {
        let (re, im) = rho.matrix().to_parts();
        Self { d: rho.d(), re, im }
    }
}

impl FrameFile {
    pub fn into_frame(self) -> Result<Frame> {
        let vectors = self
            .vectors
            .into_iter()
            .map(|v| {
                if v.re.len() != self.d || v.im.len() != self.d {
                    return Err(Error::DimensionMismatch {
                        expected: self.d,
                        got: v.re.len().max(v.im.len()),
                    });
                }
                Ok(Ket::from_iterator(
                    self.d,
                    v.re.iter().zip(&v.im).map(|(&r, &i)| c(r, i)),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Frame::new(self.d, vectors)
    }

    pub fn from_frame(frame: &Frame) -> Self {
        Self {
            d: frame.d(),
            vectors: frame
                .vectors()
                .iter()
                .map(|v| VectorJson {
                    re: v.iter().map(|z| z.re).collect(),
                    im: v.iter().map(|z| z.im).collect(),
                })
                .collect(),
        }
    }
}

impl PovmFile {
    /// Validates resolution of the identity and positivity; tagged `custom`.
    pub fn into_povm(self) -> Result<Povm> {
        let elems = self
            .elements
            .iter()
            .map(|m| matrix_with_dim(&m.re, &m.im, self.d))
            .collect::<Result<Vec<_>>>()?;
        Povm::new(self.d, elems, Family::Custom)
    }

    pub fn from_povm(povm: &Povm) -> Self {
        Self {
            d: povm.d(),
            elements: povm
                .elements()
                .iter()
                .map(|e| {
                    let (re, im) = e.to_parts();
                    MatrixJson { re, im }
                })
                .collect(),
        }
    }
}

pub fn state_from_json(s: &str) -> Result<DensityMatrix> {
    serde_json::from_str::<StateFile>(s)?.into_state()
}

pub fn frame_from_json(s: &str) -> Result<Frame> {
    serde_json::from_str::<FrameFile>(s)?.into_frame()
}

pub fn povm_from_json(s: &str) -> Result<Povm> {
    serde_json::from_str::<PovmFile>(s)?.into_povm()
}

pub fn read_state(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    state_from_json(&std::fs::read_to_string(path)?)
}

pub fn read_frame(path: impl AsRef<Path>) -> Result<Frame> {
    frame_from_json(&std::fs::read_to_string(path)?)
}

pub fn read_povm(path: impl AsRef<Path>) -> Result<Povm> {
    povm_from_json(&std::fs::read_to_string(path)?)
}
