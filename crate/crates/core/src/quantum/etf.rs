//! Equiangular tight frames and their POVMs `M_j = (d/n)|φ_j⟩⟨φ_j|`.
//!
//! A unit-norm frame of `n` vectors in `C^d` is tight when
//! `Σ_j |φ_j⟩⟨φ_j| = (n/d) 𝟙`, and equiangular when every pair has the same
//! squared overlap `c`. For an ETF, `c d = (n - d)/(n - 1)` and `n ≤ d²`.

use std::f64::consts::PI;

use serde::Serialize;

use super::matrix::{c, ComplexMatrix, Ket};
use super::povm::{Family, Povm};
use crate::error::{Error, Result};

pub const FRAME_TOL: f64 = 1e-9;

/// A finite list of vectors in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    d: usize,
    vectors: Vec<Ket>,
}

impl Frame {
    pub fn new(d: usize, vectors: Vec<Ket>) -> Result<Self> {
        if d == 0 || vectors.is_empty() {
            return Err(Error::InvalidMeasurement("a frame needs d >= 1 and one vector".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: v.len() });
        }
        Ok(Self { d, vectors })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Ket] {
        &self.vectors
    }
}

/// The `n = d + 1` harmonic simplex frame: rows of the `(d+1)`-point Fourier
/// matrix with the constant column removed. Squared overlaps are `1/d²`.
pub fn simplex_frame(d: usize) -> Result<Frame> {
    if d < 2 {
        return Err(Error::UnsupportedDimension {
            d,
            reason: "the simplex ETF needs d >= 2".into(),
        });
    }
    let n = d + 1;
    let s = 1.0 / (d as f64).sqrt();
    let vectors = (0..n)
        .map(|j| {
            Ket::from_fn(d, |m, _| {
                let ang = 2.0 * PI * (j * (m + 1)) as f64 / n as f64;
                c(s * ang.cos(), s * ang.sin())
            })
        })
        .collect();
    Frame::new(d, vectors)
}

/// The simplex ETF POVM; `d = 2` gives the trine.
pub fn etf_simplex(d: usize) -> Result<Povm> {
    etf_povm(&simplex_frame(d)?)
}

/// Validates `frame` as an ETF and returns its POVM.
pub fn etf_povm(frame: &Frame) -> Result<Povm> {
    let report = etf_validate(frame);
    if !report.is_etf {
        return Err(Error::InvalidMeasurement(format!(
            "frame is not an equiangular tight frame: {}",
            report.issues.join("; ")
        )));
    }
    let (d, n) = (frame.d(), frame.n());
    let w = d as f64 / n as f64;
    let elems = frame
        .vectors()
        .iter()
        .map(|v| ComplexMatrix::projector(v).scale(w))
        .collect();
    Povm::new(
        d,
        elems,
        Family::Etf {
            n,
            d,
            c: report.expected_c,
            s: report.frame_constant,
        },
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct PairDiagnostic {
    pub i: usize,
    pub j: usize,
    pub overlap: f64,
    pub deviation: f64,
}

/// Outcome of [`etf_validate`].
#[derive(Debug, Clone, Serialize)]
pub struct EtfReport {
    pub d: usize,
    pub n: usize,
    pub unit_norm: bool,
    pub max_norm_deviation: f64,
    pub tight: bool,
    /// `n/d`
    pub frame_constant: f64,
    pub tight_deviation: f64,
    pub equiangular: bool,
    /// Mean squared overlap over distinct pairs.
    pub measured_c: f64,
    /// `(n - d)/(d (n - 1))`
    pub expected_c: f64,
    pub equiangular_deviation: f64,
    pub within_gerzon_bound: bool,
    pub is_etf: bool,
    pub issues: Vec<String>,
    /// Worst offending pairs, at most 16.
    pub offending_pairs: Vec<PairDiagnostic>,
    pub notes: Vec<String>,
}

pub fn etf_validate(frame: &Frame) -> EtfReport {
    let (d, n) = (frame.d(), frame.n());
    let (df, nf) = (d as f64, n as f64);
    let mut issues = Vec::new();

    let max_norm_deviation = frame
        .vectors()
        .iter()
        .map(|v| (v.norm_squared() - 1.0).abs())
        .fold(0.0, f64::max);
    let unit_norm = max_norm_deviation <= FRAME_TOL;
    if !unit_norm {
        issues.push(format!("vectors are not unit norm (deviation {max_norm_deviation:e})"));
    }

    let frame_constant = nf / df;
    let frame_op = frame
        .vectors()
        .iter()
        .fold(ComplexMatrix::zeros(d, d), |acc, v| &acc + &ComplexMatrix::projector(v));
    let tight_deviation = frame_op.max_abs_diff(&ComplexMatrix::identity(d).scale(frame_constant));
    let tight = tight_deviation <= FRAME_TOL;
    if !tight {
        issues.push(format!("frame is not tight (deviation {tight_deviation:e})"));
    }

    let expected_c = if n > 1 { (nf - df) / (df * (nf - 1.0)) } else { 0.0 };
    let mut pairs = Vec::new();
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let o = frame.vectors()[i].dotc(&frame.vectors()[j]).norm_sqr();
            sum += o;
            pairs.push(PairDiagnostic { i, j, overlap: o, deviation: (o - expected_c).abs() });
        }
    }
    let measured_c = if pairs.is_empty() { 0.0 } else { sum / pairs.len() as f64 };
    let equiangular_deviation = pairs.iter().map(|p| p.deviation).fold(0.0, f64::max);
    let equiangular = equiangular_deviation <= FRAME_TOL;
    if !equiangular {
        issues.push(format!(
            "frame is not equiangular with c = {expected_c} (deviation {equiangular_deviation:e})"
        ));
    }
    pairs.retain(|p| p.deviation > FRAME_TOL);
    pairs.sort_by(|a, b| b.deviation.total_cmp(&a.deviation));
    pairs.truncate(16);

    let within_gerzon_bound = n >= d && n <= d * d;
    if !within_gerzon_bound {
        issues.push(format!("an ETF needs d <= n <= d^2, got n = {n}, d = {d}"));
    }

    let is_etf = issues.is_empty();
    let mut notes = Vec::new();
    if is_etf && n > d {
        notes.push(format!(
            "an ETF with {n} elements also exists in n - d = {} dimensions",
            n - d
        ));
    }
    if is_etf && n == d * d {
        notes.push("n = d^2: this frame defines a SIC-POVM".into());
    }

    EtfReport {
        d,
        n,
        unit_norm,
        max_norm_deviation,
        tight,
        frame_constant,
        tight_deviation,
        equiangular,
        measured_c,
        expected_c,
        equiangular_deviation,
        within_gerzon_bound,
        is_etf,
        issues,
        offending_pairs: pairs,
        notes,
    }
}
