use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::state::DensityMatrix;
use crate::entropy::Distribution;
use crate::error::{Error, Result};

/// Identity-resolution and Gram-condition tolerance.
pub const POVM_TOL: f64 = 1e-9;
/// Positivity tolerance on element eigenvalues.
pub const PSD_TOL: f64 = 1e-10;

/// Which special family a measurement belongs to, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// One orthonormal basis of a MUB set.
    MubBasis,
    /// One measurement of a MUM set of efficiency `kappa`.
    Mum { kappa: f64 },
    /// POVM `(d/n)|φ_j⟩⟨φ_j|` of an equiangular tight frame.
    Etf { n: usize, d: usize, c: f64, s: f64 },
    /// Rank-one symmetric informationally complete POVM.
    Sic,
    /// General SIC-POVM with `tr Λ_j² = theta`.
    Gsic { theta: f64 },
    Custom,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::MubBasis => "mub",
            Family::Mum { .. } => "mum",
            Family::Etf { .. } => "etf",
            Family::Sic => "sic",
            Family::Gsic { .. } => "gsic",
            Family::Custom => "custom",
        }
    }

    /// Expected `(tr E_j, tr E_j², tr E_i E_j)` and element count, if the
    /// family fixes them.
    fn gram_targets(&self, d: usize) -> Option<(usize, f64, f64, f64)> {
        let df = d as f64;
        match *self {
            Family::MubBasis => Some((d, 1.0, 1.0, 0.0)),
            Family::Mum { kappa } => Some((d, 1.0, kappa, (1.0 - kappa) / (df - 1.0))),
            Family::Etf { n, c, .. } => {
                let w = df / n as f64;
                Some((n, w, w * w, w * w * c))
            }
            Family::Sic => {
                let n = d * d;
                Some((n, 1.0 / df, 1.0 / (df * df), 1.0 / (df * df * (df + 1.0))))
            }
            Family::Gsic { theta } => Some((
                d * d,
                1.0 / df,
                theta,
                (1.0 - theta * df) / (df * (df * df - 1.0)),
            )),
            Family::Custom => None,
        }
    }
}

/// Deviations measured by [`Povm::validate`].
#[derive(Debug, Clone, Serialize)]
pub struct PovmReport {
    pub family: &'static str,
    pub d: usize,
    pub elements: usize,
    pub resolution_deviation: f64,
    pub min_eigenvalue: f64,
    pub gram_deviation: Option<f64>,
    pub issues: Vec<String>,
    pub valid: bool,
}

/// A positive operator-valued measure on `C^d`.
#[derive(Debug, Clone)]
pub struct Povm {
    d: usize,
    elements: Vec<ComplexMatrix>,
    family: Family,
}

impl Povm {
    /// Builds and validates a POVM, rejecting it when any check fails.
    pub fn new(d: usize, elements: Vec<ComplexMatrix>, family: Family) -> Result<Self> {
        let povm = Self::unchecked(d, elements, family)?;
        let report = povm.validate();
        if !report.valid {
            return Err(Error::InvalidMeasurement(report.issues.join("; ")));
        }
        Ok(povm)
    }

    pub(crate) fn unchecked(d: usize, elements: Vec<ComplexMatrix>, family: Family) -> Result<Self> {
        if d == 0 || elements.is_empty() {
            return Err(Error::InvalidMeasurement("a POVM needs d >= 1 and at least one element".into()));
        }
        for (j, e) in elements.iter().enumerate() {
            if e.rows() != d || e.cols() != d {
                return Err(Error::InvalidMeasurement(format!(
                    "element {j} is {}x{}, expected {d}x{d}",
                    e.rows(),
                    e.cols()
                )));
            }
        }
        Ok(Self { d, elements, family })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Re-tags the POVM after checking the new family's Gram conditions.
    pub fn with_family(self, family: Family) -> Result<Self> {
        Self::new(self.d, self.elements, family)
    }

    /// Checks identity resolution, positivity and family Gram conditions.
    pub fn validate(&self) -> PovmReport {
        let mut issues = Vec::new();
        let mut sum = ComplexMatrix::zeros(self.d, self.d);
        let mut min_eigenvalue = f64::INFINITY;
        for (j, e) in self.elements.iter().enumerate() {
            let herm = e.hermitian_deviation();
            if herm > PSD_TOL {
                issues.push(format!("element {j} is not Hermitian (deviation {herm:e})"));
            }
            let ev = e.min_eigenvalue();
            min_eigenvalue = min_eigenvalue.min(ev);
            if ev < -PSD_TOL {
                issues.push(format!("element {j} has negative eigenvalue {ev:e}"));
            }
            sum = &sum + e;
        }
        let resolution_deviation = sum.max_abs_diff(&ComplexMatrix::identity(self.d));
        if resolution_deviation > POVM_TOL {
            issues.push(format!(
                "elements do not sum to the identity (deviation {resolution_deviation:e})"
            ));
        }

        let gram_deviation = self.family.gram_targets(self.d).map(|(count, tr1, diag, off)| {
            if count != self.elements.len() {
                issues.push(format!(
                    "{} family needs {count} elements, found {}",
                    self.family.name(),
                    self.elements.len()
                ));
                return f64::INFINITY;
            }
            let mut worst: f64 = 0.0;
            for (i, ei) in self.elements.iter().enumerate() {
                worst = worst.max((ei.trace().re - tr1).abs());
                for (j, ej) in self.elements.iter().enumerate().skip(i) {
                    let want = if i == j { diag } else { off };
                    worst = worst.max((ei.trace_product(ej).re - want).abs());
                }
            }
            if worst > POVM_TOL {
                issues.push(format!(
                    "{} Gram conditions violated (deviation {worst:e})",
                    self.family.name()
                ));
            }
            worst
        });

        PovmReport {
            family: self.family.name(),
            d: self.d,
            elements: self.elements.len(),
            resolution_deviation,
            min_eigenvalue,
            gram_deviation,
            valid: issues.is_empty(),
            issues,
        }
    }
}

/// Outcome probabilities `p_j = tr(M_j ρ)`.
pub fn born_probabilities(povm: &Povm, rho: &DensityMatrix) -> Result<Distribution> {
    if povm.d() != rho.d() {
        return Err(Error::DimensionMismatch {
            expected: povm.d(),
            got: rho.d(),
        });
    }
    let probs = povm
        .elements()
        .iter()
        .map(|e| e.trace_product(rho.matrix()).re)
        .collect();
    Distribution::new(probs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SetKind {
    Mub,
    Mum { kappa: f64 },
}

/// Measurements in a common dimension with pairwise `tr(E_i E'_j) = 1/d`.
#[derive(Debug, Clone)]
pub struct MeasurementSet {
    d: usize,
    measurements: Vec<Povm>,
    kind: SetKind,
}

impl MeasurementSet {
    pub fn new(measurements: Vec<Povm>, kind: SetKind) -> Result<Self> {
        let d = measurements
            .first()
            .map(Povm::d)
            .ok_or_else(|| Error::InvalidMeasurement("empty measurement set".into()))?;
        let set = Self { d, measurements, kind };
        let worst = set.cross_deviation()?;
        if worst > POVM_TOL {
            return Err(Error::InvalidMeasurement(format!(
                "measurements are not mutually unbiased (deviation {worst:e})"
            )));
        }
        Ok(set)
    }

    /// Largest `|tr(E_i E'_j) - 1/d|` across distinct measurements.
    pub fn cross_deviation(&self) -> Result<f64> {
        let inv_d = 1.0 / self.d as f64;
        let mut worst: f64 = 0.0;
        for (a, pa) in self.measurements.iter().enumerate() {
            if pa.d() != self.d {
                return Err(Error::DimensionMismatch {
                    expected: self.d,
                    got: pa.d(),
                });
            }
            let want_family = match self.kind {
                SetKind::Mub => matches!(pa.family(), Family::MubBasis),
                SetKind::Mum { kappa } => {
                    matches!(pa.family(), Family::Mum { kappa: k } if (k - kappa).abs() < POVM_TOL)
                }
            };
            if !want_family {
                return Err(Error::InvalidMeasurement(format!(
                    "measurement {a} has family {}, which does not match the set",
                    pa.family().name()
                )));
            }
            for pb in self.measurements.iter().skip(a + 1) {
                for ei in pa.elements() {
                    for ej in pb.elements() {
                        worst = worst.max((ei.trace_product(ej).re - inv_d).abs());
                    }
                }
            }
        }
        Ok(worst)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn measurements(&self) -> &[Povm] {
        &self.measurements
    }

    pub fn len(&self) -> usize {
        self.measurements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measurements.is_empty()
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    /// Efficiency of the set; 1 for MUBs.
    pub fn kappa(&self) -> f64 {
        match self.kind {
            SetKind::Mub => 1.0,
            SetKind::Mum { kappa } => kappa,
        }
    }

    /// The first `m` measurements as a set of their own.
    pub fn take(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.measurements.len() {
            return Err(Error::Domain(format!(
                "subset size must lie in [1, {}], got {m}",
                self.measurements.len()
            )));
        }
        Ok(Self {
            d: self.d,
            measurements: self.measurements[..m].to_vec(),
            kind: self.kind,
        })
    }
}
