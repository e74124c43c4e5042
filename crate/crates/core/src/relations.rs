//! Entropic uncertainty relations for MUBs, MUMs, ETF-based measurements,
//! SIC-POVMs and general SIC-POVMs.
//!
//! Each relation feeds an upper estimate of the index of coincidence (exact
//! for SICs and general SICs) into the polygonal bound. Averaged relations
//! over several measurements use convexity of `L_α`; their Rényi forms hold
//! only for `α ∈ [1, 2]`. Single-measurement Rényi forms hold on `[0, 2]`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{maxp_lower, BoundValue, PolygonalBound};
use crate::entropy::{
    coincidence, min_entropy, renyi, tsallis, tsallis_to_renyi, EntropyOrder,
};
use crate::error::{domain, Error, Result};
use crate::quantum::{born_probabilities, DensityMatrix, Family, MeasurementSet, Povm, SetKind};

/// Smallest slack the certification accepts.
pub const SLACK_TOL: f64 = 1e-9;
const PURITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Mub,
    Mum,
    Etf,
    Sic,
    Gsic,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntropyKind {
    Tsallis,
    Renyi,
    Min,
}

/// Measurement family, its parameters, and the purity `tr ρ²` of the state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioParams {
    pub family: FamilyKind,
    pub d: usize,
    #[serde(rename = "M")]
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub kappa: Option<f64>,
    pub theta: Option<f64>,
    pub c: Option<f64>,
    pub s: Option<f64>,
    pub purity: f64,
}

fn check_purity(d: usize, purity: f64) -> Result<f64> {
    let lo = 1.0 / d as f64;
    if !purity.is_finite() || purity < lo - PURITY_TOL || purity > 1.0 + PURITY_TOL {
        return Err(domain(format!(
            "purity must lie in [1/d, 1] = [{lo}, 1] for d = {d}, got {purity}"
        )));
    }
    Ok(purity.clamp(lo, 1.0))
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(domain(format!("dimension d must be >= 2, got {d}")));
    }
    Ok(())
}

impl ScenarioParams {
    fn base(family: FamilyKind, d: usize, purity: f64) -> Result<Self> {
        check_d(d)?;
        Ok(Self {
            family,
            d,
            m: None,
            n: None,
            kappa: None,
            theta: None,
            c: None,
            s: None,
            purity: check_purity(d, purity)?,
        })
    }

    /// `m` mutually unbiased bases, `1 ≤ m ≤ d + 1`.
    pub fn mub(d: usize, m: usize, purity: f64) -> Result<Self> {
        let mut p = Self::base(FamilyKind::Mub, d, purity)?;
        if m == 0 || m > d + 1 {
            return Err(domain(format!(
                "number of bases M must lie in [1, d + 1] = [1, {}], got {m}",
                d + 1
            )));
        }
        p.m = Some(m);
        Ok(p)
    }

    /// `m` mutually unbiased measurements of efficiency `kappa ∈ [1/d, 1]`.
    pub fn mum(d: usize, m: usize, kappa: f64, purity: f64) -> Result<Self> {
        let mut p = Self::base(FamilyKind::Mum, d, purity)?;
        if m == 0 || m > d + 1 {
            return Err(domain(format!(
                "number of measurements M must lie in [1, d + 1] = [1, {}], got {m}",
                d + 1
            )));
        }
        let lo = 1.0 / d as f64;
        if !(kappa >= lo - 1e-12 && kappa <= 1.0 + 1e-12) {
            return Err(domain(format!(
                "efficiency kappa must lie in [1/d, 1] = [{lo}, 1], got {kappa}"
            )));
        }
        p.m = Some(m);
        p.kappa = Some(kappa.clamp(lo, 1.0));
        Ok(p)
    }

    /// ETF with `n` vectors in `d` dimensions; `c` and `S` follow from `(n, d)`.
    pub fn etf(d: usize, n: usize, purity: f64) -> Result<Self> {
        let mut p = Self::base(FamilyKind::Etf, d, purity)?;
        if n < d || n > d * d || n < 2 {
            return Err(domain(format!(
                "an ETF needs d <= n <= d^2 (and n >= 2), got n = {n}, d = {d}"
            )));
        }
        let (df, nf) = (d as f64, n as f64);
        p.n = Some(n);
        p.c = Some((nf - df) / (df * (nf - 1.0)));
        p.s = Some(nf / df);
        Ok(p)
    }

    pub fn sic(d: usize, purity: f64) -> Result<Self> {
        let mut p = Self::base(FamilyKind::Sic, d, purity)?;
        p.n = Some(d * d);
        Ok(p)
    }

    /// General SIC with `θ ∈ (1/d³, 1/d²]`.
    pub fn gsic(d: usize, theta: f64, purity: f64) -> Result<Self> {
        let mut p = Self::base(FamilyKind::Gsic, d, purity)?;
        let df = d as f64;
        let (lo, hi) = (df.powi(-3), df.powi(-2));
        if !(theta > lo) || theta > hi + 1e-15 {
            return Err(domain(format!(
                "theta must lie in (1/d^3, 1/d^2] = ({lo}, {hi}], got {theta}"
            )));
        }
        p.n = Some(d * d);
        p.theta = Some(theta.min(hi));
        Ok(p)
    }

    pub fn with_purity(mut self, purity: f64) -> Result<Self> {
        self.purity = check_purity(self.d, purity)?;
        Ok(self)
    }

    /// Number of outcomes of each measurement.
    pub fn outcomes(&self) -> usize {
        match self.family {
            FamilyKind::Mub | FamilyKind::Mum => self.d,
            _ => self.n.unwrap_or(self.d),
        }
    }

    /// Effective `θ`: `1/d²` for a rank-one SIC.
    fn sic_theta(&self) -> Result<f64> {
        match self.family {
            FamilyKind::Sic => Ok(1.0 / (self.d * self.d) as f64),
            FamilyKind::Gsic => Ok(self.theta.expect("gsic params carry theta")),
            _ => Err(domain("this relation needs a SIC or general SIC scenario")),
        }
    }

    /// Upper estimate (exact for SIC and general SIC) of the mean index of
    /// coincidence of the measured distributions.
    pub fn coincidence_abscissa(&self) -> Result<f64> {
        let (df, p) = (self.d as f64, self.purity);
        Ok(match self.family {
            FamilyKind::Mub => {
                let m = self.m.expect("mub params carry M") as f64;
                (p * df + m - 1.0) / (m * df)
            }
            FamilyKind::Mum => {
                let m = self.m.expect("mum params carry M") as f64;
                let k = self.kappa.expect("mum params carry kappa");
                (m - 1.0) / (m * df) + (1.0 - k + (k * df - 1.0) * p) / (m * (df - 1.0))
            }
            FamilyKind::Etf => {
                let (c, s) = (self.c.expect("etf c"), self.s.expect("etf S"));
                (s * c + (1.0 - c) * p) / (s * s)
            }
            FamilyKind::Sic => (1.0 + p) / (df * (df + 1.0)),
            FamilyKind::Gsic => {
                let t = self.sic_theta()?;
                (df * (1.0 - t * df) + (t * df.powi(3) - 1.0) * p) / (df * (df * df - 1.0))
            }
            FamilyKind::Custom => {
                return Err(domain("custom measurements have no coincidence estimate"))
            }
        })
    }
}

/// An evaluated bound, optionally compared with the entropy actually measured.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub family: FamilyKind,
    pub d: usize,
    #[serde(rename = "M")]
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub kappa: Option<f64>,
    pub theta: Option<f64>,
    pub alpha: f64,
    pub kind: EntropyKind,
    pub purity: f64,
    pub bound: f64,
    pub achieving_k: usize,
    pub measured: Option<f64>,
    pub slack: Option<f64>,
    /// Upper side of the min-entropy sandwich.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
}

impl BoundReport {
    fn new(params: &ScenarioParams, alpha: f64, kind: EntropyKind, value: BoundValue) -> Self {
        Self {
            family: params.family,
            d: params.d,
            m: params.m,
            n: params.n,
            kappa: params.kappa,
            theta: params.theta,
            alpha,
            kind,
            purity: params.purity,
            bound: value.value,
            achieving_k: value.k,
            measured: None,
            slack: None,
            upper: None,
        }
    }

    /// Records the attained entropy and the slack `measured - bound`.
    pub fn with_measured(mut self, measured: f64) -> Self {
        self.measured = Some(measured);
        self.slack = Some(measured - self.bound);
        self
    }
}

/// Tsallis bound, and the Rényi bound where the relation is proved for `alpha`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationBounds {
    pub tsallis: BoundReport,
    pub renyi: Option<BoundReport>,
}

fn expect_family(params: &ScenarioParams, family: FamilyKind) -> Result<()> {
    if params.family != family {
        return Err(domain(format!(
            "expected {family:?} scenario parameters, got {:?}",
            params.family
        )));
    }
    Ok(())
}

fn evaluate(params: &ScenarioParams, alpha: EntropyOrder, renyi_from: f64) -> Result<RelationBounds> {
    let poly = PolygonalBound::new(alpha, params.outcomes())?;
    let x = params.coincidence_abscissa()?;
    let t = poly.tsallis(x)?;
    let tsallis = BoundReport::new(params, alpha.value(), EntropyKind::Tsallis, t);
    let renyi = if alpha.value() >= renyi_from {
        let r = BoundValue {
            value: tsallis_to_renyi(t.value, alpha)?,
            k: t.k,
        };
        Some(BoundReport::new(params, alpha.value(), EntropyKind::Renyi, r))
    } else {
        None
    };
    Ok(RelationBounds { tsallis, renyi })
}

/// Tsallis bound on the entropy averaged over `M` MUBs.
pub fn mub_avg_bound(params: &ScenarioParams, alpha: EntropyOrder) -> Result<BoundReport> {
    expect_family(params, FamilyKind::Mub)?;
    Ok(evaluate(params, alpha, 1.0)?.tsallis)
}

/// Averaged Tsallis (`α ∈ [0, 2]`) and Rényi (`α ∈ [1, 2]`) bounds for MUMs.
pub fn mum_bounds(params: &ScenarioParams, alpha: EntropyOrder) -> Result<RelationBounds> {
    expect_family(params, FamilyKind::Mum)?;
    evaluate(params, alpha, 1.0)
}

pub fn etf_bounds(params: &ScenarioParams, alpha: EntropyOrder) -> Result<RelationBounds> {
    expect_family(params, FamilyKind::Etf)?;
    evaluate(params, alpha, 0.0)
}

pub fn sic_bounds(params: &ScenarioParams, alpha: EntropyOrder) -> Result<RelationBounds> {
    expect_family(params, FamilyKind::Sic)?;
    evaluate(params, alpha, 0.0)
}

pub fn gsic_bounds(params: &ScenarioParams, alpha: EntropyOrder) -> Result<RelationBounds> {
    expect_family(params, FamilyKind::Gsic)?;
    evaluate(params, alpha, 0.0)
}

/// The Tsallis bound for any family.
pub fn tsallis_bound(params: &ScenarioParams, alpha: EntropyOrder) -> Result<BoundReport> {
    Ok(evaluate(params, alpha, 0.0)?.tsallis)
}

/// The Rényi bound for any family; averaged families refuse `α < 1`.
pub fn renyi_bound(params: &ScenarioParams, alpha: EntropyOrder) -> Result<BoundReport> {
    let averaged = matches!(params.family, FamilyKind::Mub | FamilyKind::Mum);
    if averaged && alpha.value() < 1.0 {
        return Err(domain(format!(
            "the averaged Renyi relation for {:?} sets holds only for alpha in [1, 2], got {}",
            params.family,
            alpha.value()
        )));
    }
    evaluate(params, alpha, 0.0)?
        .renyi
        .ok_or_else(|| domain("Renyi bound unavailable"))
}

/// Two-sided estimate on the min-entropy of a SIC or general SIC.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinEntropySandwich {
    pub lower: f64,
    pub upper: f64,
}

pub fn min_entropy_sandwich(params: &ScenarioParams) -> Result<MinEntropySandwich> {
    let theta = params.sic_theta()?;
    let df = params.d as f64;
    let rad_state = df * params.purity - 1.0;
    if rad_state < -PURITY_TOL {
        return Err(domain(format!(
            "d * purity - 1 = {rad_state} is negative; purity must be >= 1/d"
        )));
    }
    let rad_theta = (theta * df.powi(3) - 1.0).max(0.0);
    let lower = 2.0 * df.ln() - (1.0 + rad_theta.sqrt() * rad_state.max(0.0).sqrt()).ln();
    let x = params.coincidence_abscissa()?;
    let upper = -maxp_lower(x)?.ln();
    Ok(MinEntropySandwich { lower, upper })
}

fn min_entropy_report(params: &ScenarioParams) -> Result<BoundReport> {
    let s = min_entropy_sandwich(params)?;
    let mut r = BoundReport::new(
        params,
        f64::INFINITY,
        EntropyKind::Min,
        BoundValue { value: s.lower, k: 0 },
    );
    r.upper = Some(s.upper);
    Ok(r)
}

/// What [`certify`] measures.
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    Single(&'a Povm),
    Set(&'a MeasurementSet),
}

#[derive(Debug, Clone, Serialize)]
pub struct Certification {
    pub reports: Vec<BoundReport>,
    pub min_slack: f64,
    /// Smallest `upper - measured` over min-entropy reports, if any.
    pub min_upper_slack: Option<f64>,
    pub passed: bool,
    pub notes: Vec<String>,
}

fn params_for_povm(povm: &Povm, purity: f64) -> Result<Option<ScenarioParams>> {
    let d = povm.d();
    Ok(Some(match povm.family() {
        Family::MubBasis => ScenarioParams::mub(d, 1, purity)?,
        Family::Mum { kappa } => ScenarioParams::mum(d, 1, kappa, purity)?,
        Family::Etf { n, .. } => ScenarioParams::etf(d, n, purity)?,
        Family::Sic => ScenarioParams::sic(d, purity)?,
        Family::Gsic { theta } => ScenarioParams::gsic(d, theta, purity)?,
        Family::Custom => return Ok(None),
    }))
}

fn certify_state(target: Target<'_>, rho: &DensityMatrix, alphas: &[EntropyOrder]) -> Result<Vec<BoundReport>> {
    let purity = rho.purity();
    let mut out = Vec::new();
    match target {
        Target::Set(set) => {
            let m = set.len();
            let params = match set.kind() {
                SetKind::Mub => ScenarioParams::mub(set.d(), m, purity)?,
                SetKind::Mum { kappa } => ScenarioParams::mum(set.d(), m, kappa, purity)?,
            };
            let dists = set
                .measurements()
                .iter()
                .map(|p| born_probabilities(p, rho))
                .collect::<Result<Vec<_>>>()?;
            for &alpha in alphas {
                let b = evaluate(&params, alpha, 1.0)?;
                let avg_t = dists.iter().map(|p| tsallis(p, alpha)).sum::<f64>() / m as f64;
                out.push(b.tsallis.with_measured(avg_t));
                if let Some(r) = b.renyi {
                    let avg_r = dists.iter().map(|p| renyi(p, alpha)).sum::<f64>() / m as f64;
                    out.push(r.with_measured(avg_r));
                }
            }
        }
        Target::Single(povm) => {
            let dist = born_probabilities(povm, rho)?;
            match params_for_povm(povm, purity)? {
                Some(params) => {
                    let renyi_from = if matches!(params.family, FamilyKind::Mub | FamilyKind::Mum) {
                        1.0
                    } else {
                        0.0
                    };
                    for &alpha in alphas {
                        let b = evaluate(&params, alpha, renyi_from)?;
                        out.push(b.tsallis.with_measured(tsallis(&dist, alpha)));
                        if let Some(r) = b.renyi {
                            out.push(r.with_measured(renyi(&dist, alpha)));
                        }
                    }
                    if matches!(params.family, FamilyKind::Sic | FamilyKind::Gsic) {
                        out.push(min_entropy_report(&params)?.with_measured(min_entropy(&dist)));
                    }
                }
                None => {
                    let ic = coincidence(&dist);
                    let params = ScenarioParams {
                        family: FamilyKind::Custom,
                        d: povm.d(),
                        m: None,
                        n: Some(povm.len()),
                        kappa: None,
                        theta: None,
                        c: None,
                        s: None,
                        purity,
                    };
                    for &alpha in alphas {
                        if povm.len() < 2 {
                            break;
                        }
                        let poly = PolygonalBound::new(alpha, povm.len())?;
                        let t = poly.tsallis(ic)?;
                        out.push(
                            BoundReport::new(&params, alpha.value(), EntropyKind::Tsallis, t)
                                .with_measured(tsallis(&dist, alpha)),
                        );
                        let r = poly.renyi(ic)?;
                        out.push(
                            BoundReport::new(&params, alpha.value(), EntropyKind::Renyi, r)
                                .with_measured(renyi(&dist, alpha)),
                        );
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Measures every state, evaluates the applicable relations for every order
/// and reports the smallest slack.
pub fn certify(target: Target<'_>, states: &[DensityMatrix], alphas: &[EntropyOrder]) -> Result<Certification> {
    for a in alphas {
        a.check_within(0.0, 2.0)?;
    }
    let d = match target {
        Target::Single(p) => p.d(),
        Target::Set(s) => s.d(),
    };
    if let Some(bad) = states.iter().find(|r| r.d() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: bad.d() });
    }
    let per_state = states
        .par_iter()
        .map(|rho| certify_state(target, rho, alphas))
        .collect::<Result<Vec<_>>>()?;
    let reports: Vec<BoundReport> = per_state.into_iter().flatten().collect();

    let min_slack = reports
        .iter()
        .filter_map(|r| r.slack)
        .fold(f64::INFINITY, f64::min);
    let min_upper_slack = reports
        .iter()
        .filter_map(|r| Some(r.upper? - r.measured?))
        .reduce(f64::min);
    let mut notes = Vec::new();
    if let Target::Single(p) = target {
        if p.family() == Family::Custom {
            notes.push(
                "custom POVM without family parameters: only the generic single-measurement bound from the measured coincidence is applied"
                    .to_string(),
            );
        }
    }
    let passed = min_slack >= -SLACK_TOL && min_upper_slack.is_none_or(|u| u >= -SLACK_TOL);
    Ok(Certification {
        reports,
        min_slack,
        min_upper_slack,
        passed,
        notes,
    })
}
