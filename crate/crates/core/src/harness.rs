//! Sampling, extremal distributions, verification sweeps and diagram datasets.
//!
//! Uniform simplex samples rarely come near the boundary of the information
//! diagram, so every sweep also injects the families that realize it:
//! mixtures of `U_k` and `U_{k+1}`, the clustered and flat maximal-probability
//! extremals, and small perturbations of uniform distributions.
//!
//! Samples are drawn in fixed blocks, each from its own ChaCha stream, so
//! results do not depend on the number of worker threads. `ICDIAG_THREADS`
//! caps the pool used by the sweeps.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{maxp_lower, maxp_upper, smooth_bound, PolygonalBound};
use crate::entropy::{coincidence, max_probability, tsallis, Distribution, EntropyOrder};
use crate::error::{domain, Result};
use crate::quantum::{
    etf_povm, etf_simplex, general_sic, mub_set, mum_kappa_max, mum_set, random_states,
    sic_povm, sic_vectors, DensityMatrix, Family, Frame, MeasurementSet, Povm, StateKind,
};
use crate::relations::{certify, tsallis_bound, Certification, ScenarioParams, Target, SLACK_TOL};

/// Entropy inequalities are accepted down to this slack.
pub const SWEEP_TOL: f64 = 1e-10;
/// Saturation of the extremal families.
pub const SATURATION_TOL: f64 = 1e-12;
const BLOCK: usize = 4096;
const DECILES: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n: usize,
    pub alphas: Vec<EntropyOrder>,
    pub samples: usize,
    pub seed: u64,
    /// Number of abscissa steps for curves and injected families.
    pub grid: usize,
}

impl SweepConfig {
    pub fn new(n: usize, alphas: Vec<EntropyOrder>, samples: usize, seed: u64, grid: usize) -> Result<Self> {
        let c = Self { n, alphas, samples, seed, grid };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(domain(format!("support size n must be >= 2, got {}", self.n)));
        }
        if self.samples == 0 {
            return Err(domain("samples must be >= 1"));
        }
        if self.grid < 2 {
            return Err(domain(format!("grid must be >= 2, got {}", self.grid)));
        }
        for a in &self.alphas {
            a.check_within(0.0, 2.0)?;
        }
        Ok(())
    }
}

/// The order grid `0, 0.25, ..., 2`.
pub fn default_alphas() -> Vec<EntropyOrder> {
    (0..=8)
        .map(|i| EntropyOrder::new(0.25 * i as f64).expect("grid orders are valid"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointTag {
    Sample,
    BoundaryLower,
    BoundaryUpper,
    Breakpoint,
}

impl PointTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Sample => "sample",
            Self::BoundaryLower => "boundary-lower",
            Self::BoundaryUpper => "boundary-upper",
            Self::Breakpoint => "breakpoint",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagramPoint {
    pub ic: f64,
    pub value: f64,
    pub tag: PointTag,
    /// Order of the entropy; absent for the max-probability diagram.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn from_pass(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Self::Pass
    }
}

/// Runs `f` on a pool capped by `ICDIAG_THREADS`, if set.
pub fn with_thread_cap<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let cap = std::env::var("ICDIAG_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0);
    match cap.and_then(|t| rayon::ThreadPoolBuilder::new().num_threads(t).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

fn draw_simplex(rng: &mut ChaCha8Rng, n: usize) -> Distribution {
    let e: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let s: f64 = e.iter().sum();
    Distribution::new(e.into_iter().map(|v| v / s).collect()).expect("normalized exponentials form a distribution")
}

fn sample_block(n: usize, seed: u64, block: usize, len: usize) -> Vec<Distribution> {
    let mut rng = block_rng(seed, block as u64);
    (0..len).map(|_| draw_simplex(&mut rng, n)).collect()
}

fn blocks(count: usize) -> Vec<(usize, usize)> {
    (0..count.div_ceil(BLOCK))
        .map(|b| (b, BLOCK.min(count - b * BLOCK)))
        .collect()
}

/// `count` uniform draws from the probability simplex on `n` outcomes.
pub fn sample_simplex(n: usize, count: usize, seed: u64) -> Result<Vec<Distribution>> {
    if n < 2 {
        return Err(domain(format!("support size n must be >= 2, got {n}")));
    }
    Ok(blocks(count)
        .into_par_iter()
        .map(|(b, len)| sample_block(n, seed, b, len))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect())
}

/// `x U_k + (1-x) U_{k+1}` on `k + 1` outcomes.
pub fn mixture_uk(k: usize, x: f64) -> Result<Distribution> {
    if k == 0 {
        return Err(domain("mixture needs k >= 1"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("mixture weight x must lie in [0, 1], got {x}")));
    }
    let kf = k as f64;
    let mut p = vec![(kf + x) / (kf * (kf + 1.0)); k];
    p.push((1.0 - x) / (kf + 1.0));
    Distribution::new(p)
}

/// `k - 1` probabilities `p1`, one `1 - (k-1) p1`, zeros up to `n`. It attains
/// the lower max-probability envelope.
pub fn extremal_maxp(k: usize, p1: f64, n: usize) -> Result<Distribution> {
    let kf = k as f64;
    if k < 2 || k > n {
        return Err(domain(format!("extremal_maxp needs 2 <= k <= n, got k = {k}, n = {n}")));
    }
    let tol = 1e-15;
    if !(p1 >= 1.0 / kf - tol && p1 <= 1.0 / (kf - 1.0) + tol) {
        return Err(domain(format!(
            "infeasible extremal: p1 must lie in [1/k, 1/(k-1)] = [{}, {}], got {p1}",
            1.0 / kf,
            1.0 / (kf - 1.0)
        )));
    }
    let mut p = vec![0.0; n];
    p[..k - 1].iter_mut().for_each(|v| *v = p1);
    p[k - 1] = (1.0 - (kf - 1.0) * p1).max(0.0);
    Distribution::new(p)
}

/// One probability `p1`, the other `n - 1` equal. It attains the upper envelope.
pub fn extremal_maxp_upper(p1: f64, n: usize) -> Result<Distribution> {
    if n < 2 {
        return Err(domain(format!("support size n must be >= 2, got {n}")));
    }
    let nf = n as f64;
    if !(p1 >= 1.0 / nf - 1e-15 && p1 <= 1.0) {
        return Err(domain(format!("p1 must lie in [1/n, 1] = [{}, 1], got {p1}", 1.0 / nf)));
    }
    let mut p = vec![(1.0 - p1) / (nf - 1.0); n];
    p[0] = p1;
    Distribution::new(p)
}

fn pad(p: &Distribution, n: usize) -> Distribution {
    let mut v = p.probs().to_vec();
    v.resize(n.max(v.len()), 0.0);
    Distribution::new(v).expect("padding keeps a distribution valid")
}

fn steps(lo: f64, hi: f64, grid: usize) -> impl Iterator<Item = f64> {
    (0..=grid).map(move |j| if j == grid { hi } else { lo + (hi - lo) * j as f64 / grid as f64 })
}

/// An injected distribution and the family it came from.
#[derive(Debug, Clone)]
struct Injected {
    source: &'static str,
    dist: Distribution,
}

fn polygonal_injections(n: usize, grid: usize, seed: u64) -> Vec<Injected> {
    let mut out = Vec::new();
    let mut push = |source, d: Distribution| out.push(Injected { source, dist: pad(&d, n) });
    for k in 1..n {
        for x in steps(0.0, 1.0, grid) {
            push("mixture", mixture_uk(k, x).expect("grid weight"));
        }
        for eps in [1e-12, 1e-9, 1e-6, 1e-3] {
            push("near-breakpoint", mixture_uk(k, eps).expect("weight"));
            push("near-breakpoint", mixture_uk(k, 1.0 - eps).expect("weight"));
        }
    }
    for k in 2..=n {
        let kf = k as f64;
        for p1 in steps(1.0 / kf, 1.0 / (kf - 1.0), grid) {
            push("extremal-lower", extremal_maxp(k, p1, n).expect("grid p1"));
        }
    }
    for p1 in steps(1.0 / n as f64, 1.0, grid) {
        push("extremal-upper", extremal_maxp_upper(p1, n).expect("grid p1"));
    }
    let mut rng = block_rng(seed, u64::MAX);
    for k in 1..=n {
        let u = Distribution::uniform_padded(k, n).expect("k <= n");
        for eps in [1e-9, 1e-6, 1e-3] {
            let r = draw_simplex(&mut rng, n);
            let mixed = u
                .probs()
                .iter()
                .zip(r.probs())
                .map(|(a, b)| (1.0 - eps) * a + eps * b)
                .collect();
            push("near-breakpoint", Distribution::new(mixed).expect("convex combination"));
        }
    }
    out
}

/// Smallest-slack case of a sweep, kept verbatim for reproduction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstCase {
    pub source: String,
    pub alpha: Option<f64>,
    pub probs: Vec<f64>,
    pub ic: f64,
    pub value: f64,
    pub bound: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapStat {
    pub alpha: f64,
    pub decile: usize,
    pub ic_lo: f64,
    pub ic_hi: f64,
    pub count: usize,
    pub min_slack: Option<f64>,
    pub mean_slack: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolygonalVerdict {
    pub verdict: Verdict,
    pub n: usize,
    pub samples: usize,
    pub injected: usize,
    pub tolerance: f64,
    pub min_slack: f64,
    pub worst: Option<WorstCase>,
    pub gaps: Vec<GapStat>,
}

#[derive(Debug, Clone)]
struct GapAcc {
    count: Vec<usize>,
    min: Vec<f64>,
    sum: Vec<f64>,
    worst: Option<WorstCase>,
}

impl GapAcc {
    fn new(cells: usize) -> Self {
        Self {
            count: vec![0; cells],
            min: vec![f64::INFINITY; cells],
            sum: vec![0.0; cells],
            worst: None,
        }
    }

    fn record(&mut self, cell: usize, slack: f64, worst: impl FnOnce() -> WorstCase) {
        self.count[cell] += 1;
        self.sum[cell] += slack;
        self.min[cell] = self.min[cell].min(slack);
        if self.worst.as_ref().is_none_or(|w| slack < w.slack) {
            self.worst = Some(worst());
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for c in 0..self.count.len() {
            self.count[c] += other.count[c];
            self.sum[c] += other.sum[c];
            self.min[c] = self.min[c].min(other.min[c]);
        }
        if let Some(w) = other.worst {
            if self.worst.as_ref().is_none_or(|s| w.slack < s.slack) {
                self.worst = Some(w);
            }
        }
        self
    }
}

fn decile(ic: f64, n: usize) -> usize {
    let lo = 1.0 / n as f64;
    (((ic - lo) / (1.0 - lo) * DECILES as f64).floor().max(0.0) as usize).min(DECILES - 1)
}

fn polygonal_acc(
    dists: &[Distribution],
    sources: &[&'static str],
    polys: &[PolygonalBound],
    n: usize,
) -> Result<GapAcc> {
    let mut acc = GapAcc::new(polys.len() * DECILES);
    for (i, p) in dists.iter().enumerate() {
        let ic = coincidence(p);
        let cell0 = decile(ic, n);
        for (ai, poly) in polys.iter().enumerate() {
            let bound = poly.tsallis(ic)?.value;
            let value = tsallis(p, poly.alpha());
            let slack = value - bound;
            acc.record(ai * DECILES + cell0, slack, || WorstCase {
                source: sources[i.min(sources.len() - 1)].to_string(),
                alpha: Some(poly.alpha().value()),
                probs: p.probs().to_vec(),
                ic,
                value,
                bound,
                slack,
            });
        }
    }
    Ok(acc)
}

/// Checks `H_α(P) ≥ L_α(I(P))` over samples and injected families.
pub fn run_polygonal_sweep(config: &SweepConfig) -> Result<PolygonalVerdict> {
    config.validate()?;
    let n = config.n;
    let alphas = if config.alphas.is_empty() { default_alphas() } else { config.alphas.clone() };
    let polys = alphas
        .iter()
        .map(|&a| PolygonalBound::new(a, n))
        .collect::<Result<Vec<_>>>()?;

    let injections = polygonal_injections(n, config.grid, config.seed);
    let (inj_d, inj_s): (Vec<_>, Vec<_>) = injections.into_iter().map(|i| (i.dist, i.source)).unzip();

    let partials = with_thread_cap(|| {
        blocks(config.samples)
            .into_par_iter()
            .map(|(b, len)| polygonal_acc(&sample_block(n, config.seed, b, len), &["sample"], &polys, n))
            .collect::<Result<Vec<_>>>()
    })?;
    let acc = partials
        .into_iter()
        .fold(polygonal_acc(&inj_d, &inj_s, &polys, n)?, GapAcc::merge);

    let lo = 1.0 / n as f64;
    let width = (1.0 - lo) / DECILES as f64;
    let mut gaps = Vec::with_capacity(acc.count.len());
    for (ai, a) in alphas.iter().enumerate() {
        for dc in 0..DECILES {
            let c = ai * DECILES + dc;
            let count = acc.count[c];
            gaps.push(GapStat {
                alpha: a.value(),
                decile: dc,
                ic_lo: lo + width * dc as f64,
                ic_hi: lo + width * (dc + 1) as f64,
                count,
                min_slack: (count > 0).then_some(acc.min[c]),
                mean_slack: (count > 0).then(|| acc.sum[c] / count as f64),
            });
        }
    }
    let min_slack = acc.min.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(PolygonalVerdict {
        verdict: Verdict::from_pass(min_slack >= -SWEEP_TOL),
        n,
        samples: config.samples,
        injected: inj_d.len(),
        tolerance: SWEEP_TOL,
        min_slack,
        worst: acc.worst,
        gaps,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm1Verdict {
    pub verdict: Verdict,
    pub n: usize,
    pub samples: usize,
    pub injected: usize,
    pub tolerance: f64,
    /// Smallest `p_max - Λ_p(I)`.
    pub min_lower_slack: f64,
    /// Smallest `upper(I) - p_max`.
    pub min_upper_slack: f64,
    pub saturation_tolerance: f64,
    pub max_lower_saturation_error: f64,
    pub max_upper_saturation_error: f64,
    /// For `n = 2`, largest gap between either envelope and `(1 + √(2I - 1))/2`.
    pub two_outcome_collapse_error: Option<f64>,
    pub worst: Option<WorstCase>,
}

#[derive(Debug, Clone)]
struct Thm1Acc {
    lower: f64,
    upper: f64,
    worst: Option<WorstCase>,
    collapse: f64,
}

impl Thm1Acc {
    fn new() -> Self {
        Self { lower: f64::INFINITY, upper: f64::INFINITY, worst: None, collapse: 0.0 }
    }

    fn merge(mut self, o: Self) -> Self {
        self.lower = self.lower.min(o.lower);
        self.upper = self.upper.min(o.upper);
        self.collapse = self.collapse.max(o.collapse);
        if let Some(w) = o.worst {
            if self.worst.as_ref().is_none_or(|s| w.slack < s.slack) {
                self.worst = Some(w);
            }
        }
        self
    }
}

fn thm1_acc(dists: &[Distribution], source: &str, n: usize) -> Result<Thm1Acc> {
    let mut acc = Thm1Acc::new();
    for p in dists {
        let ic = coincidence(p);
        let pm = max_probability(p);
        let lo = maxp_lower(ic)?;
        let up = maxp_upper(ic, n)?;
        let (sl, su) = (pm - lo, up - pm);
        acc.lower = acc.lower.min(sl);
        acc.upper = acc.upper.min(su);
        let (slack, bound) = if sl < su { (sl, lo) } else { (su, up) };
        if acc.worst.as_ref().is_none_or(|w| slack < w.slack) {
            acc.worst = Some(WorstCase {
                source: source.to_string(),
                alpha: None,
                probs: p.probs().to_vec(),
                ic,
                value: pm,
                bound,
                slack,
            });
        }
        if n == 2 {
            let closed = (1.0 + (2.0 * ic - 1.0).max(0.0).sqrt()) / 2.0;
            acc.collapse = acc.collapse.max((lo - closed).abs()).max((up - closed).abs());
        }
    }
    Ok(acc)
}

/// Checks `Λ_p(I) ≤ p_max ≤ (1/n)(1 + √(n-1)√(nI - 1))` and the saturation
/// of both sides by their extremal families.
pub fn run_thm1_sweep(config: &SweepConfig) -> Result<Thm1Verdict> {
    config.validate()?;
    let n = config.n;
    let nf = n as f64;
    // Interior grid; at most 64 steps keeps every point clear of the
    // square-root end of each branch.
    let g = config.grid.min(64);
    let mut lower_fam = Vec::new();
    let mut sat_lower: f64 = 0.0;
    for k in 2..=n {
        let kf = k as f64;
        for p1 in steps(1.0 / kf, 1.0 / (kf - 1.0), g) {
            let d = extremal_maxp(k, p1, n)?;
            sat_lower = sat_lower.max((maxp_lower(coincidence(&d))? - p1).abs());
            lower_fam.push(d);
        }
    }
    let mut upper_fam = Vec::new();
    let mut sat_upper: f64 = 0.0;
    for p1 in steps(1.0 / nf, 1.0, g) {
        let d = extremal_maxp_upper(p1, n)?;
        sat_upper = sat_upper.max((maxp_upper(coincidence(&d), n)? - p1).abs());
        upper_fam.push(d);
    }
    let mut others = Vec::new();
    for k in 1..n {
        for x in steps(0.0, 1.0, config.grid) {
            others.push(pad(&mixture_uk(k, x)?, n));
        }
    }
    let injected = lower_fam.len() + upper_fam.len() + others.len();

    let partials = with_thread_cap(|| {
        blocks(config.samples)
            .into_par_iter()
            .map(|(b, len)| thm1_acc(&sample_block(n, config.seed, b, len), "sample", n))
            .collect::<Result<Vec<_>>>()
    })?;
    let acc = [
        thm1_acc(&lower_fam, "extremal-lower", n)?,
        thm1_acc(&upper_fam, "extremal-upper", n)?,
        thm1_acc(&others, "mixture", n)?,
    ]
    .into_iter()
    .chain(partials)
    .fold(Thm1Acc::new(), Thm1Acc::merge);

    let collapse = (n == 2).then_some(acc.collapse);
    let ok = acc.lower >= -SWEEP_TOL
        && acc.upper >= -SWEEP_TOL
        && sat_lower <= SATURATION_TOL
        && sat_upper <= SATURATION_TOL
        && collapse.is_none_or(|c| c <= SATURATION_TOL);
    Ok(Thm1Verdict {
        verdict: Verdict::from_pass(ok),
        n,
        samples: config.samples,
        injected,
        tolerance: SWEEP_TOL,
        min_lower_slack: acc.lower,
        min_upper_slack: acc.upper,
        saturation_tolerance: SATURATION_TOL,
        max_lower_saturation_error: sat_lower,
        max_upper_saturation_error: sat_upper,
        two_outcome_collapse_error: collapse,
        worst: acc.worst,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramKind {
    Entropy,
    Maxp,
}

/// Sampled scatter plus the analytic boundary curves on `config.grid + 1`
/// abscissae and the breakpoints `1/k`.
pub fn emit_diagram(kind: DiagramKind, config: &SweepConfig) -> Result<Vec<DiagramPoint>> {
    config.validate()?;
    let n = config.n;
    let samples = sample_simplex(n, config.samples, config.seed)?;
    let grid: Vec<f64> = steps(1.0 / n as f64, 1.0, config.grid).collect();
    let mut out = Vec::new();
    match kind {
        DiagramKind::Entropy => {
            if config.alphas.is_empty() {
                return Err(domain("the entropy diagram needs at least one alpha"));
            }
            for &a in &config.alphas {
                let poly = PolygonalBound::new(a, n)?;
                let alpha = Some(a.value());
                out.extend(samples.iter().map(|p| DiagramPoint {
                    ic: coincidence(p),
                    value: tsallis(p, a),
                    tag: PointTag::Sample,
                    alpha,
                }));
                for &x in &grid {
                    out.push(DiagramPoint {
                        ic: x,
                        value: poly.tsallis(x)?.value,
                        tag: PointTag::BoundaryLower,
                        alpha,
                    });
                }
                for k in 1..=n {
                    let u = Distribution::uniform(k)?;
                    out.push(DiagramPoint {
                        ic: 1.0 / k as f64,
                        value: tsallis(&u, a),
                        tag: PointTag::Breakpoint,
                        alpha,
                    });
                }
            }
        }
        DiagramKind::Maxp => {
            out.extend(samples.iter().map(|p| DiagramPoint {
                ic: coincidence(p),
                value: max_probability(p),
                tag: PointTag::Sample,
                alpha: None,
            }));
            for &x in &grid {
                out.push(DiagramPoint { ic: x, value: maxp_lower(x)?, tag: PointTag::BoundaryLower, alpha: None });
                out.push(DiagramPoint { ic: x, value: maxp_upper(x, n)?, tag: PointTag::BoundaryUpper, alpha: None });
            }
            for k in 1..=n {
                out.push(DiagramPoint {
                    ic: 1.0 / k as f64,
                    value: 1.0 / k as f64,
                    tag: PointTag::Breakpoint,
                    alpha: None,
                });
            }
        }
    }
    Ok(out)
}

/// `x` rounded to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        let r = round_sig(x);
        if r == 0.0 { "0".into() } else { format!("{r}") }
    }
}

/// Columns `ic,entropy,alpha,smooth_bound,polygonal_bound,tag`. The bound
/// columns are evaluated at the printed abscissa.
pub fn write_entropy_csv<W: Write>(points: &[DiagramPoint], n: usize, w: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["ic", "entropy", "alpha", "smooth_bound", "polygonal_bound", "tag"])?;
    let mut cache: Vec<(f64, PolygonalBound)> = Vec::new();
    for p in points {
        let a = EntropyOrder::new(p.alpha.ok_or_else(|| domain("entropy diagram rows need alpha"))?)?;
        if !cache.iter().any(|(v, _)| *v == a.value()) {
            cache.push((a.value(), PolygonalBound::new(a, n)?));
        }
        let poly = &cache.iter().find(|(v, _)| *v == a.value()).expect("cached").1;
        let ic = round_sig(p.ic);
        csv.write_record([
            fmt_num(ic),
            fmt_num(p.value),
            fmt_num(a.value()),
            fmt_num(smooth_bound(ic, a)?),
            fmt_num(poly.tsallis(ic)?.value),
            p.tag.as_str().to_string(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

/// Columns `ic,maxp,lower,upper,tag`.
pub fn write_maxp_csv<W: Write>(points: &[DiagramPoint], n: usize, w: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["ic", "maxp", "lower", "upper", "tag"])?;
    for p in points {
        let ic = round_sig(p.ic);
        csv.write_record([
            fmt_num(ic),
            fmt_num(p.value),
            fmt_num(maxp_lower(ic)?),
            fmt_num(maxp_upper(ic, n)?),
            p.tag.as_str().to_string(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

/// An owned measurement or measurement set of the built-in catalogue.
#[derive(Debug, Clone)]
pub enum Measurement {
    Single(Povm),
    Set(MeasurementSet),
}

impl Measurement {
    pub fn as_target(&self) -> Target<'_> {
        match self {
            Self::Single(p) => Target::Single(p),
            Self::Set(s) => Target::Set(s),
        }
    }

    pub fn d(&self) -> usize {
        match self {
            Self::Single(p) => p.d(),
            Self::Set(s) => s.d(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogueEntry {
    pub label: String,
    pub measurement: Measurement,
}

/// Every built-in family in dimension `d ∈ {2, 3}`: MUB and MUM sets of each
/// size, simplex and SIC ETFs, the SIC, general SICs on a `θ` grid, and a
/// SIC re-tagged as a custom POVM.
pub fn builtin_catalogue(d: usize) -> Result<Vec<CatalogueEntry>> {
    let mut out = Vec::new();
    let mut push = |label: String, m: Measurement| out.push(CatalogueEntry { label, measurement: m });
    let full = mub_set(d, d + 1)?;
    for m in 1..=d + 1 {
        push(format!("mub d={d} M={m}"), Measurement::Set(full.take(m)?));
    }
    push(format!("mub basis d={d}"), Measurement::Single(full.measurements()[0].clone()));
    let kmax = mum_kappa_max(d)?;
    let df = d as f64;
    for kappa in [1.0 / df + 0.25 * (kmax - 1.0 / df), 1.0 / df + 0.75 * (kmax - 1.0 / df), kmax] {
        let set = mum_set(d, kappa)?;
        for m in 1..=d + 1 {
            push(format!("mum d={d} kappa={kappa:.6} M={m}"), Measurement::Set(set.take(m)?));
        }
    }
    push(format!("etf simplex d={d} n={}", d + 1), Measurement::Single(etf_simplex(d)?));
    let sic_frame = Frame::new(d, sic_vectors(d)?)?;
    push(format!("etf sic-frame d={d} n={}", d * d), Measurement::Single(etf_povm(&sic_frame)?));
    let sic = sic_povm(d)?;
    push(format!("sic d={d}"), Measurement::Single(sic.clone()));
    let (lo, hi) = (df.powi(-3), df.powi(-2));
    for t in [0.1, 0.5, 0.9, 1.0] {
        let theta = lo + t * (hi - lo);
        push(format!("gsic d={d} theta={theta:.6}"), Measurement::Single(general_sic(d, theta)?));
    }
    push(format!("custom d={d}"), Measurement::Single(sic.with_family(Family::Custom)?));
    Ok(out)
}

/// Random states for certification: half Hilbert–Schmidt mixed, half pure,
/// plus the maximally mixed state.
pub fn test_states(d: usize, count: usize, seed: u64) -> Result<Vec<DensityMatrix>> {
    let half = count / 2;
    let mut v = random_states(d, StateKind::Mixed, count - half, seed)?;
    v.extend(random_states(d, StateKind::Pure, half, seed.wrapping_add(1 << 32))?);
    v.push(DensityMatrix::maximally_mixed(d));
    Ok(v)
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyResult {
    pub label: String,
    pub d: usize,
    pub reports: usize,
    pub min_slack: f64,
    pub min_upper_slack: Option<f64>,
    pub passed: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuantumVerdict {
    pub verdict: Verdict,
    pub states_per_family: usize,
    pub tolerance: f64,
    pub min_slack: f64,
    /// Largest disagreement among the degenerate cases `κ = 1` vs MUB,
    /// `θ = 1/d²` vs SIC and `n = d²` ETF vs SIC.
    pub endpoint_collapse_error: f64,
    pub families: Vec<FamilyResult>,
}

fn collapse_error(dims: &[usize], alphas: &[EntropyOrder]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &d in dims {
        let df = d as f64;
        for j in 0..=10 {
            let pur = 1.0 / df + (1.0 - 1.0 / df) * j as f64 / 10.0;
            for &a in alphas {
                let sic = tsallis_bound(&ScenarioParams::sic(d, pur)?, a)?.bound;
                let g = tsallis_bound(&ScenarioParams::gsic(d, 1.0 / (df * df), pur)?, a)?.bound;
                let e = tsallis_bound(&ScenarioParams::etf(d, d * d, pur)?, a)?.bound;
                worst = worst.max((sic - g).abs()).max((sic - e).abs());
                for m in 1..=d + 1 {
                    let mub = tsallis_bound(&ScenarioParams::mub(d, m, pur)?, a)?.bound;
                    let mum = tsallis_bound(&ScenarioParams::mum(d, m, 1.0, pur)?, a)?.bound;
                    worst = worst.max((mub - mum).abs());
                }
            }
        }
    }
    Ok(worst)
}

/// Certifies every relation over the built-in catalogue in each dimension.
pub fn run_quantum_sweep(
    dims: &[usize],
    states: usize,
    alphas: &[EntropyOrder],
    seed: u64,
) -> Result<QuantumVerdict> {
    let alphas = if alphas.is_empty() { default_alphas() } else { alphas.to_vec() };
    let mut families = Vec::new();
    for &d in dims {
        let rhos = test_states(d, states, seed.wrapping_add(d as u64))?;
        for entry in builtin_catalogue(d)? {
            let cert: Certification =
                with_thread_cap(|| certify(entry.measurement.as_target(), &rhos, &alphas))?;
            families.push(FamilyResult {
                label: entry.label,
                d,
                reports: cert.reports.len(),
                min_slack: cert.min_slack,
                min_upper_slack: cert.min_upper_slack,
                passed: cert.passed,
                notes: cert.notes,
            });
        }
    }
    let min_slack = families.iter().map(|f| f.min_slack).fold(f64::INFINITY, f64::min);
    let collapse = collapse_error(dims, &alphas)?;
    let ok = families.iter().all(|f| f.passed) && collapse <= SATURATION_TOL;
    Ok(QuantumVerdict {
        verdict: Verdict::from_pass(ok),
        states_per_family: states,
        tolerance: SLACK_TOL,
        min_slack,
        endpoint_collapse_error: collapse,
        families,
    })
}
