//! The `icdiag` command line.
//!
//! Every command prints one JSON document on stdout, with numbers rounded to
//! 12 significant digits, unless `--out` sends a CSV dataset to a file.
//! Exit status is 0 on success, 1 when a verification fails and 2 on usage
//! or domain errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{maxp_lower, maxp_upper, PolygonalBound};
use crate::entropy::{
    coincidence, max_probability, min_entropy, renyi, tsallis, Distribution, EntropyOrder,
};
use crate::error::{domain, Error, Result};
use crate::harness::{
    default_alphas, emit_diagram, round_sig, run_polygonal_sweep, run_quantum_sweep,
    run_thm1_sweep, test_states, write_entropy_csv, write_maxp_csv, DiagramKind, SweepConfig,
};
use crate::quantum::io::{read_frame, read_povm, read_state};
use crate::quantum::{
    etf_simplex, etf_validate, general_sic, mub_set, mum_set, sic_povm, DensityMatrix,
};
use crate::relations::{
    certify, min_entropy_sandwich, renyi_bound, tsallis_bound, ScenarioParams,
};

#[derive(Debug, Parser)]
#[command(name = "icdiag", version, about = "Entropies, coincidence bounds and uncertainty relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entropy of a distribution.
    Entropy(EntropyArgs),
    /// Lower bounds from the index of coincidence.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Information-diagram datasets.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Monte-Carlo certification sweeps.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Uncertainty relations for quantum measurements.
    #[command(subcommand)]
    Quantum(QuantumCmd),
    /// Frame utilities.
    #[command(subcommand)]
    Frames(FramesCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Tsallis,
    Renyi,
    Min,
}

#[derive(Debug, Args)]
struct EntropyArgs {
    /// Comma-separated probabilities.
    #[arg(long, conflicts_with = "dist_file", required_unless_present = "dist_file")]
    dist: Option<String>,
    /// JSON array of probabilities.
    #[arg(long)]
    dist_file: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = Kind::Tsallis)]
    kind: Kind,
}

#[derive(Debug, Subcommand)]
enum BoundCmd {
    /// `L_α(I)` and its Rényi form.
    Polygonal {
        #[arg(long)]
        ic: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Tsallis)]
        kind: Kind,
    },
    /// Range of the maximal probability at given coincidence.
    Maxp {
        #[arg(long)]
        ic: f64,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    grid: usize,
}

#[derive(Debug, Subcommand)]
enum DiagramCmd {
    /// Tsallis entropy against coincidence, with the smooth and polygonal curves.
    Entropy {
        /// One or more orders, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<f64>,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Write CSV here instead of JSON on stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal probability against coincidence, with both envelopes.
    Maxp {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// Tsallis entropy never falls below the polygonal bound.
    Polygonal {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Orders to check; defaults to 0, 0.25, ..., 2.
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<f64>,
    },
    /// The maximal probability stays between its envelopes.
    Thm1 {
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Every built-in measurement family satisfies its relations.
    Quantum {
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3])]
        d: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        states: usize,
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<f64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Mub,
    Mum,
    Etf,
    Sic,
    Gsic,
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    d: usize,
    /// Number of measurements (MUB, MUM).
    #[arg(long = "M", alias = "m")]
    m: Option<usize>,
    /// Number of frame vectors (ETF).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
}

impl ScenarioArgs {
    fn params(&self, purity: f64) -> Result<ScenarioParams> {
        let d = self.d;
        match self.family {
            FamilyArg::Mub => ScenarioParams::mub(d, self.m.unwrap_or(d + 1), purity),
            FamilyArg::Mum => ScenarioParams::mum(
                d,
                self.m.unwrap_or(d + 1),
                self.kappa.ok_or_else(|| domain("--kappa is required for --family mum"))?,
                purity,
            ),
            FamilyArg::Etf => ScenarioParams::etf(
                d,
                self.n.ok_or_else(|| domain("--n is required for --family etf"))?,
                purity,
            ),
            FamilyArg::Sic => ScenarioParams::sic(d, purity),
            FamilyArg::Gsic => ScenarioParams::gsic(
                d,
                self.theta.ok_or_else(|| domain("--theta is required for --family gsic"))?,
                purity,
            ),
        }
    }
}

#[derive(Debug, Subcommand)]
enum QuantumCmd {
    /// Evaluate a relation at given purity or for a state file.
    Bound {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, conflicts_with = "state_file", required_unless_present = "state_file")]
        purity: Option<f64>,
        #[arg(long)]
        state_file: Option<PathBuf>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, value_enum, default_value_t = Kind::Tsallis)]
        kind: Kind,
    },
    /// Measure states and compare each entropy with its bound.
    Certify {
        /// Custom POVM file; only the generic single-measurement bound applies.
        #[arg(long, conflicts_with = "family", required_unless_present = "family")]
        povm_file: Option<PathBuf>,
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long = "M", alias = "m")]
        m: Option<usize>,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        kappa: Option<f64>,
        /// Certify this state only; otherwise random states are drawn.
        #[arg(long)]
        state_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        states: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<f64>,
        /// Include every individual report in the output.
        #[arg(long)]
        reports: bool,
    },
}

#[derive(Debug, Subcommand)]
enum FramesCmd {
    /// Check a frame file for unit norm, tightness and equiangularity.
    Validate {
        #[arg(long)]
        file: PathBuf,
    },
}

/// Recursively rounds every float to 12 significant digits.
pub fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(rounded).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let v = rounded(serde_json::to_value(value)?);
    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    Ok(())
}

fn orders(values: &[f64]) -> Result<Vec<EntropyOrder>> {
    if values.is_empty() {
        return Ok(default_alphas());
    }
    values.iter().map(|&a| EntropyOrder::new(a)?.check_within(0.0, 2.0)).collect()
}

enum Outcome {
    Ok,
    Fail,
}

fn outcome(pass: bool) -> Outcome {
    if pass {
        Outcome::Ok
    } else {
        Outcome::Fail
    }
}

fn entropy_cmd(a: &EntropyArgs, out: &mut dyn Write) -> Result<Outcome> {
    let p = match (&a.dist, &a.dist_file) {
        (Some(s), _) => Distribution::parse_list(s)?,
        (None, Some(f)) => Distribution::from_json(&std::fs::read_to_string(f)?)?,
        (None, None) => return Err(domain("one of --dist or --dist-file is required")),
    };
    let alpha = EntropyOrder::new(a.alpha)?;
    let (kind, value) = match a.kind {
        Kind::Tsallis => ("tsallis", tsallis(&p, alpha)),
        Kind::Renyi => ("renyi", renyi(&p, alpha)),
        Kind::Min => ("min", min_entropy(&p)),
    };
    emit(
        out,
        &json!({
            "kind": kind,
            "alpha": if a.kind == Kind::Min { None } else { Some(alpha.value()) },
            "n": p.n(),
            "value": value,
            "ic": coincidence(&p),
            "maxp": max_probability(&p),
        }),
    )?;
    Ok(Outcome::Ok)
}

fn bound_cmd(cmd: &BoundCmd, out: &mut dyn Write) -> Result<Outcome> {
    match *cmd {
        BoundCmd::Polygonal { ic, alpha, n, kind } => {
            let poly = PolygonalBound::new(EntropyOrder::new(alpha)?, n)?;
            let (name, b) = match kind {
                Kind::Tsallis => ("tsallis", poly.tsallis(ic)?),
                Kind::Renyi => ("renyi", poly.renyi(ic)?),
                Kind::Min => return Err(domain("the polygonal bound has tsallis and renyi kinds only")),
            };
            emit(
                out,
                &json!({
                    "kind": name, "ic": ic, "alpha": alpha, "n": n,
                    "bound": b.value, "achieving_k": b.k,
                }),
            )?;
        }
        BoundCmd::Maxp { ic, n } => {
            let upper = maxp_upper(ic, n)?;
            emit(out, &json!({ "ic": ic, "n": n, "lower": maxp_lower(ic)?, "upper": upper }))?;
        }
    }
    Ok(Outcome::Ok)
}

fn sweep_config(s: &SweepArgs, alphas: Vec<EntropyOrder>) -> Result<SweepConfig> {
    SweepConfig::new(s.n, alphas, s.samples, s.seed, s.grid)
}

fn write_csv(path: &PathBuf, f: impl FnOnce(BufWriter<File>) -> Result<()>) -> Result<()> {
    f(BufWriter::new(File::create(path)?))
}

fn diagram_cmd(cmd: &DiagramCmd, out: &mut dyn Write) -> Result<Outcome> {
    let (kind, cfg, path) = match cmd {
        DiagramCmd::Entropy { alpha, sweep, out } => (DiagramKind::Entropy, sweep_config(sweep, orders(alpha)?)?, out),
        DiagramCmd::Maxp { sweep, out } => (DiagramKind::Maxp, sweep_config(sweep, vec![])?, out),
    };
    let points = emit_diagram(kind, &cfg)?;
    match path {
        Some(p) => {
            match kind {
                DiagramKind::Entropy => write_csv(p, |w| write_entropy_csv(&points, cfg.n, w))?,
                DiagramKind::Maxp => write_csv(p, |w| write_maxp_csv(&points, cfg.n, w))?,
            }
            emit(
                out,
                &json!({ "diagram": kind, "n": cfg.n, "rows": points.len(), "out": p.display().to_string() }),
            )?;
        }
        None => emit(out, &json!({ "diagram": kind, "n": cfg.n, "points": points }))?,
    }
    Ok(Outcome::Ok)
}

fn verify_cmd(cmd: &VerifyCmd, out: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        VerifyCmd::Polygonal { sweep, alphas } => {
            let v = run_polygonal_sweep(&sweep_config(sweep, orders(alphas)?)?)?;
            emit(out, &v)?;
            Ok(outcome(v.verdict.passed()))
        }
        VerifyCmd::Thm1 { sweep } => {
            let v = run_thm1_sweep(&sweep_config(sweep, vec![])?)?;
            emit(out, &v)?;
            Ok(outcome(v.verdict.passed()))
        }
        VerifyCmd::Quantum { d, states, alphas, seed } => {
            let v = run_quantum_sweep(d, *states, &orders(alphas)?, *seed)?;
            emit(out, &v)?;
            Ok(outcome(v.verdict.passed()))
        }
    }
}

fn quantum_bound(
    scenario: &ScenarioArgs,
    purity: Option<f64>,
    state_file: &Option<PathBuf>,
    alpha: Option<f64>,
    kind: Kind,
    out: &mut dyn Write,
) -> Result<Outcome> {
    let purity = match (purity, state_file) {
        (Some(p), _) => p,
        (None, Some(f)) => {
            let rho = read_state(f)?;
            if rho.d() != scenario.d {
                return Err(Error::DimensionMismatch { expected: scenario.d, got: rho.d() });
            }
            rho.purity()
        }
        (None, None) => return Err(domain("one of --purity or --state-file is required")),
    };
    let params = scenario.params(purity)?;
    let alpha = || -> Result<EntropyOrder> {
        EntropyOrder::new(alpha.ok_or_else(|| domain("--alpha is required for this kind"))?)?
            .check_within(0.0, 2.0)
    };
    match kind {
        Kind::Tsallis => emit(out, &tsallis_bound(&params, alpha()?)?)?,
        Kind::Renyi => emit(out, &renyi_bound(&params, alpha()?)?)?,
        Kind::Min => {
            let s = min_entropy_sandwich(&params)?;
            emit(
                out,
                &json!({
                    "family": params.family, "d": params.d, "theta": params.theta,
                    "kind": "min", "purity": params.purity, "lower": s.lower, "upper": s.upper,
                }),
            )?;
        }
    }
    Ok(Outcome::Ok)
}

fn builtin_target(
    family: FamilyArg,
    d: usize,
    m: Option<usize>,
    theta: Option<f64>,
    kappa: Option<f64>,
) -> Result<crate::harness::Measurement> {
    use crate::harness::Measurement;
    Ok(match family {
        FamilyArg::Mub => Measurement::Set(mub_set(d, m.unwrap_or(d + 1))?),
        FamilyArg::Mum => {
            let k = kappa.ok_or_else(|| domain("--kappa is required for --family mum"))?;
            Measurement::Set(mum_set(d, k)?.take(m.unwrap_or(d + 1))?)
        }
        FamilyArg::Etf => Measurement::Single(etf_simplex(d)?),
        FamilyArg::Sic => Measurement::Single(sic_povm(d)?),
        FamilyArg::Gsic => Measurement::Single(general_sic(
            d,
            theta.ok_or_else(|| domain("--theta is required for --family gsic"))?,
        )?),
    })
}

fn quantum_cmd(cmd: &QuantumCmd, out: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        QuantumCmd::Bound { scenario, purity, state_file, alpha, kind } => {
            quantum_bound(scenario, *purity, state_file, *alpha, *kind, out)
        }
        QuantumCmd::Certify {
            povm_file, family, d, m, theta, kappa, state_file, states, seed, alphas, reports,
        } => {
            let measurement = match (povm_file, family) {
                (Some(f), _) => crate::harness::Measurement::Single(read_povm(f)?),
                (None, Some(fam)) => builtin_target(
                    *fam,
                    d.ok_or_else(|| domain("--d is required with --family"))?,
                    *m,
                    *theta,
                    *kappa,
                )?,
                (None, None) => return Err(domain("one of --povm-file or --family is required")),
            };
            let dim = measurement.d();
            let rhos: Vec<DensityMatrix> = match state_file {
                Some(f) => vec![read_state(f)?],
                None => test_states(dim, *states, *seed)?,
            };
            let cert = certify(measurement.as_target(), &rhos, &orders(alphas)?)?;
            let mut v = json!({
                "d": dim,
                "states": rhos.len(),
                "checked": cert.reports.len(),
                "min_slack": cert.min_slack,
                "min_upper_slack": cert.min_upper_slack,
                "verdict": if cert.passed { "PASS" } else { "FAIL" },
                "notes": cert.notes,
            });
            if *reports {
                v["reports"] = serde_json::to_value(&cert.reports)?;
            }
            emit(out, &v)?;
            Ok(outcome(cert.passed))
        }
    }
}

fn frames_cmd(cmd: &FramesCmd, out: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        FramesCmd::Validate { file } => {
            let report = etf_validate(&read_frame(file)?);
            emit(out, &report)?;
            Ok(outcome(report.is_etf))
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Entropy(a) => entropy_cmd(a, out),
        Command::Bound(c) => bound_cmd(c, out),
        Command::Diagram(c) => diagram_cmd(c, out),
        Command::Verify(c) => verify_cmd(c, out),
        Command::Quantum(c) => quantum_cmd(c, out),
        Command::Frames(c) => frames_cmd(c, out),
    };
    match result {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("icdiag").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn sic_bound_example() {
        let (code, out, _) = call(&[
            "quantum", "bound", "--family", "sic", "--d", "2", "--purity", "1", "--alpha", "1", "--kind", "tsallis",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["bound"].as_f64().unwrap() - 3f64.ln()).abs() < 1e-11);
        assert_eq!(v["achieving_k"], 3);
        assert_eq!(v["kind"], "tsallis");
    }

    #[test]
    fn maxp_example() {
        let (code, out, _) = call(&["bound", "maxp", "--ic", "1.0", "--n", "4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["lower"], 1.0);
        assert_eq!(v["upper"], 1.0);
    }

    #[test]
    fn usage_and_domain_errors_exit_two() {
        assert_eq!(call(&["bound", "maxp", "--ic", "1.0"]).0, 2);
        assert_eq!(call(&["bound", "maxp", "--ic", "1.0", "--n", "4", "--bogus"]).0, 2);
        let (code, _, err) = call(&["bound", "polygonal", "--ic", "0.1", "--alpha", "1", "--n", "4"]);
        assert_eq!(code, 2);
        assert!(err.contains("[1/n, 1]"), "{err}");
        let (code, _, err) = call(&[
            "quantum", "bound", "--family", "mum", "--d", "2", "--kappa", "1", "--purity", "1", "--alpha", "0.5",
            "--kind", "renyi",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("[1, 2]"), "{err}");
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn entropy_kinds() {
        let (code, out, _) = call(&["entropy", "--dist", "0.5,0.5", "--alpha", "2", "--kind", "renyi"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["value"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-11);
        let (_, out, _) = call(&["entropy", "--dist", "0.5,0.25,0.25", "--kind", "min"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["value"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-11);
        assert!(v["alpha"].is_null());
    }

    #[test]
    fn output_is_stable() {
        let args = ["verify", "polygonal", "--n", "4", "--samples", "2000", "--seed", "7", "--grid", "20"];
        let (c1, o1, _) = call(&args);
        let (c2, o2, _) = call(&args);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(o1, o2);
    }
}
