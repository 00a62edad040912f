//! Command-line front end. Exit codes: 0 success, 2 invalid input, 3 a bound
//! violated by simulation in `verify`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::app::{CiEngine, NoiseModel};
use crate::bounds::{
    cor21_curve, heavy_curve, intermediate_curve, interpolation_curve, moderate_curve, superheavy_curve, tail_from_moments_curve,
    thm21_curve, thm22_curve, weighted_curve, BoundCurve, RosenthalMode,
};
use crate::charfn::{classify_mi_md, PsiBar, PsiFunction};
use crate::error::{invalid, Error, Result};
use crate::fields::{covering_numbers, entropy_integral, natural_distance_from_samples, CoveringSource, EntropyVariant, GridSpace};
use crate::glspace::{natural_nu, NuFunction};
use crate::norming::{NormingSequence, Weight};
use crate::numeric::roots::geomspace;
use crate::simulate::{run_sums, verify_bound, SumExperiment};
use crate::tailmodel::{Regime, SlowlyVarying, TailModel, TailSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "uniform-tail", version, about = "Uniform tail bounds for normed sums of heavy-tailed variables")]
pub struct Cli {
    /// JSON configuration: a tail model, or an experiment with a `model` field.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the seed of simulation commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for output files; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tail-model utilities.
    Model {
        #[command(subcommand)]
        action: ModelAction,
    },
    /// Tabulate ψ and ψ̄.
    Psi(PsiArgs),
    /// Norming sequence b(n).
    Norming(NormingArgs),
    /// Evaluate a bound curve on a log-spaced grid.
    Bound(BoundArgs),
    /// Simulate normed sums and estimate the uniform tail.
    Simulate(SimArgs),
    /// Simulate and check a bound curve against the estimate.
    Verify(VerifyArgs),
    /// Confidence interval for a mean from a sample file.
    Ci(CiArgs),
    /// Covering numbers and entropy integrals of a point set.
    Fields(FieldsArgs),
    /// JSON summary of a model: regime, norming, bounds.
    Report(ModelArg),
}

#[derive(Debug, Subcommand)]
pub enum ModelAction {
    Describe(ModelArg),
}

#[derive(Debug, Args)]
pub struct ModelArg {
    /// Tail-model JSON; falls back to --config.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PsiArgs {
    #[command(flatten)]
    pub model: ModelArg,
    #[arg(long, default_value_t = 1e-4)]
    pub tmin: f64,
    #[arg(long, default_value_t = 10.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct NormingArgs {
    #[command(flatten)]
    pub model: ModelArg,
    /// Comma-separated sample sizes.
    #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000,10000")]
    pub n: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Thm21,
    Thm22,
    Cor21,
    Heavy,
    Intermediate,
    Moderate,
    ModerateMartingale,
    Interpolation,
    Superheavy,
    TailFromMoments,
    Weighted,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    /// Log exponent of the envelope for `cor21`.
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Constant for `superheavy` and `interpolation`.
    #[arg(long)]
    pub constant: Option<f64>,
    /// Comma-separated weights for `weighted`.
    #[arg(long, value_delimiter = ',')]
    pub weights: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub model: ModelArg,
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, default_value_t = 10.0)]
    pub xmin: f64,
    #[arg(long, default_value_t = 1e4)]
    pub xmax: f64,
    #[arg(long, default_value_t = 40)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    /// Experiment JSON; falls back to --config.
    #[arg(long)]
    pub experiment: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub experiment: Option<PathBuf>,
    #[command(flatten)]
    pub curve: CurveArgs,
}

#[derive(Debug, Args)]
pub struct CiArgs {
    #[command(flatten)]
    pub model: ModelArg,
    /// One sample per line.
    #[arg(long)]
    pub samples: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    #[arg(long)]
    pub truth: Option<f64>,
    #[arg(long)]
    pub martingale: bool,
}

#[derive(Debug, Args)]
pub struct FieldsArgs {
    /// CSV `index,coord...` with a header row; Euclidean distance.
    #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
    pub points: Option<PathBuf>,
    /// CSV of field realisations, one column per point and one row per
    /// replicate; distance is the sup over p in [1, r) of the p-norm of differences.
    #[arg(long)]
    pub samples: Option<PathBuf>,
    #[arg(long, default_value_t = 1.5)]
    pub r: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 30)]
    pub eps_points: usize,
}

/// Parses arguments, runs, and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

/// Rows of strings with a header, written as CSV or JSON records.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.into_inner().map_err(|e| Error::Io(e.into_error()))
            }
            Format::Json => {
                let recs: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let m: serde_json::Map<String, Value> = self
                            .header
                            .iter()
                            .zip(r)
                            .map(|(h, v)| (h.clone(), v.parse::<f64>().map_or(Value::String(v.clone()), |f| json!(f))))
                            .collect();
                        Value::Object(m)
                    })
                    .collect();
                let mut s = serde_json::to_vec_pretty(&recs)?;
                s.push(b'\n');
                Ok(s)
            }
        }
    }
}

fn fmt(v: f64) -> String {
    v.to_string()
}

fn emit(cli: &Cli, stem: &str, bytes: &[u8]) -> Result<()> {
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(stem), bytes)?;
        }
        None => io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn emit_table(cli: &Cli, stem: &str, t: &Table) -> Result<()> {
    let ext = match cli.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    emit(cli, &format!("{stem}.{ext}"), &t.render(cli.format)?)
}

fn emit_json(cli: &Cli, stem: &str, v: &impl Serialize) -> Result<()> {
    let mut s = serde_json::to_vec_pretty(v)?;
    s.push(b'\n');
    emit(cli, &format!("{stem}.json"), &s)
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Model from `--model`, else from `--config` (either a bare model or an object with `model`).
fn load_model(cli: &Cli, arg: &ModelArg) -> Result<TailModel> {
    let path = arg
        .model
        .as_ref()
        .or(cli.config.as_ref())
        .ok_or_else(|| Error::Validation("a model file is required (--model or --config)".into()))?;
    let v = read_json(path)?;
    let v = v.get("model").cloned().unwrap_or(v);
    let spec: TailSpec = serde_json::from_value(v)?;
    TailModel::new(spec)
}

fn load_experiment(cli: &Cli, path: Option<&PathBuf>) -> Result<SumExperiment> {
    let path = path
        .or(cli.config.as_ref())
        .ok_or_else(|| Error::Validation("an experiment file is required (--experiment or --config)".into()))?;
    let mut exp: SumExperiment = serde_json::from_value(read_json(path)?)?;
    if let Some(s) = cli.seed {
        exp.seed = s;
    }
    if exp.x_grid.is_empty() {
        exp.x_grid = geomspace(10.0, 1e3, 21);
    }
    Ok(exp)
}

/// Numeric CSV with a header row; every row must have the same width.
fn read_numeric_csv(path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let row = rec?
            .iter()
            .map(|s| s.trim().parse::<f64>().map_err(|e| Error::Validation(format!("bad number {s:?}: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return invalid(format!("{} has no data rows", path.display()));
    }
    Ok(rows)
}

fn build_curve(model: &TailModel, c: &CurveArgs) -> Result<BoundCurve> {
    let pb = || -> Result<PsiBar> { Ok(PsiBar::new(PsiFunction::from_tail(model)?)) };
    match c.theorem {
        TheoremArg::Thm21 => Ok(thm21_curve(&pb()?)),
        TheoremArg::Thm22 => thm22_curve(&pb()?, model.r().min(2.0 - 1e-9)),
        TheoremArg::Cor21 => cor21_curve(c.beta, model.r()),
        TheoremArg::Heavy => heavy_curve(model, &pb()?),
        TheoremArg::Intermediate => intermediate_curve(model, &pb()?),
        TheoremArg::Moderate => moderate_curve(&natural_nu(model)?, RosenthalMode::General),
        TheoremArg::ModerateMartingale => moderate_curve(&natural_nu(model)?, RosenthalMode::Martingale),
        TheoremArg::Interpolation => interpolation_curve(model, c.constant),
        TheoremArg::Superheavy => superheavy_curve(model, c.constant.unwrap_or(2.0)),
        TheoremArg::TailFromMoments => {
            let nu = natural_nu(model)?;
            let m = model.clone();
            tail_from_moments_curve(move |p| m.moment_norm(p).unwrap_or(f64::INFINITY), nu.p_lo(), nu.r())
        }
        TheoremArg::Weighted => {
            if c.weights.is_empty() {
                return invalid("--weights is required for the weighted bound");
            }
            weighted_curve(&pb()?, &c.weights)
        }
    }
}

fn describe(model: &TailModel) -> Value {
    let regime = model.classify();
    let mut v = json!({
        "spec": model.spec(),
        "regime": format!("{regime:?}").to_lowercase(),
        "x0": model.x0(),
        "tail_at_x0": model.tail_at_cutoff(),
        "atom_mass": model.atom_mass(),
        "plateau_end": model.log_plateau_end().exp(),
    });
    if regime == Regime::Heavy {
        if let Ok(rep) = classify_mi_md(model) {
            v["monotone_class"] = json!(format!("{:?}", rep.class).to_lowercase());
        }
    }
    if !model.is_superheavy() {
        let ps: Vec<f64> = [0.25, 0.5, 0.75].iter().map(|f| f * model.r()).collect();
        v["moment_norms"] = json!(ps.iter().map(|&p| json!({"p": p, "norm": model.moment_norm(p).ok()})).collect::<Vec<_>>());
    }
    v
}

/// Runs a parsed command and returns its exit code.
pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Model { action: ModelAction::Describe(a) } => {
            let m = load_model(cli, a)?;
            emit_json(cli, "model", &describe(&m))?;
        }
        Command::Psi(a) => {
            if !(a.tmin > 0.0 && a.tmax > a.tmin && a.points >= 2) {
                return invalid("need 0 < tmin < tmax and at least two points");
            }
            let m = load_model(cli, &a.model)?;
            let psi = PsiFunction::from_tail(&m)?;
            let pb = PsiBar::new(psi.clone());
            let mut t = Table::new(&["t", "psi", "psi_bar"]);
            for x in geomspace(a.tmin, a.tmax, a.points) {
                t.push(vec![fmt(x), fmt(psi.eval(x)), fmt(pb.eval_direct(x))]);
            }
            emit_table(cli, "psi", &t)?;
        }
        Command::Norming(a) => {
            let m = load_model(cli, &a.model)?;
            if m.is_superheavy() {
                let seq = NormingSequence::superheavy(&m, Weight::OnePlusLog, &a.n)?;
                let mut t = Table::new(&["n", "log_B", "B"]);
                for i in 0..seq.ns.len() {
                    t.push(vec![seq.ns[i].to_string(), fmt(seq.log_values[i]), fmt(seq.values[i])]);
                }
                emit_table(cli, "norming", &t)?;
            } else {
                let exact = NormingSequence::exact(&PsiFunction::from_tail(&m)?, &a.n)?;
                let asym = match m.classify() {
                    Regime::Moderate => NormingSequence::sqrt_n(&a.n),
                    _ => NormingSequence::asymptotic(&m, &a.n)?,
                };
                let mut t = Table::new(&["n", "b_exact", "b_asymptotic", "ratio"]);
                for i in 0..exact.ns.len() {
                    let (b, c) = (exact.values[i], asym.values[i]);
                    t.push(vec![exact.ns[i].to_string(), fmt(b), fmt(c), fmt(b / c)]);
                }
                emit_table(cli, "norming", &t)?;
            }
        }
        Command::Bound(a) => {
            if !(a.xmin > 0.0 && a.xmax > a.xmin && a.points >= 2) {
                return invalid("need 0 < xmin < xmax and at least two points");
            }
            let m = load_model(cli, &a.model)?;
            let curve = build_curve(&m, &a.curve)?;
            let mut t = Table::new(&["x", "bound", "T"]);
            for x in geomspace(a.xmin, a.xmax, a.points) {
                let b = if curve.is_valid_at(x) { fmt(curve.eval_unchecked(x)) } else { String::new() };
                t.push(vec![fmt(x), b, fmt(m.tail_eval(x))]);
            }
            emit_table(cli, "bound", &t)?;
        }
        Command::Simulate(a) => {
            let exp = load_experiment(cli, a.experiment.as_ref())?;
            let emp = run_sums(&exp)?;
            let mut t = Table::new(&["x", "n_star", "U_hat", "SE"]);
            for i in 0..emp.x_grid.len() {
                t.push(vec![fmt(emp.x_grid[i]), emp.n_star[i].to_string(), fmt(emp.u_hat[i]), fmt(emp.se[i])]);
            }
            emit_table(cli, "simulate", &t)?;
            if cli.out.is_some() {
                emit_json(cli, "simulate_summary", &json!({"seed": exp.seed, "R": exp.reps, "n_set": exp.n_set, "per_n": emp.per_n}))?;
            }
        }
        Command::Verify(a) => {
            let exp = load_experiment(cli, a.experiment.as_ref())?;
            let curve = build_curve(&exp.model, &a.curve)?;
            let emp = run_sums(&exp)?;
            let rep = verify_bound(&emp, &curve);
            let mut t = Table::new(&["x", "n_star", "U_hat", "SE", "bound", "margin"]);
            let opt = |v: Option<f64>| v.map_or(String::new(), fmt);
            for r in &rep.rows {
                t.push(vec![fmt(r.x), r.n_star.to_string(), fmt(r.u_hat), fmt(r.se), opt(r.bound), opt(r.margin)]);
            }
            emit_table(cli, "verify", &t)?;
            let summary =
                json!({"pass": rep.pass, "violations": rep.violations, "theorem": curve.tag, "constant": curve.constant, "seed": exp.seed});
            if cli.out.is_some() {
                emit_json(cli, "verify_summary", &summary)?;
            } else {
                eprintln!("{summary}");
            }
            if !rep.pass {
                return Ok(EXIT_VIOLATION);
            }
        }
        Command::Ci(a) => {
            let m = load_model(cli, &a.model)?;
            let text = fs::read_to_string(&a.samples)?;
            let samples = text
                .split_whitespace()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Validation(format!("bad sample {s:?}: {e}"))))
                .collect::<Result<Vec<f64>>>()?;
            let engine = CiEngine::new(&NoiseModel::Tail(m), a.delta, None, a.martingale)?;
            emit_json(cli, "ci", &engine.report(&samples, a.truth)?)?;
        }
        Command::Fields(a) => {
            let space = match (&a.points, &a.samples) {
                (Some(path), _) => {
                    let rows = read_numeric_csv(path)?;
                    let coords: Vec<Vec<f64>> = rows.into_iter().map(|r| r.into_iter().skip(1).collect()).collect();
                    GridSpace::from_metric(coords, |u, v| u.iter().zip(v).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())?
                }
                (None, Some(path)) => {
                    let rows = read_numeric_csv(path)?;
                    let k = rows.first().map_or(0, |r| r.len());
                    let by_point: Vec<Vec<f64>> = (0..k).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
                    let coords = (0..k).map(|j| vec![j as f64]).collect();
                    let theta = NuFunction::explicit(1.0, a.r, |_| 1.0)?;
                    natural_distance_from_samples(coords, &by_point, &theta)?
                }
                (None, None) => return invalid("either --points or --samples is required"),
            };
            let diam = space.diameter();
            if !(diam > 0.0) {
                return invalid("points must not all coincide");
            }
            let prof = covering_numbers(&space, &geomspace(diam, diam * 1e-3, a.eps_points.max(3)))?;
            let one = SlowlyVarying::one();
            let cont = entropy_integral(CoveringSource::Profile(&prof), a.r, a.gamma, &one, EntropyVariant::Continuity)?;
            let lim = entropy_integral(CoveringSource::Profile(&prof), a.r, a.gamma, &one, EntropyVariant::Limit)?;
            let mut t = Table::new(&["eps", "N", "H"]);
            for i in 0..prof.eps.len() {
                t.push(vec![fmt(prof.eps[i]), prof.n[i].to_string(), fmt(prof.h[i])]);
            }
            emit_table(cli, "profile", &t)?;
            let report = json!({"exact_covering": prof.exact, "continuity": cont, "limit": lim});
            if cli.out.is_some() {
                emit_json(cli, "entropy", &report)?;
            } else {
                eprintln!("{report}");
            }
        }
        Command::Report(a) => {
            let m = load_model(cli, a)?;
            emit_json(cli, "report", &report(&m)?)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize, Deserialize)]
struct BoundRow {
    x: f64,
    tail: f64,
    bound: Option<f64>,
}

fn report(m: &TailModel) -> Result<Value> {
    let mut v = describe(m);
    let ns = [1u64, 10, 100, 1000];
    let xs = [10.0, 100.0, 1000.0];
    let (seq, curve) = match m.classify() {
        Regime::Heavy | Regime::Intermediate => {
            let psi = PsiFunction::from_tail(m)?;
            let pb = PsiBar::new(psi.clone());
            let c = if m.classify() == Regime::Heavy { heavy_curve(m, &pb)? } else { intermediate_curve(m, &pb)? };
            (NormingSequence::exact(&psi, &ns)?, c)
        }
        Regime::Moderate => (NormingSequence::sqrt_n(&ns), moderate_curve(&natural_nu(m)?, RosenthalMode::General)?),
        Regime::Superheavy => (NormingSequence::superheavy(m, Weight::OnePlusLog, &ns)?, superheavy_curve(m, 2.0)?),
    };
    v["norming"] = json!({"n": seq.ns, "log_b": seq.log_values, "provenance": seq.provenance});
    v["bound"] = json!({
        "theorem": curve.tag,
        "constant": curve.constant,
        "provenance": curve.provenance,
        "x_min": curve.x_min,
        "values": xs.iter().map(|&x| BoundRow { x, tail: m.tail_eval(x), bound: curve.eval(x).ok() }).collect::<Vec<_>>(),
    });
    Ok(v)
}
