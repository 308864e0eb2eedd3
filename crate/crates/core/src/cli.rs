//! Command-line front end.
//!
//! Every subcommand reads a stimulus description (`--stimulus file.json`),
//! runs one analysis and writes CSV or JSON. CSV output starts with
//! `# key=value` lines holding the effective configuration; JSON output is an
//! object `{"config": …, "result": …}`. Exit codes: 0 success, 2 no firing
//! within the search horizon, 3 firing map undefined (or undecided without
//! `--allow-unknown`), 4 invalid input.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::almostperiod::{
    compare_with_periodic_approximant, scan_displacement_almost_periods,
    scan_stepanov_almost_periods, scan_sup_almost_periods, sequence_shift_scan,
    verify_displacement_theorem, ApError, ScanOptions, ScanTarget, TauRange,
};
use crate::firing::{check_well_defined, EngineOptions, FiringEngine, FiringError, Verdict};
use crate::oracle::{brute_first_crossing, brute_mean, OracleConfig, OracleError};
use crate::report::{format_real, Real};
use crate::stimulus::{Stimulus, StimulusError, StimulusSpec, Window};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_FIRING: i32 = 2;
pub const EXIT_UNDEFINED: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "firingmap", version, about = "Firing-map analysis for the perfect integrate-and-fire model")]
pub struct Cli {
    /// Stimulus description (JSON).
    #[arg(long, global = true)]
    pub stimulus: Option<PathBuf>,
    /// Time tolerance for located crossings.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub root_tol: f64,
    /// Longest span a single crossing search may cover.
    #[arg(long, global = true, default_value_t = 1e6)]
    pub horizon: f64,
    /// Run analyses even when well-definedness cannot be decided.
    #[arg(long, global = true)]
    pub allow_unknown: bool,
    /// Output format; tables default to csv, reports to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    StimulusSup,
    StimulusStepanov,
    Displacement,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the firing map is defined.
    Check,
    /// Spike train Φ¹(t0) … Φⁿ(t0).
    Spikes(TrainArgs),
    /// Firing rate n/Φⁿ(t0) against the mean.
    Rate(TrainArgs),
    /// Displacement Ψ(t) = Φ(t) − t on a grid.
    Displacement(GridArgs),
    /// Jumps of Φ over zero plateaus.
    Discont(DiscontArgs),
    /// ε-almost periods of the stimulus or of the displacement.
    ApScan(ScanArgs),
    /// Check that Stepanov almost periods of f are almost periods of Ψ.
    VerifyAp(VerifyArgs),
    /// Compare Φ with the firing map of an approximating stimulus.
    ApproxCompare(ApproxArgs),
    /// Almost periods of the interspike-interval sequence.
    Isi(IsiArgs),
    #[command(hide = true, subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct TrainArgs {
    #[arg(long)]
    pub t0: f64,
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct GridArgs {
    #[arg(long)]
    pub lo: f64,
    #[arg(long)]
    pub hi: f64,
    #[arg(long)]
    pub step: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct DiscontArgs {
    #[arg(long)]
    pub lo: f64,
    #[arg(long)]
    pub hi: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct TauArgs {
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.0)]
    pub tau_lo: f64,
    #[arg(long)]
    pub tau_hi: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub tau_step: f64,
    /// Analysis window start.
    #[arg(long, default_value_t = 0.0)]
    pub lo: f64,
    /// Analysis window end.
    #[arg(long, default_value_t = 50.0)]
    pub hi: f64,
    /// Analysis window grid step.
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Skip golden-section polishing of local minima.
    #[arg(long)]
    pub no_refine: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub target: Target,
    #[command(flatten)]
    pub tau: TauArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub tau: TauArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ApproxArgs {
    /// Stimulus description of the approximant (JSON).
    #[arg(long)]
    pub approximant: PathBuf,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lo: f64,
    #[arg(long, default_value_t = 100.0)]
    pub hi: f64,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct IsiArgs {
    #[arg(long)]
    pub t0: f64,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long)]
    pub k_max: usize,
    #[arg(long, default_value_t = 1)]
    pub k_min: usize,
    /// Leading intervals to drop before comparing.
    #[arg(long, default_value_t = 0)]
    pub tail_offset: usize,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// First time the brute-force integral from t reaches the level.
    Crossing(OracleCrossingArgs),
    /// Brute-force mean over [0, T].
    Mean(OracleMeanArgs),
    /// Engine against brute force at seeded random start times.
    Compare(OracleCompareArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct OracleCrossingArgs {
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 1.0)]
    pub level: f64,
    #[arg(long, default_value_t = 1e-5)]
    pub grid_step: f64,
    #[arg(long, default_value_t = 1e3)]
    pub max_span: f64,
}

#[derive(Debug, Args)]
pub struct OracleMeanArgs {
    #[arg(long = "T", alias = "horizon-time")]
    pub horizon_time: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub grid_step: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct OracleCompareArgs {
    #[arg(long, default_value_t = 20)]
    pub cases: usize,
    #[arg(long, default_value_t = -5.0)]
    pub t_lo: f64,
    #[arg(long, default_value_t = 5.0)]
    pub t_hi: f64,
    #[arg(long, default_value_t = 1e-5)]
    pub grid_step: f64,
}

#[derive(Debug)]
enum Failure {
    NoFiring(String),
    Undefined(String),
    Invalid(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::NoFiring(_) => EXIT_NO_FIRING,
            Failure::Undefined(_) => EXIT_UNDEFINED,
            Failure::Invalid(_) => EXIT_INVALID,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::NoFiring(m) | Failure::Undefined(m) | Failure::Invalid(m) => m,
        }
    }
}

impl From<FiringError> for Failure {
    fn from(e: FiringError) -> Self {
        match e {
            FiringError::NoFiringWithinHorizon { .. } | FiringError::Stalled { .. } => {
                Failure::NoFiring(e.to_string())
            }
            FiringError::NotWellDefined(Verdict::Unknown) => Failure::Undefined(format!(
                "{e}; pass --allow-unknown to search within the horizon anyway"
            )),
            FiringError::NotWellDefined(_) => Failure::Undefined(e.to_string()),
            FiringError::UnsupportedStimulus(_) | FiringError::InvalidParameter(_) => {
                Failure::Invalid(e.to_string())
            }
        }
    }
}

impl From<ApError> for Failure {
    fn from(e: ApError) -> Self {
        match e {
            ApError::Firing(inner) => inner.into(),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::NoCrossingWithinSpan { .. } => Failure::NoFiring(e.to_string()),
            OracleError::InvalidParameter(_) => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<StimulusError> for Failure {
    fn from(e: StimulusError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

/// One configuration value, echoed in output headers.
#[derive(Debug, Clone)]
enum Setting {
    Real(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Stimulus(StimulusSpec),
}

impl Setting {
    fn csv(&self) -> String {
        match self {
            Setting::Real(x) => format_real(*x),
            Setting::Int(n) => n.to_string(),
            Setting::Bool(b) => b.to_string(),
            Setting::Text(s) => s.clone(),
            Setting::Stimulus(spec) => serde_json::to_string(spec).expect("stimulus serializes"),
        }
    }
}

impl Serialize for Setting {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Setting::Real(x) => Real(*x).serialize(s),
            Setting::Int(n) => n.serialize(s),
            Setting::Bool(b) => b.serialize(s),
            Setting::Text(t) => t.serialize(s),
            Setting::Stimulus(spec) => spec.serialize(s),
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Config(Vec<(String, Setting)>);

impl Config {
    fn set(&mut self, key: &str, value: Setting) -> &mut Self {
        self.0.push((key.to_string(), value));
        self
    }

    fn real(&mut self, key: &str, x: f64) -> &mut Self {
        self.set(key, Setting::Real(x))
    }

    fn int(&mut self, key: &str, n: u64) -> &mut Self {
        self.set(key, Setting::Int(n))
    }
}

impl Serialize for Config {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// A finished analysis: CSV rows and a JSON result.
struct Report {
    columns: &'static str,
    rows: Vec<String>,
    json: serde_json::Value,
    default_format: Format,
}

impl Report {
    fn render(&self, config: &Config, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut text = String::new();
                for (k, v) in &config.0 {
                    writeln!(text, "# {k}={}", v.csv()).unwrap();
                }
                writeln!(text, "{}", self.columns).unwrap();
                for row in &self.rows {
                    writeln!(text, "{row}").unwrap();
                }
                text
            }
            Format::Json => {
                #[derive(Serialize)]
                struct Envelope<'a> {
                    config: &'a Config,
                    result: &'a serde_json::Value,
                }
                let mut text = serde_json::to_string_pretty(&Envelope {
                    config,
                    result: &self.json,
                })
                .expect("report serializes");
                text.push('\n');
                text
            }
        }
    }
}

fn to_json(value: &impl Serialize) -> serde_json::Value {
    // round-trip through text so the 17-digit float formatting survives
    serde_json::from_str(&serde_json::to_string(value).expect("report serializes"))
        .expect("report re-parses")
}

fn r(x: f64) -> String {
    format_real(x)
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit code. Results go to `out` (or `--output`), diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_INVALID,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, status)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out
                    .write_all(text.as_bytes())
                    .map_err(|e| format!("cannot write output: {e}")),
            };
            if let Err(message) = written {
                let _ = writeln!(err, "error: {message}");
                return EXIT_INVALID;
            }
            if let Some(failure) = status {
                let _ = writeln!(err, "error: {}", failure.message());
                return failure.code();
            }
            EXIT_OK
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message());
            failure.code()
        }
    }
}

fn load(path: &Option<PathBuf>) -> Result<(PathBuf, Stimulus), Failure> {
    let path = path
        .clone()
        .ok_or_else(|| Failure::Invalid("--stimulus <file> is required".into()))?;
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let stimulus = Stimulus::from_json(&text)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok((path, stimulus))
}

fn positive(name: &str, x: f64) -> Result<(), Failure> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Failure::Invalid(format!("{name} must be positive, got {x}")))
    }
}

// Output text plus an optional failure to report after writing it (used for
// partial results such as truncated spike trains).
type Outcome = (String, Option<Failure>);

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    positive("--root-tol", cli.root_tol)?;
    positive("--horizon", cli.horizon)?;
    let (path, stimulus) = load(&cli.stimulus)?;
    let options = EngineOptions {
        root_tolerance: cli.root_tol,
        search_horizon: cli.horizon,
        allow_unknown: cli.allow_unknown,
    };
    let mut config = Config::default();
    config
        .set("command", Setting::Text(command_name(&cli.command).into()))
        .set("stimulus_path", Setting::Text(path.display().to_string()))
        .set("stimulus", Setting::Stimulus(StimulusSpec::from(&stimulus)))
        .real("root_tolerance", cli.root_tol)
        .real("search_horizon", cli.horizon)
        .set("allow_unknown", Setting::Bool(cli.allow_unknown))
        .int("seed", cli.seed);

    let engine = || FiringEngine::with_options(stimulus.clone(), options);
    let mut pending = None;
    let report = match &cli.command {
        Command::Check => {
            let (report, verdict) = check(&stimulus);
            if verdict == Verdict::Undefined {
                pending = Some(Failure::Undefined(
                    "the firing map is undefined for this stimulus: its integral stays bounded above".into(),
                ));
            }
            report
        }
        Command::Spikes(a) => {
            config.real("t0", a.t0).int("n", a.n);
            let train = engine()?.spike_train(a.t0, a.n)?;
            if let Some(reason) = &train.truncation {
                config.set("truncated", Setting::Text(reason.clone()));
                pending = Some(Failure::NoFiring(format!(
                    "spike train truncated after {} spikes: {reason}",
                    train.times.len()
                )));
            }
            Report {
                columns: "index,time,residual",
                rows: train
                    .times
                    .iter()
                    .zip(&train.residuals)
                    .enumerate()
                    .map(|(i, (t, res))| format!("{},{},{}", i + 1, r(*t), r(*res)))
                    .collect(),
                json: to_json(&train),
                default_format: Format::Csv,
            }
        }
        Command::Rate(a) => {
            config.real("t0", a.t0).int("n", a.n);
            let rate = engine()?.firing_rate(a.t0, a.n)?;
            Report {
                columns: "n,t0,phi_n,empirical_rate,mean_rate,deviation",
                rows: vec![format!(
                    "{},{},{},{},{},{}",
                    rate.n,
                    r(rate.t0),
                    r(rate.phi_n),
                    r(rate.empirical_rate),
                    r(rate.mean_rate),
                    r(rate.deviation)
                )],
                json: to_json(&rate),
                default_format: Format::Json,
            }
        }
        Command::Displacement(a) => {
            let w = Window::new(a.lo, a.hi, a.step)?;
            config.real("lo", a.lo).real("hi", a.hi).real("step", a.step);
            let profile = engine()?.displacement(&w)?;
            Report {
                columns: "t,psi",
                rows: profile
                    .grid
                    .iter()
                    .zip(&profile.values)
                    .map(|(t, p)| format!("{},{}", r(*t), r(*p)))
                    .collect(),
                json: to_json(&profile),
                default_format: Format::Csv,
            }
        }
        Command::Discont(a) => {
            let w = Window::new(a.lo, a.hi, a.hi - a.lo)?;
            config.real("lo", a.lo).real("hi", a.hi);
            let report = engine()?.discontinuities(&w)?;
            Report {
                columns: "abar,a,jump,plateau_length",
                rows: report
                    .entries
                    .iter()
                    .map(|d| format!("{},{},{},{}", r(d.abar), r(d.a), r(d.jump), r(d.plateau_length)))
                    .collect(),
                json: to_json(&report),
                default_format: Format::Json,
            }
        }
        Command::ApScan(a) => {
            let (range, w, opts) = tau_setup(&a.tau, &mut config)?;
            let target = match a.target {
                Target::StimulusSup => ScanTarget::StimulusSup,
                Target::StimulusStepanov => ScanTarget::StimulusStepanov,
                Target::Displacement => ScanTarget::Displacement,
            };
            config.set("target", Setting::Text(target.to_string()));
            let eps = a.tau.epsilon;
            let scan = match target {
                ScanTarget::StimulusSup => scan_sup_almost_periods(&stimulus, eps, &range, &w, opts)?,
                ScanTarget::StimulusStepanov => {
                    scan_stepanov_almost_periods(&stimulus, eps, &range, &w, opts)?
                }
                ScanTarget::Displacement => {
                    scan_displacement_almost_periods(&engine()?, eps, &range, &w, opts)?
                }
            };
            config.real("max_gap", scan.max_gap);
            Report {
                columns: "tau,metric,accepted",
                rows: scan
                    .samples
                    .iter()
                    .map(|s| format!("{},{},{}", r(s.tau), r(s.metric), s.accepted))
                    .collect(),
                json: to_json(&scan),
                default_format: Format::Csv,
            }
        }
        Command::VerifyAp(a) => {
            let (range, w, opts) = tau_setup(&a.tau, &mut config)?;
            let report = verify_displacement_theorem(&engine()?, a.tau.epsilon, &range, &w, opts)?;
            config
                .real("delta", report.delta)
                .real("stepanov_threshold", report.stepanov_threshold)
                .set("status", Setting::Text(report.status.to_string()));
            Report {
                columns: "tau,stepanov_distance,max_displacement_deviation,violation",
                rows: report
                    .candidates
                    .iter()
                    .map(|c| {
                        format!(
                            "{},{},{},{}",
                            r(c.tau),
                            r(c.stepanov_distance),
                            r(c.max_displacement_deviation),
                            !(c.max_displacement_deviation < a.tau.epsilon)
                        )
                    })
                    .collect(),
                json: to_json(&report),
                default_format: Format::Json,
            }
        }
        Command::ApproxCompare(a) => {
            let (approx_path, approximant) = load(&Some(a.approximant.clone()))?;
            let w = Window::new(a.lo, a.hi, a.step)?;
            config
                .set("approximant_path", Setting::Text(approx_path.display().to_string()))
                .set("approximant", Setting::Stimulus(StimulusSpec::from(&approximant)))
                .real("epsilon", a.epsilon)
                .real("lo", a.lo)
                .real("hi", a.hi)
                .real("step", a.step);
            let other = FiringEngine::with_options(approximant, options)?;
            let report = compare_with_periodic_approximant(&engine()?, &other, a.epsilon, &w)?;
            Report {
                columns: "delta,sup_stimulus_distance,required_bound,sup_phi_distance,epsilon,precondition_met,passes",
                rows: vec![format!(
                    "{},{},{},{},{},{},{}",
                    r(report.delta),
                    r(report.sup_stimulus_distance),
                    r(report.required_bound),
                    r(report.sup_phi_distance),
                    r(report.epsilon),
                    report.precondition_met,
                    report.passes
                )],
                json: to_json(&report),
                default_format: Format::Json,
            }
        }
        Command::Isi(a) => {
            config
                .real("t0", a.t0)
                .int("n", a.n)
                .real("epsilon", a.epsilon)
                .int("k_min", a.k_min as u64)
                .int("k_max", a.k_max as u64)
                .int("tail_offset", a.tail_offset as u64);
            let train = engine()?.spike_train(a.t0, a.n)?;
            if let Some(reason) = &train.truncation {
                return Err(Failure::NoFiring(format!(
                    "spike train truncated after {} spikes: {reason}",
                    train.times.len()
                )));
            }
            let scan = sequence_shift_scan(&train.intervals(), a.epsilon, a.k_min, a.k_max, a.tail_offset)?;
            Report {
                columns: "shift,metric,accepted",
                rows: scan
                    .samples
                    .iter()
                    .map(|s| format!("{},{},{}", s.shift, r(s.metric), s.accepted))
                    .collect(),
                json: to_json(&scan),
                default_format: Format::Csv,
            }
        }
        Command::Oracle(sub) => oracle(sub, &stimulus, options, cli.seed, &mut config)?,
    };
    let format = cli.format.unwrap_or(report.default_format);
    config.set(
        "format",
        Setting::Text(match format {
            Format::Csv => "csv".into(),
            Format::Json => "json".into(),
        }),
    );
    Ok((report.render(&config, format), pending))
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Check => "check",
        Command::Spikes(_) => "spikes",
        Command::Rate(_) => "rate",
        Command::Displacement(_) => "displacement",
        Command::Discont(_) => "discont",
        Command::ApScan(_) => "ap-scan",
        Command::VerifyAp(_) => "verify-ap",
        Command::ApproxCompare(_) => "approx-compare",
        Command::Isi(_) => "isi",
        Command::Oracle(OracleCommand::Crossing(_)) => "oracle crossing",
        Command::Oracle(OracleCommand::Mean(_)) => "oracle mean",
        Command::Oracle(OracleCommand::Compare(_)) => "oracle compare",
    }
}

fn check(stimulus: &Stimulus) -> (Report, Verdict) {
    #[derive(Serialize)]
    struct CheckResult {
        verdict: Verdict,
        #[serde(serialize_with = "crate::report::real")]
        mean: f64,
        #[serde(serialize_with = "crate::report::real")]
        certified_lower_bound: f64,
        #[serde(serialize_with = "crate::report::real")]
        sup_bound: f64,
    }
    let result = CheckResult {
        verdict: check_well_defined(stimulus),
        mean: stimulus.mean(),
        certified_lower_bound: stimulus.certified_lower_bound(),
        sup_bound: stimulus.sup_bound(),
    };
    let report = Report {
        columns: "verdict,mean,certified_lower_bound,sup_bound",
        rows: vec![format!(
            "{},{},{},{}",
            result.verdict,
            r(result.mean),
            r(result.certified_lower_bound),
            r(result.sup_bound)
        )],
        json: to_json(&result),
        default_format: Format::Json,
    };
    (report, result.verdict)
}

fn tau_setup(a: &TauArgs, config: &mut Config) -> Result<(TauRange, Window, ScanOptions), Failure> {
    let range = TauRange::new(a.tau_lo, a.tau_hi, a.tau_step)?;
    let w = Window::new(a.lo, a.hi, a.step)?;
    positive("--epsilon", a.epsilon)?;
    config
        .real("epsilon", a.epsilon)
        .real("tau_lo", a.tau_lo)
        .real("tau_hi", a.tau_hi)
        .real("tau_step", a.tau_step)
        .real("lo", a.lo)
        .real("hi", a.hi)
        .real("step", a.step)
        .set("refine", Setting::Bool(!a.no_refine));
    Ok((range, w, ScanOptions { refine: !a.no_refine }))
}

fn oracle(
    sub: &OracleCommand,
    stimulus: &Stimulus,
    options: EngineOptions,
    seed: u64,
    config: &mut Config,
) -> Result<Report, Failure> {
    match sub {
        OracleCommand::Crossing(a) => {
            let cfg = OracleConfig {
                grid_step: a.grid_step,
                max_span: a.max_span,
            };
            config
                .real("t", a.t)
                .real("level", a.level)
                .real("grid_step", a.grid_step)
                .real("max_span", a.max_span);
            let s = brute_first_crossing(stimulus, a.t, a.level, &cfg)?;
            Ok(Report {
                columns: "t,level,crossing",
                rows: vec![format!("{},{},{}", r(a.t), r(a.level), r(s))],
                json: to_json(&serde_json::json!({ "t": Real(a.t), "level": Real(a.level), "crossing": Real(s) })),
                default_format: Format::Json,
            })
        }
        OracleCommand::Mean(a) => {
            let cfg = OracleConfig {
                grid_step: a.grid_step,
                ..OracleConfig::default()
            };
            config.real("T", a.horizon_time).real("grid_step", a.grid_step);
            let m = brute_mean(stimulus, a.horizon_time, &cfg)?;
            Ok(Report {
                columns: "T,mean,exact_mean",
                rows: vec![format!("{},{},{}", r(a.horizon_time), r(m), r(stimulus.mean()))],
                json: to_json(&serde_json::json!({
                    "T": Real(a.horizon_time),
                    "mean": Real(m),
                    "exact_mean": Real(stimulus.mean()),
                })),
                default_format: Format::Json,
            })
        }
        OracleCommand::Compare(a) => {
            if !(a.t_lo < a.t_hi) {
                return Err(Failure::Invalid(format!(
                    "need --t-lo < --t-hi, got [{}, {}]",
                    a.t_lo, a.t_hi
                )));
            }
            config
                .int("cases", a.cases as u64)
                .real("t_lo", a.t_lo)
                .real("t_hi", a.t_hi)
                .real("grid_step", a.grid_step);
            let engine = FiringEngine::with_options(stimulus.clone(), options)?;
            let cfg = OracleConfig {
                grid_step: a.grid_step,
                ..OracleConfig::default()
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rows = Vec::with_capacity(a.cases);
            let mut cases = Vec::with_capacity(a.cases);
            for _ in 0..a.cases {
                let t = rng.gen_range(a.t_lo..a.t_hi);
                let phi = engine.phi(t)?;
                let brute = brute_first_crossing(stimulus, t, 1.0, &cfg)?;
                rows.push(format!("{},{},{},{}", r(t), r(phi), r(brute), r((phi - brute).abs())));
                cases.push(serde_json::json!({
                    "t": Real(t),
                    "phi": Real(phi),
                    "brute": Real(brute),
                    "difference": Real((phi - brute).abs()),
                }));
            }
            Ok(Report {
                columns: "t,phi,brute,difference",
                rows,
                json: serde_json::Value::Array(cases),
                default_format: Format::Csv,
            })
        }
    }
}
