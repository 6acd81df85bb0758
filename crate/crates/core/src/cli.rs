//! Scenario configuration files and the `phwg` command line.
//!
//! Configs are TOML:
//!
//! ```toml
//! seed = 7
//!
//! [space]
//! kind = "torus-2d"
//! half_width = 2.0
//!
//! [arrivals]
//! intensity = 0.15
//!
//! [marks.radius]
//! law = "exponential"
//! mean = 2.0
//!
//! [marks.height]
//! law = "exponential"
//! mean = 1.0
//!
//! [rate]
//! kind = "shannon"
//! ```
//!
//! Omitted sections take the defaults: Shannon rates with `b = 1`, `s = 1`,
//! `w = 0.05` and `l(r) = min(1, r^-4)`, exponential heights of mean 1 and
//! Poisson arrivals.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::arrivals::{ArrivalSpec, Attenuation, HeightLaw, InterarrivalLaw, MarkModel, RadiusLaw, RateModel, ShannonParams};
use crate::blocks::Variant;
use crate::engine::{self, EngineConfig, Scenario, Stop, TraceLevel};
use crate::error::{Error, Result};
use crate::geometry::Space;
use crate::stability::{self, BisectionConfig, BootstrapConfig, Method, StabilityEstimate};

/// Expected block size above which `estimate` switches to bisection.
pub const SLOW_BLOCK_SIZE: f64 = 1e5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub seed: u64,
    pub space: SpaceConfig,
    #[serde(default)]
    pub arrivals: ArrivalsConfig,
    #[serde(default)]
    pub marks: MarksConfig,
    #[serde(default)]
    pub rate: RateConfig,
    #[serde(default)]
    pub zigzag: ZigzagConfig,
    #[serde(default)]
    pub engine: EngineConfig,
    #[serde(default)]
    pub run: RunConfig,
    #[serde(default)]
    pub bootstrap: BootstrapConfig,
    #[serde(default)]
    pub bisection: BisectionSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    #[serde(rename = "torus-1d")]
    Torus1d,
    #[serde(rename = "torus-2d")]
    Torus2d,
    DiscreteCircle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub kind: SpaceKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_servers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ArrivalsConfig {
    pub intensity: f64,
    pub interarrival: InterarrivalKind,
    /// Shape of Erlang gaps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<u32>,
}

impl Default for ArrivalsConfig {
    fn default() -> Self {
        Self {
            intensity: 0.1,
            interarrival: InterarrivalKind::Exponential,
            shape: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InterarrivalKind {
    Exponential,
    Deterministic,
    Erlang,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MarksConfig {
    pub radius: RadiusConfig,
    pub height: HeightConfig,
}

impl Default for MarksConfig {
    fn default() -> Self {
        Self {
            radius: RadiusConfig::Fixed { radius: 0.0 },
            height: HeightConfig::Exponential { mean: 1.0 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RadiusConfig {
    Fixed { radius: f64 },
    Exponential { mean: f64 },
    WholeSpace,
    Interval { width: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case", deny_unknown_fields)]
pub enum HeightConfig {
    Exponential { mean: f64 },
    Deterministic { value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RateConfig {
    Shannon {
        #[serde(default = "one")]
        bandwidth: f64,
        #[serde(default = "one")]
        signal: f64,
        #[serde(default = "default_noise")]
        noise: f64,
        #[serde(default)]
        attenuation: AttenuationConfig,
    },
    Constant,
    DiscreteIndicator { weight: f64, range: f64 },
}

impl Default for RateConfig {
    fn default() -> Self {
        RateConfig::Shannon {
            bandwidth: 1.0,
            signal: 1.0,
            noise: 0.05,
            attenuation: AttenuationConfig::default(),
        }
    }
}

fn one() -> f64 {
    1.0
}

fn default_noise() -> f64 {
    0.05
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AttenuationConfig {
    CappedPowerLaw { exponent: f64 },
    Indicator { weight: f64, range: f64 },
}

impl Default for AttenuationConfig {
    fn default() -> Self {
        AttenuationConfig::CappedPowerLaw { exponent: 4.0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ZigzagConfig {
    /// Chosen from the mark model when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub blocks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_events: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty_after: Option<f64>,
    /// Level `K` of the stability diagnostic.
    #[serde(rename = "K")]
    pub k: f64,
    /// Trailing blocks used by the diagnostic; the whole run when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    pub initial_wait: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            blocks: 10_000,
            max_events: None,
            max_time: None,
            empty_after: None,
            k: 1.0,
            window: None,
            initial_wait: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BisectionSection {
    /// Bracket; defaults to `[0.1, 3] · c / (|X| Eh)` with `c` the maximal rate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lo: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hi: Option<f64>,
    pub horizon: f64,
    pub iterations: usize,
    pub population_cap: usize,
    pub samples: usize,
}

impl Default for BisectionSection {
    fn default() -> Self {
        let d = BisectionConfig::default();
        Self {
            lo: None,
            hi: None,
            horizon: 10_000.0,
            iterations: 8,
            population_cap: d.population_cap,
            samples: d.samples,
        }
    }
}

impl BisectionSection {
    pub fn settings(&self) -> BisectionConfig {
        BisectionConfig {
            horizon: self.horizon,
            iterations: self.iterations,
            population_cap: self.population_cap,
            samples: self.samples,
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.scenario()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configs serialize")
    }

    fn field_error(field: &str, e: Error) -> Error {
        Error::Config(format!("{field}: {e}"))
    }

    pub fn space(&self) -> Result<Space> {
        let s = &self.space;
        let need_w = || {
            s.half_width
                .ok_or_else(|| Error::Config("space.half_width: required for torus spaces".into()))
        };
        let sp = match s.kind {
            SpaceKind::Torus1d => Space::torus_1d(need_w()?),
            SpaceKind::Torus2d => Space::torus_2d(need_w()?),
            SpaceKind::DiscreteCircle => Space::discrete_circle(
                s.n_servers
                    .ok_or_else(|| Error::Config("space.n_servers: required for the discrete circle".into()))?,
            ),
        };
        sp.map_err(|e| Self::field_error("space", e))
    }

    pub fn marks(&self) -> MarkModel {
        let radius = match self.marks.radius {
            RadiusConfig::Fixed { radius } => RadiusLaw::Fixed(radius),
            RadiusConfig::Exponential { mean } => RadiusLaw::Exponential { mean },
            RadiusConfig::WholeSpace => RadiusLaw::WholeSpace,
            RadiusConfig::Interval { width } => RadiusLaw::Interval { width },
        };
        let height = match self.marks.height {
            HeightConfig::Exponential { mean } => HeightLaw::Exponential { mean },
            HeightConfig::Deterministic { value } => HeightLaw::Deterministic(value),
        };
        MarkModel::new(radius, height)
    }

    pub fn rate_model(&self) -> RateModel {
        match &self.rate {
            RateConfig::Shannon {
                bandwidth,
                signal,
                noise,
                attenuation,
            } => RateModel::Shannon(ShannonParams {
                bandwidth: *bandwidth,
                signal: *signal,
                noise: *noise,
                attenuation: match *attenuation {
                    AttenuationConfig::CappedPowerLaw { exponent } => Attenuation::CappedPowerLaw { exponent },
                    AttenuationConfig::Indicator { weight, range } => Attenuation::Indicator { weight, range },
                },
            }),
            RateConfig::Constant => RateModel::Constant,
            RateConfig::DiscreteIndicator { weight, range } => RateModel::DiscreteIndicator {
                weight: *weight,
                range: *range,
            },
        }
    }

    pub fn scenario(&self) -> Result<Scenario> {
        let space = self.space()?;
        let interarrival = match self.arrivals.interarrival {
            InterarrivalKind::Exponential => InterarrivalLaw::Exponential,
            InterarrivalKind::Deterministic => InterarrivalLaw::Deterministic,
            InterarrivalKind::Erlang => InterarrivalLaw::Erlang {
                shape: self
                    .arrivals
                    .shape
                    .ok_or_else(|| Error::Config("arrivals.shape: required for Erlang gaps".into()))?,
            },
        };
        let arrivals = ArrivalSpec {
            space,
            intensity: self.arrivals.intensity,
            interarrival,
            marks: self.marks(),
        };
        arrivals.validate().map_err(|e| Self::field_error("arrivals/marks", e))?;
        let rate = self.rate_model();
        rate.validate().map_err(|e| Self::field_error("rate", e))?;
        if !(self.engine.eps_work >= 0.0) {
            return Err(Error::Config("engine.eps_work: must be >= 0".into()));
        }
        Ok(Scenario {
            arrivals,
            rate,
            engine: self.engine,
        })
    }

    /// Applies one sweep value.
    pub fn with_sweep(&self, key: SweepKey, value: f64) -> Self {
        let mut c = self.clone();
        c.marks.radius = match key {
            SweepKey::MeanRadius => RadiusConfig::Exponential { mean: value },
            SweepKey::FixedRadius => RadiusConfig::Fixed { radius: value },
        };
        c
    }

    /// Radius descriptor for result rows.
    fn radius_value(&self) -> f64 {
        match self.marks.radius {
            RadiusConfig::Fixed { radius } => radius,
            RadiusConfig::Exponential { mean } => mean,
            RadiusConfig::WholeSpace => f64::INFINITY,
            RadiusConfig::Interval { width } => width as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKey {
    MeanRadius,
    FixedRadius,
}

/// Parses `KEY=V1,V2,...`.
pub fn parse_sweep(s: &str) -> Result<(SweepKey, Vec<f64>)> {
    let (key, values) = s
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("--sweep: expected KEY=V1,V2,..., got {s:?}")))?;
    let key = match key.trim().replace('_', "-").as_str() {
        "mean-radius" => SweepKey::MeanRadius,
        "fixed-radius" => SweepKey::FixedRadius,
        other => {
            return Err(Error::Config(format!(
                "--sweep: unknown key {other:?}; use mean-radius or fixed-radius"
            )))
        }
    };
    let values = values
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("--sweep: bad value {v:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::Config("--sweep: no values".into()));
    }
    Ok((key, values))
}

#[derive(Debug, Parser)]
#[command(name = "phwg", version, about = "Spatial queue simulator and stability threshold estimator")]
pub struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full dynamics and write a JSONL trace.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Trace file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_events: Option<u64>,
        #[arg(long)]
        max_time: Option<f64>,
    },
    /// Estimate the stability threshold by block sampling.
    Estimate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        blocks: Option<usize>,
        /// `mean-radius=V1,V2,...` or `fixed-radius=V1,V2,...`.
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// CSV file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterate the Lindley recursion of block openers.
    Lindley {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        blocks: Option<usize>,
        #[arg(long = "K")]
        k: Option<f64>,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum VariantArg {
    Doubled,
    Single,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Doubled => Variant::Doubled,
            VariantArg::Single => Variant::Single,
        }
    }
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::InvalidArgument(_) | Error::UnsupportedModel(_) => 2,
        Error::NumericFault { .. } | Error::ContractViolation(_) => 3,
        Error::Io(_) => 1,
    }
}

/// Parses arguments, runs the command, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cli: &Cli) -> Result<()> {
    if let Some(jobs) = cli.jobs {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    match &cli.command {
        Command::Simulate {
            config,
            seed,
            out,
            max_events,
            max_time,
        } => {
            let mut cfg = Config::load(config)?;
            if let Some(s) = seed {
                cfg.seed = *s;
            }
            if max_events.is_some() {
                cfg.run.max_events = *max_events;
            }
            if max_time.is_some() {
                cfg.run.max_time = *max_time;
            }
            let summary = simulate(&cfg, &mut open_out(out.as_deref())?)?;
            println!("{}", serde_json::to_string(&summary).map_err(io::Error::other)?);
            Ok(())
        }
        Command::Estimate {
            config,
            seed,
            blocks,
            sweep,
            variant,
            out,
        } => {
            let mut cfg = Config::load(config)?;
            if let Some(s) = seed {
                cfg.seed = *s;
            }
            if let Some(b) = blocks {
                cfg.run.blocks = *b;
            }
            if let Some(v) = variant {
                cfg.zigzag.variant = Some((*v).into());
            }
            let sweep = sweep.as_deref().map(parse_sweep).transpose()?;
            estimate(&cfg, sweep, &mut open_out(out.as_deref())?)?;
            Ok(())
        }
        Command::Lindley {
            config,
            seed,
            lambda,
            blocks,
            k,
            variant,
            out,
        } => {
            let mut cfg = Config::load(config)?;
            if let Some(s) = seed {
                cfg.seed = *s;
            }
            if let Some(l) = lambda {
                cfg.arrivals.intensity = *l;
            }
            if let Some(b) = blocks {
                cfg.run.blocks = *b;
            }
            if let Some(k) = k {
                cfg.run.k = *k;
            }
            if let Some(v) = variant {
                cfg.zigzag.variant = Some((*v).into());
            }
            let verdict = lindley(&cfg, &mut open_out(out.as_deref())?)?;
            println!("verdict: {}", verdict_name(verdict));
            Ok(())
        }
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn verdict_name(v: stability::Verdict) -> &'static str {
    match v {
        stability::Verdict::StableEvidence => "stable-evidence",
        stability::Verdict::UnstableEvidence => "unstable-evidence",
        stability::Verdict::Inconclusive => "inconclusive",
    }
}

fn write_comment_header(out: &mut dyn Write, cfg: &Config) -> Result<()> {
    for line in cfg.to_toml().lines() {
        writeln!(out, "# {line}")?;
    }
    Ok(())
}

/// Runs the dynamics; writes a header line with the resolved config followed
/// by one JSON object per event.
pub fn simulate(cfg: &Config, out: &mut dyn Write) -> Result<engine::Summary> {
    let mut scenario = cfg.scenario()?;
    scenario.engine.trace = TraceLevel::Events;
    let stop = match (cfg.run.max_events, cfg.run.max_time, cfg.run.empty_after) {
        (Some(n), _, _) => Stop::MaxEvents(n),
        (None, Some(t), _) => Stop::MaxTime(t),
        (None, None, Some(t)) => Stop::EmptyAfter(t),
        (None, None, None) => {
            return Err(Error::Config(
                "run: set one of max_events, max_time or empty_after (or pass --max-events / --max-time)".into(),
            ))
        }
    };
    let trace = engine::run(&scenario, stop, cfg.seed)?;
    let header = serde_json::json!({ "seed": cfg.seed, "config": cfg });
    serde_json::to_writer(&mut *out, &header).map_err(io::Error::other)?;
    out.write_all(b"\n")?;
    trace.write_jsonl(&mut *out)?;
    out.flush()?;
    Ok(trace.summary)
}

/// CSV columns of `estimate`.
pub const ESTIMATE_COLUMNS: &str =
    "scenario,radius,variant,n_blocks,mean_nu,mean_sigma_hat,lambda_c_hat,ci_low,ci_high,wall_time_s,method";

/// One estimate per sweep point (or one for the config itself).
pub fn estimate(cfg: &Config, sweep: Option<(SweepKey, Vec<f64>)>, out: &mut dyn Write) -> Result<Vec<StabilityEstimate>> {
    let points: Vec<Config> = match &sweep {
        Some((key, values)) => values.iter().map(|v| cfg.with_sweep(*key, *v)).collect(),
        None => vec![cfg.clone()],
    };
    // Validate every point before spending time on any of them.
    let scenarios = points.iter().map(Config::scenario).collect::<Result<Vec<_>>>()?;
    write_comment_header(out, cfg)?;
    writeln!(out, "{ESTIMATE_COLUMNS}")?;
    let mut results = Vec::new();
    for (i, (point, scenario)) in points.iter().zip(&scenarios).enumerate() {
        let start = Instant::now();
        let spec = stability::default_zigzag(scenario, point.zigzag.variant)?;
        let est = if stability::blocks_too_slow(&spec, scenario, SLOW_BLOCK_SIZE) {
            let (lo, hi) = bisection_bracket(point, scenario);
            log::info!("point {i}: expected block size too large, bisecting on [{lo}, {hi}]");
            stability::bisect_lambda_c(scenario, lo, hi, &point.bisection.settings(), point.seed)?
        } else {
            stability::estimate_lambda_c_with(scenario, &spec, point.run.blocks, point.seed, point.bootstrap)?
        };
        let variant = match (est.method, spec.variant) {
            (Method::Bisection, _) => "none",
            (_, Variant::Doubled) => "doubled",
            (_, Variant::Single) => "single",
        };
        writeln!(
            out,
            "{i},{},{variant},{},{},{},{},{},{},{:.3},{}",
            point.radius_value(),
            est.n_blocks,
            est.mean_nu,
            est.mean_sigma_hat,
            est.lambda_c_hat,
            est.ci_low,
            est.ci_high,
            start.elapsed().as_secs_f64(),
            match est.method {
                Method::Blocks => "blocks",
                Method::Bisection => "bisection",
            }
        )?;
        out.flush()?;
        results.push(est);
    }
    Ok(results)
}

fn bisection_bracket(cfg: &Config, scenario: &Scenario) -> (f64, f64) {
    let base = scenario.rate.max_rate() / (scenario.space().measure() * scenario.arrivals.marks.height.mean());
    (cfg.bisection.lo.unwrap_or(0.1 * base), cfg.bisection.hi.unwrap_or(3.0 * base))
}

/// Writes `m,T_m,W_m` rows and a trailing verdict comment.
pub fn lindley(cfg: &Config, out: &mut dyn Write) -> Result<stability::Verdict> {
    let scenario = cfg.scenario()?;
    let spec = stability::default_zigzag(&scenario, cfg.zigzag.variant)?;
    let run = stability::lindley_trajectory(
        &scenario,
        &spec,
        cfg.arrivals.intensity,
        cfg.run.blocks,
        cfg.run.initial_wait,
        cfg.seed,
    )?;
    let window = cfg.run.window.unwrap_or(run.w.len());
    let (verdict, drift) = stability::classify_series(&run.w, cfg.run.k, window)?;
    write_comment_header(out, cfg)?;
    writeln!(out, "m,T_m,W_m")?;
    for (m, (t, w)) in run.t.iter().zip(&run.w).enumerate() {
        writeln!(out, "{m},{t},{w}")?;
    }
    writeln!(
        out,
        "# verdict = {} slope = {} slope_se = {} return_frequency = {} tail_min = {}",
        verdict_name(verdict),
        drift.slope,
        drift.slope_se,
        drift.return_frequency,
        drift.tail_min
    )?;
    out.flush()?;
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[space]\nkind = \"torus-2d\"\nhalf_width = 2.0\n";

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = Config::from_toml(MINIMAL).unwrap();
        let sc = cfg.scenario().unwrap();
        assert!(matches!(sc.rate, RateModel::Shannon(ref p) if p.noise == 0.05 && p.signal == 1.0));
        assert_eq!(sc.arrivals.marks.height.mean(), 1.0);
        let again = Config::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad = "[space]\nkind = \"torus-2d\"\nhalf_width = -1.0\n";
        let e = Config::from_toml(bad).unwrap_err();
        assert!(e.to_string().contains("space"), "{e}");
        let typo = "[space]\nkind = \"torus-2d\"\nhalf_widht = 2.0\n";
        let e = Config::from_toml(typo).unwrap_err();
        assert!(e.to_string().contains("line"), "{e}");
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::numeric("rate is NaN", "")), 3);
        assert_eq!(exit_code(&Error::ContractViolation("rate above bound".into())), 3);
        assert_eq!(exit_code(&Error::invalid("bad")), 2);
        assert_eq!(exit_code(&Error::UnsupportedModel("x".into())), 2);
    }

    #[test]
    fn sweep_parsing() {
        let (k, v) = parse_sweep("mean-radius=0.05,0.4,2").unwrap();
        assert_eq!(k, SweepKey::MeanRadius);
        assert_eq!(v, vec![0.05, 0.4, 2.0]);
        assert!(parse_sweep("height=1").is_err());
        assert!(parse_sweep("fixed_radius=x").is_err());
    }
}
