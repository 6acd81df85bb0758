//! Stability threshold estimation and diagnostics.
//!
//! The block estimator is `λ̂_c = Ê[ν] / (|X| Ê[σ̂])` over i.i.d. blocks, which
//! equals `2k / (p_b |X| E σ̂)` in expectation for the doubled variant and
//! `1 / (p |X| E σ̂)` for the single-cover one. The stable side is `λ < λ_c`.

use std::f64::consts::{LN_2, PI};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrivals::{replication_rng, ArrivalStream, Attenuation, ShannonParams};
use crate::blocks::{sigma, sigma_hat, BlockRecord, BlockSampler, Times, Variant, ZigzagSpec};
use crate::engine::{DagState, EngineConfig, Scenario, Step, TraceLevel};
use crate::error::{Error, Result};
use crate::geometry::Space;
use crate::numerics;

/// Slope significance, in standard errors, for drift verdicts.
pub const SLOPE_SIGMAS: f64 = 3.0;
/// Fraction of the window whose minimum must exceed `K` for instability.
pub const TAIL_FRACTION: f64 = 0.25;
/// Smallest return frequency to `[0, K]` accepted as stable evidence.
pub const MIN_RETURN_FREQUENCY: f64 = 0.05;
/// Batches used for the drift regression.
pub const DRIFT_BATCHES: usize = 20;

/// Blocks sampled before their service times are evaluated in parallel.
const BATCH: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Blocks,
    Bisection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityEstimate {
    pub lambda_c_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Mean block size over retained blocks (NaN for bisection).
    pub mean_nu: f64,
    pub mean_sigma_hat: f64,
    /// Zigzag probability per candidate window, `window / Ê ν`.
    pub p_b_hat: f64,
    /// Retained blocks, or classified intensities for bisection.
    pub n_blocks: usize,
    pub seed: u64,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BootstrapConfig {
    pub resamples: usize,
    pub level: f64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self {
            resamples: 2000,
            level: 0.95,
        }
    }
}

/// Per-block `(ν, σ̂)` for `n_blocks` blocks of the seed's stream; the first
/// block is dropped, so `n_blocks - 1` records come back.
pub fn sample_block_records(scenario: &Scenario, spec: &ZigzagSpec, n_blocks: usize, seed: u64) -> Result<Vec<BlockRecord>> {
    if n_blocks < 2 {
        return Err(Error::invalid(format!("need at least 2 blocks, got {n_blocks}")));
    }
    let space = *scenario.space();
    let mut sampler = BlockSampler::seeded(&scenario.arrivals.marks, space, spec.clone(), &Times::None, seed, 0)?;
    let mut records = Vec::with_capacity(n_blocks - 1);
    let mut index = 0u64;
    let mut remaining = n_blocks;
    while remaining > 0 {
        let take = remaining.min(BATCH);
        remaining -= take;
        let batch: Vec<_> = (&mut sampler).take(take).collect();
        let sigmas = batch
            .par_iter()
            .map(|b| sigma_hat(b, &scenario.rate, space))
            .collect::<Result<Vec<f64>>>()?;
        for (b, s) in batch.iter().zip(sigmas) {
            if !b.is_first {
                records.push(BlockRecord {
                    seed,
                    replication: 0,
                    index,
                    nu: b.nu(),
                    sigma_hat: s,
                });
            }
            index += 1;
        }
    }
    Ok(records)
}

/// Block estimator from `(ν, σ̂)` records, with a percentile bootstrap CI.
pub fn estimate_from_records(
    records: &[BlockRecord],
    space: &Space,
    window: usize,
    bootstrap: BootstrapConfig,
    seed: u64,
) -> Result<StabilityEstimate> {
    if records.is_empty() {
        return Err(Error::invalid("no retained blocks"));
    }
    if !(bootstrap.level > 0.0 && bootstrap.level < 1.0) {
        return Err(Error::invalid(format!("CI level must be in (0, 1), got {}", bootstrap.level)));
    }
    let measure = space.measure();
    let m = records.len();
    let nus: Vec<f64> = records.iter().map(|r| r.nu as f64).collect();
    let sig: Vec<f64> = records.iter().map(|r| r.sigma_hat).collect();
    let mean_nu = nus.iter().sum::<f64>() / m as f64;
    let mean_sigma = sig.iter().sum::<f64>() / m as f64;
    let lambda = mean_nu / (measure * mean_sigma);
    let (ci_low, ci_high) = if m < 2 || bootstrap.resamples == 0 {
        (0.0, f64::INFINITY)
    } else {
        let mut stats: Vec<f64> = (0..bootstrap.resamples)
            .into_par_iter()
            .map(|b| {
                let mut rng = replication_rng(seed ^ 0xB007_5712_u64, b as u64 + 1);
                let (mut sn, mut ss) = (0.0, 0.0);
                for _ in 0..m {
                    let i = rng.random_range(0..m);
                    sn += nus[i];
                    ss += sig[i];
                }
                sn / (measure * ss)
            })
            .collect();
        stats.sort_by(f64::total_cmp);
        let alpha = (1.0 - bootstrap.level) / 2.0;
        let q = |p: f64| stats[((p * (stats.len() - 1) as f64).round() as usize).min(stats.len() - 1)];
        (q(alpha).min(lambda), q(1.0 - alpha).max(lambda))
    };
    Ok(StabilityEstimate {
        lambda_c_hat: lambda,
        ci_low,
        ci_high,
        mean_nu,
        mean_sigma_hat: mean_sigma,
        p_b_hat: window as f64 / mean_nu,
        n_blocks: m,
        seed,
        method: Method::Blocks,
    })
}

/// Block-sampling estimate of `λ_c` from `n_blocks` blocks (the first one is
/// discarded) with the default bootstrap.
pub fn estimate_lambda_c(scenario: &Scenario, spec: &ZigzagSpec, n_blocks: usize, seed: u64) -> Result<StabilityEstimate> {
    estimate_lambda_c_with(scenario, spec, n_blocks, seed, BootstrapConfig::default())
}

pub fn estimate_lambda_c_with(
    scenario: &Scenario,
    spec: &ZigzagSpec,
    n_blocks: usize,
    seed: u64,
    bootstrap: BootstrapConfig,
) -> Result<StabilityEstimate> {
    let records = sample_block_records(scenario, spec, n_blocks, seed)?;
    estimate_from_records(&records, scenario.space(), spec.window(), bootstrap, seed)
}

/// `∫_X l(‖x‖) dx` over the fundamental domain with the wrapped norm.
pub fn attenuation_integral(space: &Space, l: &Attenuation) -> Result<f64> {
    let tol = 1e-10;
    let mut breaks = vec![0.0];
    let kink = match l {
        Attenuation::CappedPowerLaw { .. } => Some(1.0),
        Attenuation::Indicator { range, .. } => Some(*range),
        Attenuation::Custom { .. } => None,
    };
    match *space {
        Space::Torus { dim: 1, half_width: w } => {
            if let Some(k) = kink.filter(|k| *k > 0.0 && *k < w) {
                breaks.push(k);
            }
            breaks.push(w);
            let mut total = 0.0;
            for ab in breaks.windows(2) {
                total += numerics::integrate(|r| l.eval(r), ab[0], ab[1], tol)?;
            }
            Ok(2.0 * total)
        }
        Space::Torus { half_width: w, .. } => {
            let diag = 2f64.sqrt() * w;
            if let Some(k) = kink.filter(|k| *k > 0.0 && *k < diag) {
                breaks.push(k);
            }
            breaks.push(w);
            breaks.push(diag);
            breaks.sort_by(f64::total_cmp);
            breaks.dedup();
            // Length of the circle of radius r inside the square.
            let perimeter = |r: f64| {
                if r <= w {
                    2.0 * PI * r
                } else {
                    2.0 * PI * r - 8.0 * r * (w / r).min(1.0).acos()
                }
            };
            let mut total = 0.0;
            for ab in breaks.windows(2) {
                total += numerics::integrate(|r| l.eval(r) * perimeter(r), ab[0], ab[1], tol)?;
            }
            Ok(total)
        }
        Space::DiscreteCircle { .. } => Err(Error::UnsupportedModel(
            "the attenuation integral is defined for continuous spaces".into(),
        )),
    }
}

/// Closed-form thresholds of the special cases.
#[derive(Debug, Clone)]
pub enum ClosedForm {
    /// Point exclusion sets with Shannon rates: `b s / (ln 2 · Eh · ∫ l)`.
    Wsbd { space: Space, shannon: ShannonParams, mean_height: f64 },
    /// Whole-space exclusion: `c / (|X| Eh)`.
    Mm1 { space: Space, shannon: ShannonParams, mean_height: f64 },
    /// Exponential radii with the single-cover variant:
    /// `exp(diam / R) / (|X| Ê σ̂)`.
    ExpRadius { space: Space, mean_radius: f64, mean_sigma_hat: f64 },
}

pub fn lambda_c_closed_form(kind: &ClosedForm) -> Result<f64> {
    match kind {
        ClosedForm::Wsbd { space, shannon, mean_height } => {
            shannon.validate()?;
            check_positive("mean height", *mean_height)?;
            let integral = attenuation_integral(space, &shannon.attenuation)?;
            if !(integral > 0.0 && integral.is_finite()) {
                return Err(Error::numeric("attenuation integral is not positive", format!("{integral}")));
            }
            Ok(shannon.bandwidth * shannon.signal / (LN_2 * mean_height * integral))
        }
        ClosedForm::Mm1 { space, shannon, mean_height } => {
            check_positive("mean height", *mean_height)?;
            if !(shannon.bandwidth > 0.0 && shannon.noise > 0.0 && shannon.signal >= 0.0) {
                return Err(Error::invalid("Shannon parameters must satisfy b > 0, w > 0, s >= 0"));
            }
            Ok(shannon.max_rate() / (space.measure() * mean_height))
        }
        ClosedForm::ExpRadius { space, mean_radius, mean_sigma_hat } => {
            check_positive("mean radius", *mean_radius)?;
            check_positive("mean sigma-hat", *mean_sigma_hat)?;
            Ok((space.diameter() / mean_radius).exp() / (space.measure() * mean_sigma_hat))
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Waiting times of block openers under the Lindley recursion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LindleyRun {
    pub lambda: f64,
    pub seed: u64,
    /// `W_m`, starting with the initial value.
    pub w: Vec<f64>,
    /// Opening times `T_m`, with `T_0 = 0`.
    pub t: Vec<f64>,
    /// Gated service times `Σ(W_m, Y_m)`.
    pub sigma: Vec<f64>,
    pub nu: Vec<usize>,
}

/// Iterates `W_{m+1} = (W_m + Σ(W_m, Y_m) - (T_{m+1} - T_m))^+` over
/// `n_blocks` blocks sampled at intensity `lambda`.
pub fn lindley_trajectory(
    scenario: &Scenario,
    spec: &ZigzagSpec,
    lambda: f64,
    n_blocks: usize,
    w0: f64,
    seed: u64,
) -> Result<LindleyRun> {
    check_positive("intensity", lambda)?;
    if !(w0 >= 0.0 && w0.is_finite()) {
        return Err(Error::invalid(format!("initial waiting time must be >= 0, got {w0}")));
    }
    let space = *scenario.space();
    let times = Times::Renewal {
        intensity: lambda,
        law: scenario.arrivals.interarrival.clone(),
    };
    let sampler = BlockSampler::seeded(&scenario.arrivals.marks, space, spec.clone(), &times, seed, 0)?;
    let mut run = LindleyRun {
        lambda,
        seed,
        w: Vec::with_capacity(n_blocks),
        t: Vec::with_capacity(n_blocks),
        sigma: Vec::with_capacity(n_blocks),
        nu: Vec::with_capacity(n_blocks),
    };
    let (mut w, mut t) = (w0, 0.0);
    for y in sampler.take(n_blocks) {
        let s = sigma(w, &y, &scenario.rate, space)?;
        run.w.push(w);
        run.t.push(t);
        run.sigma.push(s);
        run.nu.push(y.nu());
        let gap = y.next_opening.expect("timed block");
        w = (w + s - gap).max(0.0);
        t += gap;
    }
    Ok(run)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    StableEvidence,
    UnstableEvidence,
    Inconclusive,
}

/// Statistics behind a [`Verdict`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Drift {
    /// Least-squares slope of the series against its index, from batch means.
    pub slope: f64,
    pub slope_se: f64,
    /// Fraction of the window spent in `[0, K]`.
    pub return_frequency: f64,
    /// Minimum over the last quarter of the window.
    pub tail_min: f64,
}

/// Drift statistics of the last `window` values of `series`.
pub fn drift_statistics(series: &[f64], k: f64, window: usize) -> Result<Drift> {
    if window > series.len() {
        return Err(Error::invalid(format!(
            "window {window} is longer than the run ({})",
            series.len()
        )));
    }
    if window < 2 * DRIFT_BATCHES {
        return Err(Error::invalid(format!("window must hold at least {} values", 2 * DRIFT_BATCHES)));
    }
    let tail = &series[series.len() - window..];
    let size = window / DRIFT_BATCHES;
    let offset = window - size * DRIFT_BATCHES;
    let (xs, ys): (Vec<f64>, Vec<f64>) = (0..DRIFT_BATCHES)
        .map(|b| {
            let chunk = &tail[offset + b * size..offset + (b + 1) * size];
            let x = (offset + b * size) as f64 + (size as f64 - 1.0) / 2.0;
            (x, chunk.iter().sum::<f64>() / size as f64)
        })
        .unzip();
    let (slope, slope_se) = numerics::ols_slope(&xs, &ys);
    let returns = tail.iter().filter(|w| **w <= k).count();
    let tail_len = ((window as f64 * TAIL_FRACTION).ceil() as usize).max(1);
    let tail_min = tail[window - tail_len..].iter().copied().fold(f64::INFINITY, f64::min);
    Ok(Drift {
        slope,
        slope_se,
        return_frequency: returns as f64 / window as f64,
        tail_min,
    })
}

/// Stable evidence: the series returns to `[0, K]` at least
/// [`MIN_RETURN_FREQUENCY`] of the time and its slope is not significantly
/// positive. Unstable evidence: the slope is positive at [`SLOPE_SIGMAS`]
/// standard errors and the tail stays above `K`. A diagnostic, not a proof.
pub fn classify_series(series: &[f64], k: f64, window: usize) -> Result<(Verdict, Drift)> {
    let d = drift_statistics(series, k, window)?;
    let significant = d.slope > SLOPE_SIGMAS * d.slope_se && d.slope > 0.0;
    let verdict = if significant && d.tail_min > k {
        Verdict::UnstableEvidence
    } else if !significant && d.return_frequency >= MIN_RETURN_FREQUENCY {
        Verdict::StableEvidence
    } else {
        Verdict::Inconclusive
    };
    Ok((verdict, d))
}

pub fn classify_stability(run: &LindleyRun, k: f64, window: usize) -> Result<Verdict> {
    classify_series(&run.w, k, window).map(|(v, _)| v)
}

/// Settings of the full-system bisection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BisectionConfig {
    /// Simulated time per classified intensity.
    pub horizon: f64,
    pub iterations: usize,
    /// Present-customer count treated as divergence.
    pub population_cap: usize,
    /// Points of the population series used for the drift test.
    pub samples: usize,
}

impl Default for BisectionConfig {
    fn default() -> Self {
        Self {
            horizon: 2000.0,
            iterations: 6,
            population_cap: 5000,
            samples: 400,
        }
    }
}

/// Whether the full system at intensity `lambda` drifts upward: the number
/// of present customers over the second half of the horizon has a slope
/// positive at [`SLOPE_SIGMAS`] standard errors, or exceeds the cap.
pub fn full_system_diverges(scenario: &Scenario, lambda: f64, cfg: &BisectionConfig, seed: u64) -> Result<bool> {
    check_positive("intensity", lambda)?;
    let mut arrivals = scenario.arrivals.clone();
    arrivals.intensity = lambda;
    let config = EngineConfig {
        trace: TraceLevel::Off,
        check_invariants: false,
        ..scenario.engine
    };
    let mut state = DagState::new(arrivals.space, scenario.rate.clone(), config)?;
    let mut stream = ArrivalStream::new(&arrivals, replication_rng(seed, 0))?;
    let samples = cfg.samples.max(2 * DRIFT_BATCHES);
    let start = cfg.horizon / 2.0;
    let dt = (cfg.horizon - start) / samples as f64;
    let mut series = Vec::with_capacity(samples);
    let mut next_sample = start;
    let mut next = stream.next();
    while series.len() < samples {
        let t_next = next.as_ref().map_or(f64::INFINITY, |a| a.t);
        let t_dep = state.next_departure().map_or(f64::INFINITY, |d| d.0);
        while next_sample < t_next.min(t_dep) && series.len() < samples {
            series.push(state.n_present() as f64);
            next_sample += dt;
        }
        if series.len() >= samples {
            break;
        }
        if let Step::Arrival(_) = state.step(next.as_ref())? {
            next = stream.next();
        }
        if state.n_present() > cfg.population_cap {
            return Ok(true);
        }
    }
    let (slope, se) = {
        let d = drift_statistics(&series, f64::INFINITY, series.len())?;
        (d.slope, d.slope_se)
    };
    Ok(slope > 0.0 && slope > SLOPE_SIGMAS * se)
}

/// Brackets `λ_c` by bisection on `[lo, hi]` with [`full_system_diverges`].
/// The estimate is the bracket midpoint and the CI the final bracket.
pub fn bisect_lambda_c(scenario: &Scenario, lo: f64, hi: f64, cfg: &BisectionConfig, seed: u64) -> Result<StabilityEstimate> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::invalid(format!("bisection bracket must satisfy 0 < lo < hi, got [{lo}, {hi}]")));
    }
    let (mut lo, mut hi) = (lo, hi);
    for i in 0..cfg.iterations {
        let mid = 0.5 * (lo + hi);
        if full_system_diverges(scenario, mid, cfg, seed.wrapping_add(i as u64))? {
            hi = mid;
        } else {
            lo = mid;
        }
        log::debug!("bisection step {i}: bracket [{lo}, {hi}]");
    }
    Ok(StabilityEstimate {
        lambda_c_hat: 0.5 * (lo + hi),
        ci_low: lo,
        ci_high: hi,
        mean_nu: f64::NAN,
        mean_sigma_hat: f64::NAN,
        p_b_hat: f64::NAN,
        n_blocks: cfg.iterations,
        seed,
        method: Method::Bisection,
    })
}

/// Whether block sampling is impractical: expected block size above `limit`.
pub fn blocks_too_slow(spec: &ZigzagSpec, scenario: &Scenario, limit: f64) -> bool {
    match spec.success_probability(&scenario.arrivals.marks, scenario.space()) {
        Ok(p) => !(p > 0.0) || spec.window() as f64 / p > limit,
        Err(_) => false,
    }
}

/// Zigzag spec suited to a mark model: single-cover when whole-space marks
/// have positive probability, otherwise the doubled snake chain for the
/// guaranteed radius.
pub fn default_zigzag(scenario: &Scenario, variant: Option<Variant>) -> Result<ZigzagSpec> {
    use crate::arrivals::RadiusLaw;
    use crate::geometry::build_cover_chain;
    let space = scenario.space();
    let guaranteed = match &scenario.arrivals.marks.radius {
        RadiusLaw::Fixed(r) => Some(*r),
        RadiusLaw::Interval { width } => Some(((width - 1) / 2) as f64),
        _ => None,
    };
    let whole_possible = match &scenario.arrivals.marks.radius {
        RadiusLaw::WholeSpace | RadiusLaw::Exponential { .. } => true,
        RadiusLaw::Fixed(r) => *r >= space.diameter(),
        RadiusLaw::Interval { width } => match space {
            Space::DiscreteCircle { n_servers } => width >= n_servers,
            _ => false,
        },
        RadiusLaw::Custom(_) => false,
    };
    match variant {
        Some(Variant::Single) => Ok(ZigzagSpec::single_cover()),
        Some(Variant::Doubled) | None if guaranteed.is_some_and(|r| r > 0.0) && !whole_possible => {
            let chain = build_cover_chain(space, guaranteed.unwrap_or(0.0))?;
            Ok(ZigzagSpec::doubled(chain))
        }
        Some(Variant::Doubled) => Ok(ZigzagSpec::doubled(crate::geometry::CoverChain::whole_space())),
        None if whole_possible => Ok(ZigzagSpec::single_cover()),
        None => Err(Error::UnsupportedModel(
            "no cover chain: exclusion sets have no guaranteed radius".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrivals::{ArrivalSpec, HeightLaw, MarkModel, RadiusLaw, RateModel};

    fn whole_space_scenario() -> Scenario {
        let sp = Space::torus_2d(2.0).unwrap();
        let marks = MarkModel::new(RadiusLaw::WholeSpace, HeightLaw::Exponential { mean: 1.0 });
        Scenario::new(ArrivalSpec::poisson(sp, 0.15, marks), RateModel::Shannon(ShannonParams::default()))
    }

    #[test]
    fn closed_forms() {
        let sp = Space::torus_2d(2.0).unwrap();
        let p = ShannonParams::default();
        let wsbd = lambda_c_closed_form(&ClosedForm::Wsbd { space: sp, shannon: p.clone(), mean_height: 1.0 }).unwrap();
        assert!((wsbd - 0.2558).abs() < 5e-4, "{wsbd}");
        let mm1 = lambda_c_closed_form(&ClosedForm::Mm1 { space: sp, shannon: p.clone(), mean_height: 1.0 }).unwrap();
        assert!((mm1 - 21f64.log2() / 16.0).abs() < 1e-15);
        let faint = ShannonParams { signal: 1e-12, ..p };
        let tiny = lambda_c_closed_form(&ClosedForm::Mm1 { space: sp, shannon: faint, mean_height: 1.0 }).unwrap();
        assert!(tiny < 1e-10);
        let exp = lambda_c_closed_form(&ClosedForm::ExpRadius { space: sp, mean_radius: 4.0, mean_sigma_hat: 1.0 }).unwrap();
        assert!((exp - (8f64.sqrt() / 4.0).exp() / 16.0).abs() < 1e-15);
    }

    #[test]
    fn attenuation_integral_value() {
        let sp = Space::torus_2d(2.0).unwrap();
        let v = attenuation_integral(&sp, &Attenuation::CappedPowerLaw { exponent: 4.0 }).unwrap();
        assert!((v - 5.6405).abs() < 1e-3, "{v}");
        let unit = attenuation_integral(&sp, &Attenuation::Indicator { weight: 1.0, range: 10.0 }).unwrap();
        assert!((unit - 16.0).abs() < 1e-8);
    }

    #[test]
    fn two_blocks_leave_one_record() {
        let sc = whole_space_scenario();
        let est = estimate_lambda_c(&sc, &ZigzagSpec::single_cover(), 2, 3).unwrap();
        assert_eq!(est.n_blocks, 1);
        assert_eq!(est.mean_nu, 1.0);
        assert_eq!((est.ci_low, est.ci_high), (0.0, f64::INFINITY));
        assert!(estimate_lambda_c(&sc, &ZigzagSpec::single_cover(), 1, 3).is_err());
    }

    #[test]
    fn zero_trajectory_is_stable() {
        let zeros = vec![0.0; 200];
        assert_eq!(classify_series(&zeros, 1.0, 200).unwrap().0, Verdict::StableEvidence);
        assert!(classify_series(&zeros, 1.0, 201).is_err());
        let ramp: Vec<f64> = (0..400).map(|i| i as f64 + (i % 7) as f64).collect();
        assert_eq!(classify_series(&ramp, 1.0, 400).unwrap().0, Verdict::UnstableEvidence);
    }

    #[test]
    fn lindley_is_deterministic() {
        let sc = whole_space_scenario();
        let spec = ZigzagSpec::single_cover();
        let a = lindley_trajectory(&sc, &spec, 0.15, 500, 0.0, 11).unwrap();
        let b = lindley_trajectory(&sc, &spec, 0.15, 500, 0.0, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.w.iter().all(|w| *w >= 0.0));
        assert_eq!(a.w[0], 0.0);
    }
}
