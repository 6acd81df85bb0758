//! Marked arrival streams and service-rate models.
//!
//! Randomness comes from ChaCha8 streams. [`replication_rng`] derives the
//! generator for replication `r` of master seed `s` as
//! `ChaCha8Rng::seed_from_u64(s)` followed by `set_stream(r)`, so every
//! replication is an independent, platform-stable stream.

use std::fmt;
use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Gamma};

use crate::error::{Error, Result};
use crate::geometry::{ExclusionSet, Point, Space};

pub type CustomerId = u64;

/// Generator for replication `replication` of `master_seed`.
pub fn replication_rng(master_seed: u64, replication: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(replication);
    rng
}

type DrawFn<T> = Arc<dyn Fn(&mut dyn RngCore) -> T + Send + Sync>;

/// A user-supplied real-valued sampler.
#[derive(Clone)]
pub struct Sampler(DrawFn<f64>);

impl Sampler {
    pub fn new(f: impl Fn(&mut dyn RngCore) -> f64 + Send + Sync + 'static) -> Self {
        Sampler(Arc::new(f))
    }

    pub fn draw(&self, rng: &mut dyn RngCore) -> f64 {
        (self.0)(rng)
    }
}

impl fmt::Debug for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Sampler(..)")
    }
}

/// Draws a dependent `(radius, height)` pair.
#[derive(Clone)]
pub struct JointSampler(DrawFn<(f64, f64)>);

impl JointSampler {
    pub fn new(f: impl Fn(&mut dyn RngCore) -> (f64, f64) + Send + Sync + 'static) -> Self {
        JointSampler(Arc::new(f))
    }
}

impl fmt::Debug for JointSampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("JointSampler(..)")
    }
}

#[derive(Debug, Clone)]
pub enum RadiusLaw {
    /// Ball of fixed radius; radius zero is the point exclusion of WSBD.
    Fixed(f64),
    Exponential { mean: f64 },
    WholeSpace,
    /// Discrete circle: `width` neighbouring servers.
    Interval { width: usize },
    Custom(Sampler),
}

#[derive(Debug, Clone)]
pub enum HeightLaw {
    Exponential { mean: f64 },
    Deterministic(f64),
    Custom { sampler: Sampler, mean: f64 },
}

impl HeightLaw {
    pub fn mean(&self) -> f64 {
        match self {
            HeightLaw::Exponential { mean } => *mean,
            HeightLaw::Deterministic(h) => *h,
            HeightLaw::Custom { mean, .. } => *mean,
        }
    }

    fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            HeightLaw::Exponential { mean } => {
                let exp = Exp::new(1.0 / mean).expect("validated mean");
                loop {
                    let h = exp.sample(rng);
                    if h > 0.0 {
                        return h;
                    }
                }
            }
            HeightLaw::Deterministic(h) => *h,
            HeightLaw::Custom { sampler, .. } => {
                let mut dynrng = DynRng(rng);
                sampler.draw(&mut dynrng)
            }
        }
    }
}

// Adapter so unsized generators can be handed to `dyn RngCore` closures.
struct DynRng<'a, R: RngCore + ?Sized>(&'a mut R);

impl<R: RngCore + ?Sized> RngCore for DynRng<'_, R> {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}

/// Law of the i.i.d. marks `(S, h)`.
#[derive(Debug, Clone)]
pub struct MarkModel {
    pub radius: RadiusLaw,
    pub height: HeightLaw,
    /// Overrides both laws with a dependent radius/height pair.
    pub joint: Option<JointSampler>,
}

impl MarkModel {
    pub fn new(radius: RadiusLaw, height: HeightLaw) -> Self {
        Self {
            radius,
            height,
            joint: None,
        }
    }

    pub fn validate(&self, sp: &Space) -> Result<()> {
        match (&self.radius, sp) {
            (RadiusLaw::Fixed(r), Space::Torus { .. }) if *r >= 0.0 && r.is_finite() => {}
            (RadiusLaw::Exponential { mean }, Space::Torus { .. }) if *mean > 0.0 && mean.is_finite() => {}
            (RadiusLaw::WholeSpace, _) | (RadiusLaw::Custom(_), Space::Torus { .. }) => {}
            (RadiusLaw::Interval { width }, Space::DiscreteCircle { n_servers })
                if width % 2 == 1 && width <= n_servers => {}
            (law, sp) => {
                return Err(Error::invalid(format!("radius law {law:?} is invalid on {sp:?}")));
            }
        }
        let mean = self.height.mean();
        if !(mean > 0.0 && mean.is_finite()) {
            return Err(Error::invalid(format!("mean height must be positive and finite, got {mean}")));
        }
        Ok(())
    }

    /// Draws the exclusion set and height of an arrival at `x`.
    pub fn sample<R: RngCore + ?Sized>(&self, x: Point, sp: &Space, rng: &mut R) -> Result<(ExclusionSet, f64)> {
        if let Some(joint) = &self.joint {
            let mut dynrng = DynRng(rng);
            let (r, h) = (joint.0)(&mut dynrng);
            return Ok((ExclusionSet::Ball { center: x, radius: r }, h));
        }
        let set = match &self.radius {
            RadiusLaw::Fixed(r) => ExclusionSet::Ball { center: x, radius: *r },
            RadiusLaw::Exponential { mean } => ExclusionSet::Ball {
                center: x,
                radius: Exp::new(1.0 / mean).expect("validated mean").sample(rng),
            },
            RadiusLaw::WholeSpace => ExclusionSet::WholeSpace,
            RadiusLaw::Interval { width } => match x {
                Point::Site(center) => ExclusionSet::Interval { center, width: *width },
                _ => return Err(Error::invalid("interval exclusion needs a discrete space")),
            },
            RadiusLaw::Custom(s) => {
                let mut dynrng = DynRng(&mut *rng);
                ExclusionSet::Ball {
                    center: x,
                    radius: s.draw(&mut dynrng),
                }
            }
        };
        if let Space::Torus { .. } = sp {
            if matches!(set, ExclusionSet::Interval { .. }) {
                return Err(Error::invalid("interval exclusion needs a discrete space"));
            }
        }
        Ok((set, self.height.draw(rng)))
    }
}

/// Law of the gaps between consecutive arrivals, rescaled to mean
/// `1 / (λ |X|)`.
#[derive(Debug, Clone)]
pub enum InterarrivalLaw {
    /// Poisson arrivals.
    Exponential,
    Deterministic,
    Erlang { shape: u32 },
    /// Unit-mean positive sampler, multiplied by the mean gap.
    Custom(Sampler),
}

#[derive(Debug, Clone)]
pub struct ArrivalSpec {
    pub space: Space,
    /// Arrivals per unit time per unit measure.
    pub intensity: f64,
    pub interarrival: InterarrivalLaw,
    pub marks: MarkModel,
}

impl ArrivalSpec {
    pub fn poisson(space: Space, intensity: f64, marks: MarkModel) -> Self {
        Self {
            space,
            intensity,
            interarrival: InterarrivalLaw::Exponential,
            marks,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.space.validate()?;
        if !(self.intensity > 0.0 && self.intensity.is_finite()) {
            return Err(Error::invalid(format!(
                "arrival intensity must be positive, got {}",
                self.intensity
            )));
        }
        if let InterarrivalLaw::Erlang { shape: 0 } = self.interarrival {
            return Err(Error::invalid("Erlang shape must be at least 1"));
        }
        self.marks.validate(&self.space)
    }

    /// `1 / (λ |X|)`.
    pub fn mean_gap(&self) -> f64 {
        1.0 / (self.intensity * self.space.measure())
    }
}

/// One customer: sequence number, arrival time, location and marks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arrival {
    pub id: CustomerId,
    pub t: f64,
    pub x: Point,
    pub set: ExclusionSet,
    pub h: f64,
}

struct GapLaw {
    law: InterarrivalLaw,
    mean: f64,
}

impl GapLaw {
    fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let g = match &self.law {
                InterarrivalLaw::Exponential => Exp::new(1.0 / self.mean).expect("mean > 0").sample(rng),
                InterarrivalLaw::Deterministic => self.mean,
                InterarrivalLaw::Erlang { shape } => {
                    let k = f64::from(*shape);
                    Gamma::new(k, self.mean / k).expect("shape > 0").sample(rng)
                }
                InterarrivalLaw::Custom(s) => {
                    let mut dynrng = DynRng(&mut *rng);
                    s.draw(&mut dynrng) * self.mean
                }
            };
            if g > 0.0 {
                return g;
            }
        }
    }
}

/// Infinite stream of i.i.d. marked arrivals.
///
/// Per arrival the generator is consumed in a fixed order: gap (timed streams
/// only), location, then marks.
pub struct ArrivalStream {
    space: Space,
    marks: MarkModel,
    gaps: Option<GapLaw>,
    rng: ChaCha8Rng,
    clock: f64,
    next_id: CustomerId,
}

impl ArrivalStream {
    pub fn new(spec: &ArrivalSpec, rng: ChaCha8Rng) -> Result<Self> {
        spec.validate()?;
        Ok(Self {
            space: spec.space,
            marks: spec.marks.clone(),
            gaps: Some(GapLaw {
                law: spec.interarrival.clone(),
                mean: spec.mean_gap(),
            }),
            rng,
            clock: 0.0,
            next_id: 1,
        })
    }

    /// Marks and locations only; every arrival carries `t = 0`.
    pub fn untimed(space: Space, marks: MarkModel, rng: ChaCha8Rng) -> Result<Self> {
        space.validate()?;
        marks.validate(&space)?;
        Ok(Self {
            space,
            marks,
            gaps: None,
            rng,
            clock: 0.0,
            next_id: 1,
        })
    }

    pub fn is_timed(&self) -> bool {
        self.gaps.is_some()
    }

    /// Draws the next arrival and also returns the gap since the previous one.
    pub fn next_with_gap(&mut self) -> (Arrival, f64) {
        let gap = match &self.gaps {
            Some(g) => g.draw(&mut self.rng),
            None => 0.0,
        };
        self.clock += gap;
        let x = self.space.sample_point(&mut self.rng);
        let (set, h) = self
            .marks
            .sample(x, &self.space, &mut self.rng)
            .expect("marks validated against the space");
        let id = self.next_id;
        self.next_id += 1;
        (
            Arrival {
                id,
                t: self.clock,
                x,
                set,
                h,
            },
            gap,
        )
    }
}

impl Iterator for ArrivalStream {
    type Item = Arrival;

    fn next(&mut self) -> Option<Arrival> {
        Some(self.next_with_gap().0)
    }
}

/// `count` arrivals of `spec`, deterministic in `seed`.
pub fn sample_stream(spec: &ArrivalSpec, count: usize, seed: u64) -> Result<Vec<Arrival>> {
    Ok(ArrivalStream::new(spec, replication_rng(seed, 0))?
        .take(count)
        .collect())
}

/// Attenuation `l(r)` as a function of wrapped distance.
#[derive(Clone)]
pub enum Attenuation {
    /// `min(1, r^-exponent)`.
    CappedPowerLaw { exponent: f64 },
    /// `weight · 1{r <= range}`.
    Indicator { weight: f64, range: f64 },
    /// Non-increasing `f` with `f(0) = bound`.
    Custom {
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        bound: f64,
    },
}

impl fmt::Debug for Attenuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attenuation::CappedPowerLaw { exponent } => {
                f.debug_struct("CappedPowerLaw").field("exponent", exponent).finish()
            }
            Attenuation::Indicator { weight, range } => f
                .debug_struct("Indicator")
                .field("weight", weight)
                .field("range", range)
                .finish(),
            Attenuation::Custom { bound, .. } => f.debug_struct("Custom").field("bound", bound).finish(),
        }
    }
}

impl Attenuation {
    #[inline]
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            Attenuation::CappedPowerLaw { exponent } => {
                if r <= 1.0 {
                    1.0
                } else if *exponent == 4.0 {
                    let r2 = r * r;
                    1.0 / (r2 * r2)
                } else {
                    r.powf(-exponent)
                }
            }
            Attenuation::Indicator { weight, range } => {
                if r <= *range {
                    *weight
                } else {
                    0.0
                }
            }
            Attenuation::Custom { f, .. } => f(r),
        }
    }

    /// Upper bound `L = l(0)`.
    pub fn bound(&self) -> f64 {
        match self {
            Attenuation::CappedPowerLaw { .. } => 1.0,
            Attenuation::Indicator { weight, .. } => *weight,
            Attenuation::Custom { bound, .. } => *bound,
        }
    }
}

/// Shannon service rate `b log2(1 + s / (w + I))`.
#[derive(Debug, Clone)]
pub struct ShannonParams {
    pub bandwidth: f64,
    pub signal: f64,
    pub noise: f64,
    pub attenuation: Attenuation,
}

impl Default for ShannonParams {
    fn default() -> Self {
        Self {
            bandwidth: 1.0,
            signal: 1.0,
            noise: 0.05,
            attenuation: Attenuation::CappedPowerLaw { exponent: 4.0 },
        }
    }
}

impl ShannonParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("bandwidth", self.bandwidth), ("signal", self.signal), ("noise", self.noise)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("Shannon {name} must be positive, got {v}")));
            }
        }
        let l = self.attenuation.bound();
        if !(l >= 0.0 && l.is_finite()) {
            return Err(Error::invalid(format!("attenuation bound must be finite and >= 0, got {l}")));
        }
        Ok(())
    }

    /// Interference-free rate `c = b log2(1 + s / w)`.
    pub fn max_rate(&self) -> f64 {
        self.bandwidth * (1.0 + self.signal / self.noise).log2()
    }

    #[inline]
    pub fn rate_at(&self, interference: f64) -> f64 {
        self.bandwidth * (1.0 + self.signal / (self.noise + interference)).log2()
    }
}

/// Signature of a general interaction function: index of the customer in the
/// configuration, the configuration, and the space.
pub type InteractionFn = dyn Fn(usize, &[(Point, CustomerId)], &Space) -> f64 + Send + Sync;

/// Service speed `s(x, ψ)` with declared bounds `min > 0` and `max`.
#[derive(Clone)]
pub struct Interaction {
    pub f: Arc<InteractionFn>,
    pub min: f64,
    pub max: f64,
}

impl fmt::Debug for Interaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Interaction")
            .field("min", &self.min)
            .field("max", &self.max)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum RateModel {
    Shannon(ShannonParams),
    /// Unit speed regardless of the configuration (hot ground).
    Constant,
    /// `1 / (1 + weight · φ)` with `φ` the number of other active customers
    /// within `range`.
    DiscreteIndicator { weight: f64, range: f64 },
    Custom(Interaction),
}

impl RateModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            RateModel::Shannon(p) => p.validate(),
            RateModel::Constant => Ok(()),
            RateModel::DiscreteIndicator { weight, range } => {
                if *weight >= 0.0 && *range >= 0.0 && weight.is_finite() {
                    Ok(())
                } else {
                    Err(Error::invalid("indicator weight and range must be >= 0"))
                }
            }
            RateModel::Custom(i) => {
                if i.min > 0.0 && i.max >= i.min && i.max.is_finite() {
                    Ok(())
                } else {
                    Err(Error::invalid(format!(
                        "interaction bounds must satisfy 0 < min <= max < inf, got [{}, {}]",
                        i.min, i.max
                    )))
                }
            }
        }
    }

    /// Largest speed any customer can receive.
    pub fn max_rate(&self) -> f64 {
        match self {
            RateModel::Shannon(p) => p.max_rate(),
            RateModel::Constant | RateModel::DiscreteIndicator { .. } => 1.0,
            RateModel::Custom(i) => i.max,
        }
    }
}

fn position_of(n: CustomerId, config: &[(Point, CustomerId)]) -> Result<usize> {
    config
        .iter()
        .position(|(_, id)| *id == n)
        .ok_or_else(|| Error::invalid(format!("customer {n} is not in the active configuration")))
}

/// Shannon rate of customer `n` against every other member of `config`.
pub fn shannon_rate(
    n: CustomerId,
    config: &[(Point, CustomerId)],
    params: &ShannonParams,
    sp: &Space,
) -> Result<f64> {
    let i = position_of(n, config)?;
    let x = config[i].0;
    let interference: f64 = config
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, (y, _))| params.attenuation.eval(sp.dist(&x, y)))
        .sum();
    Ok(params.rate_at(interference))
}

/// Service rate of customer `n` in `config` under `model`.
pub fn rate(model: &RateModel, n: CustomerId, config: &[(Point, CustomerId)], sp: &Space) -> Result<f64> {
    match model {
        RateModel::Shannon(p) => shannon_rate(n, config, p, sp),
        RateModel::Constant => position_of(n, config).map(|_| 1.0),
        RateModel::DiscreteIndicator { weight, range } => {
            let i = position_of(n, config)?;
            let x = config[i].0;
            let phi = config
                .iter()
                .enumerate()
                .filter(|(j, (y, _))| *j != i && sp.dist(&x, y) <= *range)
                .count();
            Ok(1.0 / (1.0 + weight * phi as f64))
        }
        RateModel::Custom(inter) => {
            let i = position_of(n, config)?;
            checked_interaction(inter, i, config, sp)
        }
    }
}

pub(crate) fn checked_interaction(
    inter: &Interaction,
    i: usize,
    config: &[(Point, CustomerId)],
    sp: &Space,
) -> Result<f64> {
    let v = (inter.f)(i, config, sp);
    if v >= inter.min && v <= inter.max {
        return Ok(v);
    }
    let msg = format!(
        "interaction returned {v} for customer {}, outside [{}, {}]",
        config[i].1, inter.min, inter.max
    );
    if cfg!(debug_assertions) || !v.is_finite() {
        Err(Error::ContractViolation(msg))
    } else {
        log::warn!("{msg}; clamping");
        Ok(v.clamp(inter.min, inter.max))
    }
}

/// `b log2(1 + N s / (w + (N - 1) L))`, a lower bound on the total Shannon
/// rate of any configuration of `n` customers.
pub fn sum_rate_lower_bound(n: usize, params: &ShannonParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("sum-rate bound needs at least one customer"));
    }
    let nf = n as f64;
    let l = params.attenuation.bound();
    Ok(params.bandwidth * (1.0 + nf * params.signal / (params.noise + (nf - 1.0) * l)).log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> Space {
        Space::torus_2d(2.0).unwrap()
    }

    #[test]
    fn singleton_rate_is_max_rate() {
        let p = ShannonParams::default();
        let cfg = [(Point::Torus([0.0, 0.0]), 7)];
        let r = shannon_rate(7, &cfg, &p, &torus()).unwrap();
        assert!((r - 21f64.log2()).abs() < 1e-15);
        assert!((r - 4.392_317_4).abs() < 1e-6);
    }

    #[test]
    fn two_customer_rates() {
        let p = ShannonParams::default();
        let sp = torus();
        let cfg = [(Point::Torus([0.0, 0.0]), 1), (Point::Torus([1.0, 0.0]), 2)];
        let r = shannon_rate(1, &cfg, &p, &sp).unwrap();
        assert!((r - (1.0 + 1.0 / 1.05f64).log2()).abs() < 1e-15);
        assert!((r - 0.965_235).abs() < 1e-6);
        let cfg = [(Point::Torus([0.0, 0.0]), 1), (Point::Torus([0.0, 2.0]), 2)];
        let r = shannon_rate(2, &cfg, &p, &sp).unwrap();
        assert!((r - (1.0 + 1.0 / 0.1125f64).log2()).abs() < 1e-15);
        assert!((r - 3.305_80).abs() < 1e-5);
    }

    #[test]
    fn absent_customer_is_an_error() {
        let cfg = [(Point::Torus([0.0, 0.0]), 1)];
        assert!(shannon_rate(9, &cfg, &ShannonParams::default(), &torus()).is_err());
        assert!(rate(&RateModel::Constant, 9, &cfg, &torus()).is_err());
    }

    #[test]
    fn discrete_indicator_rates() {
        let ring = Space::discrete_circle(6).unwrap();
        let model = RateModel::DiscreteIndicator { weight: 1.0, range: 3.0 };
        let cfg = [(Point::Site(1), 1), (Point::Site(3), 2), (Point::Site(5), 3)];
        assert!((rate(&model, 1, &cfg, &ring).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(rate(&model, 1, &cfg[..1], &ring).unwrap(), 1.0);
        assert_eq!(rate(&RateModel::Constant, 2, &cfg, &ring).unwrap(), 1.0);
    }

    #[test]
    fn custom_interaction_bounds() {
        let sp = torus();
        let model = RateModel::Custom(Interaction {
            f: Arc::new(|_, cfg, _| 1.0 / cfg.len() as f64),
            min: 0.4,
            max: 1.0,
        });
        let cfg = [(Point::Torus([0.0, 0.0]), 1), (Point::Torus([1.0, 0.0]), 2)];
        assert_eq!(rate(&model, 1, &cfg, &sp).unwrap(), 0.5);
        let crowded: Vec<_> = (0..4).map(|i| (Point::Torus([i as f64 * 0.5, 0.0]), i)).collect();
        let out = rate(&model, 0, &crowded, &sp);
        if cfg!(debug_assertions) {
            assert!(matches!(out, Err(Error::ContractViolation(_))));
        } else {
            assert_eq!(out.unwrap(), 0.4);
        }
    }

    #[test]
    fn sum_rate_bound_examples() {
        let p = ShannonParams::default();
        assert!((sum_rate_lower_bound(1, &p).unwrap() - 21f64.log2()).abs() < 1e-15);
        let two = sum_rate_lower_bound(2, &p).unwrap();
        assert!((two - (1.0 + 2.0 / 1.05f64).log2()).abs() < 1e-15);
        assert!((two - 1.538_42).abs() < 1e-5);
        let big = sum_rate_lower_bound(1_000_000, &p).unwrap();
        assert!((big - 1.0).abs() < 1e-5);
        assert!(sum_rate_lower_bound(0, &p).is_err());
    }

    #[test]
    fn empty_and_deterministic_streams() {
        let spec = ArrivalSpec::poisson(
            torus(),
            1.0,
            MarkModel::new(RadiusLaw::Fixed(0.5), HeightLaw::Exponential { mean: 1.0 }),
        );
        assert!(sample_stream(&spec, 0, 3).unwrap().is_empty());
        let a = sample_stream(&spec, 50, 3).unwrap();
        let b = sample_stream(&spec, 50, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].t < w[1].t && w[0].id < w[1].id));
        assert!(a.iter().all(|x| x.h > 0.0));
        assert_ne!(a, sample_stream(&spec, 50, 4).unwrap());
    }

    #[test]
    fn spec_validation() {
        let marks = MarkModel::new(RadiusLaw::Fixed(0.5), HeightLaw::Exponential { mean: 1.0 });
        assert!(ArrivalSpec::poisson(torus(), 0.0, marks.clone()).validate().is_err());
        let ring = Space::discrete_circle(6).unwrap();
        assert!(ArrivalSpec::poisson(ring, 1.0, marks).validate().is_err());
        let bad_height = MarkModel::new(RadiusLaw::WholeSpace, HeightLaw::Deterministic(0.0));
        assert!(ArrivalSpec::poisson(torus(), 1.0, bad_height).validate().is_err());
    }
}
