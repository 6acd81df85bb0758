//! Zigzag events, block sampling and block service times.
//!
//! For a chain `B_1..B_k`, the doubled zigzag at index `n` holds when the
//! arrivals `n-k..n-1` cover `B_1..B_k` and the arrivals `n..n+k-1` cover
//! `B_k..B_1`. Candidates are scanned at windows of `2k` arrivals and a block
//! runs from the second half of one zigzag through the first half of the
//! next, so its length is a multiple of `2k`.
//!
//! The single-cover variant (`k = 1`, `B_1 = X`) cuts the stream after every
//! arrival whose set is the whole space; that arrival closes its block.

use serde::{Deserialize, Serialize};

use crate::arrivals::{replication_rng, Arrival, ArrivalSpec, ArrivalStream, CustomerId, InterarrivalLaw, MarkModel, RateModel};
use crate::engine::{saturated_clearing_time, DagState, EngineConfig, Step, TraceLevel};
use crate::error::{Error, Result};
use crate::geometry::{CoverChain, ExclusionSet, Point, Space};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Doubled,
    Single,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZigzagSpec {
    pub chain: CoverChain,
    pub variant: Variant,
}

impl ZigzagSpec {
    pub fn doubled(chain: CoverChain) -> Self {
        Self {
            chain,
            variant: Variant::Doubled,
        }
    }

    /// Single arrival covering the whole space.
    pub fn single_cover() -> Self {
        Self {
            chain: CoverChain::whole_space(),
            variant: Variant::Single,
        }
    }

    pub fn k(&self) -> usize {
        self.chain.k()
    }

    /// Arrivals per candidate window: `2k`, or 1 for the single-cover variant.
    pub fn window(&self) -> usize {
        match self.variant {
            Variant::Doubled => 2 * self.k(),
            Variant::Single => 1,
        }
    }

    pub fn validate(&self, sp: &Space) -> Result<()> {
        if self.chain.sets.is_empty() {
            return Err(Error::invalid("empty cover chain"));
        }
        for s in &self.chain.sets {
            sp.check_set(s)?;
        }
        if self.variant == Variant::Single && !(self.k() == 1 && sp.is_whole(&self.chain.sets[0])) {
            return Err(Error::invalid(
                "the single-cover variant needs the one-element whole-space chain",
            ));
        }
        Ok(())
    }

    /// Probability of a zigzag at one candidate window.
    pub fn success_probability(&self, marks: &MarkModel, sp: &Space) -> Result<f64> {
        let chain = self.chain.clone().with_cover_probabilities(marks, sp)?;
        let product: f64 = chain.cover_probabilities.unwrap_or_default().iter().product();
        Ok(match self.variant {
            Variant::Doubled => product * product,
            Variant::Single => product,
        })
    }
}

/// Whether the zigzag event holds at index `n` of `sets`.
pub fn is_zigzag(sets: &[ExclusionSet], n: usize, spec: &ZigzagSpec, sp: &Space) -> Result<bool> {
    let k = spec.k();
    let b = &spec.chain.sets;
    match spec.variant {
        Variant::Single => {
            let s = sets
                .get(n)
                .ok_or_else(|| Error::invalid(format!("index {n} out of range for {} sets", sets.len())))?;
            Ok(sp.is_whole(s))
        }
        Variant::Doubled => {
            if n < k || n + k > sets.len() {
                return Err(Error::invalid(format!(
                    "zigzag at {n} needs indices {}..{} but only {} sets are given",
                    n as i64 - k as i64,
                    n + k,
                    sets.len()
                )));
            }
            let zig = (0..k).all(|i| sp.contains_set(&sets[n - k + i], &b[i]));
            let zag = (0..k).all(|j| sp.contains_set(&sets[n + j], &b[k - 1 - j]));
            Ok(zig && zag)
        }
    }
}

/// One arrival of a block, with its time relative to the opening arrival.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub dt: Option<f64>,
    pub x: Point,
    pub set: ExclusionSet,
    pub h: f64,
}

/// The arrivals of one regeneration cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub entries: Vec<BlockEntry>,
    pub k: usize,
    pub is_first: bool,
    /// Time from this block's opening to the next block's opening.
    pub next_opening: Option<f64>,
}

impl Block {
    /// Number of arrivals `ν`.
    pub fn nu(&self) -> usize {
        self.entries.len()
    }

    pub fn has_times(&self) -> bool {
        self.entries.iter().all(|e| e.dt.is_some()) && self.next_opening.is_some()
    }

    /// The entries as arrivals with ids `1..=ν` and times `dt` (0 if untimed).
    pub fn arrivals(&self) -> impl Iterator<Item = Arrival> + '_ {
        self.entries.iter().enumerate().map(|(i, e)| Arrival {
            id: i as CustomerId + 1,
            t: e.dt.unwrap_or(0.0),
            x: e.x,
            set: e.set,
            h: e.h,
        })
    }
}

/// Arrival epochs attached to sampled blocks.
#[derive(Debug, Clone)]
pub enum Times {
    None,
    Renewal { intensity: f64, law: InterarrivalLaw },
}

impl Times {
    pub fn poisson(intensity: f64) -> Self {
        Times::Renewal {
            intensity,
            law: InterarrivalLaw::Exponential,
        }
    }
}

/// Produces consecutive blocks from one i.i.d. arrival stream.
pub struct BlockSampler {
    stream: ArrivalStream,
    spec: ZigzagSpec,
    space: Space,
    current: Option<Vec<(Arrival, f64)>>,
    emitted: u64,
    window: Vec<(Arrival, f64)>,
}

impl BlockSampler {
    pub fn new(marks: &MarkModel, space: Space, spec: ZigzagSpec, times: &Times, rng: rand_chacha::ChaCha8Rng) -> Result<Self> {
        spec.validate(&space)?;
        let stream = match times {
            Times::None => ArrivalStream::untimed(space, marks.clone(), rng)?,
            Times::Renewal { intensity, law } => {
                let spec = ArrivalSpec {
                    space,
                    intensity: *intensity,
                    interarrival: law.clone(),
                    marks: marks.clone(),
                };
                ArrivalStream::new(&spec, rng)?
            }
        };
        Ok(Self {
            stream,
            window: Vec::with_capacity(spec.window()),
            spec,
            space,
            current: None,
            emitted: 0,
        })
    }

    /// Sampler for replication `replication` of `seed`.
    pub fn seeded(marks: &MarkModel, space: Space, spec: ZigzagSpec, times: &Times, seed: u64, replication: u64) -> Result<Self> {
        Self::new(marks, space, spec, times, replication_rng(seed, replication))
    }

    fn make_block(&mut self, members: Vec<(Arrival, f64)>, next_gap: f64) -> Block {
        let timed = self.stream.is_timed();
        let mut dt = 0.0;
        let entries: Vec<BlockEntry> = members
            .iter()
            .enumerate()
            .map(|(i, (a, gap))| {
                if i > 0 {
                    dt += gap;
                }
                BlockEntry {
                    dt: timed.then_some(dt),
                    x: a.x,
                    set: a.set,
                    h: a.h,
                }
            })
            .collect();
        let block = Block {
            entries,
            k: self.spec.k(),
            is_first: self.emitted == 0,
            next_opening: timed.then_some(dt + next_gap),
        };
        self.emitted += 1;
        block
    }

    fn next_doubled(&mut self) -> Block {
        let k = self.spec.k();
        loop {
            self.window.clear();
            for _ in 0..2 * k {
                let draw = self.stream.next_with_gap();
                self.window.push(draw);
            }
            let b = &self.spec.chain.sets;
            let hit = (0..k).all(|i| self.space.contains_set(&self.window[i].0.set, &b[i]))
                && (0..k).all(|j| self.space.contains_set(&self.window[k + j].0.set, &b[k - 1 - j]));
            let window = std::mem::take(&mut self.window);
            match self.current.take() {
                Some(mut members) if hit => {
                    members.extend_from_slice(&window[..k]);
                    let next_gap = window[k].1;
                    self.current = Some(window[k..].to_vec());
                    self.window = window;
                    return self.make_block(members, next_gap);
                }
                Some(mut members) => {
                    members.extend_from_slice(&window);
                    self.current = Some(members);
                }
                None if hit => self.current = Some(window[k..].to_vec()),
                None => {}
            }
            self.window = window;
        }
    }

    fn next_single(&mut self) -> Block {
        // Skip to just after the first covering arrival.
        if self.current.is_none() {
            loop {
                let (a, _) = self.stream.next_with_gap();
                if self.space.is_whole(&a.set) {
                    break;
                }
            }
            self.current = Some(vec![self.stream.next_with_gap()]);
        }
        let mut members = self.current.take().expect("open block");
        loop {
            let closes = self.space.is_whole(&members.last().expect("non-empty").0.set);
            if closes {
                let opener = self.stream.next_with_gap();
                let next_gap = opener.1;
                self.current = Some(vec![opener]);
                return self.make_block(members, next_gap);
            }
            members.push(self.stream.next_with_gap());
        }
    }
}

impl Iterator for BlockSampler {
    type Item = Block;

    fn next(&mut self) -> Option<Block> {
        Some(match self.spec.variant {
            Variant::Doubled => self.next_doubled(),
            Variant::Single => self.next_single(),
        })
    }
}

/// The first block of the stream of `seed`; it is flagged `is_first`.
pub fn sample_block(marks: &MarkModel, space: Space, spec: &ZigzagSpec, seed: u64, times: &Times) -> Result<Block> {
    let mut sampler = BlockSampler::seeded(marks, space, spec.clone(), times, seed, 0)?;
    Ok(sampler.next().expect("block samplers never end"))
}

/// Saturated service time `σ̂`: all entries present at time 0, precedence in
/// index order, served to emptiness.
pub fn sigma_hat(y: &Block, model: &RateModel, space: Space) -> Result<f64> {
    if y.entries.is_empty() {
        return Err(Error::invalid("sigma_hat of an empty block"));
    }
    saturated_clearing_time(space, model, y.arrivals())
}

/// Gated service time `Σ(w, Y)`: no entry starts before `w` (relative to the
/// opening arrival). Returns the last departure minus `w`.
///
/// Entries arriving by `w` are all held at the gate, so the clock is restarted
/// at `w` with them present; for `w` beyond the last arrival this is the
/// [`sigma_hat`] computation itself.
pub fn sigma(w: f64, y: &Block, model: &RateModel, space: Space) -> Result<f64> {
    if !y.has_times() {
        return Err(Error::invalid("sigma needs a block with arrival times"));
    }
    if !(w >= 0.0 && w.is_finite()) {
        return Err(Error::invalid(format!("gate time must be finite and >= 0, got {w}")));
    }
    if y.entries.is_empty() {
        return Err(Error::invalid("sigma of an empty block"));
    }
    let config = EngineConfig {
        trace: TraceLevel::Off,
        ..EngineConfig::default()
    };
    let mut state = DagState::new(space, model.clone(), config)?;
    let mut later = Vec::new();
    for a in y.arrivals() {
        if a.t <= w {
            state.insert(&a)?;
        } else {
            later.push(Arrival { t: a.t - w, ..a });
        }
    }
    let mut pending = later.iter();
    let mut next = pending.next();
    loop {
        match state.step(next)? {
            Step::Arrival(_) => next = pending.next(),
            Step::Departure(_) => {}
            Step::Idle => break,
        }
    }
    Ok(state.clock())
}

/// One line of a block dump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub seed: u64,
    pub replication: u64,
    pub index: u64,
    pub nu: usize,
    pub sigma_hat: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrivals::{HeightLaw, RadiusLaw, ShannonParams};

    fn ring() -> Space {
        Space::discrete_circle(6).unwrap()
    }

    fn iv(center: usize, width: usize) -> ExclusionSet {
        ExclusionSet::Interval { center, width }
    }

    #[test]
    fn k1_whole_space_zigzag() {
        let sp = Space::torus_2d(2.0).unwrap();
        let spec = ZigzagSpec::doubled(CoverChain::whole_space());
        let sets = [ExclusionSet::WholeSpace; 2];
        assert!(is_zigzag(&sets, 1, &spec, &sp).unwrap());
        assert!(is_zigzag(&sets, 0, &spec, &sp).is_err());
        assert!(is_zigzag(&sets, 2, &spec, &sp).is_err());
    }

    #[test]
    fn k2_zigzag_by_index() {
        let sp = ring();
        let spec = ZigzagSpec::doubled(CoverChain::new(vec![iv(2, 3), iv(4, 3)]).unwrap());
        let sets = [iv(2, 3), iv(4, 3), iv(4, 3), iv(2, 3)];
        assert!(is_zigzag(&sets, 2, &spec, &sp).unwrap());
        let broken = [iv(2, 3), iv(4, 3), iv(4, 3), iv(4, 3)];
        assert!(!is_zigzag(&broken, 2, &spec, &sp).unwrap());
    }

    #[test]
    fn certain_whole_space_blocks_have_two_entries() {
        let sp = Space::torus_2d(2.0).unwrap();
        let marks = MarkModel::new(RadiusLaw::WholeSpace, HeightLaw::Exponential { mean: 1.0 });
        let spec = ZigzagSpec::doubled(CoverChain::whole_space());
        let sampler = BlockSampler::seeded(&marks, sp, spec, &Times::None, 5, 0).unwrap();
        for (i, b) in sampler.take(50).enumerate() {
            assert_eq!(b.nu(), 2);
            assert_eq!(b.is_first, i == 0);
            assert!(b.next_opening.is_none());
        }
    }

    #[test]
    fn blocks_respect_the_zigzag_shape() {
        let sp = Space::torus_2d(2.0).unwrap();
        let marks = MarkModel::new(RadiusLaw::Exponential { mean: 3.0 }, HeightLaw::Exponential { mean: 1.0 });
        let chain = CoverChain::new(vec![
            ExclusionSet::Ball { center: Point::Torus([-1.0, 0.0]), radius: 1.2 },
            ExclusionSet::Ball { center: Point::Torus([1.0, 0.0]), radius: 1.2 },
        ])
        .unwrap();
        let spec = ZigzagSpec::doubled(chain.clone());
        let sampler = BlockSampler::seeded(&marks, sp, spec, &Times::poisson(0.1), 9, 0).unwrap();
        for b in sampler.take(30) {
            assert_eq!(b.nu() % 4, 0);
            let s: Vec<_> = b.entries.iter().map(|e| e.set).collect();
            let n = s.len();
            assert!(sp.contains_set(&s[0], &chain.sets[1]) && sp.contains_set(&s[1], &chain.sets[0]));
            assert!(sp.contains_set(&s[n - 2], &chain.sets[0]) && sp.contains_set(&s[n - 1], &chain.sets[1]));
            assert_eq!(b.entries[0].dt, Some(0.0));
            assert!(b.entries.windows(2).all(|w| w[0].dt < w[1].dt));
            assert!(b.next_opening.unwrap() > b.entries[n - 1].dt.unwrap());
        }
    }

    #[test]
    fn single_cover_blocks_close_on_the_covering_arrival() {
        let sp = Space::torus_2d(2.0).unwrap();
        let marks = MarkModel::new(RadiusLaw::Exponential { mean: 4.0 }, HeightLaw::Exponential { mean: 1.0 });
        let sampler = BlockSampler::seeded(&marks, sp, ZigzagSpec::single_cover(), &Times::None, 2, 0).unwrap();
        for b in sampler.take(100) {
            let (last, rest) = b.entries.split_last().unwrap();
            assert!(sp.is_whole(&last.set));
            assert!(rest.iter().all(|e| !sp.is_whole(&e.set)));
        }
    }

    #[test]
    fn sigma_hat_examples() {
        let sp = Space::torus_2d(2.0).unwrap();
        let p = ShannonParams::default();
        let c = p.max_rate();
        let model = RateModel::Shannon(p);
        let entry = |h: f64| BlockEntry {
            dt: Some(0.0),
            x: Point::Torus([0.0, 0.0]),
            set: ExclusionSet::WholeSpace,
            h,
        };
        let one = Block { entries: vec![entry(1.7)], k: 1, is_first: false, next_opening: Some(1.0) };
        assert_eq!(sigma_hat(&one, &model, sp).unwrap(), 1.7 / c);
        let two = Block { entries: vec![entry(1.0), entry(2.0)], k: 1, is_first: false, next_opening: None };
        let s = sigma_hat(&two, &model, sp).unwrap();
        assert!((s - 3.0 / c).abs() < 1e-15);
        for w in [0.0, 0.3, 5.0] {
            assert_eq!(sigma(w, &one, &model, sp).unwrap(), 1.7 / c);
        }
        assert!(sigma(0.0, &two, &model, sp).is_err());
    }

    #[test]
    fn sigma_hat_of_the_ring_pair() {
        let entries = vec![
            BlockEntry { dt: None, x: Point::Site(1), set: iv(1, 3), h: 1.0 },
            BlockEntry { dt: None, x: Point::Site(4), set: iv(4, 3), h: 2.0 },
        ];
        let y = Block { entries, k: 1, is_first: false, next_opening: None };
        let model = RateModel::DiscreteIndicator { weight: 1.0, range: 3.0 };
        assert_eq!(sigma_hat(&y, &model, ring()).unwrap(), 3.0);
    }

    #[test]
    fn gate_beyond_last_arrival_is_saturated() {
        let sp = Space::torus_2d(2.0).unwrap();
        let marks = MarkModel::new(RadiusLaw::Exponential { mean: 2.0 }, HeightLaw::Exponential { mean: 1.0 });
        let model = RateModel::Shannon(ShannonParams::default());
        let sampler = BlockSampler::seeded(&marks, sp, ZigzagSpec::single_cover(), &Times::poisson(0.1), 4, 0).unwrap();
        for y in sampler.take(40) {
            let last = y.entries.last().unwrap().dt.unwrap();
            let hat = sigma_hat(&y, &model, sp).unwrap();
            assert_eq!(sigma(last + 1e-9, &y, &model, sp).unwrap(), hat);
            assert_eq!(sigma(last + 10.0, &y, &model, sp).unwrap(), hat);
        }
    }
}
