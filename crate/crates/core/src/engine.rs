//! Event-driven dynamics of the conflict DAG.
//!
//! Customers conflict when their exclusion sets meet. A new arrival gets an
//! edge from every present customer it conflicts with; customers without
//! predecessors form the active set and are served at configuration-dependent
//! rates. Events alternate between potential arrivals and potential
//! departures, with a departure winning ties.
//!
//! Residual work is stored lazily as `(t0, z0, rate)`: the potential departure
//! is `t0 + z0 / rate` and the residual is only rebased when the rate changes.
//! In constant-rate and single-server regimes departure times are therefore
//! computed with exactly the arithmetic of the textbook recursions.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::arrivals::{checked_interaction, Arrival, ArrivalSpec, ArrivalStream, CustomerId, RateModel};
use crate::error::{Error, Result};
use crate::geometry::{ExclusionSet, Point, Space};

/// Below this active-set size loads are recomputed from scratch.
const SMALL_ACTIVE: usize = 16;
/// Incremental load updates between two full recomputations.
const REFRESH_EVERY: u32 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceLevel {
    Off,
    Events,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    LowestId,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EngineConfig {
    /// Relative work tolerance: a residual at most `eps_work * h` counts as done.
    pub eps_work: f64,
    pub tie_break: TieBreak,
    pub trace: TraceLevel,
    /// Verify the DAG invariants after every event.
    pub check_invariants: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            eps_work: 1e-12,
            tie_break: TieBreak::LowestId,
            trace: TraceLevel::Events,
            check_invariants: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    Arrival,
    Departure,
}

/// One line of a trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub kind: EventKind,
    pub time: f64,
    pub id: CustomerId,
    pub x: Point,
    /// Ball radius, interval half-width, or `None` for the whole space.
    pub radius: Option<f64>,
    /// Active-set size after the event.
    pub active: usize,
    /// Service start, on departures.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub start: Option<f64>,
}

fn radius_descriptor(s: &ExclusionSet) -> Option<f64> {
    match *s {
        ExclusionSet::Ball { radius, .. } => Some(radius),
        ExclusionSet::Interval { width, .. } => Some(((width - 1) / 2) as f64),
        ExclusionSet::WholeSpace => None,
    }
}

/// Running counters over the events processed so far.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub arrivals: u64,
    pub departures: u64,
    /// Mean of `start - arrival` over departed customers.
    pub mean_wait: f64,
    /// Mean of `departure - arrival` over departed customers.
    pub mean_sojourn: f64,
    pub max_active: usize,
    pub max_present: usize,
    pub final_time: f64,
}

#[derive(Debug, Clone)]
struct Node {
    id: CustomerId,
    x: Point,
    set: ExclusionSet,
    h: f64,
    birth: f64,
    start: Option<f64>,
    preds: usize,
    succs: Vec<usize>,
    present_pos: usize,
    active_pos: usize,
    t0: f64,
    z0: f64,
    rate: f64,
    load: f64,
}

impl Node {
    #[inline]
    fn potential_departure(&self) -> f64 {
        self.t0 + self.z0 / self.rate
    }
}

/// Read-only view of a present customer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CustomerView {
    pub id: CustomerId,
    pub x: Point,
    pub set: ExclusionSet,
    pub h: f64,
    pub birth: f64,
    pub start: Option<f64>,
    /// Residual work at the current clock.
    pub residual: f64,
    /// Unfinished customers it still waits for directly. On the discrete
    /// circle only the latest one per site is counted.
    pub predecessors: usize,
    pub rate: Option<f64>,
}

/// Result of [`DagState::step`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Step {
    Arrival(TraceEvent),
    Departure(TraceEvent),
    /// No customer present and no arrival offered.
    Idle,
}

/// Full Markov state: present customers, precedence edges, active set,
/// residual works and clock.
#[derive(Debug, Clone)]
pub struct DagState {
    space: Space,
    model: RateModel,
    config: EngineConfig,
    clock: f64,
    events: u64,
    slots: Vec<Option<Node>>,
    free: Vec<usize>,
    present: Vec<usize>,
    active: Vec<usize>,
    index: HashMap<CustomerId, usize>,
    /// Discrete circle: latest present customer covering each site. Earlier
    /// ones covering the site are its own predecessors, so one edge suffices.
    site_last: Vec<Option<usize>>,
    since_refresh: u32,
    loads_dirty: bool,
    stats: Stats,
}

#[derive(Debug, Clone, Default)]
struct Stats {
    arrivals: u64,
    departures: u64,
    wait_sum: f64,
    sojourn_sum: f64,
    max_active: usize,
    max_present: usize,
}

/// Zero-based sites of a set on the discrete circle.
fn covered_sites(sp: &Space, set: &ExclusionSet) -> impl Iterator<Item = usize> {
    let n = match *sp {
        Space::DiscreteCircle { n_servers } => n_servers,
        Space::Torus { .. } => 0,
    };
    let (first, len) = match *set {
        ExclusionSet::Interval { center, width } if width < n => (center - 1 + n - (width - 1) / 2, width),
        _ => (0, n),
    };
    (0..len).map(move |j| (first + j) % n)
}

fn attenuation_of(model: &RateModel, sp: &Space, a: &Point, b: &Point) -> f64 {
    match model {
        RateModel::Shannon(p) => p.attenuation.eval(sp.dist(a, b)),
        RateModel::DiscreteIndicator { range, .. } => {
            if sp.dist(a, b) <= *range {
                1.0
            } else {
                0.0
            }
        }
        RateModel::Constant | RateModel::Custom(_) => 0.0,
    }
}

impl DagState {
    pub fn new(space: Space, model: RateModel, config: EngineConfig) -> Result<Self> {
        space.validate()?;
        model.validate()?;
        if !(config.eps_work >= 0.0) {
            return Err(Error::invalid(format!("eps_work must be >= 0, got {}", config.eps_work)));
        }
        Ok(Self {
            space,
            model,
            config,
            clock: 0.0,
            events: 0,
            slots: Vec::new(),
            free: Vec::new(),
            present: Vec::new(),
            active: Vec::new(),
            index: HashMap::new(),
            site_last: match space {
                Space::DiscreteCircle { n_servers } => vec![None; n_servers],
                Space::Torus { .. } => Vec::new(),
            },
            since_refresh: 0,
            loads_dirty: false,
            stats: Stats::default(),
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn clock(&self) -> f64 {
        self.clock
    }

    pub fn events(&self) -> u64 {
        self.events
    }

    pub fn is_empty(&self) -> bool {
        self.present.is_empty()
    }

    pub fn n_present(&self) -> usize {
        self.present.len()
    }

    pub fn n_active(&self) -> usize {
        self.active.len()
    }

    pub fn summary(&self) -> Summary {
        let d = self.stats.departures.max(1) as f64;
        Summary {
            arrivals: self.stats.arrivals,
            departures: self.stats.departures,
            mean_wait: if self.stats.departures == 0 { 0.0 } else { self.stats.wait_sum / d },
            mean_sojourn: if self.stats.departures == 0 { 0.0 } else { self.stats.sojourn_sum / d },
            max_active: self.stats.max_active,
            max_present: self.stats.max_present,
            final_time: self.clock,
        }
    }

    fn node(&self, slot: usize) -> &Node {
        self.slots[slot].as_ref().expect("live slot")
    }

    fn node_mut(&mut self, slot: usize) -> &mut Node {
        self.slots[slot].as_mut().expect("live slot")
    }

    /// Snapshot of a present customer.
    pub fn customer(&self, id: CustomerId) -> Option<CustomerView> {
        let n = self.node(*self.index.get(&id)?);
        let active = n.preds == 0;
        Some(CustomerView {
            id: n.id,
            x: n.x,
            set: n.set,
            h: n.h,
            birth: n.birth,
            start: n.start,
            residual: if active {
                (n.z0 - (self.clock - n.t0) * n.rate).max(0.0)
            } else {
                n.h
            },
            predecessors: n.preds,
            rate: active.then_some(n.rate),
        })
    }

    /// Ids of present customers in arrival order.
    pub fn present_ids(&self) -> Vec<CustomerId> {
        let mut ids: Vec<_> = self.present.iter().map(|&s| self.node(s).id).collect();
        ids.sort_unstable();
        ids
    }

    /// The served configuration `Ψ`, sorted by id.
    pub fn active_config(&self) -> Vec<(Point, CustomerId)> {
        let mut cfg: Vec<_> = self
            .active
            .iter()
            .map(|&s| {
                let n = self.node(s);
                (n.x, n.id)
            })
            .collect();
        cfg.sort_unstable_by_key(|c| c.1);
        cfg
    }

    /// Earliest potential departure `(time, id)`, or `None` when nobody is
    /// served. Residuals within the work tolerance depart at the clock.
    pub fn next_departure(&self) -> Option<(f64, CustomerId)> {
        let mut best: Option<(f64, CustomerId, usize)> = None;
        for &s in &self.active {
            let n = self.node(s);
            let mut p = n.potential_departure();
            if (p - self.clock) * n.rate <= self.config.eps_work * n.h {
                p = self.clock;
            }
            let better = match best {
                None => true,
                Some((bp, bid, _)) => p < bp || (p == bp && n.id < bid),
            };
            if better {
                best = Some((p, n.id, s));
            }
        }
        best.map(|(p, id, _)| (p.max(self.clock), id))
    }

    /// Adds a customer present at the current clock, as if it had just
    /// arrived. Returns the arrival event.
    pub fn insert(&mut self, a: &Arrival) -> Result<TraceEvent> {
        self.space.check_set(&a.set)?;
        if !(a.h > 0.0 && a.h.is_finite()) {
            return Err(Error::invalid(format!("work of customer {} must be positive, got {}", a.id, a.h)));
        }
        if self.index.contains_key(&a.id) {
            return Err(Error::invalid(format!("customer {} is already present", a.id)));
        }
        let slot = match self.free.pop() {
            Some(s) => s,
            None => {
                self.slots.push(None);
                self.slots.len() - 1
            }
        };
        let mut preds = 0;
        if self.site_last.is_empty() {
            for &u in &self.present {
                let un = self.slots[u].as_mut().expect("live slot");
                if self.space.meets(&un.set, &a.set) {
                    un.succs.push(slot);
                    preds += 1;
                }
            }
        } else {
            let mut direct: Vec<usize> = covered_sites(&self.space, &a.set)
                .filter_map(|i| self.site_last[i].replace(slot))
                .collect();
            direct.sort_unstable();
            direct.dedup();
            for u in direct {
                self.slots[u].as_mut().expect("live slot").succs.push(slot);
                preds += 1;
            }
        }
        self.slots[slot] = Some(Node {
            id: a.id,
            x: a.x,
            set: a.set,
            h: a.h,
            birth: self.clock,
            start: None,
            preds,
            succs: Vec::new(),
            present_pos: self.present.len(),
            active_pos: usize::MAX,
            t0: self.clock,
            z0: a.h,
            rate: 0.0,
            load: 0.0,
        });
        self.present.push(slot);
        self.index.insert(a.id, slot);
        self.stats.arrivals += 1;
        if preds == 0 {
            self.activate(slot);
            self.refresh_rates()?;
        }
        self.finish_event();
        self.stats.max_present = self.stats.max_present.max(self.present.len());
        Ok(TraceEvent {
            kind: EventKind::Arrival,
            time: self.clock,
            id: a.id,
            x: a.x,
            radius: radius_descriptor(&a.set),
            active: self.active.len(),
            start: None,
        })
    }

    /// One event of the induction: the departure if it is due no later than
    /// `next_arrival`, otherwise the arrival (which is then consumed).
    pub fn step(&mut self, next_arrival: Option<&Arrival>) -> Result<Step> {
        let dep = self.next_departure();
        match (dep, next_arrival) {
            (None, None) => Ok(Step::Idle),
            (Some((q, id)), a) if a.is_none_or(|a| q <= a.t) => self.depart(q, id).map(Step::Departure),
            (_, Some(a)) => {
                if !(a.t >= self.clock) {
                    return Err(Error::invalid(format!(
                        "arrival {} at {} precedes the clock {}",
                        a.id, a.t, self.clock
                    )));
                }
                self.clock = a.t;
                self.insert(a).map(Step::Arrival)
            }
            (Some(_), None) => unreachable!(),
        }
    }

    fn depart(&mut self, q: f64, id: CustomerId) -> Result<TraceEvent> {
        if !q.is_finite() {
            return Err(Error::numeric("non-finite departure time", self.dump()));
        }
        self.clock = q;
        let slot = self.index.remove(&id).expect("departing customer is present");
        let node = self.slots[slot].take().expect("live slot");
        self.free.push(slot);
        // Remove from the active and present lists.
        let pos = node.active_pos;
        self.active.swap_remove(pos);
        if let Some(&moved) = self.active.get(pos) {
            self.node_mut(moved).active_pos = pos;
        }
        let pos = node.present_pos;
        self.present.swap_remove(pos);
        if let Some(&moved) = self.present.get(pos) {
            self.node_mut(moved).present_pos = pos;
        }
        self.unload(&node);
        if !self.site_last.is_empty() {
            for i in covered_sites(&self.space, &node.set) {
                if self.site_last[i] == Some(slot) {
                    self.site_last[i] = None;
                }
            }
        }
        for &s in &node.succs {
            let n = self.node_mut(s);
            n.preds -= 1;
            if n.preds == 0 {
                self.activate(s);
            }
        }
        self.refresh_rates()?;
        let start = node.start.expect("departing customer was served");
        self.stats.departures += 1;
        self.stats.wait_sum += start - node.birth;
        self.stats.sojourn_sum += q - node.birth;
        self.finish_event();
        Ok(TraceEvent {
            kind: EventKind::Departure,
            time: q,
            id,
            x: node.x,
            radius: radius_descriptor(&node.set),
            active: self.active.len(),
            start: Some(start),
        })
    }

    fn finish_event(&mut self) {
        self.events += 1;
        self.stats.max_active = self.stats.max_active.max(self.active.len());
        if self.config.check_invariants {
            if let Err(e) = self.check_invariants() {
                panic!("{e}");
            }
        }
    }

    fn activate(&mut self, slot: usize) {
        let clock = self.clock;
        let uses_load = !matches!(self.model, RateModel::Constant | RateModel::Custom(_));
        let mut load = 0.0;
        if uses_load && self.active.len() >= SMALL_ACTIVE {
            let x = self.node(slot).x;
            for i in 0..self.active.len() {
                let u = self.active[i];
                let un = self.slots[u].as_mut().expect("live slot");
                let l = attenuation_of(&self.model, &self.space, &un.x, &x);
                un.load += l;
                load += l;
            }
            self.since_refresh += 1;
        } else {
            self.loads_dirty = true;
        }
        let pos = self.active.len();
        let n = self.node_mut(slot);
        n.start = Some(clock);
        n.t0 = clock;
        n.z0 = n.h;
        n.rate = 0.0;
        n.load = load;
        n.active_pos = pos;
        self.active.push(slot);
    }

    fn unload(&mut self, gone: &Node) {
        let uses_load = !matches!(self.model, RateModel::Constant | RateModel::Custom(_));
        if uses_load && self.active.len() >= SMALL_ACTIVE {
            for i in 0..self.active.len() {
                let u = self.active[i];
                let un = self.slots[u].as_mut().expect("live slot");
                let l = attenuation_of(&self.model, &self.space, &un.x, &gone.x);
                un.load = (un.load - l).max(0.0);
            }
            self.since_refresh += 1;
        } else {
            self.loads_dirty = true;
        }
    }

    fn recompute_loads(&mut self) {
        for i in 0..self.active.len() {
            let xi = self.node(self.active[i]).x;
            let mut load = 0.0;
            for j in 0..self.active.len() {
                if i != j {
                    let xj = self.node(self.active[j]).x;
                    load += attenuation_of(&self.model, &self.space, &xi, &xj);
                }
            }
            let s = self.active[i];
            self.node_mut(s).load = load;
        }
        self.since_refresh = 0;
        self.loads_dirty = false;
    }

    // Brings every active rate in line with the current configuration,
    // rebasing residuals whose rate changes.
    fn refresh_rates(&mut self) -> Result<()> {
        let clock = self.clock;
        match &self.model {
            RateModel::Shannon(_) | RateModel::DiscreteIndicator { .. } => {
                if self.loads_dirty || self.since_refresh >= REFRESH_EVERY {
                    self.recompute_loads();
                }
            }
            RateModel::Constant | RateModel::Custom(_) => {}
        }
        let custom_rates = match &self.model {
            RateModel::Custom(inter) => {
                let cfg: Vec<(Point, CustomerId)> = self
                    .active
                    .iter()
                    .map(|&s| {
                        let n = self.node(s);
                        (n.x, n.id)
                    })
                    .collect();
                let rates = (0..cfg.len())
                    .map(|i| checked_interaction(inter, i, &cfg, &self.space))
                    .collect::<Result<Vec<f64>>>()?;
                Some(rates)
            }
            _ => None,
        };
        for i in 0..self.active.len() {
            let s = self.active[i];
            let new_rate = match (&self.model, &custom_rates) {
                (_, Some(r)) => r[i],
                (RateModel::Shannon(p), _) => p.rate_at(self.node(s).load),
                (RateModel::DiscreteIndicator { weight, .. }, _) => 1.0 / (1.0 + weight * self.node(s).load),
                _ => 1.0,
            };
            if !(new_rate.is_finite() && new_rate > 0.0) {
                let id = self.node(s).id;
                return Err(Error::numeric(
                    format!("rate {new_rate} for customer {id}"),
                    self.dump(),
                ));
            }
            let n = self.node_mut(s);
            if n.rate != new_rate {
                if n.rate > 0.0 {
                    n.z0 = (n.z0 - (clock - n.t0) * n.rate).max(0.0);
                    n.t0 = clock;
                }
                n.rate = new_rate;
                if !n.z0.is_finite() {
                    let id = n.id;
                    return Err(Error::numeric(format!("residual of customer {id} is not finite"), self.dump()));
                }
            }
        }
        Ok(())
    }

    /// Time needed to clear the present customers with arrivals switched off.
    pub fn time_to_empty(&self) -> Result<f64> {
        let mut s = self.clone();
        s.config.check_invariants = false;
        let t0 = s.clock;
        s.drain()?;
        Ok(s.clock - t0)
    }

    /// Serves everybody present without further arrivals.
    pub fn drain(&mut self) -> Result<()> {
        while !matches!(self.step(None)?, Step::Idle) {}
        Ok(())
    }

    /// Checks the active-set characterization, conflict freedom, and that
    /// waiting customers hold their full work.
    pub fn check_invariants(&self) -> Result<()> {
        for &s in &self.present {
            let n = self.node(s);
            let listed = n.active_pos != usize::MAX && self.active.get(n.active_pos) == Some(&s);
            if (n.preds == 0) != listed {
                return Err(Error::ContractViolation(format!(
                    "customer {} has {} predecessors but active={listed}",
                    n.id, n.preds
                )));
            }
            if n.preds > 0 && n.z0 != n.h {
                return Err(Error::ContractViolation(format!("waiting customer {} lost work", n.id)));
            }
        }
        for (i, &a) in self.active.iter().enumerate() {
            for &b in &self.active[i + 1..] {
                let (na, nb) = (self.node(a), self.node(b));
                if self.space.meets(&na.set, &nb.set) {
                    return Err(Error::ContractViolation(format!(
                        "active customers {} and {} conflict",
                        na.id, nb.id
                    )));
                }
            }
        }
        Ok(())
    }

    fn dump(&self) -> String {
        let mut out = format!(
            "clock={} events={} present={} active={}\n",
            self.clock,
            self.events,
            self.present.len(),
            self.active.len()
        );
        for &s in self.active.iter().take(32) {
            let n = self.node(s);
            let _ = writeln!(
                out,
                "  id={} x={:?} h={} t0={} z0={} rate={} load={}",
                n.id, n.x, n.h, n.t0, n.z0, n.rate, n.load
            );
        }
        out
    }
}

/// Space, arrival process and rate model of one experiment.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub arrivals: ArrivalSpec,
    pub rate: RateModel,
    pub engine: EngineConfig,
}

impl Scenario {
    pub fn new(arrivals: ArrivalSpec, rate: RateModel) -> Self {
        Self {
            arrivals,
            rate,
            engine: EngineConfig::default(),
        }
    }

    pub fn space(&self) -> &Space {
        &self.arrivals.space
    }
}

type Source = Box<dyn Iterator<Item = Arrival> + Send>;

/// A [`DagState`] fed by an arrival source.
pub struct Engine {
    state: DagState,
    source: Option<Source>,
    pending: Option<Arrival>,
    admit_before: f64,
}

impl Engine {
    pub fn new(state: DagState) -> Self {
        Self {
            state,
            source: None,
            pending: None,
            admit_before: f64::INFINITY,
        }
    }

    /// Engine driven by the random stream of `scenario`, replication 0 of `seed`.
    pub fn from_scenario(scenario: &Scenario, seed: u64) -> Result<Self> {
        let state = DagState::new(scenario.arrivals.space, scenario.rate.clone(), scenario.engine)?;
        let stream = ArrivalStream::new(&scenario.arrivals, crate::arrivals::replication_rng(seed, 0))?;
        Ok(Self::new(state).with_source(stream))
    }

    pub fn with_source(mut self, source: impl Iterator<Item = Arrival> + Send + 'static) -> Self {
        self.source = Some(Box::new(source));
        self.pending = None;
        self
    }

    /// Admits only arrivals strictly before `t`.
    pub fn halt_arrivals_at(&mut self, t: f64) {
        self.admit_before = t;
        if self.pending.is_some_and(|a| a.t >= t) {
            self.pending = None;
            self.source = None;
        }
    }

    pub fn state(&self) -> &DagState {
        &self.state
    }

    pub fn state_mut(&mut self) -> &mut DagState {
        &mut self.state
    }

    pub fn into_state(self) -> DagState {
        self.state
    }

    /// Next arrival that will be offered, if any.
    pub fn peek_arrival(&mut self) -> Option<&Arrival> {
        if self.pending.is_none() {
            if let Some(src) = self.source.as_mut() {
                match src.next() {
                    Some(a) if a.t < self.admit_before => self.pending = Some(a),
                    _ => self.source = None,
                }
            }
        }
        self.pending.as_ref()
    }

    pub fn step(&mut self) -> Result<Step> {
        self.peek_arrival();
        let out = self.state.step(self.pending.as_ref())?;
        if matches!(out, Step::Arrival(_)) {
            self.pending = None;
        }
        Ok(out)
    }
}

/// When [`run`] stops.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stop {
    MaxEvents(u64),
    /// No event later than this time is processed.
    MaxTime(f64),
    /// Admit arrivals before the time, then run until the system is empty.
    EmptyAfter(f64),
}

#[derive(Debug, Clone)]
pub struct Trace {
    /// Empty when tracing is off.
    pub events: Vec<TraceEvent>,
    pub summary: Summary,
    /// Time to empty the system from the final state.
    pub time_to_empty: f64,
}

impl Trace {
    /// Writes one JSON object per event.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for e in &self.events {
            serde_json::to_writer(&mut out, e).map_err(std::io::Error::other)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Simulates `scenario` from the empty state until `stop`.
pub fn run(scenario: &Scenario, stop: Stop, seed: u64) -> Result<Trace> {
    let mut engine = Engine::from_scenario(scenario, seed)?;
    run_engine(&mut engine, stop)
}

/// Drives an existing engine until `stop`.
pub fn run_engine(engine: &mut Engine, stop: Stop) -> Result<Trace> {
    let keep = engine.state.config.trace == TraceLevel::Events;
    let mut events = Vec::new();
    let mut record = |e: TraceEvent| {
        if keep {
            events.push(e);
        }
    };
    match stop {
        Stop::MaxEvents(n) => {
            for _ in 0..n {
                match engine.step()? {
                    Step::Arrival(e) | Step::Departure(e) => record(e),
                    Step::Idle => break,
                }
            }
        }
        Stop::MaxTime(t_max) => loop {
            let next_arrival = engine.peek_arrival().map(|a| a.t);
            let next_dep = engine.state.next_departure().map(|d| d.0);
            let next = match (next_arrival, next_dep) {
                (None, None) => break,
                (a, d) => a.unwrap_or(f64::INFINITY).min(d.unwrap_or(f64::INFINITY)),
            };
            if next > t_max {
                break;
            }
            match engine.step()? {
                Step::Arrival(e) | Step::Departure(e) => record(e),
                Step::Idle => break,
            }
        },
        Stop::EmptyAfter(t_halt) => {
            engine.halt_arrivals_at(t_halt);
            while let Step::Arrival(e) | Step::Departure(e) = engine.step()? {
                record(e);
            }
        }
    }
    Ok(Trace {
        events,
        summary: engine.state.summary(),
        time_to_empty: engine.state.time_to_empty()?,
    })
}

/// Places `arrivals` at time 0 in the given order and serves them to
/// emptiness. Returns the departure time of the last customer.
pub fn saturated_clearing_time(
    space: Space,
    model: &RateModel,
    arrivals: impl IntoIterator<Item = Arrival>,
) -> Result<f64> {
    let config = EngineConfig {
        trace: TraceLevel::Off,
        ..EngineConfig::default()
    };
    let mut state = DagState::new(space, model.clone(), config)?;
    for a in arrivals {
        state.insert(&a)?;
    }
    state.drain()?;
    Ok(state.clock())
}
