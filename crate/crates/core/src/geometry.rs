//! Spaces, wrapped metrics, exclusion sets and cover chains.
//!
//! Continuous spaces are tori `[-W, W)^d` with `d` in {1, 2}; the discrete
//! space is a ring of `N` servers numbered `1..=N`. Every set is closed, so
//! tangency counts as intersection and as coverage.

use std::f64::consts::PI;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::arrivals::{MarkModel, RadiusLaw};
use crate::error::{Error, Result};
use crate::numerics;

/// The phase space of the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Space {
    /// Torus with fundamental domain `[-half_width, half_width)^dim`.
    Torus { dim: usize, half_width: f64 },
    /// `n_servers` equidistant servers on a circle of length `n_servers`.
    DiscreteCircle { n_servers: usize },
}

/// A location in a [`Space`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    /// Torus coordinates; the second entry is zero in one dimension.
    Torus([f64; 2]),
    /// Server index in `1..=N`.
    Site(usize),
}

/// Region attached to an arrival. Two customers conflict when their sets meet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum ExclusionSet {
    Ball { center: Point, radius: f64 },
    WholeSpace,
    /// `width` consecutive servers (odd) centered on server `center`.
    Interval { center: usize, width: usize },
}

impl Space {
    pub fn torus_1d(half_width: f64) -> Result<Self> {
        Self::torus(1, half_width)
    }

    pub fn torus_2d(half_width: f64) -> Result<Self> {
        Self::torus(2, half_width)
    }

    fn torus(dim: usize, half_width: f64) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::invalid(format!(
                "torus half-width must be positive and finite, got {half_width}"
            )));
        }
        Ok(Space::Torus { dim, half_width })
    }

    pub fn discrete_circle(n_servers: usize) -> Result<Self> {
        if n_servers < 4 || !n_servers.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "discrete circle needs an even number of servers >= 4, got {n_servers}"
            )));
        }
        Ok(Space::DiscreteCircle { n_servers })
    }

    /// Checks the invariants of a value built by hand or deserialized.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Space::Torus { dim, half_width } => {
                if dim != 1 && dim != 2 {
                    return Err(Error::invalid(format!("torus dimension must be 1 or 2, got {dim}")));
                }
                Self::torus(dim, half_width).map(|_| ())
            }
            Space::DiscreteCircle { n_servers } => Self::discrete_circle(n_servers).map(|_| ()),
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, Space::DiscreteCircle { .. })
    }

    /// Total measure `|X|`: `(2W)^d` or `N`.
    pub fn measure(&self) -> f64 {
        match *self {
            Space::Torus { dim, half_width } => (2.0 * half_width).powi(dim as i32),
            Space::DiscreteCircle { n_servers } => n_servers as f64,
        }
    }

    /// Largest wrapped distance between two points: `sqrt(d) W` or `N / 2`.
    pub fn diameter(&self) -> f64 {
        match *self {
            Space::Torus { dim, half_width } => (dim as f64).sqrt() * half_width,
            Space::DiscreteCircle { n_servers } => (n_servers / 2) as f64,
        }
    }

    /// Canonical representative of a point, coordinates in `[-W, W)`.
    pub fn wrap(&self, p: Point) -> Result<Point> {
        match (*self, p) {
            (Space::Torus { dim, half_width }, Point::Torus(c)) => {
                let mut out = [wrap_coord(c[0], half_width), 0.0];
                if dim == 2 {
                    out[1] = wrap_coord(c[1], half_width);
                }
                Ok(Point::Torus(out))
            }
            (Space::DiscreteCircle { n_servers }, Point::Site(i)) => {
                Ok(Point::Site((i + n_servers - 1) % n_servers + 1))
            }
            _ => Err(Error::invalid(format!("point {p:?} does not belong to {self:?}"))),
        }
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        match (*self, *p) {
            (Space::Torus { half_width, .. }, Point::Torus(c)) => {
                if c.iter().all(|v| v.is_finite() && *v >= -half_width && *v < half_width) {
                    Ok(())
                } else {
                    Err(Error::invalid(format!("point {c:?} outside the fundamental domain")))
                }
            }
            (Space::DiscreteCircle { n_servers }, Point::Site(i)) if (1..=n_servers).contains(&i) => Ok(()),
            _ => Err(Error::invalid(format!("point {p:?} does not belong to {self:?}"))),
        }
    }

    pub fn check_set(&self, s: &ExclusionSet) -> Result<()> {
        match (*self, *s) {
            (_, ExclusionSet::WholeSpace) => Ok(()),
            (Space::Torus { .. }, ExclusionSet::Ball { center, radius }) => {
                self.check_point(&center)?;
                if radius >= 0.0 && !radius.is_nan() {
                    Ok(())
                } else {
                    Err(Error::invalid(format!("ball radius must be >= 0, got {radius}")))
                }
            }
            (Space::DiscreteCircle { n_servers }, ExclusionSet::Interval { center, width }) => {
                self.check_point(&Point::Site(center))?;
                if width % 2 == 1 && width <= n_servers {
                    Ok(())
                } else {
                    Err(Error::invalid(format!(
                        "interval width must be odd and at most {n_servers}, got {width}"
                    )))
                }
            }
            _ => Err(Error::invalid(format!("set {s:?} does not belong to {self:?}"))),
        }
    }

    /// Uniformly distributed point.
    pub fn sample_point<R: RngCore + ?Sized>(&self, rng: &mut R) -> Point {
        match *self {
            Space::Torus { dim, half_width } => {
                let mut c = [rng.random_range(-half_width..half_width), 0.0];
                if dim == 2 {
                    c[1] = rng.random_range(-half_width..half_width);
                }
                Point::Torus(c)
            }
            Space::DiscreteCircle { n_servers } => Point::Site(rng.random_range(1..=n_servers)),
        }
    }

    /// Wrapped distance without validation. Mismatched kinds give NaN.
    pub(crate) fn dist(&self, p: &Point, q: &Point) -> f64 {
        match (*self, p, q) {
            (Space::Torus { half_width, .. }, Point::Torus(a), Point::Torus(b)) => {
                let dx = wrap_delta(a[0] - b[0], half_width);
                let dy = wrap_delta(a[1] - b[1], half_width);
                (dx * dx + dy * dy).sqrt()
            }
            (Space::DiscreteCircle { n_servers }, Point::Site(a), Point::Site(b)) => {
                let d = a.abs_diff(*b) % n_servers;
                d.min(n_servers - d) as f64
            }
            _ => f64::NAN,
        }
    }

    /// Whether `s` equals the whole space.
    pub(crate) fn is_whole(&self, s: &ExclusionSet) -> bool {
        match *s {
            ExclusionSet::WholeSpace => true,
            ExclusionSet::Ball { radius, .. } => radius >= self.diameter(),
            ExclusionSet::Interval { width, .. } => match *self {
                Space::DiscreteCircle { n_servers } => width >= n_servers,
                _ => false,
            },
        }
    }

    pub(crate) fn meets(&self, a: &ExclusionSet, b: &ExclusionSet) -> bool {
        match (*a, *b) {
            (ExclusionSet::WholeSpace, _) | (_, ExclusionSet::WholeSpace) => true,
            (ExclusionSet::Ball { center: ca, radius: ra }, ExclusionSet::Ball { center: cb, radius: rb }) => {
                self.dist(&ca, &cb) <= ra + rb
            }
            (ExclusionSet::Interval { center: ca, width: wa }, ExclusionSet::Interval { center: cb, width: wb }) => {
                self.dist(&Point::Site(ca), &Point::Site(cb)) <= ((wa - 1) / 2 + (wb - 1) / 2) as f64
            }
            _ => false,
        }
    }

    pub(crate) fn contains_set(&self, s: &ExclusionSet, b: &ExclusionSet) -> bool {
        if self.is_whole(s) {
            return true;
        }
        if self.is_whole(b) {
            return false;
        }
        match (*s, *b) {
            (ExclusionSet::Ball { center: cs, radius: rs }, ExclusionSet::Ball { center: cb, radius: rb }) => {
                self.dist(&cs, &cb) + rb <= rs
            }
            (ExclusionSet::Interval { center: cs, width: ws }, ExclusionSet::Interval { center: cb, width: wb }) => {
                let hs = (ws - 1) / 2;
                let hb = (wb - 1) / 2;
                hb <= hs && self.dist(&Point::Site(cs), &Point::Site(cb)) <= (hs - hb) as f64
            }
            _ => false,
        }
    }

    pub(crate) fn contains_point(&self, s: &ExclusionSet, p: &Point) -> bool {
        match *s {
            ExclusionSet::WholeSpace => true,
            ExclusionSet::Ball { center, radius } => self.dist(&center, p) <= radius,
            ExclusionSet::Interval { center, width } => {
                self.dist(&Point::Site(center), p) <= ((width - 1) / 2) as f64
            }
        }
    }

    /// Measure of `{y : distance(y, c) <= r}`, independent of `c`.
    pub fn ball_measure(&self, r: f64) -> f64 {
        if r < 0.0 {
            return 0.0;
        }
        match *self {
            Space::Torus { dim: 1, half_width } => (2.0 * r).min(2.0 * half_width),
            Space::Torus { half_width: w, .. } => {
                if r <= w {
                    PI * r * r
                } else if r >= w * 2f64.sqrt() {
                    4.0 * w * w
                } else {
                    // Disk minus the four caps beyond the sides of the square.
                    let cap = r * r * (w / r).acos() - w * (r * r - w * w).sqrt();
                    PI * r * r - 4.0 * cap
                }
            }
            Space::DiscreteCircle { n_servers } => {
                let h = r.floor() as usize;
                (2 * h + 1).min(n_servers) as f64
            }
        }
    }
}

fn wrap_coord(x: f64, w: f64) -> f64 {
    let period = 2.0 * w;
    let y = x - period * ((x + w) / period).floor();
    if y >= w {
        y - period
    } else if y < -w {
        y + period
    } else {
        y
    }
}

fn wrap_delta(d: f64, w: f64) -> f64 {
    let period = 2.0 * w;
    let mut d = d - period * (d / period).round();
    if d > w {
        d -= period;
    } else if d < -w {
        d += period;
    }
    d.abs()
}

fn ensure_point(sp: &Space, p: &Point) -> Result<()> {
    match (sp, p) {
        (Space::Torus { .. }, Point::Torus(_)) | (Space::DiscreteCircle { .. }, Point::Site(_)) => Ok(()),
        _ => Err(Error::invalid(format!("point {p:?} does not belong to {sp:?}"))),
    }
}

fn ensure_set(sp: &Space, s: &ExclusionSet) -> Result<()> {
    match (sp, s) {
        (_, ExclusionSet::WholeSpace) => Ok(()),
        (Space::Torus { .. }, ExclusionSet::Ball { center, .. }) => ensure_point(sp, center),
        (Space::DiscreteCircle { .. }, ExclusionSet::Interval { .. }) => Ok(()),
        _ => Err(Error::invalid(format!("set {s:?} does not belong to {sp:?}"))),
    }
}

/// Wrapped distance between two points of `sp`.
pub fn distance(p: &Point, q: &Point, sp: &Space) -> Result<f64> {
    ensure_point(sp, p)?;
    ensure_point(sp, q)?;
    Ok(sp.dist(p, q))
}

/// Whether two closed sets share a point.
pub fn intersects(a: &ExclusionSet, b: &ExclusionSet, sp: &Space) -> Result<bool> {
    ensure_set(sp, a)?;
    ensure_set(sp, b)?;
    Ok(sp.meets(a, b))
}

/// Whether `b` is contained in `s`.
pub fn covers(s: &ExclusionSet, b: &ExclusionSet, sp: &Space) -> Result<bool> {
    ensure_set(sp, s)?;
    ensure_set(sp, b)?;
    Ok(sp.contains_set(s, b))
}

/// Ordered deterministic sets `B_1..B_k` that drive zigzag detection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverChain {
    pub sets: Vec<ExclusionSet>,
    /// `P(B_i ⊆ S)` for each set, once computed.
    pub cover_probabilities: Option<Vec<f64>>,
}

impl CoverChain {
    pub fn new(sets: Vec<ExclusionSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::invalid("a cover chain needs at least one set"));
        }
        Ok(Self {
            sets,
            cover_probabilities: None,
        })
    }

    pub fn whole_space() -> Self {
        Self {
            sets: vec![ExclusionSet::WholeSpace],
            cover_probabilities: None,
        }
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    /// Fills `cover_probabilities` from a mark model.
    pub fn with_cover_probabilities(mut self, marks: &MarkModel, sp: &Space) -> Result<Self> {
        let probs = self
            .sets
            .iter()
            .map(|b| cover_probability(b, marks, sp))
            .collect::<Result<Vec<_>>>()?;
        self.cover_probabilities = Some(probs);
        Ok(self)
    }

    /// `(prod_i P(B_i ⊆ S))^2`, the probability of a doubled zigzag at a
    /// candidate index.
    pub fn zigzag_probability(&self) -> Option<f64> {
        self.cover_probabilities
            .as_ref()
            .map(|p| p.iter().product::<f64>().powi(2))
    }
}

/// Snake-ordered chain of balls of radius `R/2` for exclusion sets that always
/// contain the ball of radius `R` around the arrival.
///
/// On the discrete circle `R` is read as a half-width in servers and the chain
/// is made of intervals of width `2 floor(R) + 1`.
pub fn build_cover_chain(sp: &Space, guaranteed_radius: f64) -> Result<CoverChain> {
    sp.validate()?;
    if !(guaranteed_radius > 0.0) {
        return Err(Error::invalid(format!(
            "guaranteed radius must be positive, got {guaranteed_radius}"
        )));
    }
    if guaranteed_radius >= sp.diameter() {
        return Ok(CoverChain::whole_space());
    }
    let sets = match *sp {
        Space::Torus { dim, half_width } => {
            let rho = guaranteed_radius / 2.0;
            let per_axis = (2.0 * half_width / rho).ceil() as usize;
            let pitch = 2.0 * half_width / per_axis as f64;
            let coord = |i: usize| -half_width + (i as f64 + 0.5) * pitch;
            let mut sets = Vec::new();
            let rows = if dim == 2 { per_axis } else { 1 };
            for row in 0..rows {
                for step in 0..per_axis {
                    let col = if row % 2 == 0 { step } else { per_axis - 1 - step };
                    let y = if dim == 2 { coord(row) } else { 0.0 };
                    sets.push(ExclusionSet::Ball {
                        center: Point::Torus([coord(col), y]),
                        radius: rho,
                    });
                }
            }
            prune_redundant(sp, sets, rho / 8.0)
        }
        Space::DiscreteCircle { n_servers } => {
            let h = guaranteed_radius.floor() as usize;
            if h == 0 {
                return Err(Error::invalid(
                    "single-server exclusion sets admit no cover chain; need a half-width >= 1",
                ));
            }
            let count = (n_servers - 1).div_ceil(2 * h);
            (0..count)
                .map(|j| ExclusionSet::Interval {
                    center: (h + j * 2 * h) % n_servers + 1,
                    width: 2 * h + 1,
                })
                .collect()
        }
    };
    let chain = CoverChain::new(sets)?;
    let report = validate_cover_chain(&chain, sp, None);
    if !report.passed() {
        return Err(Error::invalid(format!(
            "constructed cover chain failed validation: {report:?}"
        )));
    }
    Ok(chain)
}

// Drops balls that add no sampled area to the ones already placed. On a
// periodic grid the final ball of the snake is enclosed by its neighbours.
fn prune_redundant(sp: &Space, sets: Vec<ExclusionSet>, pitch: f64) -> Vec<ExclusionSet> {
    let mut kept: Vec<ExclusionSet> = Vec::with_capacity(sets.len());
    for set in sets {
        let adds_area = kept.is_empty()
            || sample_points_in(sp, &set, pitch)
                .iter()
                .any(|p| !kept.iter().any(|b| sp.contains_point(b, p)));
        if adds_area {
            kept.push(set);
        }
    }
    kept
}

/// Outcome of one chain condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Check {
    Pass,
    /// Condition broken at 1-based index `index` (or at an uncovered point).
    Fail {
        index: Option<usize>,
        witness: Option<Point>,
    },
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }
}

/// Per-condition report of [`validate_cover_chain`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    /// `B_{i+1} ∩ B_i ≠ ∅`.
    pub consecutive_overlap: Check,
    /// `B_{i+1}` adds a point outside `B_1 ∪ … ∪ B_i`.
    pub adds_new_ground: Check,
    /// The union is the whole space.
    pub covers_space: Check,
    /// Every stored cover probability is positive; `Pass` when none are stored.
    pub positive_probabilities: Check,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.consecutive_overlap.passed()
            && self.adds_new_ground.passed()
            && self.covers_space.passed()
            && self.positive_probabilities.passed()
    }
}

fn default_pitch(ch: &CoverChain, sp: &Space) -> f64 {
    let smallest = ch
        .sets
        .iter()
        .filter_map(|s| match s {
            ExclusionSet::Ball { radius, .. } if *radius > 0.0 => Some(*radius),
            _ => None,
        })
        .fold(f64::INFINITY, f64::min);
    if smallest.is_finite() {
        smallest / 8.0
    } else {
        sp.diameter() / 64.0
    }
}

fn grid_points(sp: &Space, pitch: f64) -> Vec<Point> {
    match *sp {
        Space::Torus { dim, half_width } => {
            let n = (2.0 * half_width / pitch).ceil().max(1.0) as usize;
            let step = 2.0 * half_width / n as f64;
            let coord = |i: usize| -half_width + i as f64 * step;
            if dim == 1 {
                (0..n).map(|i| Point::Torus([coord(i), 0.0])).collect()
            } else {
                (0..n)
                    .flat_map(|i| (0..n).map(move |j| Point::Torus([coord(i), coord(j)])))
                    .collect()
            }
        }
        Space::DiscreteCircle { n_servers } => (1..=n_servers).map(Point::Site).collect(),
    }
}

// Lattice points of pitch `pitch` inside `set`, anchored at its center.
fn sample_points_in(sp: &Space, set: &ExclusionSet, pitch: f64) -> Vec<Point> {
    match (*sp, *set) {
        (Space::Torus { dim, half_width }, ExclusionSet::Ball { center: Point::Torus(c), radius })
            if radius < sp.diameter() =>
        {
            let n = (radius / pitch).floor() as i64;
            let mut out = Vec::new();
            let ys: Vec<i64> = if dim == 2 { (-n..=n).collect() } else { vec![0] };
            for i in -n..=n {
                for &j in &ys {
                    let (dx, dy) = (i as f64 * pitch, j as f64 * pitch);
                    if dx * dx + dy * dy <= radius * radius {
                        let x = wrap_coord(c[0] + dx, half_width);
                        let y = if dim == 2 { wrap_coord(c[1] + dy, half_width) } else { 0.0 };
                        out.push(Point::Torus([x, y]));
                    }
                }
            }
            out
        }
        _ => grid_points(sp, pitch)
            .into_iter()
            .filter(|p| sp.contains_point(set, p))
            .collect(),
    }
}

/// Checks chain conditions (a)-(d). Coverage and novelty are checked on a
/// lattice of the given pitch (default: an eighth of the smallest ball
/// radius) in continuous space and exactly on the discrete circle.
pub fn validate_cover_chain(ch: &CoverChain, sp: &Space, pitch: Option<f64>) -> ChainReport {
    let pitch = pitch.unwrap_or_else(|| default_pitch(ch, sp));
    let sets = &ch.sets;

    let consecutive_overlap = (1..sets.len())
        .find(|&i| !sp.meets(&sets[i - 1], &sets[i]))
        .map_or(Check::Pass, |i| Check::Fail {
            index: Some(i),
            witness: None,
        });

    let adds_new_ground = (1..sets.len())
        .find(|&i| {
            !sample_points_in(sp, &sets[i], pitch)
                .iter()
                .any(|p| !sets[..i].iter().any(|b| sp.contains_point(b, p)))
        })
        .map_or(Check::Pass, |i| Check::Fail {
            index: Some(i),
            witness: None,
        });

    let covers_space = grid_points(sp, pitch)
        .into_iter()
        .find(|p| !sets.iter().any(|b| sp.contains_point(b, p)))
        .map_or(Check::Pass, |p| Check::Fail {
            index: None,
            witness: Some(p),
        });

    let positive_probabilities = ch
        .cover_probabilities
        .as_ref()
        .and_then(|ps| ps.iter().position(|p| !(*p > 0.0)))
        .map_or(Check::Pass, |i| Check::Fail {
            index: Some(i + 1),
            witness: None,
        });

    ChainReport {
        consecutive_overlap,
        adds_new_ground,
        covers_space,
        positive_probabilities,
    }
}

/// `P(b ⊆ S)` where `S` is the exclusion set of a uniformly located arrival.
///
/// Closed forms cover fixed and exponential radii, whole-space marks and
/// discrete intervals. Custom samplers are rejected; use
/// [`estimate_cover_probability`] for those.
pub fn cover_probability(b: &ExclusionSet, marks: &MarkModel, sp: &Space) -> Result<f64> {
    ensure_set(sp, b)?;
    if marks.joint.is_some() {
        return Err(Error::UnsupportedModel(
            "joint mark samplers have no closed-form cover probability".into(),
        ));
    }
    let diam = sp.diameter();
    let b_whole = sp.is_whole(b);
    match (&marks.radius, *sp) {
        (RadiusLaw::WholeSpace, _) => Ok(1.0),
        (RadiusLaw::Custom(_), _) => Err(Error::UnsupportedModel(
            "custom radius sampler has no closed-form cover probability".into(),
        )),
        (RadiusLaw::Fixed(r), Space::Torus { .. }) => {
            if *r >= diam {
                Ok(1.0)
            } else if b_whole {
                Ok(0.0)
            } else {
                let rho = ball_radius(b);
                Ok(if *r > rho { sp.ball_measure(r - rho) / sp.measure() } else { 0.0 })
            }
        }
        (RadiusLaw::Exponential { mean }, Space::Torus { .. }) => {
            let tail = (-diam / mean).exp();
            if b_whole {
                return Ok(tail);
            }
            let rho = ball_radius(b);
            // E[(e^{-(D+rho)/m} - e^{-diam/m})^+] with D the distance of a
            // uniform point, integrated by parts against its CDF.
            let measure = sp.measure();
            let density = |r: f64| sp.ball_measure(r) / measure * (-(r + rho) / mean).exp() / mean;
            let upper = diam - rho;
            let mut body = 0.0;
            if let Space::Torus { half_width, dim: 2 } = *sp {
                if half_width < upper {
                    body += numerics::integrate(density, 0.0, half_width, 1e-13)?;
                    body += numerics::integrate(density, half_width, upper, 1e-13)?;
                } else {
                    body += numerics::integrate(density, 0.0, upper, 1e-13)?;
                }
            } else {
                body += numerics::integrate(density, 0.0, upper, 1e-13)?;
            }
            Ok(tail + body)
        }
        (RadiusLaw::Interval { width }, Space::DiscreteCircle { n_servers }) => match *b {
            ExclusionSet::Interval { width: wb, .. } => {
                let (h, hb) = ((width - 1) / 2, (wb - 1) / 2);
                if *width >= n_servers {
                    Ok(1.0)
                } else if b_whole || hb > h {
                    Ok(0.0)
                } else {
                    Ok((2 * (h - hb) + 1).min(n_servers) as f64 / n_servers as f64)
                }
            }
            _ => Ok(if *width >= n_servers { 1.0 } else { 0.0 }),
        },
        (law, _) => Err(Error::invalid(format!(
            "radius law {law:?} does not apply to {sp:?}"
        ))),
    }
}

fn ball_radius(b: &ExclusionSet) -> f64 {
    match *b {
        ExclusionSet::Ball { radius, .. } => radius,
        _ => 0.0,
    }
}

/// Monte Carlo estimate of `P(b ⊆ S)`; returns the estimate and its standard
/// error. Works for every mark model.
pub fn estimate_cover_probability<R: RngCore + ?Sized>(
    b: &ExclusionSet,
    marks: &MarkModel,
    sp: &Space,
    samples: usize,
    rng: &mut R,
) -> Result<(f64, f64)> {
    ensure_set(sp, b)?;
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    let mut hits = 0usize;
    for _ in 0..samples {
        let x = sp.sample_point(rng);
        let (s, _) = marks.sample(x, sp, rng)?;
        if sp.contains_set(&s, b) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    Ok((p, (p * (1.0 - p) / samples as f64).sqrt()))
}
