mod common;

use std::collections::HashMap;

use phwg::arrivals::{
    rate, replication_rng, sample_stream, shannon_rate, sum_rate_lower_bound, Arrival, ArrivalSpec, HeightLaw,
    MarkModel, RadiusLaw, RateModel, ShannonParams,
};
use phwg::blocks::{BlockSampler, Times};
use phwg::engine::{run_engine, DagState, Engine, EngineConfig, Stop, TraceEvent, TraceLevel};
use phwg::geometry::{distance, intersects, Point, Space};
use phwg::stability::default_zigzag;
use proptest::prelude::*;
use rand::Rng;

fn traced(check: bool) -> EngineConfig {
    EngineConfig {
        trace: TraceLevel::Events,
        check_invariants: check,
        ..EngineConfig::default()
    }
}

fn radius_law() -> impl Strategy<Value = RadiusLaw> {
    prop_oneof![
        (0.05..1.5f64).prop_map(RadiusLaw::Fixed),
        (0.05..2.0f64).prop_map(|mean| RadiusLaw::Exponential { mean }),
    ]
}

fn shannon() -> RateModel {
    RateModel::Shannon(ShannonParams::default())
}

fn torus_arrivals(radius: RadiusLaw, intensity: f64, count: usize, seed: u64) -> (Space, Vec<Arrival>) {
    let sp = Space::torus_2d(2.0).unwrap();
    let marks = MarkModel::new(radius, HeightLaw::Exponential { mean: 1.0 });
    (sp, sample_stream(&ArrivalSpec::poisson(sp, intensity, marks), count, seed).unwrap())
}

fn drive(sp: Space, model: &RateModel, arrivals: &[Arrival], check: bool) -> Vec<TraceEvent> {
    let state = DagState::new(sp, model.clone(), traced(check)).unwrap();
    let mut engine = Engine::new(state).with_source(Vec::from(arrivals).into_iter());
    run_engine(&mut engine, Stop::EmptyAfter(f64::INFINITY)).unwrap().events
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn torus_metric(ax in -2.0..2.0f64, ay in -2.0..2.0f64, bx in -2.0..2.0f64, by in -2.0..2.0f64,
                    cx in -2.0..2.0f64, cy in -2.0..2.0f64, sx in -10.0..10.0f64) {
        let sp = Space::torus_2d(2.0).unwrap();
        let (a, b, c) = (Point::Torus([ax, ay]), Point::Torus([bx, by]), Point::Torus([cx, cy]));
        let ab = distance(&a, &b, &sp).unwrap();
        prop_assert_eq!(ab, distance(&b, &a, &sp).unwrap());
        prop_assert!(ab <= sp.diameter() + 1e-12);
        prop_assert!(ab <= distance(&a, &c, &sp).unwrap() + distance(&c, &b, &sp).unwrap() + 1e-12);
        prop_assert_eq!(distance(&a, &a, &sp).unwrap(), 0.0);
        let shifted = sp.wrap(Point::Torus([ax + 4.0 * sx.round(), ay - 4.0])).unwrap();
        prop_assert!(distance(&shifted, &b, &sp).unwrap() - ab < 1e-9);
    }

    #[test]
    fn ring_metric(n in 2usize..40, i in 1usize..40, j in 1usize..40) {
        let n = 2 * n;
        let sp = Space::discrete_circle(n).unwrap();
        let (i, j) = ((i - 1) % n + 1, (j - 1) % n + 1);
        let d = distance(&Point::Site(i), &Point::Site(j), &sp).unwrap();
        let raw = i.abs_diff(j) as f64;
        prop_assert_eq!(d, raw.min(n as f64 - raw));
        prop_assert!(d <= sp.diameter());
    }

    #[test]
    fn served_set_is_conflict_free_and_packed(radius in (0.2..1.2f64), intensity in 0.2..1.0f64, seed in any::<u64>()) {
        let (sp, arrivals) = torus_arrivals(RadiusLaw::Fixed(radius), intensity, 400, seed);
        let state = DagState::new(sp, shannon(), traced(true)).unwrap();
        let mut engine = Engine::new(state).with_source(arrivals.into_iter());
        let bound = sp.measure() / (std::f64::consts::PI * radius * radius);
        for _ in 0..800 {
            engine.step().unwrap();
            let s = engine.state();
            let served: Vec<_> = s.active_config().iter().map(|&(_, id)| s.customer(id).unwrap()).collect();
            for (i, a) in served.iter().enumerate() {
                for b in &served[i + 1..] {
                    prop_assert!(!intersects(&a.set, &b.set, &sp).unwrap());
                    prop_assert!(distance(&a.x, &b.x, &sp).unwrap() > 2.0 * radius);
                }
            }
            prop_assert!(served.len() as f64 <= bound);
        }
    }

    #[test]
    fn trace_respects_local_fcfs_and_conserves_work(radius in radius_law(), intensity in 0.05..0.4f64, seed in any::<u64>()) {
        let (sp, arrivals) = torus_arrivals(radius, intensity, 150, seed);
        let events = drive(sp, &shannon(), &arrivals, true);
        let deps = common::departures(&events);
        prop_assert_eq!(deps.len(), arrivals.len());
        for (j, a) in arrivals.iter().enumerate() {
            let mut start = a.t;
            for b in &arrivals[..j] {
                if intersects(&b.set, &a.set, &sp).unwrap() {
                    start = start.max(deps[&b.id].departure);
                }
            }
            prop_assert_eq!(deps[&a.id].start, start, "start of {}", a.id);
        }
        let work = common::served_work(&sp, &shannon(), &arrivals, &events);
        for a in &arrivals {
            let got = work[&a.id];
            prop_assert!((got - a.h).abs() <= 1e-9 * a.h.max(1.0), "work of {}: {} vs {}", a.id, got, a.h);
        }
    }

    #[test]
    fn trace_times_are_ordered_and_json_round_trips(seed in any::<u64>()) {
        let (sp, arrivals) = torus_arrivals(RadiusLaw::Exponential { mean: 0.7 }, 0.3, 100, seed);
        let events = drive(sp, &shannon(), &arrivals, false);
        let mut seen = HashMap::new();
        for w in events.windows(2) {
            prop_assert!(w[0].time <= w[1].time);
        }
        for e in &events {
            match e.kind {
                phwg::engine::EventKind::Arrival => { seen.insert(e.id, e.time); }
                phwg::engine::EventKind::Departure => prop_assert!(seen[&e.id] <= e.time),
            }
            let line = serde_json::to_string(e).unwrap();
            let back: TraceEvent = serde_json::from_str(&line).unwrap();
            prop_assert_eq!(&back, e);
        }
    }

    #[test]
    fn shannon_rates_are_bounded(n in 1usize..30, seed in any::<u64>()) {
        let sp = Space::torus_2d(2.0).unwrap();
        let p = ShannonParams::default();
        let mut rng = replication_rng(seed, 0);
        let cfg: Vec<(Point, u64)> = (0..n).map(|i| (sp.sample_point(&mut rng), i as u64 + 1)).collect();
        for &(_, id) in &cfg {
            let r = shannon_rate(id, &cfg, &p, &sp).unwrap();
            prop_assert!(r > 0.0 && r <= p.max_rate());
        }
    }
}

#[test]
fn sum_rate_lower_bound_holds() {
    let sp = Space::torus_2d(2.0).unwrap();
    let p = ShannonParams::default();
    let model = RateModel::Shannon(p.clone());
    let mut rng = replication_rng(2024, 0);
    for _ in 0..10_000 {
        let n = rng.random_range(1..=40);
        let cfg: Vec<(Point, u64)> = (0..n).map(|i| (sp.sample_point(&mut rng), i as u64 + 1)).collect();
        let total: f64 = cfg.iter().map(|&(_, id)| rate(&model, id, &cfg, &sp).unwrap()).sum();
        assert!(total >= sum_rate_lower_bound(n, &p).unwrap() - 1e-12, "n={n} total={total}");
    }
}

/// Full-system trace of concatenated timed blocks, with the block of each id.
fn block_trace(radius: RadiusLaw, lambda: f64, n_blocks: usize, seed: u64) -> (Vec<Vec<u64>>, HashMap<u64, common::Served>) {
    let sp = Space::torus_2d(2.0).unwrap();
    let marks = MarkModel::new(radius, HeightLaw::Exponential { mean: 1.0 });
    let scenario = phwg::engine::Scenario::new(ArrivalSpec::poisson(sp, lambda, marks.clone()), shannon());
    let spec = default_zigzag(&scenario, None).unwrap();
    let times = Times::poisson(lambda);
    let sampler = BlockSampler::seeded(&marks, sp, spec, &times, seed, 0).unwrap();
    let mut arrivals = Vec::new();
    let mut members = Vec::new();
    let mut opening = 0.0;
    for y in sampler.take(n_blocks) {
        let mut ids = Vec::new();
        for mut a in y.arrivals() {
            a.id = arrivals.len() as u64 + 1;
            a.t += opening;
            ids.push(a.id);
            arrivals.push(a);
        }
        members.push(ids);
        opening += y.next_opening.unwrap();
    }
    let events = drive(sp, &shannon(), &arrivals, false);
    (members, common::departures(&events))
}

#[test]
fn blocks_are_served_one_after_another() {
    for (radius, lambda, seed) in [
        (RadiusLaw::Exponential { mean: 0.8 }, 0.2, 1),
        (RadiusLaw::Exponential { mean: 2.0 }, 0.2, 2),
        (RadiusLaw::WholeSpace, 0.2, 3),
    ] {
        let (members, deps) = block_trace(radius, lambda, 1000, seed);
        for (m, ids) in members.iter().enumerate() {
            let last = deps[ids.last().unwrap()].departure;
            for id in ids {
                assert!(deps[id].departure <= last, "block {m}: {id} leaves after the closing customer");
            }
            if let Some(next) = members.get(m + 1) {
                for id in next {
                    assert!(deps[id].start >= last, "block {}: {id} starts before block {m} has left", m + 1);
                }
            }
        }
    }
}
