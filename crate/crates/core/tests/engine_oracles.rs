mod common;

use common::{assert_close, fcfs_recursion, hail_recursion, naive_simulate, Served};
use phwg::arrivals::{
    sample_stream, Arrival, ArrivalSpec, HeightLaw, MarkModel, RadiusLaw, RateModel, ShannonParams,
};
use phwg::engine::{
    run, run_engine, saturated_clearing_time, DagState, Engine, EngineConfig, Scenario, Stop, TraceLevel,
};
use phwg::geometry::{ExclusionSet, Point, Space};

fn traced() -> EngineConfig {
    EngineConfig {
        trace: TraceLevel::Events,
        check_invariants: true,
        ..EngineConfig::default()
    }
}

fn run_scripted(sp: Space, model: &RateModel, arrivals: &[Arrival]) -> Vec<Served> {
    let state = DagState::new(sp, model.clone(), traced()).unwrap();
    let mut engine = Engine::new(state).with_source(Vec::from(arrivals).into_iter());
    let trace = run_engine(&mut engine, Stop::EmptyAfter(f64::INFINITY)).unwrap();
    assert_eq!(trace.summary.departures as usize, arrivals.len());
    let deps = common::departures(&trace.events);
    arrivals.iter().map(|a| deps[&a.id]).collect()
}

fn compare(engine: &[Served], oracle: &[Served], rel: f64) {
    assert_eq!(engine.len(), oracle.len());
    let mut oracle = oracle.to_vec();
    oracle.sort_by_key(|s| s.id);
    for (e, o) in engine.iter().zip(&oracle) {
        assert_eq!(e.id, o.id);
        assert_close(e.start, o.start, rel, &format!("start of {}", e.id));
        assert_close(e.departure, o.departure, rel, &format!("departure of {}", e.id));
    }
}

fn torus_stream(radius: RadiusLaw, intensity: f64, count: usize, seed: u64) -> (Space, Vec<Arrival>) {
    let sp = Space::torus_2d(2.0).unwrap();
    let marks = MarkModel::new(radius, HeightLaw::Exponential { mean: 1.0 });
    let arrivals = sample_stream(&ArrivalSpec::poisson(sp, intensity, marks), count, seed).unwrap();
    (sp, arrivals)
}

#[test]
fn constant_rate_hail_matches_recursion() {
    for (seed, r) in [(1, 0.3), (2, 0.8), (3, 1.5)] {
        let (sp, arrivals) = torus_stream(RadiusLaw::Fixed(r), 0.4, 2000, seed);
        let engine = run_scripted(sp, &RateModel::Constant, &arrivals);
        compare(&engine, &hail_recursion(&sp, &arrivals, 1.0), 1e-9);
    }
}

#[test]
fn whole_space_shannon_matches_single_server() {
    let p = ShannonParams::default();
    let (sp, arrivals) = torus_stream(RadiusLaw::WholeSpace, 0.2, 5000, 4);
    let engine = run_scripted(sp, &RateModel::Shannon(p.clone()), &arrivals);
    compare(&engine, &fcfs_recursion(&arrivals, p.max_rate()), 1e-9);
}

#[test]
fn engine_matches_from_scratch_simulation() {
    let model = RateModel::Shannon(ShannonParams::default());
    for (seed, mean, intensity) in [(5, 0.05, 0.2), (6, 0.4, 0.25), (7, 1.0, 0.25), (8, 2.0, 0.3)] {
        let (sp, arrivals) = torus_stream(RadiusLaw::Exponential { mean }, intensity, 500, seed);
        let engine = run_scripted(sp, &model, &arrivals);
        compare(&engine, &naive_simulate(&sp, &model, &arrivals), 1e-9);
    }
}

#[test]
fn saturated_heaps_match_from_scratch_simulation() {
    let model = RateModel::Shannon(ShannonParams::default());
    for (seed, mean) in [(9, 0.1), (10, 0.4)] {
        let (sp, mut arrivals) = torus_stream(RadiusLaw::Exponential { mean }, 1.0, 300, seed);
        for a in &mut arrivals {
            a.t = 0.0;
        }
        let oracle = naive_simulate(&sp, &model, &arrivals);
        let last = oracle.iter().map(|s| s.departure).fold(0.0, f64::max);
        let got = saturated_clearing_time(sp, &model, arrivals).unwrap();
        assert_close(got, last, 1e-9, "clearing time");
    }
}

fn ring_stream(n: usize, width: usize, count: usize, seed: u64) -> (Space, Vec<Arrival>) {
    let sp = Space::discrete_circle(n).unwrap();
    let marks = MarkModel::new(RadiusLaw::Interval { width }, HeightLaw::Exponential { mean: 1.0 });
    let arrivals = sample_stream(&ArrivalSpec::poisson(sp, 0.3, marks), count, seed).unwrap();
    (sp, arrivals)
}

#[test]
fn ring_with_wide_footprints_is_rate_one_hail() {
    // Served customers are at least M apart, beyond the interference range d.
    for (n, m, d) in [(12, 5, 3.0), (20, 3, 2.0), (10, 7, 6.0)] {
        let (sp, arrivals) = ring_stream(n, m, 3000, n as u64);
        let model = RateModel::DiscreteIndicator { weight: 1.0, range: d };
        let engine = run_scripted(sp, &model, &arrivals);
        let oracle = hail_recursion(&sp, &arrivals, 1.0);
        for (e, o) in engine.iter().zip(&oracle) {
            assert_eq!(e.start, o.start, "start of {}", e.id);
            assert_eq!(e.departure, o.departure, "departure of {}", e.id);
        }
    }
}

#[test]
fn ring_full_footprint_is_single_server() {
    let (sp, arrivals) = ring_stream(10, 9, 3000, 11);
    let model = RateModel::DiscreteIndicator { weight: 1.0, range: 3.0 };
    let engine = run_scripted(sp, &model, &arrivals);
    let oracle = fcfs_recursion(&arrivals, 1.0);
    for (e, o) in engine.iter().zip(&oracle) {
        assert_eq!(e.departure, o.departure, "departure of {}", e.id);
    }
}

#[test]
fn ring_two_customer_example() {
    let sp = Space::discrete_circle(6).unwrap();
    let model = RateModel::DiscreteIndicator { weight: 1.0, range: 3.0 };
    let customer = |id, site, h| Arrival {
        id,
        t: 0.0,
        x: Point::Site(site),
        set: ExclusionSet::Interval { center: site, width: 3 },
        h,
    };
    let pair = [customer(1, 1, 1.0), customer(2, 4, 2.0)];
    assert_eq!(saturated_clearing_time(sp, &model, pair).unwrap(), 3.0);

    let mut state = DagState::new(sp, model.clone(), EngineConfig::default()).unwrap();
    for a in &pair {
        state.insert(a).unwrap();
    }
    assert_eq!(state.customer(1).unwrap().rate, Some(0.5));
    assert_eq!(state.customer(2).unwrap().rate, Some(0.5));
    assert_eq!(state.time_to_empty().unwrap(), 3.0);
    let deps = run_scripted(sp, &model, &pair);
    assert_eq!((deps[0].departure, deps[1].departure), (2.0, 3.0));
}

#[test]
fn trivial_stops() {
    let sp = Space::torus_2d(2.0).unwrap();
    let marks = MarkModel::new(RadiusLaw::Fixed(0.5), HeightLaw::Exponential { mean: 1.0 });
    let mut sc = Scenario::new(ArrivalSpec::poisson(sp, 0.1, marks), RateModel::Shannon(ShannonParams::default()));
    sc.engine.trace = TraceLevel::Events;
    let t = run(&sc, Stop::MaxEvents(0), 1).unwrap();
    assert!(t.events.is_empty());
    let t = run(&sc, Stop::EmptyAfter(0.0), 1).unwrap();
    assert!(t.events.is_empty());
    assert_eq!(t.time_to_empty, 0.0);
}

#[test]
fn low_load_run_clears_every_customer() {
    let model = RateModel::Shannon(ShannonParams::default());
    let (sp, arrivals) = torus_stream(RadiusLaw::Exponential { mean: 0.5 }, 0.05, 5000, 12);
    let state = DagState::new(sp, model.clone(), traced()).unwrap();
    let mut engine = Engine::new(state).with_source(arrivals.clone().into_iter());
    let trace = run_engine(&mut engine, Stop::MaxEvents(10_000)).unwrap();
    let deps = common::departures(&trace.events);
    assert_eq!(deps.len(), 5000);
    let work = common::served_work(&sp, &model, &arrivals, &trace.events);
    for a in &arrivals {
        assert_close(work[&a.id], a.h, 1e-9, &format!("work of {}", a.id));
    }
}
