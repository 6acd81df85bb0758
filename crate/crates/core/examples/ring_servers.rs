//! Servers on a circle: the two-customer example and a Poisson-hail check
//! when footprints exceed the interference range.
//!
//! `cargo run --example ring_servers`

use phwg::arrivals::{sample_stream, Arrival, ArrivalSpec, HeightLaw, MarkModel, RadiusLaw, RateModel};
use phwg::engine::{run_engine, saturated_clearing_time, DagState, Engine, EngineConfig, Stop};
use phwg::geometry::{ExclusionSet, Point, Space};

fn main() -> phwg::Result<()> {
    let sp = Space::discrete_circle(6)?;
    let model = RateModel::DiscreteIndicator { weight: 1.0, range: 3.0 };
    let customer = |id, site, h| Arrival {
        id,
        t: 0.0,
        x: Point::Site(site),
        set: ExclusionSet::Interval { center: site, width: 3 },
        h,
    };
    let pair = [customer(1, 1, 1.0), customer(2, 4, 2.0)];
    println!("two customers on 6 servers clear at {}", saturated_clearing_time(sp, &model, pair)?);

    // Width 5 > d = 3: everybody in service runs at rate 1.
    let sp = Space::discrete_circle(12)?;
    let marks = MarkModel::new(RadiusLaw::Interval { width: 5 }, HeightLaw::Exponential { mean: 1.0 });
    let arrivals = sample_stream(&ArrivalSpec::poisson(sp, 0.05, marks), 10_000, 3)?;
    let state = DagState::new(sp, model, EngineConfig::default())?;
    let mut engine = Engine::new(state).with_source(arrivals.into_iter());
    let trace = run_engine(&mut engine, Stop::EmptyAfter(f64::INFINITY))?;
    println!(
        "12 servers, width 5: {} customers, mean wait {:.4}, at most {} in service",
        trace.summary.departures, trace.summary.mean_wait, trace.summary.max_active
    );
    Ok(())
}
