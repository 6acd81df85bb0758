//! Runs the full dynamics with exponential exclusion radii and prints the
//! first trace lines and the summary.
//!
//! `cargo run --example simulate_trace -- [lambda] [mean_radius]`

use phwg::arrivals::{ArrivalSpec, HeightLaw, MarkModel, RadiusLaw, RateModel, ShannonParams};
use phwg::engine::{run, Scenario, Stop, TraceLevel};
use phwg::geometry::Space;

fn main() -> phwg::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let lambda = args.next().unwrap_or(0.2);
    let mean = args.next().unwrap_or(1.0);

    let sp = Space::torus_2d(2.0)?;
    let marks = MarkModel::new(RadiusLaw::Exponential { mean }, HeightLaw::Exponential { mean: 1.0 });
    let mut sc = Scenario::new(ArrivalSpec::poisson(sp, lambda, marks), RateModel::Shannon(ShannonParams::default()));
    sc.engine.trace = TraceLevel::Events;

    let trace = run(&sc, Stop::MaxTime(2000.0), 42)?;
    let mut out = Vec::new();
    trace.write_jsonl(&mut out)?;
    for line in String::from_utf8_lossy(&out).lines().take(6) {
        println!("{line}");
    }
    println!("{:#?}", trace.summary);
    println!("time to empty from the final state: {:.3}", trace.time_to_empty);
    Ok(())
}
