//! Whole-space exclusion turns the network into one M/M/1 queue; compares
//! the simulated mean wait with `Λ / (μ (μ - Λ))`.
//!
//! `cargo run --example single_server`

use phwg::arrivals::{ArrivalSpec, HeightLaw, MarkModel, RadiusLaw, RateModel, ShannonParams};
use phwg::engine::{run, Scenario, Stop};
use phwg::geometry::Space;

fn main() -> phwg::Result<()> {
    let sp = Space::torus_2d(2.0)?;
    let p = ShannonParams::default();
    let marks = MarkModel::new(RadiusLaw::WholeSpace, HeightLaw::Exponential { mean: 1.0 });
    for lambda in [0.05, 0.1, 0.15, 0.2] {
        let sc = Scenario::new(ArrivalSpec::poisson(sp, lambda, marks.clone()), RateModel::Shannon(p.clone()));
        let trace = run(&sc, Stop::MaxEvents(400_000), 1)?;
        let (big, mu) = (lambda * sp.measure(), p.max_rate());
        println!(
            "λ = {lambda:.2}: mean wait {:.4}, M/M/1 {:.4}",
            trace.summary.mean_wait,
            big / (mu * (mu - big))
        );
    }
    Ok(())
}
