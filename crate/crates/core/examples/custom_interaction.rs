//! A user-supplied service speed: each customer slows down with the number
//! of customers served within distance 1.
//!
//! `cargo run --example custom_interaction`

use std::sync::Arc;

use phwg::arrivals::{ArrivalSpec, HeightLaw, Interaction, MarkModel, RadiusLaw, RateModel};
use phwg::engine::{run, Scenario, Stop};
use phwg::geometry::{distance, Space};

fn main() -> phwg::Result<()> {
    let sp = Space::torus_2d(2.0)?;
    let crowding = Interaction {
        f: Arc::new(|i, cfg, sp| {
            let near = cfg
                .iter()
                .enumerate()
                .filter(|&(j, (y, _))| j != i && distance(&cfg[i].0, y, sp).is_ok_and(|d| d <= 1.0))
                .count();
            1.0 / (1.0 + near as f64).sqrt()
        }),
        min: 1e-3,
        max: 1.0,
    };
    let marks = MarkModel::new(RadiusLaw::Fixed(0.3), HeightLaw::Exponential { mean: 1.0 });
    let sc = Scenario::new(ArrivalSpec::poisson(sp, 0.1, marks), RateModel::Custom(crowding));
    let trace = run(&sc, Stop::MaxEvents(20_000), 5)?;
    println!("{:#?}", trace.summary);
    Ok(())
}
