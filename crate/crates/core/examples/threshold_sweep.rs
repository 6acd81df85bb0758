//! Threshold against the mean exclusion radius on `[-2, 2)^2`, as CSV.
//! Radii too small for block sampling are bracketed by simulating the full
//! system.
//!
//! `cargo run --release --example threshold_sweep -- [blocks]`

use phwg::arrivals::{ArrivalSpec, HeightLaw, MarkModel, RadiusLaw, RateModel, ShannonParams};
use phwg::blocks::ZigzagSpec;
use phwg::engine::Scenario;
use phwg::geometry::Space;
use phwg::stability::{bisect_lambda_c, blocks_too_slow, estimate_lambda_c, BisectionConfig};

fn main() -> phwg::Result<()> {
    let blocks: usize = std::env::args().nth(1).map_or(2000, |a| a.parse().expect("block count"));
    let sp = Space::torus_2d(2.0)?;
    let spec = ZigzagSpec::single_cover();
    let bisection = BisectionConfig {
        horizon: 20_000.0,
        iterations: 8,
        ..BisectionConfig::default()
    };
    println!("mean_radius,lambda_c_hat,ci_low,ci_high,method");
    for mean in [0.05, 0.4, 0.6, 1.0, 1.5, 2.0, 3.0, 5.0] {
        let marks = MarkModel::new(RadiusLaw::Exponential { mean }, HeightLaw::Exponential { mean: 1.0 });
        let sc = Scenario::new(ArrivalSpec::poisson(sp, 0.2, marks), RateModel::Shannon(ShannonParams::default()));
        let (est, method) = if blocks_too_slow(&spec, &sc, 1e5) {
            (bisect_lambda_c(&sc, 0.15, 0.40, &bisection, 1)?, "bisection")
        } else {
            // Blocks at small radii hold hundreds of customers.
            let n = if mean < 0.6 { blocks / 5 } else { blocks };
            (estimate_lambda_c(&sc, &spec, n, 1)?, "blocks")
        };
        println!("{mean},{:.4},{:.4},{:.4},{method}", est.lambda_c_hat, est.ci_low, est.ci_high);
    }
    Ok(())
}
