//! Lindley chain of block openers below and above the estimated threshold,
//! with the drift classification.
//!
//! `cargo run --release --example lindley_stability`

use phwg::arrivals::{ArrivalSpec, HeightLaw, MarkModel, RadiusLaw, RateModel, ShannonParams};
use phwg::blocks::ZigzagSpec;
use phwg::engine::Scenario;
use phwg::geometry::Space;
use phwg::stability::{classify_series, estimate_lambda_c, lindley_trajectory};

fn main() -> phwg::Result<()> {
    let sp = Space::torus_2d(2.0)?;
    let marks = MarkModel::new(RadiusLaw::Exponential { mean: 2.0 }, HeightLaw::Exponential { mean: 1.0 });
    let sc = Scenario::new(ArrivalSpec::poisson(sp, 0.2, marks), RateModel::Shannon(ShannonParams::default()));
    let spec = ZigzagSpec::single_cover();
    let lambda_c = estimate_lambda_c(&sc, &spec, 10_000, 1)?.lambda_c_hat;
    println!("λ_c ≈ {lambda_c:.4}");
    for factor in [0.5, 0.9, 1.1, 2.0] {
        let run = lindley_trajectory(&sc, &spec, factor * lambda_c, 5000, 0.0, 2)?;
        let (verdict, drift) = classify_series(&run.w, 1.0, run.w.len())?;
        println!(
            "{factor:.1} λ_c: W_end = {:8.2}, slope {:+.4} ± {:.4}, returns to [0, 1] {:.2}: {verdict:?}",
            run.w.last().copied().unwrap_or(0.0),
            drift.slope,
            drift.slope_se,
            drift.return_frequency
        );
    }
    Ok(())
}
