//! Builds the snake cover chain for radius-1 exclusion balls on `[-2, 2)^2`
//! and checks the chain conditions.
//!
//! `cargo run --example cover_chain`

use phwg::arrivals::{HeightLaw, MarkModel, RadiusLaw};
use phwg::geometry::{build_cover_chain, validate_cover_chain, Space};

fn main() -> phwg::Result<()> {
    let sp = Space::torus_2d(2.0)?;
    let chain = build_cover_chain(&sp, 1.0)?;
    let report = validate_cover_chain(&chain, &sp, None);
    println!("k = {}, conditions hold: {}", chain.k(), report.passed());

    // Fixed radius 1.2 leaves a little slack around each chain ball.
    let marks = MarkModel::new(RadiusLaw::Fixed(1.2), HeightLaw::Exponential { mean: 1.0 });
    let chain = chain.with_cover_probabilities(&marks, &sp)?;
    let probs = chain.cover_probabilities.clone().unwrap_or_default();
    println!("per-ball cover probability {:.4}", probs[0]);
    println!("zigzag probability {:.3e}", chain.zigzag_probability().unwrap_or(0.0));
    Ok(())
}
