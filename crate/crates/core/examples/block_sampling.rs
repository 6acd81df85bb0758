//! Samples single-cover blocks for exponential radii and compares the mean
//! block size with the geometric law.
//!
//! `cargo run --example block_sampling -- [mean_radius]`

use phwg::arrivals::{HeightLaw, MarkModel, RadiusLaw, RateModel, ShannonParams};
use phwg::blocks::{sigma_hat, BlockSampler, Times, ZigzagSpec};
use phwg::geometry::Space;

fn main() -> phwg::Result<()> {
    let mean = std::env::args().nth(1).map_or(2.0, |a| a.parse().expect("numeric mean radius"));
    let sp = Space::torus_2d(2.0)?;
    let marks = MarkModel::new(RadiusLaw::Exponential { mean }, HeightLaw::Exponential { mean: 1.0 });
    let spec = ZigzagSpec::single_cover();
    let p = spec.success_probability(&marks, &sp)?;
    let model = RateModel::Shannon(ShannonParams::default());

    let sampler = BlockSampler::seeded(&marks, sp, spec, &Times::None, 7, 0)?;
    let (mut nu, mut sig, mut n) = (0.0, 0.0, 0.0);
    for y in sampler.skip(1).take(5000) {
        nu += y.nu() as f64;
        sig += sigma_hat(&y, &model, sp)?;
        n += 1.0;
    }
    println!("cover probability {p:.5}, expected block size {:.3}", 1.0 / p);
    println!("mean block size {:.3}, mean saturated time {:.3}", nu / n, sig / n);
    println!("λ_c estimate {:.4}", nu / (sp.measure() * sig));
    Ok(())
}
