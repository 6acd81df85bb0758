//! Block estimate of the stability threshold for one mean radius, with the
//! closed-form limits for comparison.
//!
//! `cargo run --release --example estimate_threshold -- [mean_radius] [blocks]`

use phwg::arrivals::{ArrivalSpec, HeightLaw, MarkModel, RadiusLaw, RateModel, ShannonParams};
use phwg::blocks::ZigzagSpec;
use phwg::engine::Scenario;
use phwg::geometry::Space;
use phwg::stability::{estimate_lambda_c, lambda_c_closed_form, ClosedForm};

fn main() -> phwg::Result<()> {
    let mut args = std::env::args().skip(1);
    let mean: f64 = args.next().map_or(2.0, |a| a.parse().expect("numeric mean radius"));
    let blocks: usize = args.next().map_or(5000, |a| a.parse().expect("block count"));

    let sp = Space::torus_2d(2.0)?;
    let p = ShannonParams::default();
    let marks = MarkModel::new(RadiusLaw::Exponential { mean }, HeightLaw::Exponential { mean: 1.0 });
    let sc = Scenario::new(ArrivalSpec::poisson(sp, 0.2, marks), RateModel::Shannon(p.clone()));
    let est = estimate_lambda_c(&sc, &ZigzagSpec::single_cover(), blocks, 1)?;
    println!(
        "E R = {mean}: λ_c ≈ {:.4}, 95% CI [{:.4}, {:.4}] from {} blocks (mean ν {:.2}, mean σ̂ {:.3})",
        est.lambda_c_hat, est.ci_low, est.ci_high, est.n_blocks, est.mean_nu, est.mean_sigma_hat
    );
    let exp = lambda_c_closed_form(&ClosedForm::ExpRadius {
        space: sp,
        mean_radius: mean,
        mean_sigma_hat: est.mean_sigma_hat,
    })?;
    println!("tail-probability form on the same blocks: {exp:.4}");
    let wsbd = lambda_c_closed_form(&ClosedForm::Wsbd { space: sp, shannon: p.clone(), mean_height: 1.0 })?;
    let mm1 = lambda_c_closed_form(&ClosedForm::Mm1 { space: sp, shannon: p, mean_height: 1.0 })?;
    println!("limits: E R -> 0 gives {wsbd:.4}, E R -> inf gives {mm1:.4}");
    Ok(())
}
