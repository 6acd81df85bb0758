//! Loads a TOML scenario and runs the three command-line tasks on it.
//!
//! `cargo run --release --example config_file -- configs/exp_radius.toml`

use std::path::PathBuf;

use phwg::cli::{estimate, lindley, simulate, Config};

fn main() -> phwg::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/exp_radius.toml"));
    let mut cfg = Config::load(&path)?;
    cfg.run.blocks = cfg.run.blocks.min(2000);

    let mut sink = std::io::sink();
    let summary = simulate(&cfg, &mut sink)?;
    println!("simulate: {} departures, mean wait {:.4}", summary.departures, summary.mean_wait);

    let est = estimate(&cfg, None, &mut sink)?;
    println!("estimate: λ_c ≈ {:.4} [{:.4}, {:.4}]", est[0].lambda_c_hat, est[0].ci_low, est[0].ci_high);

    let verdict = lindley(&cfg, &mut sink)?;
    println!("lindley at λ = {}: {verdict:?}", cfg.arrivals.intensity);
    Ok(())
}
