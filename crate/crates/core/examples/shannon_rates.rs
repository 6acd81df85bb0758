//! Shannon rates of a few hand-placed configurations and of random ones,
//! against the sum-rate lower bound.
//!
//! `cargo run --example shannon_rates`

use phwg::arrivals::{replication_rng, shannon_rate, sum_rate_lower_bound, ShannonParams};
use phwg::geometry::{Point, Space};

fn main() -> phwg::Result<()> {
    let sp = Space::torus_2d(2.0)?;
    let p = ShannonParams::default();
    println!("isolated customer: {:.5}", p.max_rate());

    let pair = [(Point::Torus([0.0, 0.0]), 1), (Point::Torus([0.5, 0.0]), 2)];
    println!("two customers 0.5 apart: {:.6} each", shannon_rate(1, &pair, &p, &sp)?);

    let mut rng = replication_rng(1, 0);
    for n in [2, 5, 10, 20] {
        let cfg: Vec<_> = (0..n).map(|i| (sp.sample_point(&mut rng), i as u64 + 1)).collect();
        let total: f64 = cfg.iter().map(|&(_, id)| shannon_rate(id, &cfg, &p, &sp)).sum::<phwg::Result<f64>>()?;
        println!("n = {n:2}: sum rate {total:.4}, lower bound {:.4}", sum_rate_lower_bound(n, &p)?);
    }
    Ok(())
}
