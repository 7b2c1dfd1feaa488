//! The two distances on orders of Z^2: d from fans of bounded height and d̃
//! from balls of lattice points, on a few pairs and on a random sample.
//!
//!     cargo run --release --example order_metrics -- 40 7

use toric_core::zr_space::{distance_dtilde, metric_comparison_experiment, HeightLadder, Preorder};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let samples: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(20);
    let seed: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(0);

    let ladder = HeightLadder::new(6)?;
    let lex = Preorder::from_rows(&[[1, 0], [0, 1]])?;
    for n in [1, 2, 3, 5, 8] {
        let w = Preorder::from_rows(&[[n, 1], [0, 1]])?;
        println!("d(lex, {w}) = {}, d̃ = {}", ladder.distance(&lex, &w)?, distance_dtilde(&lex, &w, 40)?);
    }

    let report = metric_comparison_experiment(samples, seed, 3, 40)?;
    println!("{:<28} {:>6}  d̃ range", "d", "pairs");
    for e in &report.envelopes {
        println!("{:<28} {:>6}  {} .. {}", e.d.to_string(), e.count, e.dtilde_min, e.dtilde_max);
    }
    Ok(())
}
