//! Saturation of the lattice of the three-variable presentation: the
//! lattice ideal is not prime and the torsion witness says why.
//!
//!     cargo run --example lattice_saturation -- 5

use toric_core::binomial_ideal::{primality_report, BinomialSystem};
use toric_core::exact_linalg::{IntVector, Lattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: i64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(2);
    let l = Lattice::from_i64_rows(3, &[[-(p + 1), p, 0], [-p * p * (p + 1), -p, p * p]])?;
    println!("L = {:?}", l.basis().iter().map(|v| v.to_string()).collect::<Vec<_>>());
    println!("elementary divisors {:?}", l.elementary_divisors().iter().map(|d| d.to_string()).collect::<Vec<_>>());
    for (v, k) in l.torsion_witnesses() {
        let kv = IntVector::new(v.entries().iter().map(|x| x * &k).collect())?;
        println!("witness {v}: in L {}, {k}·v in L {}", l.contains(&v)?, l.contains(&kv)?);
    }

    let system = BinomialSystem::campillo_plane_pair(p as u64)?;
    let report = primality_report(&system)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
