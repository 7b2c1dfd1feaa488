//! Minors of the relation matrix of the monomial curve that stay nonzero
//! mod p, the projection they select, and two randomized jacobian checks.
//!
//!     cargo run --release --example tame_projection -- 3

use toric_core::binomial_ideal::BinomialSystem;
use toric_core::toric_jacobian::{
    find_tame_projections, gamma_from_weights, jacobian, minor_congruence_check, minor_nonvanishing_on_torus, RelationMatrix,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(2);
    let system = BinomialSystem::campillo(p, false)?;
    let rel = RelationMatrix::of_system(&system)?;
    let gamma = gamma_from_weights(system.weights());
    let found = find_tame_projections(&rel, &gamma, p)?;
    for t in &found {
        let kept: Vec<&str> = t.kept_variables.iter().map(|&i| system.variables()[i].as_str()).collect();
        println!("keep {kept:?}: minor {} (index {}, prime to {p}: {})", t.minor_value, t.index, t.coprime_to(p));
    }
    let t = &found[0];

    let jac = jacobian(&system)?;
    for r in 0..jac.nrows() {
        let row: Vec<String> = (0..jac.ncols()).map(|c| jac.format_entry(r, c)).collect();
        println!("  [{}]", row.join(", "));
    }

    let c = minor_congruence_check(&system, &t.differentiated, &t.rows, 20, 1)?;
    println!("congruence on the monomial curve: {} ({} points)", c.holds, c.trials);

    let deformed = BinomialSystem::campillo(p, true)?;
    let n = minor_nonvanishing_on_torus(&deformed, &t.differentiated, &t.rows, 20, 1)?;
    println!("deformed minor nonzero at all {} torus points: {}", n.trials, n.all_nonzero);
    Ok(())
}
