//! Value semigroup of the branch x = t^{p³}, y = t^{p³+p²} + t^{p³+p²+p+1}
//! over F_p, its conductor, and the characteristic exponents a plane branch
//! with the same semigroup would have.
//!
//!     cargo run --release --example campillo_semigroup -- 3

use toric_core::branch_semigroup::{
    campillo_parametrization, char_exponents_from_semigroup, curve_top_exponent, default_truncation, semigroup_from_char_exponents,
    value_semigroup, verify_curve_equation,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(2);
    let truncation = default_truncation(p.pow(3), p.pow(3) + p * p);
    let (x, y) = campillo_parametrization(p, truncation)?;
    let g = value_semigroup(&x, &y)?;
    println!("p = {p}: semigroup {g}");
    println!("  conductor {}, {} gaps", g.conductor(), g.gap_count());

    let beta = char_exponents_from_semigroup(&g)?;
    println!("  Zariski exponents {:?}", beta.beta());
    assert_eq!(semigroup_from_char_exponents(&beta)?, g);

    let top = curve_top_exponent(p);
    let ok = verify_curve_equation(p, 2 * top)?;
    println!("  eliminated plane equation vanishes on (x, y) mod t^{}: {ok}", 2 * top);
    Ok(())
}
