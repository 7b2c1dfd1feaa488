//! Which cone a preorder of Z^2 dominates, and how the choice moves along a
//! tower of barycentric subdivisions.
//!
//!     cargo run --example preorder_domination

use toric_core::fan_geometry::{barycentric_tower, fan_from_cyclic_rays};
use toric_core::zr_space::{cantor_fiber_experiment, dominated_cone, thread, Preorder};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let quadrants = fan_from_cyclic_rays(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]])?;
    let orders = [
        Preorder::from_rows(&[[1, 0], [0, 1]])?,
        Preorder::from_rows(&[[0, 1], [-1, 0]])?,
        Preorder::from_rows(&[[3, -5], [1, 0]])?,
        Preorder::new(2, vec![vec![1, 0]])?,
    ];
    for w in &orders {
        let d = dominated_cone(w, &quadrants)?;
        println!("{w}: {} (equivalences along {})", d.cone, d.equivalence_face);
    }

    let tower = barycentric_tower(&quadrants, 4)?;
    let t = thread(&orders[2], &tower)?;
    for (k, c) in t.cones().iter().enumerate() {
        println!("  stage {k}: {c}");
    }
    let fibers = cantor_fiber_experiment(&tower)?;
    println!("every closed point splits at the next stage: {}", fibers.all_split);
    Ok(())
}
