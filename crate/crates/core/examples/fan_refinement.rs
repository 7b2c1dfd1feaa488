//! Fans in the plane: dual cones and Hilbert bases, stellar subdivision,
//! orbit maps, and the count of complete fans of small height.
//!
//!     cargo run --release --example fan_refinement

use toric_core::fan_geometry::{
    count_complete_fans, dual_cone, fan_from_cyclic_rays, height, hilbert_basis, orbit_map, refine_check, stellar_subdivision, Cone,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for rays in [[[1, 0], [0, 1]], [[1, 0], [1, 2]], [[1, 0], [1, 5]], [[1, 0], [-1, 3]]] {
        let c = Cone::from_rays(&rays)?;
        println!("{c}: dual {}, Hilbert basis {:?}", dual_cone(&c), hilbert_basis(&c)?.elements);
    }

    let quadrants = fan_from_cyclic_rays(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]])?;
    let fine = stellar_subdivision(&stellar_subdivision(&quadrants, &[1, 1])?, &[2, 1])?;
    println!("height {} -> {}, refines: {}", height(&quadrants)?, height(&fine)?, refine_check(&fine, &quadrants));
    for q in fine.closed_points() {
        println!("  {q} -> {}", orbit_map(&fine, &quadrants, q)?);
    }

    for n in 1..=2 {
        println!("complete fans with rays of height <= {n}: {}", count_complete_fans(2, n)?);
    }
    Ok(())
}
