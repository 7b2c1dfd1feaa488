use std::cmp::Ordering;

use rand::Rng;

use super::cone::{primitive, Cone};
use super::fan::{stellar_subdivision, Fan};
use super::FanError;

fn half(v: &[i64]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

fn cross(a: &[i64], b: &[i64]) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

/// Counterclockwise order starting from the positive `x` axis.
pub fn angle_cmp(a: &[i64], b: &[i64]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

/// Primitive vectors of `Z^2` with both coordinates at most `n` in absolute
/// value, counterclockwise from `(1,0)`.
pub fn primitive_rays(n: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for a in -n..=n {
        for b in -n..=n {
            if let Some(p) = primitive(&[a, b]) {
                if p == [a, b] {
                    out.push(p);
                }
            }
        }
    }
    out.sort_by(|a, b| angle_cmp(a, b));
    out
}

/// The complete fan whose maximal cones join cyclically consecutive rays.
/// Every counterclockwise gap must be less than a half turn.
pub fn fan_from_cyclic_rays(rays: &[Vec<i64>]) -> Result<Fan, FanError> {
    if !is_complete_cycle(rays) {
        return Err(FanError::NotComplete);
    }
    let mut cones = vec![Cone::zero(2)?];
    for (i, v) in rays.iter().enumerate() {
        cones.push(Cone::new(2, vec![v.clone()])?);
        cones.push(Cone::new(2, vec![v.clone(), rays[(i + 1) % rays.len()].clone()])?);
    }
    cones.sort();
    Ok(Fan::from_sorted_unchecked(2, cones))
}

fn is_complete_cycle(rays: &[Vec<i64>]) -> bool {
    rays.len() >= 3 && (0..rays.len()).all(|i| cross(&rays[i], &rays[(i + 1) % rays.len()]) > 0)
}

/// Every complete fan in `R^2` whose rays have coordinates bounded by `n`.
/// Exponential in the number of rays: use for `n ≤ 2`.
pub fn enumerate_complete_fans(r: usize, n: i64) -> Result<Vec<Fan>, FanError> {
    let mut out = Vec::new();
    for_each_complete_ray_set(r, n, |rays| {
        out.push(fan_from_cyclic_rays(rays).expect("complete by construction"));
    })?;
    Ok(out)
}

pub fn count_complete_fans(r: usize, n: i64) -> Result<usize, FanError> {
    let mut count = 0;
    for_each_complete_ray_set(r, n, |_| count += 1)?;
    Ok(count)
}

fn for_each_complete_ray_set(r: usize, n: i64, mut visit: impl FnMut(&[Vec<i64>])) -> Result<(), FanError> {
    if r != 2 {
        return Err(FanError::UnsupportedRank(r));
    }
    if n < 1 {
        return Err(FanError::NoRays);
    }
    let all = primitive_rays(n);
    let mut chosen: Vec<usize> = Vec::new();
    // the first chosen ray is the smallest index of the subset
    fn extend(all: &[Vec<i64>], chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[Vec<i64>])) {
        let last = *chosen.last().expect("nonempty");
        let first = chosen[0];
        if chosen.len() >= 3 && cross(&all[last], &all[first]) > 0 {
            let rays: Vec<Vec<i64>> = chosen.iter().map(|&i| all[i].clone()).collect();
            visit(&rays);
        }
        for next in last + 1..all.len() {
            if cross(&all[last], &all[next]) <= 0 {
                break;
            }
            chosen.push(next);
            extend(all, chosen, visit);
            chosen.pop();
        }
    }
    for first in 0..all.len() {
        chosen.push(first);
        extend(&all, &mut chosen, &mut visit);
        chosen.pop();
    }
    Ok(())
}

/// The complete fan on every primitive ray of height at most `n`; it refines
/// every complete fan of height at most `n`.
pub fn finest_complete_fan(n: i64) -> Result<Fan, FanError> {
    if n < 1 {
        return Err(FanError::NoRays);
    }
    fan_from_cyclic_rays(&primitive_rays(n))
}

/// A complete fan on a random subset of the rays of height at most `n`
/// that uses at least one ray of height exactly `n`.
pub fn random_complete_fan<R: Rng + ?Sized>(n: i64, rng: &mut R) -> Result<Fan, FanError> {
    if n < 1 {
        return Err(FanError::NoRays);
    }
    let all = primitive_rays(n);
    loop {
        let rays: Vec<Vec<i64>> = all.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let tall = rays.iter().any(|v| v.iter().any(|x| x.abs() == n));
        if tall && is_complete_cycle(&rays) {
            return fan_from_cyclic_rays(&rays);
        }
    }
}

/// Subdivides every maximal cone at the primitive vector along the sum of
/// its rays.
pub fn barycentric_subdivision(f: &Fan) -> Result<Fan, FanError> {
    let centres: Vec<Vec<i64>> = f
        .maximal_cones()
        .iter()
        .filter(|c| c.dim() >= 2)
        .map(|c| {
            let s: Vec<i64> = (0..f.ambient_rank()).map(|j| c.rays().iter().map(|v| v[j]).sum()).collect();
            primitive(&s).expect("strictly convex cone has nonzero ray sum")
        })
        .collect();
    let mut g = f.clone();
    for v in centres {
        g = stellar_subdivision(&g, &v)?;
    }
    Ok(g)
}

/// `f` followed by `stages` barycentric subdivisions.
pub fn barycentric_tower(f: &Fan, stages: usize) -> Result<Vec<Fan>, FanError> {
    let mut tower = vec![f.clone()];
    for _ in 0..stages {
        let next = barycentric_subdivision(tower.last().expect("nonempty"))?;
        tower.push(next);
    }
    Ok(tower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan_geometry::{height, orbit_map, refine_check, validate_fan};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn quadrants() -> Fan {
        fan_from_cyclic_rays(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap()
    }

    /// Independent count: subsets of the rays, sorted by the angle computed
    /// in floating point, whose cyclic gaps are all below a half turn.
    fn brute_count(n: i64) -> usize {
        let rays = primitive_rays(n);
        let angles: Vec<f64> = rays.iter().map(|v| (v[1] as f64).atan2(v[0] as f64)).collect();
        let k = rays.len();
        let mut count = 0;
        for mask in 1u64..(1 << k) {
            let mut sel: Vec<f64> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| angles[i]).collect();
            if sel.len() < 3 {
                continue;
            }
            sel.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut ok = true;
            for i in 0..sel.len() {
                let mut gap = sel[(i + 1) % sel.len()] - sel[i];
                if gap <= 0.0 {
                    gap += std::f64::consts::TAU;
                }
                if gap >= std::f64::consts::PI - 1e-9 {
                    ok = false;
                }
            }
            count += ok as usize;
        }
        count
    }

    #[test]
    fn enumeration_counts_match_oracle() {
        assert_eq!(primitive_rays(1).len(), 8);
        assert_eq!(primitive_rays(2).len(), 16);
        assert_eq!(primitive_rays(3).len(), 32);
        assert_eq!(count_complete_fans(2, 1).unwrap(), brute_count(1));
        assert_eq!(count_complete_fans(2, 1).unwrap(), 131);
        assert_eq!(count_complete_fans(2, 2).unwrap(), brute_count(2));
    }

    #[test]
    fn enumerated_fans_are_valid() {
        let fans = enumerate_complete_fans(2, 1).unwrap();
        assert!(fans.contains(&quadrants()));
        for f in &fans {
            assert!(f.is_complete());
            assert!(height(f).unwrap() <= 1);
            assert_eq!(&validate_fan(2, f.cones().to_vec()).unwrap(), f);
        }
        assert!(enumerate_complete_fans(2, 2).unwrap().contains(&quadrants()));
        assert!(matches!(enumerate_complete_fans(3, 1), Err(FanError::UnsupportedRank(3))));
    }

    #[test]
    fn finest_fan_refines_everything_of_its_height() {
        let finest = finest_complete_fan(1).unwrap();
        for f in enumerate_complete_fans(2, 1).unwrap() {
            assert!(refine_check(&finest, &f));
        }
    }

    #[test]
    fn random_fans() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let f = random_complete_fan(3, &mut rng).unwrap();
            assert!(f.is_complete());
            assert_eq!(height(&f).unwrap(), 3);
        }
    }

    #[test]
    fn barycentric_tower_splits_every_closed_point() {
        let tower = barycentric_tower(&quadrants(), 3).unwrap();
        assert!(tower[1].rays().contains(&vec![1, 1]) && tower[1].rays().contains(&vec![-1, -1]));
        for k in 0..3 {
            let (coarse, fine) = (&tower[k], &tower[k + 1]);
            assert!(refine_check(fine, coarse));
            assert!(height(fine).unwrap() >= height(coarse).unwrap());
            for p in coarse.closed_points() {
                let fiber = fine.closed_points().into_iter().filter(|q| orbit_map(fine, coarse, q).unwrap() == p).count();
                assert_eq!(fiber, 2);
            }
        }
    }
}
