use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::fan_geometry::finest_complete_fan;

use super::dominate::DominationTable;
use super::preorder::Preorder;
use super::ZrError;

/// A distance `0`, `1/n`, or "no difference seen up to the cap".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Zero,
    Reciprocal(u64),
    Indistinguishable { cap: u64 },
}

impl Distance {
    /// The separating integer `n` of `1/n`; `None` for `Zero` and for pairs
    /// not separated within the cap, which both behave as `+∞`.
    pub fn separation(&self) -> Option<u64> {
        match self {
            Distance::Reciprocal(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Zero => write!(f, "0"),
            Distance::Reciprocal(1) => write!(f, "1"),
            Distance::Reciprocal(n) => write!(f, "1/{n}"),
            Distance::Indistinguishable { cap } => write!(f, "indistinguishable up to {cap}"),
        }
    }
}

fn norm2(v: &[i64]) -> i128 {
    v.iter().map(|&x| x as i128 * x as i128).sum()
}

fn isqrt_ceil(x: i128) -> i128 {
    let mut s = (x as f64).sqrt() as i128;
    while s * s > x {
        s -= 1;
    }
    while s * s < x {
        s += 1;
    }
    s
}

/// Least integer `D` such that `δ = m − n` with `m, n` in the closed ball
/// `B(0, D)`.
pub fn difference_radius(delta: &[i64]) -> u64 {
    let r = delta.len();
    // any minimiser m satisfies |m − δ/2|² ≤ |δ|·√r/2 + r/4
    let len = (norm2(delta) as f64).sqrt();
    let window = ((len * (r as f64).sqrt() / 2.0 + r as f64 / 4.0).sqrt()).ceil() as i64 + 1;
    let best = delta
        .iter()
        .map(|&d| (d.div_euclid(2) - window)..=(d.div_euclid(2) + window + 1))
        .multi_cartesian_product()
        .map(|m| {
            let n: Vec<i64> = m.iter().zip(delta).map(|(a, d)| a - d).collect();
            norm2(&m).max(norm2(&n))
        })
        .min()
        .expect("nonempty window");
    isqrt_ceil(best) as u64
}

/// `d̃(w1, w2) = 1/D`, `D` the largest radius with `w1`, `w2` inducing the
/// same order on `Z^r ∩ B(0, D)`, at least 1 by convention.
///
/// Comparisons on the ball agree exactly when the signs of all differences
/// `δ` with [`difference_radius`]`(δ) ≤ D` agree, so the scan runs over
/// differences of norm at most `2·cap`.
pub fn distance_dtilde(w1: &Preorder, w2: &Preorder, cap: u64) -> Result<Distance, ZrError> {
    if w1.rank() != w2.rank() {
        return Err(ZrError::DimensionMismatch { expected: w1.rank(), found: w2.rank() });
    }
    if w1.same_as(w2) {
        return Ok(Distance::Zero);
    }
    let r = w1.rank();
    let reach = 2 * cap as i64;
    let mut first: Option<u64> = None;
    for delta in (0..r).map(|_| -reach..=reach).multi_cartesian_product() {
        if norm2(&delta) > (reach as i128).pow(2) || w1.sign(&delta) == w2.sign(&delta) {
            continue;
        }
        let rho = difference_radius(&delta);
        if rho <= cap && first.map_or(true, |f| rho < f) {
            first = Some(rho);
        }
    }
    Ok(match first {
        Some(rho) => Distance::Reciprocal((rho - 1).max(1)),
        None => Distance::Indistinguishable { cap },
    })
}

/// Finest complete fans of heights `1..=max_height` with their semigroup
/// generators, shared by many evaluations of `d`.
#[derive(Debug, Clone)]
pub struct HeightLadder {
    tables: Vec<DominationTable>,
}

impl HeightLadder {
    pub fn new(max_height: u64) -> Result<Self, ZrError> {
        let tables = (1..=max_height as i64)
            .map(|h| DominationTable::new(&finest_complete_fan(h)?))
            .collect::<Result<_, _>>()?;
        Ok(HeightLadder { tables })
    }

    pub fn max_height(&self) -> u64 {
        self.tables.len() as u64
    }

    /// `d(w1, w2) = 1/h` for the least height `h` at which some complete fan
    /// of height at most `h` gives the two preorders different dominated cones.
    pub fn distance(&self, w1: &Preorder, w2: &Preorder) -> Result<Distance, ZrError> {
        for w in [w1, w2] {
            if w.rank() != 2 {
                return Err(ZrError::UnsupportedRank(w.rank()));
            }
        }
        if w1.same_as(w2) {
            return Ok(Distance::Zero);
        }
        for (h, table) in self.tables.iter().enumerate() {
            if table.dominated(w1)?.cone != table.dominated(w2)?.cone {
                return Ok(Distance::Reciprocal(h as u64 + 1));
            }
        }
        Ok(Distance::Indistinguishable { cap: self.max_height() })
    }
}

/// `d` on `Z^2`. The finest fan of height `h` refines every complete fan of
/// height at most `h`, and dominated cones of a refinement lie in those of the
/// coarser fan, so checking the finest fan at each height is enough.
pub fn distance_d(w1: &Preorder, w2: &Preorder, max_height: u64) -> Result<Distance, ZrError> {
    if w1.rank() != 2 {
        return Err(ZrError::UnsupportedRank(w1.rank()));
    }
    HeightLadder::new(max_height)?.distance(w1, w2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan_geometry::enumerate_complete_fans;
    use crate::zr_space::dominated_cone;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(rows: &[[i64; 2]]) -> Preorder {
        Preorder::from_rows(rows).unwrap()
    }

    /// Agreement radius straight from the definition: all pairs of lattice
    /// points in growing balls.
    fn brute_radius(w1: &Preorder, w2: &Preorder, cap: i64) -> Option<i64> {
        for d in 1..=cap {
            let pts: Vec<[i64; 2]> =
                (-d..=d).cartesian_product(-d..=d).map(|(a, b)| [a, b]).filter(|p| p[0] * p[0] + p[1] * p[1] <= d * d).collect();
            for (m, n) in pts.iter().cartesian_product(&pts) {
                if w1.compare(m, n).unwrap() != w2.compare(m, n).unwrap() {
                    return Some(d - 1);
                }
            }
        }
        None
    }

    #[test]
    fn difference_radii() {
        assert_eq!(difference_radius(&[1, 0]), 1);
        assert_eq!(difference_radius(&[1, -1]), 1);
        assert_eq!(difference_radius(&[2, 0]), 1);
        assert_eq!(difference_radius(&[3, 0]), 2);
        assert_eq!(difference_radius(&[2, 2]), 2);
        for (a, b) in (-9i64..=9).cartesian_product(-9i64..=9) {
            if (a, b) == (0, 0) {
                continue;
            }
            let mut best = i64::MAX;
            for (x, y) in (-12i64..=12).cartesian_product(-12i64..=12) {
                let r2 = (x * x + y * y).max((x - a).pow(2) + (y - b).pow(2));
                best = best.min(r2);
            }
            let want = (1..).find(|d| d * d >= best).unwrap();
            assert_eq!(difference_radius(&[a, b]), want as u64, "{a},{b}");
        }
    }

    #[test]
    fn dtilde_examples() {
        let lex = w(&[[1, 0], [0, 1]]);
        assert_eq!(distance_dtilde(&lex, &lex, 40).unwrap(), Distance::Zero);
        assert_eq!(distance_dtilde(&lex, &w(&[[3, 0], [7, 2]]), 40).unwrap(), Distance::Zero);
        assert_eq!(distance_dtilde(&lex, &w(&[[0, 1], [1, 0]]), 40).unwrap(), Distance::Reciprocal(1));
        assert_eq!(distance_dtilde(&lex, &w(&[[-1, 0], [0, 1]]), 40).unwrap(), Distance::Reciprocal(1));
        let mut last = 0;
        for n in [5, 10, 20] {
            let near = w(&[[n, 1], [0, 1]]);
            let d = distance_dtilde(&lex, &near, 40).unwrap().separation().unwrap();
            assert!(d > last, "radius grows with N");
            last = d;
        }
    }

    #[test]
    fn dtilde_matches_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..15 {
            let a = Preorder::random_order(2, 4, &mut rng);
            let b = Preorder::random_order(2, 4, &mut rng);
            let brute = brute_radius(&a, &b, 8);
            match distance_dtilde(&a, &b, 8).unwrap() {
                Distance::Reciprocal(d) => assert_eq!(d as i64, brute.unwrap().max(1)),
                Distance::Zero => assert!(brute.is_none()),
                Distance::Indistinguishable { .. } => assert!(brute.is_none()),
            }
        }
        let near = w(&[[6, 1], [0, 1]]);
        let lex = w(&[[1, 0], [0, 1]]);
        let d = distance_dtilde(&lex, &near, 10).unwrap().separation().unwrap();
        assert_eq!(d as i64, brute_radius(&lex, &near, 10).unwrap().max(1));
    }

    #[test]
    fn d_examples() {
        let lex = w(&[[1, 0], [0, 1]]);
        assert_eq!(distance_d(&lex, &lex, 3).unwrap(), Distance::Zero);
        assert_eq!(distance_d(&lex, &w(&[[-1, 0], [0, 1]]), 3).unwrap(), Distance::Reciprocal(1));
        assert_eq!(distance_d(&lex, &w(&[[0, 1], [1, 0]]), 3).unwrap(), Distance::Reciprocal(1));
        // (5,1) leaves the cone between (1,0) and (2,1) only at height 5
        let near = w(&[[5, 1], [0, 1]]);
        assert_eq!(distance_d(&lex, &near, 3).unwrap(), Distance::Indistinguishable { cap: 3 });
        assert_eq!(distance_d(&lex, &near, 5).unwrap(), Distance::Reciprocal(5));
        let p3 = Preorder::new(3, vec![vec![1, 0, 0]]).unwrap();
        assert!(matches!(distance_d(&p3, &p3, 2), Err(ZrError::UnsupportedRank(3))));
    }

    #[test]
    fn finest_fan_agrees_with_full_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let fans = enumerate_complete_fans(2, 1).unwrap();
        let ladder = HeightLadder::new(1).unwrap();
        for _ in 0..20 {
            let a = Preorder::random_order(2, 3, &mut rng);
            let b = Preorder::random_order(2, 3, &mut rng);
            let separated = fans.iter().any(|f| dominated_cone(&a, f).unwrap().cone != dominated_cone(&b, f).unwrap().cone);
            assert_eq!(separated, ladder.distance(&a, &b).unwrap() == Distance::Reciprocal(1), "{a} {b}");
        }
    }

    #[test]
    fn ultrametric_inequalities() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let ladder = HeightLadder::new(3).unwrap();
        let inf = |d: Distance| d.separation().unwrap_or(u64::MAX);
        for _ in 0..15 {
            let t: Vec<Preorder> = (0..3).map(|_| Preorder::random_order(2, 3, &mut rng)).collect();
            let d = |i: usize, j: usize| inf(ladder.distance(&t[i], &t[j]).unwrap());
            assert!(d(0, 2) >= d(0, 1).min(d(1, 2)));
            let dt = |i: usize, j: usize| inf(distance_dtilde(&t[i], &t[j], 12).unwrap());
            assert!(dt(0, 2) >= dt(0, 1).min(dt(1, 2)));
        }
    }
}
