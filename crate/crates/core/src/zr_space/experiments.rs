use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::fan_geometry::{orbit_map, refine_check, Cone, Fan};

use super::metrics::{distance_dtilde, Distance, HeightLadder};
use super::preorder::Preorder;
use super::ZrError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRow {
    pub stage: usize,
    pub closed_point: Cone,
    /// Closed points of stage `stage + 1` mapping to `closed_point`.
    pub fiber: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub rows: Vec<FiberRow>,
    /// Every closed point has at least two closed preimages.
    pub all_split: bool,
}

/// Sizes of the fibres of the orbit maps on closed points along a tower.
pub fn cantor_fiber_experiment(tower: &[Fan]) -> Result<FiberReport, ZrError> {
    let mut rows = Vec::new();
    for (k, pair) in tower.windows(2).enumerate() {
        let (coarse, fine) = (&pair[0], &pair[1]);
        if !refine_check(fine, coarse) {
            return Err(ZrError::NotARefinement(k + 1));
        }
        let images: Vec<&Cone> = fine.closed_points().into_iter().map(|q| orbit_map(fine, coarse, q)).collect::<Result<_, _>>()?;
        for p in coarse.closed_points() {
            let fiber = images.iter().filter(|&&c| c == p).count();
            rows.push(FiberRow { stage: k, closed_point: p.clone(), fiber });
        }
    }
    let all_split = rows.iter().all(|r| r.fiber >= 2);
    Ok(FiberReport { rows, all_split })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricSample {
    pub w1: Preorder,
    pub w2: Preorder,
    pub d: Distance,
    pub dtilde: Distance,
}

/// Range of `d̃` observed for one value of `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    pub d: Distance,
    pub count: usize,
    pub dtilde_min: Distance,
    pub dtilde_max: Distance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricReport {
    pub seed: u64,
    pub height_cap: u64,
    pub radius_cap: u64,
    pub samples: Vec<MetricSample>,
    pub envelopes: Vec<Envelope>,
}

/// Orders the distance values from largest (`1`) to smallest (`0`).
fn closeness(d: &Distance) -> (u8, u64) {
    match d {
        Distance::Reciprocal(n) => (0, *n),
        Distance::Indistinguishable { .. } => (1, 0),
        Distance::Zero => (2, 0),
    }
}

/// A random rank-2 order, either unrelated to `base` or a perturbation of it
/// whose first row is a large multiple of `base`'s plus a small vector.
fn sample_partner<R: Rng>(base: &Preorder, rng: &mut R) -> Preorder {
    if rng.gen_bool(0.5) {
        return Preorder::random_order(2, 4, rng);
    }
    loop {
        let k = rng.gen_range(1..=8);
        let first: Vec<i64> = base.rows()[0].iter().map(|x| k * x + rng.gen_range(-1..=1)).collect();
        let second: Vec<i64> = (0..2).map(|_| rng.gen_range(-3..=3)).collect();
        let w = Preorder::new(2, vec![first, second]).expect("rank two rows");
        if w.is_order() {
            return w;
        }
    }
}

/// Tabulates `(d, d̃)` over random pairs of orders of `Z^2`.
pub fn metric_comparison_experiment(samples: usize, seed: u64, height_cap: u64, radius_cap: u64) -> Result<MetricReport, ZrError> {
    if height_cap == 0 || radius_cap == 0 {
        return Err(ZrError::ZeroCap);
    }
    let ladder = HeightLadder::new(height_cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let w1 = Preorder::random_order(2, 4, &mut rng);
        let w2 = sample_partner(&w1, &mut rng);
        let d = ladder.distance(&w1, &w2)?;
        let dtilde = distance_dtilde(&w1, &w2, radius_cap)?;
        out.push(MetricSample { w1, w2, d, dtilde });
    }
    let mut groups: BTreeMap<(u8, u64), Vec<&MetricSample>> = BTreeMap::new();
    for s in &out {
        groups.entry(closeness(&s.d)).or_default().push(s);
    }
    let envelopes = groups
        .values()
        .map(|g| {
            let by = |s: &&&MetricSample| closeness(&s.dtilde);
            Envelope {
                d: g[0].d,
                count: g.len(),
                dtilde_min: g.iter().max_by_key(by).expect("nonempty").dtilde,
                dtilde_max: g.iter().min_by_key(by).expect("nonempty").dtilde,
            }
        })
        .collect();
    Ok(MetricReport { seed, height_cap, radius_cap, samples: out, envelopes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan_geometry::{barycentric_tower, fan_from_cyclic_rays, stellar_subdivision};

    fn quadrants() -> Fan {
        fan_from_cyclic_rays(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap()
    }

    #[test]
    fn fibers_of_the_diagonal_subdivision() {
        let f0 = quadrants();
        let mut f1 = f0.clone();
        for v in [[1, 1], [1, -1], [-1, 1], [-1, -1]] {
            f1 = stellar_subdivision(&f1, &v).unwrap();
        }
        let tower = barycentric_tower(&f1, 1).unwrap();
        let report = cantor_fiber_experiment(&[f0, f1, tower[1].clone()]).unwrap();
        assert_eq!(report.rows.len(), 4 + 8);
        assert!(report.rows.iter().all(|r| r.fiber == 2));
        assert!(report.all_split);
    }

    #[test]
    fn non_splitting_stage_is_flagged() {
        let f0 = quadrants();
        let f1 = stellar_subdivision(&f0, &[1, 1]).unwrap();
        let report = cantor_fiber_experiment(&[f0.clone(), f1]).unwrap();
        assert!(!report.all_split);
        assert_eq!(report.rows.iter().filter(|r| r.fiber == 1).count(), 3);
        assert!(matches!(cantor_fiber_experiment(&[stellar_subdivision(&f0, &[1, 1]).unwrap(), f0]), Err(ZrError::NotARefinement(1))));
    }

    #[test]
    fn metric_report_is_deterministic() {
        let a = metric_comparison_experiment(8, 3, 2, 10).unwrap();
        let b = metric_comparison_experiment(8, 3, 2, 10).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.samples.len(), 8);
        assert_eq!(a.envelopes.iter().map(|e| e.count).sum::<usize>(), 8);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<MetricReport>(&json).unwrap(), a);
    }
}
