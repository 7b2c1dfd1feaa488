use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::fan_geometry::{refine_check, semigroup_generators, Cone, Fan};

use super::preorder::Preorder;
use super::ZrError;

fn pair(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// `0 ⪯_w σ̌ ∩ M`, tested on a generating set of the semigroup.
pub fn in_u_sigma(w: &Preorder, c: &Cone) -> Result<bool, ZrError> {
    if c.ambient_rank() != w.rank() {
        return Err(ZrError::DimensionMismatch { expected: w.rank(), found: c.ambient_rank() });
    }
    Ok(semigroup_generators(c)?.iter().all(|h| w.sign(h) != Ordering::Less))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationResult {
    pub cone: Cone,
    /// `σ^⊥`, the face of `σ̌` whose lattice points are `≈_w 0`.
    pub equivalence_face: Cone,
}

/// A fan together with generators of `σ̌ ∩ M` for each of its cones, so that
/// many preorders can be tested against it.
#[derive(Debug, Clone)]
pub struct DominationTable {
    fan: Fan,
    generators: Vec<Vec<Vec<i64>>>,
}

impl DominationTable {
    pub fn new(fan: &Fan) -> Result<Self, ZrError> {
        let generators = fan.cones().iter().map(semigroup_generators).collect::<Result<_, _>>()?;
        Ok(DominationTable { fan: fan.clone(), generators })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// Indices of the cones `σ` with `0 ⪯_w σ̌ ∩ M` and
    /// `σ^⊥ ∩ M = {m ∈ σ̌ ∩ M : m ≈_w 0}`.
    pub fn candidates(&self, w: &Preorder) -> Vec<usize> {
        (0..self.fan.cones().len()).filter(|&i| self.passes(w, i)).collect()
    }

    fn passes(&self, w: &Preorder, i: usize) -> bool {
        let c = &self.fan.cones()[i];
        self.generators[i].iter().all(|h| {
            let s = w.sign(h);
            let perp = c.rays().iter().all(|v| pair(h, v) == 0);
            s != Ordering::Less && (s == Ordering::Equal) == perp
        })
    }

    pub fn dominated(&self, w: &Preorder) -> Result<DominationResult, ZrError> {
        if w.rank() != self.fan.ambient_rank() {
            return Err(ZrError::DimensionMismatch { expected: self.fan.ambient_rank(), found: w.rank() });
        }
        let found = self.candidates(w);
        match found.as_slice() {
            [] => Err(ZrError::NoDominatedCone),
            [i] => {
                let cone = self.fan.cones()[*i].clone();
                let mut perp = Vec::new();
                for b in cone.orthogonal_basis() {
                    perp.push(b.iter().map(|x| -x).collect());
                    perp.push(b);
                }
                let equivalence_face = Cone::new(cone.ambient_rank(), perp)?;
                Ok(DominationResult { cone, equivalence_face })
            }
            _ => Err(ZrError::SeveralDominatedCones(found.len())),
        }
    }
}

/// The unique cone of `f` dominated by `w`.
pub fn dominated_cone(w: &Preorder, f: &Fan) -> Result<DominationResult, ZrError> {
    DominationTable::new(f)?.dominated(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thread {
    pub stages: Vec<DominationResult>,
}

impl Thread {
    pub fn cones(&self) -> Vec<&Cone> {
        self.stages.iter().map(|s| &s.cone).collect()
    }
}

/// Dominated cones of `w` along a tower of refinements.
pub fn thread(w: &Preorder, tower: &[Fan]) -> Result<Thread, ZrError> {
    for (k, pair) in tower.windows(2).enumerate() {
        if !refine_check(&pair[1], &pair[0]) {
            return Err(ZrError::NotARefinement(k + 1));
        }
    }
    let stages: Vec<DominationResult> = tower.iter().map(|f| dominated_cone(w, f)).collect::<Result<_, _>>()?;
    for (k, s) in stages.windows(2).enumerate() {
        if !s[0].cone.contains_cone(&s[1].cone) {
            return Err(ZrError::ThreadNotNested(k + 1));
        }
    }
    Ok(Thread { stages })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan_geometry::{barycentric_tower, fan_from_cyclic_rays, random_complete_fan, stellar_subdivision, validate_fan};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn quadrants() -> Fan {
        fan_from_cyclic_rays(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap()
    }

    fn cone(rays: &[[i64; 2]]) -> Cone {
        Cone::from_rays(rays).unwrap()
    }

    fn w(rows: &[[i64; 2]]) -> Preorder {
        Preorder::from_rows(rows).unwrap()
    }

    /// The smallest cone containing `v_1 + εv_2 + …` for all small `ε > 0`:
    /// every normal must pair lexicographically non-negatively with the rows.
    fn limit_cone(w: &Preorder, f: &Fan) -> Cone {
        f.cones()
            .iter()
            .find(|c| {
                c.normals().iter().all(|n| {
                    let seq: Vec<i128> = w.rows().iter().map(|v| pair(n, v)).collect();
                    seq.iter().find(|&&x| x != 0).map_or(true, |&x| x > 0)
                })
            })
            .unwrap()
            .clone()
    }

    #[test]
    fn u_sigma_membership() {
        let lex = w(&[[1, 0], [0, 1]]);
        assert!(in_u_sigma(&lex, &cone(&[[1, 0], [0, 1]])).unwrap());
        assert!(!in_u_sigma(&lex, &cone(&[[-1, 0], [0, -1]])).unwrap());
        assert!(in_u_sigma(&Preorder::trivial(2), &cone(&[[-1, 0], [0, -1]])).unwrap());
    }

    #[test]
    fn quadrant_examples() {
        let f = quadrants();
        let r = dominated_cone(&w(&[[1, 0], [0, 1]]), &f).unwrap();
        assert_eq!(r.cone, cone(&[[1, 0], [0, 1]]));
        assert!(r.equivalence_face.is_zero());
        let r = dominated_cone(&w(&[[1, 1]]), &f).unwrap();
        assert_eq!(r.cone, cone(&[[1, 0], [0, 1]]));
        assert!(r.equivalence_face.is_zero());
        let r = dominated_cone(&Preorder::trivial(2), &f).unwrap();
        assert!(r.cone.is_zero());
        assert_eq!(r.equivalence_face.dim(), 2);
        // a rank one preorder along a ray of the fan
        let r = dominated_cone(&w(&[[1, 0]]), &f).unwrap();
        assert_eq!(r.cone, cone(&[[1, 0]]));
        assert_eq!(r.equivalence_face.dim(), 1);
        assert!(r.equivalence_face.contains(&[0, 7]) && r.equivalence_face.contains(&[0, -7]));
    }

    #[test]
    fn incomplete_fans_may_dominate_nothing() {
        let f = validate_fan(2, vec![cone(&[[1, 0], [0, 1]])]).unwrap();
        assert!(matches!(dominated_cone(&w(&[[-1, 0], [0, 1]]), &f), Err(ZrError::NoDominatedCone)));
    }

    #[test]
    fn threads() {
        let f0 = quadrants();
        let f1 = stellar_subdivision(&f0, &[1, 1]).unwrap();
        let f2 = stellar_subdivision(&f1, &[2, 1]).unwrap();
        let f3 = stellar_subdivision(&f2, &[3, 1]).unwrap();
        let tower = vec![f0.clone(), f1, f2, f3];
        let lex = w(&[[1, 0], [0, 1]]);
        let t = thread(&lex, &tower).unwrap();
        let want = [cone(&[[1, 0], [0, 1]]), cone(&[[1, 0], [1, 1]]), cone(&[[1, 0], [2, 1]]), cone(&[[1, 0], [3, 1]])];
        assert_eq!(t.cones(), want.iter().collect::<Vec<_>>());
        let constant = thread(&lex, &[f0.clone(), f0.clone()]).unwrap();
        assert_eq!(constant.stages[0], constant.stages[1]);
        let triv = thread(&Preorder::trivial(2), &tower).unwrap();
        assert!(triv.cones().iter().all(|c| c.is_zero()));
        let backwards = vec![tower[1].clone(), f0];
        assert!(matches!(thread(&lex, &backwards), Err(ZrError::NotARefinement(1))));
    }

    #[test]
    fn domination_matches_limit_cone() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let f = random_complete_fan(3, &mut rng).unwrap();
            let table = DominationTable::new(&f).unwrap();
            for _ in 0..10 {
                let o = Preorder::random_order(2, 4, &mut rng);
                let r = table.dominated(&o).unwrap();
                assert_eq!(r.cone.dim(), 2);
                assert_eq!(r.cone, limit_cone(&o, &f));
                let rank_one = Preorder::new(2, vec![o.rows()[0].clone()]).unwrap();
                assert_eq!(table.dominated(&rank_one).unwrap().cone, limit_cone(&rank_one, &f));
            }
        }
    }

    #[test]
    fn every_closed_point_is_dominated_by_some_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let f = random_complete_fan(3, &mut rng).unwrap();
            let table = DominationTable::new(&f).unwrap();
            for c in f.closed_points() {
                let u: Vec<i64> = (0..2).map(|j| c.rays().iter().map(|v| v[j]).sum()).collect();
                let o = Preorder::new(2, vec![u, c.rays()[0].clone()]).unwrap();
                assert_eq!(&table.dominated(&o).unwrap().cone, c);
            }
        }
    }

    #[test]
    fn threads_nest_along_barycentric_towers() {
        let tower = barycentric_tower(&quadrants(), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let o = Preorder::random_order(2, 5, &mut rng);
            let t = thread(&o, &tower).unwrap();
            assert!(t.cones().windows(2).all(|p| p[0].contains_cone(p[1])));
        }
    }

    #[test]
    fn rank_three_domination() {
        use itertools::Itertools;
        let mut cones = Vec::new();
        for s in (0..3).map(|_| [1i64, -1]).multi_cartesian_product() {
            cones.push(Cone::new(3, vec![vec![s[0], 0, 0], vec![0, s[1], 0], vec![0, 0, s[2]]]).unwrap());
        }
        let f = validate_fan(3, cones).unwrap();
        let o = Preorder::new(3, vec![vec![1, -2, 3], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(dominated_cone(&o, &f).unwrap().cone, Cone::new(3, vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]]).unwrap());
        let p = Preorder::new(3, vec![vec![1, 0, 0], vec![0, -1, 0]]).unwrap();
        let r = dominated_cone(&p, &f).unwrap();
        assert_eq!(r.cone, Cone::new(3, vec![vec![1, 0, 0], vec![0, -1, 0]]).unwrap());
        assert_eq!(r.equivalence_face.dim(), 1);
    }
}
