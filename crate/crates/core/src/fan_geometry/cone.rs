use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::FanError;

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn narrow(v: Vec<i128>) -> Vec<i64> {
    v.into_iter().map(|x| i64::try_from(x).expect("cone coordinates overflow i64")).collect()
}

/// Divides out the content; `None` for the zero vector.
pub fn primitive(v: &[i64]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    Some(v.iter().map(|x| x / g).collect())
}

pub fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
}

fn primitive_wide(v: &[i128]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    Some(narrow(v.iter().map(|x| x / g).collect()))
}

/// Rank over Q, by fraction-free elimination.
pub(crate) fn rank(rows: &[Vec<i64>], r: usize) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    for col in 0..r {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][col] == 0 {
                continue;
            }
            let (a, b) = (m[rank][col], m[i][col]);
            for j in 0..r {
                m[i][j] = m[i][j] * a - m[rank][j] * b;
            }
            let g = m[i].iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

pub(crate) fn det(rows: &[Vec<i64>]) -> i128 {
    match rows.len() {
        0 => 1,
        1 => rows[0][0] as i128,
        2 => rows[0][0] as i128 * rows[1][1] as i128 - rows[0][1] as i128 * rows[1][0] as i128,
        3 => {
            let c = cross(&rows[1], &rows[2]);
            rows[0].iter().zip(&c).map(|(&a, &b)| a as i128 * b).sum()
        }
        n => panic!("determinant of a {n}x{n} matrix is not needed here"),
    }
}

fn cross(a: &[i64], b: &[i64]) -> [i128; 3] {
    let (a, b) = (a.iter().map(|&x| x as i128).collect_vec(), b.iter().map(|&x| x as i128).collect_vec());
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Primitive Q-basis of `{x : <g, x> = 0 for all rows g}`, for `r ≤ 3`.
pub(crate) fn kernel_basis(rows: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    let nonzero: Vec<&Vec<i64>> = rows.iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
    let k = rank(rows, r);
    if k == 0 {
        return (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    }
    if k == r {
        return Vec::new();
    }
    match (r, k) {
        (2, 1) => {
            let g = nonzero[0];
            vec![primitive(&[-g[1], g[0]]).expect("nonzero")]
        }
        (3, 2) => {
            for (a, b) in nonzero.iter().tuple_combinations() {
                if let Some(v) = primitive_wide(&cross(a, b)) {
                    return vec![v];
                }
            }
            unreachable!("rank two has an independent pair")
        }
        (3, 1) => {
            let g = nonzero[0];
            let mut out: Vec<Vec<i64>> = Vec::new();
            for e in 0..3 {
                let unit: Vec<i64> = (0..3).map(|j| i64::from(j == e)).collect();
                if let Some(v) = primitive_wide(&cross(g, &unit)) {
                    let mut trial = out.clone();
                    trial.push(v.clone());
                    if rank(&trial, 3) == trial.len() {
                        out.push(v);
                    }
                }
                if out.len() == 2 {
                    break;
                }
            }
            out
        }
        _ => unreachable!("rank {k} in dimension {r}"),
    }
}

/// Generators of `{u : <u, g> ≥ 0 for all g}`: `±` a basis of the
/// lineality space followed by the extreme rays of the pointed part.
pub(crate) fn dual_generators(gens: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    let lin = kernel_basis(gens, r);
    let d = r - lin.len();
    let mut out: Vec<Vec<i64>> = Vec::new();
    for l in &lin {
        out.push(l.clone());
        out.push(l.iter().map(|x| -x).collect());
    }
    if d > 0 {
        for subset in gens.iter().combinations(d - 1) {
            let mut eqs = lin.clone();
            eqs.extend(subset.into_iter().cloned());
            if rank(&eqs, r) != r - 1 {
                continue;
            }
            let u = &kernel_basis(&eqs, r)[0];
            for s in [u.clone(), u.iter().map(|x| -x).collect()] {
                if gens.iter().all(|g| dot(&s, g) >= 0) {
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A rational polyhedral cone in `R^r`, `1 ≤ r ≤ 3`, stored by its
/// primitive generators together with generators of its dual.
///
/// For strictly convex cones `rays` are the extreme rays, which makes the
/// sorted ray list canonical. Non-strictly-convex cones (only produced as
/// duals of lower dimensional cones) carry `±` a lineality basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCone", into = "RawCone")]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<Vec<i64>>,
    normals: Vec<Vec<i64>>,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct RawCone {
    ambient_rank: usize,
    rays: Vec<Vec<i64>>,
}

impl TryFrom<RawCone> for Cone {
    type Error = FanError;

    fn try_from(raw: RawCone) -> Result<Self, FanError> {
        Cone::new(raw.ambient_rank, raw.rays)
    }
}

impl From<Cone> for RawCone {
    fn from(c: Cone) -> Self {
        RawCone { ambient_rank: c.ambient_rank, rays: c.rays }
    }
}

impl Cone {
    /// The cone generated by `gens`; zero vectors are ignored and the others
    /// replaced by their primitive multiples.
    pub fn new(ambient_rank: usize, gens: Vec<Vec<i64>>) -> Result<Self, FanError> {
        if !(1..=3).contains(&ambient_rank) {
            return Err(FanError::UnsupportedRank(ambient_rank));
        }
        if let Some(g) = gens.iter().find(|g| g.len() != ambient_rank) {
            return Err(FanError::DimensionMismatch { expected: ambient_rank, found: g.len() });
        }
        let mut prim: Vec<Vec<i64>> = gens.iter().filter_map(|g| primitive(g)).collect();
        prim.sort();
        prim.dedup();
        let normals = dual_generators(&prim, ambient_rank);
        let rays = dual_generators(&normals, ambient_rank);
        let dim = rank(&rays, ambient_rank);
        Ok(Cone { ambient_rank, rays, normals, dim })
    }

    pub fn from_rays<R: AsRef<[i64]>>(rays: &[R]) -> Result<Self, FanError> {
        let r = rays.first().map(|v| v.as_ref().len()).ok_or(FanError::UnsupportedRank(0))?;
        Cone::new(r, rays.iter().map(|v| v.as_ref().to_vec()).collect())
    }

    pub fn zero(ambient_rank: usize) -> Result<Self, FanError> {
        Cone::new(ambient_rank, Vec::new())
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Generators of the dual cone; a point `x` lies in the cone iff it pairs
    /// non-negatively with all of them.
    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    /// No nonzero `v` with `v` and `-v` in the cone.
    pub fn is_strictly_convex(&self) -> bool {
        rank(&self.normals, self.ambient_rank) == self.ambient_rank
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_rank
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.ambient_rank && self.normals.iter().all(|n| dot(n, x) >= 0)
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|v| self.contains(v))
    }

    /// Whether `x` lies in the relative interior.
    pub fn contains_in_relative_interior(&self, x: &[i64]) -> bool {
        self.contains(x) && self.faces().iter().filter(|f| f.dim + 1 == self.dim).all(|f| !f.contains(x))
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_rank, other.ambient_rank, "cones in different lattices");
        let mut ineq = self.normals.clone();
        ineq.extend(other.normals.iter().cloned());
        ineq.sort();
        ineq.dedup();
        let rays = dual_generators(&ineq, self.ambient_rank);
        Cone::new(self.ambient_rank, rays).expect("rank already checked")
    }

    /// All faces including `{0}` and the cone itself, sorted. Requires a
    /// strictly convex cone.
    pub fn faces(&self) -> Vec<Cone> {
        assert!(self.is_strictly_convex(), "faces of a cone with lineality");
        let mut out = vec![self.clone()];
        for k in 0..self.dim {
            for subset in self.rays.iter().combinations(k) {
                let tight: Vec<&Vec<i64>> =
                    self.normals.iter().filter(|n| subset.iter().all(|v| dot(n, v) == 0)).collect();
                let u: Vec<i64> = (0..self.ambient_rank).map(|j| tight.iter().map(|n| n[j]).sum()).collect();
                let closure: Vec<Vec<i64>> = self.rays.iter().filter(|v| dot(&u, v) == 0).cloned().collect();
                out.push(Cone::new(self.ambient_rank, closure).expect("rank already checked"));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        other.contains_cone(self) && other.faces().contains(self)
    }

    /// `σ^⊥`: a basis of the linear forms vanishing on the cone.
    pub fn orthogonal_basis(&self) -> Vec<Vec<i64>> {
        kernel_basis(&self.rays, self.ambient_rank)
    }

    /// The cone generated by the rays of `self` together with `v`.
    pub fn join(&self, v: &[i64]) -> Cone {
        let mut g = self.rays.clone();
        g.push(v.to_vec());
        Cone::new(self.ambient_rank, g).expect("rank already checked")
    }
}

/// `σ̌ = {u : <u, v> ≥ 0 for v ∈ σ}` in the dual lattice.
pub fn dual_cone(c: &Cone) -> Cone {
    Cone { ambient_rank: c.ambient_rank, rays: c.normals.clone(), normals: c.rays.clone(), dim: rank(&c.normals, c.ambient_rank) }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_rank, self.dim, &self.rays).cmp(&(other.ambient_rank, other.dim, &other.rays))
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|v| format!("({})", v.iter().join(","))).collect();
        write!(f, "cone({})", rays.join(","))
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(rays: &[[i64; 2]]) -> Cone {
        Cone::from_rays(rays).unwrap()
    }

    #[test]
    fn quadrant_is_self_dual() {
        let q = c(&[[1, 0], [0, 1]]);
        assert_eq!(dual_cone(&q), q);
        assert!(q.is_strictly_convex());
    }

    #[test]
    fn dual_of_skew_cone() {
        let d = dual_cone(&c(&[[1, 0], [1, 2]]));
        assert_eq!(d.rays(), &[vec![0, 1], vec![2, -1]]);
        for u in d.rays() {
            assert!(dot(u, &[1, 0]) >= 0 && dot(u, &[1, 2]) >= 0);
        }
    }

    #[test]
    fn dual_of_zero_cone_is_everything() {
        let z = Cone::zero(2).unwrap();
        let d = dual_cone(&z);
        assert!(!d.is_strictly_convex());
        assert!(d.contains(&[-3, 7]));
        assert_eq!(d.dim(), 2);
        assert!(z.is_strictly_convex());
        assert_eq!(z.dim(), 0);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let k = c(&[[1, 0], [2, 2], [0, 3], [1, 2]]);
        assert_eq!(k.rays(), &[vec![0, 1], vec![1, 0]]);
        let half = c(&[[1, 0], [0, 1], [-1, 0]]);
        assert!(!half.is_strictly_convex());
        assert!(half.contains(&[-5, 1]) && !half.contains(&[0, -1]));
    }

    #[test]
    fn faces_of_a_square_cone() {
        let sq = Cone::from_rays(&[[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]]).unwrap();
        let f = sq.faces();
        assert_eq!(f.iter().filter(|x| x.dim() == 2).count(), 4);
        assert_eq!(f.iter().filter(|x| x.dim() == 1).count(), 4);
        assert_eq!(f.len(), 10);
        let diag = Cone::from_rays(&[[1, 0, 1], [-1, 0, 1]]).unwrap();
        assert!(!diag.is_face_of(&sq));
        assert!(sq.contains_cone(&diag));
    }

    #[test]
    fn intersection_of_overlapping_cones() {
        let a = c(&[[1, 0], [0, 1]]);
        let b = c(&[[1, 1], [-1, 1]]);
        assert_eq!(a.intersection(&b), c(&[[1, 1], [0, 1]]));
        let lower = c(&[[1, 0], [0, -1]]);
        assert_eq!(a.intersection(&lower), c(&[[1, 0]]));
    }

    #[test]
    fn rank_checks() {
        assert!(matches!(Cone::new(4, vec![]), Err(FanError::UnsupportedRank(4))));
        assert!(matches!(Cone::new(2, vec![vec![1, 2, 3]]), Err(FanError::DimensionMismatch { .. })));
    }

    fn vec2() -> impl Strategy<Value = [i64; 2]> {
        ([-10i64..=10, -10i64..=10]).prop_filter("nonzero", |v| v != &[0, 0])
    }

    fn vec3() -> impl Strategy<Value = [i64; 3]> {
        ([-6i64..=6, -6i64..=6, -6i64..=6]).prop_filter("nonzero", |v| v != &[0, 0, 0])
    }

    proptest! {
        #[test]
        fn duality_is_an_involution_in_rank_two(a in vec2(), b in vec2()) {
            let k = Cone::from_rays(&[a, b]).unwrap();
            prop_assume!(k.is_strictly_convex() && k.is_full_dimensional());
            let d = Cone::new(2, dual_cone(&k).rays().to_vec()).unwrap();
            prop_assert!(d.is_strictly_convex());
            prop_assert_eq!(Cone::new(2, dual_cone(&d).rays().to_vec()).unwrap(), k);
        }

        #[test]
        fn duality_is_an_involution_in_rank_three(rays in prop::collection::vec(vec3(), 3..6)) {
            let k = Cone::from_rays(&rays).unwrap();
            prop_assume!(k.is_strictly_convex() && k.is_full_dimensional());
            let d = Cone::new(3, dual_cone(&k).rays().to_vec()).unwrap();
            prop_assert!(d.is_strictly_convex());
            prop_assert_eq!(Cone::new(3, dual_cone(&d).rays().to_vec()).unwrap(), k.clone());
            for u in d.rays() {
                for v in k.rays() {
                    prop_assert!(dot(u, v) >= 0);
                }
            }
        }

        #[test]
        fn faces_are_closed_under_intersection(rays in prop::collection::vec(vec3(), 3..6)) {
            let k = Cone::from_rays(&rays).unwrap();
            prop_assume!(k.is_strictly_convex());
            let faces = k.faces();
            for (a, b) in faces.iter().tuple_combinations() {
                prop_assert!(faces.contains(&a.intersection(b)));
            }
        }
    }
}
