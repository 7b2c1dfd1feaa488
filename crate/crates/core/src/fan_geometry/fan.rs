use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::cone::{is_primitive, Cone};
use super::FanError;

/// A finite fan: strictly convex cones closed under faces, any two meeting
/// in a common face. Cones are kept sorted by dimension, then rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFan", into = "RawFan")]
pub struct Fan {
    ambient_rank: usize,
    cones: Vec<Cone>,
    complete: bool,
}

/// Rays plus maximal cones by ray index, the layout of fan files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFan {
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_rank: Option<usize>,
}

impl TryFrom<RawFan> for Fan {
    type Error = FanError;

    fn try_from(raw: RawFan) -> Result<Self, FanError> {
        let r = match (raw.ambient_rank, raw.rays.first()) {
            (Some(r), _) => r,
            (None, Some(v)) => v.len(),
            (None, None) => return Err(FanError::UnsupportedRank(0)),
        };
        let mut cones = Vec::new();
        for idx in &raw.cones {
            let mut rays = Vec::new();
            for &i in idx {
                rays.push(raw.rays.get(i).ok_or(FanError::RayIndex { index: i, rays: raw.rays.len() })?.clone());
            }
            for v in &rays {
                if !is_primitive(v) {
                    return Err(FanError::NotPrimitive(v.clone()));
                }
            }
            cones.push(Cone::new(r, rays)?);
        }
        validate_fan(r, cones)
    }
}

impl From<Fan> for RawFan {
    fn from(f: Fan) -> Self {
        let rays: Vec<Vec<i64>> = f.rays();
        let cones = f
            .maximal_cones()
            .iter()
            .map(|c| c.rays().iter().map(|v| rays.iter().position(|w| w == v).expect("ray of the fan")).collect())
            .collect();
        RawFan { rays, cones, ambient_rank: Some(f.ambient_rank) }
    }
}

/// Adds missing faces and checks that cones meet in common faces.
pub fn validate_fan(ambient_rank: usize, cones: Vec<Cone>) -> Result<Fan, FanError> {
    let mut all = BTreeSet::new();
    for c in &cones {
        if c.ambient_rank() != ambient_rank {
            return Err(FanError::DimensionMismatch { expected: ambient_rank, found: c.ambient_rank() });
        }
        if !c.is_strictly_convex() {
            return Err(FanError::NotStrictlyConvex(c.to_string()));
        }
        all.extend(c.faces());
    }
    if all.is_empty() {
        all.insert(Cone::zero(ambient_rank)?);
    }
    let all: Vec<Cone> = all.into_iter().collect();
    let maximal: Vec<&Cone> = all.iter().filter(|c| !all.iter().any(|d| d != *c && d.contains_cone(c))).collect();
    for m in &maximal {
        let faces = m.faces();
        for c in &all {
            if c == *m {
                continue;
            }
            let i = m.intersection(c);
            if !faces.contains(&i) || !c.faces().contains(&i) {
                return Err(FanError::NotAFan { first: m.to_string(), second: c.to_string() });
            }
        }
    }
    Ok(Fan::from_sorted_unchecked(ambient_rank, all))
}

/// Whether the `d`-dimensional `pieces`, forming a fan inside the
/// `d`-dimensional cone `sigma`, cover it: every facet of a piece that is not
/// in the boundary of `sigma` must be shared by exactly two pieces.
fn covers(sigma: &Cone, pieces: &[&Cone]) -> bool {
    let d = sigma.dim();
    let top: Vec<&&Cone> = pieces.iter().filter(|p| p.dim() == d).collect();
    if d == 0 {
        return true;
    }
    if top.is_empty() {
        return false;
    }
    let boundary: Vec<Cone> = sigma.faces().into_iter().filter(|f| f.dim() + 1 == d).collect();
    let mut count: BTreeMap<Cone, usize> = BTreeMap::new();
    for p in top {
        for f in p.faces().into_iter().filter(|f| f.dim() + 1 == d) {
            *count.entry(f).or_default() += 1;
        }
    }
    count.iter().all(|(f, &n)| n == 2 || boundary.iter().any(|b| b.contains_cone(f)))
}

impl Fan {
    /// `cones` must already be a face-closed fan, sorted and deduplicated.
    pub(crate) fn from_sorted_unchecked(ambient_rank: usize, cones: Vec<Cone>) -> Fan {
        let complete = is_complete(ambient_rank, &cones);
        Fan { ambient_rank, cones, complete }
    }

    /// The fan of all faces of one strictly convex cone.
    pub fn from_cone(c: &Cone) -> Result<Fan, FanError> {
        validate_fan(c.ambient_rank(), vec![c.clone()])
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Primitive generators of the one-dimensional cones, sorted.
    pub fn rays(&self) -> Vec<Vec<i64>> {
        self.cones.iter().filter(|c| c.dim() == 1).map(|c| c.rays()[0].clone()).collect()
    }

    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones.iter().filter(|c| !self.cones.iter().any(|d| d.dim() > c.dim() && d.contains_cone(c))).collect()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cones.binary_search(c).is_ok()
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    pub fn in_support(&self, v: &[i64]) -> bool {
        self.cones.iter().any(|c| c.contains(v))
    }

    /// Smallest cone containing `v`, if `v` is in the support.
    pub fn cone_containing(&self, v: &[i64]) -> Option<&Cone> {
        self.cones.iter().find(|c| c.contains(v))
    }

    /// Cones of full dimension `r`: the zero dimensional orbits.
    pub fn closed_points(&self) -> Vec<&Cone> {
        self.cones.iter().filter(|c| c.dim() == self.ambient_rank).collect()
    }
}

fn is_complete(r: usize, cones: &[Cone]) -> bool {
    let top: Vec<&Cone> = cones.iter().filter(|c| c.dim() == r).collect();
    if top.is_empty() {
        return false;
    }
    cones.iter().filter(|c| c.dim() + 1 == r).all(|f| top.iter().filter(|t| t.contains_cone(f)).count() == 2)
}

/// Star subdivision at the primitive vector `v`: each cone `σ ∋ v` is replaced
/// by the joins of `v` with the faces of `σ` not containing `v`.
pub fn stellar_subdivision(f: &Fan, v: &[i64]) -> Result<Fan, FanError> {
    if v.len() != f.ambient_rank {
        return Err(FanError::DimensionMismatch { expected: f.ambient_rank, found: v.len() });
    }
    if !is_primitive(v) {
        return Err(FanError::NotPrimitive(v.to_vec()));
    }
    if !f.in_support(v) {
        return Err(FanError::OutsideSupport(v.to_vec()));
    }
    if f.rays().iter().any(|w| w == v) {
        return Ok(f.clone());
    }
    let mut out: Vec<Cone> = Vec::new();
    for c in &f.cones {
        if !c.contains(v) {
            out.push(c.clone());
            continue;
        }
        for tau in c.faces() {
            if !tau.contains(v) {
                out.push(tau.join(v));
            }
        }
    }
    validate_fan(f.ambient_rank, out)
}

/// Every cone of `f2` lies in a cone of `f1` and the supports agree.
pub fn refine_check(f2: &Fan, f1: &Fan) -> bool {
    if f2.ambient_rank != f1.ambient_rank {
        return false;
    }
    let fine_max = f2.maximal_cones();
    if !fine_max.iter().all(|c| f1.cones.iter().any(|d| d.contains_cone(c))) {
        return false;
    }
    f1.maximal_cones().iter().all(|sigma| {
        let inside: Vec<&Cone> = f2.cones.iter().filter(|c| sigma.contains_cone(c)).collect();
        covers(sigma, &inside)
    })
}

/// All intersections of a cone of `f1` with a cone of `f2`.
pub fn common_refinement(f1: &Fan, f2: &Fan) -> Result<Fan, FanError> {
    if f1.ambient_rank != f2.ambient_rank {
        return Err(FanError::DimensionMismatch { expected: f1.ambient_rank, found: f2.ambient_rank });
    }
    let pieces: Vec<Cone> = f1
        .maximal_cones()
        .into_iter()
        .cartesian_product(f2.maximal_cones())
        .map(|(a, b)| a.intersection(b))
        .collect();
    let f = validate_fan(f1.ambient_rank, pieces)?;
    if !refine_check(&f, f1) || !refine_check(&f, f2) {
        return Err(FanError::SupportMismatch);
    }
    Ok(f)
}

/// Orbits of the torus embedding, indexed like [`Fan::cones`]; orbit `j`
/// lies in the closure of orbit `i` iff cone `i` is a face of cone `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPoset {
    pub cones: Vec<Cone>,
    /// `closure[i]`: indices of the orbits in the closure of orbit `i`.
    pub closure: Vec<Vec<usize>>,
    pub closed_points: Vec<usize>,
}

impl OrbitPoset {
    /// Orbit-closure order: `i ≤ j` when orbit `j` lies in the closure of `i`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.closure[i].binary_search(&j).is_ok()
    }
}

pub fn orbit_poset(f: &Fan) -> OrbitPoset {
    let closure = f
        .cones
        .iter()
        .map(|a| f.cones.iter().enumerate().filter(|(_, b)| b.contains_cone(a)).map(|(j, _)| j).collect())
        .collect();
    let closed_points = f.cones.iter().enumerate().filter(|(_, c)| c.dim() == f.ambient_rank).map(|(i, _)| i).collect();
    OrbitPoset { cones: f.cones.clone(), closure, closed_points }
}

/// The smallest cone of `f1` containing the cone `c` of its refinement `f2`.
pub fn orbit_map<'a>(f2: &Fan, f1: &'a Fan, c: &Cone) -> Result<&'a Cone, FanError> {
    if !f2.contains_cone(c) {
        return Err(FanError::NotInFan(c.to_string()));
    }
    f1.cones.iter().find(|d| d.contains_cone(c)).ok_or(FanError::NotARefinement)
}

/// Largest absolute value of a ray coordinate.
pub fn height(f: &Fan) -> Result<i64, FanError> {
    f.rays().iter().flatten().map(|x| x.abs()).max().ok_or(FanError::NoRays)
}
