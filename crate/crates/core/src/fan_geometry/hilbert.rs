use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exact_linalg::{IntMatrix, IntVector, Lattice};

use super::cone::{det, dot, dual_cone, Cone};
use super::FanError;

/// Minimal generating set of the semigroup `σ̌ ∩ M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertBasis {
    pub elements: Vec<Vec<i64>>,
}

/// Upper triangular basis of the row lattice of a nonsingular square matrix.
fn hermite(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    for col in 0..n {
        // gcd-combine every lower row into the pivot row
        for i in col + 1..n {
            while m[i][col] != 0 {
                let q = Integer::div_floor(&m[col][col], &m[i][col]);
                for j in 0..n {
                    m[col][j] -= q * m[i][j];
                }
                m.swap(col, i);
            }
        }
        if m[col][col] < 0 {
            m[col].iter_mut().for_each(|x| *x = -*x);
        }
    }
    m
}

/// Lattice points `Σ λ_i u_i` with `0 ≤ λ_i < 1`.
fn parallelepiped_points(u: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = u.len();
    let d = det(u);
    assert!(d != 0, "simplicial cone must be full dimensional");
    let diag: Vec<i128> = hermite(u).iter().enumerate().map(|(i, row)| row[i]).collect();
    let mut out = Vec::new();
    for rep in diag.iter().map(|&h| 0..h).multi_cartesian_product() {
        let a: Vec<i64> = rep.iter().map(|&x| x as i64).collect();
        let mut x: Vec<i128> = a.iter().map(|&v| v as i128).collect();
        for i in 0..r {
            let mut m = u.to_vec();
            m[i] = a.clone();
            // λ_i = det_i / d, reduced to [0, 1)
            let fl = Integer::div_floor(&det(&m), &d);
            for j in 0..r {
                x[j] -= fl * u[i][j] as i128;
            }
        }
        out.push(x.into_iter().map(|v| i64::try_from(v).expect("small point")).collect());
    }
    out
}

/// Hilbert basis of `σ̌ ∩ M` for a full dimensional strictly convex `σ`.
///
/// The dual cone is triangulated by pulling from its first ray; lattice
/// points of the fundamental parallelepipeds and the rays generate, and the
/// reducible ones are discarded.
pub fn hilbert_basis(c: &Cone) -> Result<HilbertBasis, FanError> {
    if !c.is_strictly_convex() {
        return Err(FanError::NotStrictlyConvex(c.to_string()));
    }
    if !c.is_full_dimensional() {
        return Err(FanError::NotFullDimensional(c.to_string()));
    }
    let r = c.ambient_rank();
    let dual = dual_cone(c);
    let u = dual.rays();
    let simplices: Vec<Vec<Vec<i64>>> = if r == 1 {
        vec![u.to_vec()]
    } else {
        let apex = &u[0];
        let dual = Cone::new(r, u.to_vec()).expect("rank already checked");
        dual.faces()
            .into_iter()
            .filter(|f| f.dim() + 1 == r && !f.rays().contains(apex))
            .flat_map(|facet| triangulate(&facet).into_iter().map(|mut s| {
                s.push(apex.clone());
                s
            }))
            .collect()
    };
    let mut candidates: Vec<Vec<i64>> = u.to_vec();
    for s in &simplices {
        candidates.extend(parallelepiped_points(s).into_iter().filter(|x| x.iter().any(|&v| v != 0)));
    }
    candidates.sort();
    candidates.dedup();
    let in_dual = |x: &[i64]| c.rays().iter().all(|v| dot(x, v) >= 0);
    let elements = candidates
        .iter()
        .filter(|x| {
            !candidates.iter().any(|y| y != *x && in_dual(&x.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>()))
        })
        .cloned()
        .collect();
    Ok(HilbertBasis { elements })
}

/// Simplicial pieces of a pointed cone of dimension at most two.
fn triangulate(c: &Cone) -> Vec<Vec<Vec<i64>>> {
    if c.dim() <= 1 {
        return vec![c.rays().to_vec()];
    }
    // a 2-dimensional face of a 3-dimensional cone has exactly two rays
    assert_eq!(c.rays().len(), 2, "facet of a rank three cone is simplicial");
    vec![c.rays().to_vec()]
}

/// Generators of the semigroup `σ̌ ∩ M` for any strictly convex `σ`: `±` a
/// basis of `σ^⊥ ∩ M` together with a lifted Hilbert basis of the pointed
/// quotient.
pub fn semigroup_generators(c: &Cone) -> Result<Vec<Vec<i64>>, FanError> {
    if !c.is_strictly_convex() {
        return Err(FanError::NotStrictlyConvex(c.to_string()));
    }
    let r = c.ambient_rank();
    let d = c.dim();
    if d == r {
        return Ok(hilbert_basis(c)?.elements);
    }
    let perp = if d == 0 {
        IntMatrix::identity(r)
    } else {
        let rays: Vec<IntVector> = c.rays().iter().map(|v| IntVector::from_i64s(v)).collect();
        IntMatrix::new(rays).expect("rays have equal length").right_kernel()
    };
    let (basis, _, k) = Lattice::from_matrix(&perp).adapted_basis();
    let to_i64 = |v: IntVector| v.to_i64s().expect("small basis");
    let b: Vec<Vec<i64>> = basis.rows().map(to_i64).collect();
    let mut out = Vec::new();
    for l in &b[..k] {
        out.push(l.clone());
        out.push(l.iter().map(|x| -x).collect());
    }
    if d > 0 {
        let image: Vec<Vec<i64>> = c
            .rays()
            .iter()
            .map(|v| b[k..].iter().map(|row| i64::try_from(dot(row, v)).expect("small pairing")).collect())
            .collect();
        let quotient = Cone::new(d, image)?;
        for h in hilbert_basis(&quotient)?.elements {
            let lift: Vec<i64> = (0..r).map(|j| h.iter().zip(&b[k..]).map(|(a, row)| a * row[j]).sum()).collect();
            out.push(lift);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether `x` is a non-negative integer combination of `gens`, all of which
/// pair positively with `grading`; memoised on the remaining vector.
#[cfg(test)]
pub(crate) fn is_generated(x: &[i64], gens: &[Vec<i64>], grading: &[i64], memo: &mut std::collections::HashMap<Vec<i64>, bool>) -> bool {
    if x.iter().all(|&v| v == 0) {
        return true;
    }
    if dot(x, grading) <= 0 {
        return false;
    }
    if let Some(&b) = memo.get(x) {
        return b;
    }
    let res = gens.iter().any(|g| {
        let rest: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
        is_generated(&rest, gens, grading, memo)
    });
    memo.insert(x.to_vec(), res);
    res
}
