//! Row-style Hermite normal form, used for lattice bases and membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Hermite basis of the row span: echelon rows with positive pivots and the
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub(crate) fn echelon_rows(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below row r
            let pick = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = pick else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let src = a[r].clone();
                for (d, s) in a[i].iter_mut().zip(&src) {
                    *d -= &q * s;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            pivots.push((r, c));
            r += 1;
        }
    }
    a.truncate(r);
    // reduce above pivots
    for &(pr, pc) in &pivots {
        for i in 0..pr {
            let q = a[i][pc].div_floor(&a[pr][pc]);
            if q.is_zero() {
                continue;
            }
            let src = a[pr].clone();
            for (d, s) in a[i].iter_mut().zip(&src) {
                *d -= &q * s;
            }
        }
    }
    a
}

/// Reduce `v` against a Hermite basis; returns the remainder, which is zero
/// exactly when `v` lies in the row span over the integers.
pub(crate) fn reduce(basis: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    for row in basis {
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else { continue };
        if v[pc].is_zero() {
            continue;
        }
        let q = v[pc].div_floor(&row[pc]);
        if q.is_zero() {
            continue;
        }
        for (d, s) in v.iter_mut().zip(row) {
            *d -= &q * s;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hermite_of_campillo_pair() {
        let h = echelon_rows(&big(&[&[-3, 2, 0], &[-12, -2, 4]]), 3);
        assert_eq!(h, big(&[&[3, 8, -4], &[0, 10, -4]]));
    }

    #[test]
    fn canonical_remainder_of_witness() {
        let h = echelon_rows(&big(&[&[-3, 2, 0], &[-12, -2, 4]]), 3);
        let w = reduce(&h, &big(&[&[-6, -1, 2]])[0]);
        // not in the lattice, so the remainder cannot vanish
        assert!(w.iter().any(|x| !x.is_zero()));
        let w2 = reduce(&h, &big(&[&[-12, -2, 4]])[0]);
        assert!(w2.iter().all(|x| x.is_zero()));
    }
}
