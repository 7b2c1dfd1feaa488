use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{abs_min_nonzero, IntMatrix};

/// `left · A · right = diag(d₁, …, d_k, 0, …)` with `d₁ | d₂ | …` and both
/// transforms unimodular. `right_inverse` is carried along so callers can
/// read off lattice bases without inverting anything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    left: IntMatrix,
    right: IntMatrix,
    right_inverse: IntMatrix,
    diagonal: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn left_transform(&self) -> &IntMatrix {
        &self.left
    }

    pub fn right_transform(&self) -> &IntMatrix {
        &self.right
    }

    pub fn right_inverse(&self) -> &IntMatrix {
        &self.right_inverse
    }

    /// The `min(rows, cols)` diagonal entries, non-negative.
    pub fn diagonal(&self) -> &[BigInt] {
        &self.diagonal
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Nonzero elementary divisors.
    pub fn elementary_divisors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank()]
    }

    /// The diagonal as a full matrix of the input's shape.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let (m, n) = (self.left.nrows(), self.right.nrows());
        let mut d = IntMatrix::zeros(m, n);
        for (i, x) in self.diagonal.iter().enumerate() {
            d.rows[i][i] = x.clone();
        }
        d
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let m = a.nrows();
    let n = a.ncols();
    let mut w = a.rows.clone();
    let mut left = IntMatrix::identity(m).rows;
    let mut right = IntMatrix::identity(n).rows;
    let mut rinv = IntMatrix::identity(n).rows;

    let steps = m.min(n);
    'outer: for t in 0..steps {
        loop {
            let cells = (t..m).flat_map(|i| (t..n).map(move |j| (i, j)));
            let Some((pi, pj)) = abs_min_nonzero(cells.map(|(i, j)| (i, j, &w[i][j]))) else {
                break 'outer;
            };
            if pi != t {
                w.swap(pi, t);
                left.swap(pi, t);
            }
            if pj != t {
                for row in w.iter_mut() {
                    row.swap(pj, t);
                }
                for row in right.iter_mut() {
                    row.swap(pj, t);
                }
                rinv.swap(pj, t);
            }

            let mut clean = true;
            for i in t + 1..m {
                if w[i][t].is_zero() {
                    continue;
                }
                let q = &w[i][t] / &w[t][t];
                row_axpy(&mut w, i, t, &q);
                row_axpy(&mut left, i, t, &q);
                if !w[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if w[t][j].is_zero() {
                    continue;
                }
                let q = &w[t][j] / &w[t][t];
                col_axpy(&mut w, j, t, &q);
                col_axpy(&mut right, j, t, &q);
                // right ← right·E with E = I − q·e_t e_jᵀ, so right⁻¹ ← (I + q·e_t e_jᵀ)·right⁻¹
                let (src, dst) = (rinv[j].clone(), &mut rinv[t]);
                for (d, s) in dst.iter_mut().zip(&src) {
                    *d += &q * s;
                }
                if !w[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Pivot must divide the remaining block; otherwise fold the
            // offending row into the pivot row and go again.
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w[i][j].is_multiple_of(&w[t][t])));
            match bad {
                Some(i) => {
                    let (src, dst) = (w[i].clone(), &mut w[t]);
                    for (d, s) in dst.iter_mut().zip(&src) {
                        *d += s;
                    }
                    let (src, dst) = (left[i].clone(), &mut left[t]);
                    for (d, s) in dst.iter_mut().zip(&src) {
                        *d += s;
                    }
                }
                None => break,
            }
        }
        if w[t][t].is_negative() {
            for x in w[t].iter_mut() {
                *x = -&*x;
            }
            for x in left[t].iter_mut() {
                *x = -&*x;
            }
        }
    }

    let diagonal = (0..steps).map(|i| w[i][i].clone()).collect();
    SmithDecomposition {
        left: IntMatrix::from_raw(left, m),
        right: IntMatrix::from_raw(right, n),
        right_inverse: IntMatrix::from_raw(rinv, n),
        diagonal,
    }
}

/// row_i -= q · row_t
fn row_axpy(a: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let src = a[t].clone();
    for (d, s) in a[i].iter_mut().zip(&src) {
        *d -= q * s;
    }
}

/// col_j -= q · col_t
fn col_axpy(a: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let s = row[t].clone();
        row[j] -= q * s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let d = smith_normal_form(a);
        let recon = d.left_transform().mul(a).mul(d.right_transform());
        assert_eq!(recon, d.diagonal_matrix(), "reconstruction failed for {a:?}");
        assert_eq!(d.left_transform().determinant().unwrap().abs(), BigInt::one());
        assert_eq!(d.right_transform().determinant().unwrap().abs(), BigInt::one());
        assert_eq!(
            d.right_transform().mul(d.right_inverse()),
            IntMatrix::identity(a.ncols())
        );
        let divs = d.elementary_divisors();
        for w in divs.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "divisor chain broken: {divs:?}");
        }
        d
    }

    fn diag(d: &SmithDecomposition) -> Vec<i64> {
        d.diagonal().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn identity_three() {
        assert_eq!(diag(&check(&IntMatrix::identity(3))), vec![1, 1, 1]);
    }

    #[test]
    fn two_three_needs_divisibility_fix() {
        let a = IntMatrix::from_i64_rows(&[[2, 0], [0, 3]]).unwrap();
        assert_eq!(diag(&check(&a)), vec![1, 6]);
    }

    #[test]
    fn campillo_pair_lattice_p2() {
        let a = IntMatrix::from_i64_rows(&[[-3, 2, 0], [-12, -2, 4]]).unwrap();
        assert_eq!(diag(&check(&a)), vec![1, 2]);
    }

    #[test]
    fn zero_and_rank_deficient() {
        let a = IntMatrix::zeros(2, 3);
        assert_eq!(diag(&check(&a)), vec![0, 0]);
        let a = IntMatrix::from_i64_rows(&[[2, 4], [3, 6], [5, 10]]).unwrap();
        let d = check(&a);
        assert_eq!(d.rank(), 1);
        assert_eq!(diag(&d), vec![1, 0]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn reconstruction_identity(
            rows in 1usize..5, cols in 1usize..5,
            seed in proptest::collection::vec(-20i64..=20, 25)
        ) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 5..i * 5 + cols].to_vec()).collect();
            let a = IntMatrix::from_i64_rows(&data).unwrap();
            check(&a);
        }
    }
}
