use std::fmt;

use crate::binomial_ideal::BinomialSystem;
use crate::field::{Field, PrimeField};
use crate::poly::Polynomial;

use super::JacobianError;

/// The equations `U^m − λU^n + Σ c·U^e` of a system as polynomials over `field`.
pub fn system_polynomials<F: Field>(system: &BinomialSystem, field: &F) -> Vec<Polynomial<F>> {
    let nv = system.nvars();
    let exps = |e: &[u64]| e.iter().map(|&k| u32::try_from(k).expect("exponent fits in u32")).collect::<Vec<_>>();
    system
        .binomials()
        .iter()
        .zip(system.deformations())
        .map(|(b, defs)| {
            let mut f = Polynomial::monomial(field, exps(b.m()), field.one())
                .sub(&Polynomial::monomial(field, exps(b.n()), field.from_i64(b.lambda())));
            for t in defs {
                f = f.add(&Polynomial::monomial(field, exps(&t.exponent), field.from_i64(t.coefficient)));
            }
            debug_assert_eq!(f.nvars(), nv);
            f
        })
        .collect()
}

/// Formal jacobian matrix of the system over an arbitrary field.
pub fn jacobian_over<F: Field>(system: &BinomialSystem, field: &F) -> Vec<Vec<Polynomial<F>>> {
    system_polynomials(system, field)
        .iter()
        .map(|f| (0..system.nvars()).map(|j| f.derivative(j)).collect())
        .collect()
}

/// Jacobian matrix over `F_p`, with the variable names kept for display.
#[derive(Clone)]
pub struct SymbolicJacobian {
    field: PrimeField,
    variables: Vec<String>,
    entries: Vec<Vec<Polynomial<PrimeField>>>,
}

pub fn jacobian(system: &BinomialSystem) -> Result<SymbolicJacobian, JacobianError> {
    let field = system.field().prime_field().ok_or(JacobianError::CharacteristicZero)?;
    Ok(SymbolicJacobian { field, variables: system.variables().to_vec(), entries: jacobian_over(system, &field) })
}

impl SymbolicJacobian {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.variables.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial<PrimeField> {
        &self.entries[row][col]
    }

    /// Entry as a list of `(signed coefficient, exponent)` terms, with the
    /// coefficient in the symmetric range mod `p`.
    pub fn signed_terms(&self, row: usize, col: usize) -> Vec<(i64, Vec<u32>)> {
        self.entries[row][col]
            .terms()
            .map(|(e, c)| {
                let s = self.field.to_symmetric_int(c).expect("prime field");
                (i64::try_from(s).expect("small coefficient"), e.clone())
            })
            .collect()
    }

    /// Human readable entry such as `-x^2*u2`.
    pub fn format_entry(&self, row: usize, col: usize) -> String {
        let terms = self.signed_terms(row, col);
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (c, e)) in terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.variables)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                out.push(' ');
            }
            out.push_str(sign);
            let mag = c.unsigned_abs();
            match (mag, mono.is_empty()) {
                (_, true) => out.push_str(&mag.to_string()),
                (1, false) => out.push_str(&mono.join("*")),
                (_, false) => out.push_str(&format!("{mag}*{}", mono.join("*"))),
            }
        }
        out
    }
}

impl fmt::Debug for SymbolicJacobian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols()).map(|c| self.format_entry(r, c)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant of a square matrix over a field, by elimination.
pub fn determinant_over<F: Field>(field: &F, mut a: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = a.len();
    let mut det = field.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !field.is_zero(&a[i][k])) else {
            return field.zero();
        };
        if piv != k {
            a.swap(piv, k);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[k][k]);
        let inv = field.inv(&a[k][k]).expect("nonzero pivot");
        for i in k + 1..n {
            if field.is_zero(&a[i][k]) {
                continue;
            }
            let factor = field.mul(&a[i][k], &inv);
            for j in k..n {
                let t = field.mul(&factor, &a[k][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
    }
    det
}

/// The minor on rows `rows` and columns `cols` evaluated at `point`.
pub fn minor_at<F: Field>(field: &F, jac: &[Vec<Polynomial<F>>], rows: &[usize], cols: &[usize], point: &[F::Elem]) -> F::Elem {
    let m = rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].eval(point)).collect()).collect();
    determinant_over(field, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial_ideal::Binomial;
    use crate::field::CoefficientField;

    #[test]
    fn undeformed_campillo_matrix() {
        for p in [2u64, 3, 5] {
            let j = jacobian(&BinomialSystem::campillo(p, false).unwrap()).unwrap();
            let pp = |k: u64| if k == 1 { "x".to_string() } else { format!("x^{k}") };
            let diag = [pp(p), pp(p * (p + 1)), pp(p * p * (p + 1))];
            // -1 is written 1 in characteristic 2
            let minus = if p == 2 { "" } else { "-" };
            for r in 0..3 {
                for c in 0..4 {
                    let want = if r == c { format!("{minus}{}", diag[r]) } else { "0".to_string() };
                    assert_eq!(j.format_entry(r, c), want, "p = {p}, entry ({r},{c})");
                }
            }
        }
    }

    #[test]
    fn deformed_campillo_matrix() {
        let j = jacobian(&BinomialSystem::campillo(3, true).unwrap()).unwrap();
        assert_eq!(j.format_entry(0, 2), "-1");
        assert_eq!(j.format_entry(1, 3), "-1");
        assert_eq!(j.format_entry(0, 0), "-x^3");
        assert_eq!(j.format_entry(2, 2), "-x^36");
    }

    #[test]
    fn single_binomial_mod_2() {
        let f = CoefficientField::new(2).unwrap();
        let s = BinomialSystem::undeformed(
            vec!["x".into(), "y".into()],
            vec![1, 1],
            f,
            vec![Binomial::new(vec![1, 0], vec![0, 1], 1).unwrap()],
        )
        .unwrap();
        let j = jacobian(&s).unwrap();
        assert_eq!(j.format_entry(0, 0), "1");
        assert_eq!(j.format_entry(0, 1), "1");
    }

    #[test]
    fn characteristic_zero_rejected() {
        let s = BinomialSystem::undeformed(
            vec!["x".into(), "y".into()],
            vec![1, 1],
            CoefficientField::rationals(),
            vec![Binomial::new(vec![1, 0], vec![0, 1], 1).unwrap()],
        )
        .unwrap();
        assert!(matches!(jacobian(&s), Err(JacobianError::CharacteristicZero)));
    }

    #[test]
    fn determinant_mod_p() {
        let f = PrimeField::new(7).unwrap();
        let m = vec![vec![3, 1], vec![4, 2]];
        assert_eq!(determinant_over(&f, m), 2);
        let m = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(determinant_over(&f, m), 6);
    }
}
