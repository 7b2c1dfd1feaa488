use crate::field::{Field, PrimeField};
use crate::poly::Polynomial;

use super::series::TruncatedSeries;
use super::SemigroupError;

/// Exponent of `t` reached by the leading terms of the eliminated equation
/// after substituting the parametrization: `p³(p²+1)(p+1)`.
pub fn curve_top_exponent(p: u64) -> u64 {
    p.pow(3) * (p * p + 1) * (p + 1)
}

/// The branch `x = t^{p³}, y = t^{p³+p²} + t^{p³+p²+p+1}` over `F_p`.
pub fn campillo_parametrization(p: u64, truncation: u64) -> Result<(TruncatedSeries<PrimeField>, TruncatedSeries<PrimeField>), SemigroupError> {
    let f = PrimeField::new(p).map_err(|_| SemigroupError::NotPrime(p))?;
    let p3 = p.pow(3);
    let x = TruncatedSeries::from_exponents(&f, truncation, &[p3]);
    let y = TruncatedSeries::from_exponents(&f, truncation, &[p3 + p * p, p3 + p * p + p + 1]);
    Ok((x, y))
}

/// `(y^p − x^{p+1})^{p²} − 2x^{p²(p+1)}y^p + x^{(p²+1)(p+1)}` in `F_p[x, y]`.
pub fn curve_polynomial(p: u64) -> Result<Polynomial<PrimeField>, SemigroupError> {
    let f = PrimeField::new(p).map_err(|_| SemigroupError::NotPrime(p))?;
    let pe = |n: u64| u32::try_from(n).expect("small exponent");
    let x = Polynomial::var(&f, 2, 0);
    let y = Polynomial::var(&f, 2, 1);
    let inner = y.pow(pe(p)).sub(&x.pow(pe(p + 1)));
    let middle = x.pow(pe(p * p * (p + 1))).mul(&y.pow(pe(p))).scale(&f.from_i64(2));
    let last = x.pow(pe((p * p + 1) * (p + 1)));
    Ok(inner.pow(pe(p * p)).sub(&middle).add(&last))
}

/// The same expression with series substituted for `x` and `y`.
pub fn curve_equation_residual<F: Field>(p: u64, x: &TruncatedSeries<F>, y: &TruncatedSeries<F>) -> TruncatedSeries<F> {
    let f = x.field();
    let inner = y.pow(p).sub(&x.pow(p + 1));
    let middle = x.pow(p * p * (p + 1)).mul(&y.pow(p)).scale(&f.from_i64(2));
    let last = x.pow((p * p + 1) * (p + 1));
    inner.pow(p * p).sub(&middle).add(&last)
}

/// Whether the eliminated equation vanishes on the branch modulo `t^T`.
/// `T` must exceed the top exponent so that the leading terms are seen.
pub fn verify_curve_equation(p: u64, truncation: u64) -> Result<bool, SemigroupError> {
    let needed = curve_top_exponent(p) + 1;
    if truncation < needed {
        return Err(SemigroupError::TruncationTooSmall { needed, got: truncation });
    }
    let (x, y) = campillo_parametrization(p, truncation)?;
    Ok(curve_equation_residual(p, &x, &y).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_identity_holds() {
        assert_eq!(verify_curve_equation(2, 200), Ok(true));
        assert!(matches!(verify_curve_equation(2, 100), Err(SemigroupError::TruncationTooSmall { needed: 121, got: 100 })));
    }

    #[test]
    fn p2_reduces_to_shorter_equation() {
        let f = PrimeField::new(2).unwrap();
        let x = Polynomial::var(&f, 2, 0);
        let y = Polynomial::var(&f, 2, 1);
        let short = y.pow(2).sub(&x.pow(3)).pow(4).sub(&x.pow(15));
        assert_eq!(curve_polynomial(2).unwrap(), short);
    }

    #[test]
    fn perturbed_branch_fails() {
        let f = PrimeField::new(2).unwrap();
        let x = TruncatedSeries::from_exponents(&f, 200, &[8]);
        let y = TruncatedSeries::from_exponents(&f, 200, &[12, 13]);
        assert!(!curve_equation_residual(2, &x, &y).is_zero());
    }

    #[test]
    fn odd_characteristic_residual() {
        // For odd p the substitution leaves exactly -2·t^{p⁶+p⁵+p⁴+p³+p²+p}.
        for p in [3u64, 5] {
            let t = 2 * curve_top_exponent(p);
            let (x, y) = campillo_parametrization(p, t).unwrap();
            let r = curve_equation_residual(p, &x, &y);
            let f = PrimeField::new(p).unwrap();
            let e: u64 = (1..=6).map(|k| p.pow(k)).sum();
            assert_eq!(r, TruncatedSeries::monomial(&f, t, e, f.from_i64(-2)), "p = {p}");
        }
    }

    #[test]
    fn dropping_the_middle_term_works_for_every_p() {
        for p in [2u64, 3, 5] {
            let t = 2 * curve_top_exponent(p);
            let (x, y) = campillo_parametrization(p, t).unwrap();
            let r = y.pow(p).sub(&x.pow(p + 1)).pow(p * p).sub(&x.pow((p * p + 1) * (p + 1)));
            assert!(r.is_zero(), "p = {p}");
        }
    }
}
