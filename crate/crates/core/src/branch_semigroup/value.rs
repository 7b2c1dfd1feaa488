use num_integer::Integer;

use crate::field::Field;

use super::series::{SeriesOrder, TruncatedSeries};
use super::{NumericalSemigroup, SemigroupError};

/// Default precision for a pair of series of orders `a` and `b`.
pub fn default_truncation(a: u64, b: u64) -> u64 {
    4 * a * b
}

/// Semigroup of t-orders of the algebra `k[[x, y]] ⊂ k[[t]]`.
///
/// With `n` the smaller of the two orders, the algebra is a free
/// `k[[x]]`-module on `1, y, …, y^{n-1}`. Subducting those powers against
/// each other (always by the earliest element holding a residue class
/// mod `n`) produces a basis whose orders fall in distinct classes; those
/// orders form the Apéry set of the value semigroup with respect to `n`.
pub fn value_semigroup<F: Field>(
    x: &TruncatedSeries<F>,
    y: &TruncatedSeries<F>,
) -> Result<NumericalSemigroup, SemigroupError> {
    if x.field() != y.field() {
        return Err(SemigroupError::FieldMismatch);
    }
    if x.truncation() != y.truncation() {
        return Err(SemigroupError::TruncationMismatch(x.truncation(), y.truncation()));
    }
    let (ox, oy) = match (x.order(), y.order()) {
        (SeriesOrder::Finite(a), SeriesOrder::Finite(b)) => (a, b),
        _ => return Err(SemigroupError::ZeroSeries),
    };
    if ox == 0 || oy == 0 {
        return Err(SemigroupError::UnitSeries);
    }
    let (a, b, n) = if ox <= oy { (x, y, ox) } else { (y, x, oy) };
    let g = a.terms().chain(b.terms()).fold(0u64, |g, (e, _)| g.gcd(&e));
    if g != 1 {
        return Err(SemigroupError::NonPrimitive(g));
    }

    let field = a.field();
    let t = a.truncation();
    let mut powers_of_a = vec![TruncatedSeries::one(field, t)];
    let mut slots: Vec<Option<TruncatedSeries<F>>> = vec![None; n as usize];
    let mut y_power = TruncatedSeries::one(field, t);

    for j in 0..n {
        if j > 0 {
            y_power = y_power.mul(b);
        }
        let mut pending = y_power.clone();
        loop {
            let o = pending.order().finite().ok_or(SemigroupError::TruncationExhausted { truncation: t })?;
            let r = (o % n) as usize;
            match slots[r].take() {
                None => {
                    slots[r] = Some(pending);
                    break;
                }
                Some(held) => {
                    let oh = held.order().finite().expect("held elements are nonzero");
                    // keep the element of lower order, reduce the other one
                    let (keep, mut reduce) = if oh <= o { (held, pending) } else { (pending, held) };
                    let (ok, or) = (keep.order().finite().unwrap(), reduce.order().finite().unwrap());
                    let k = ((or - ok) / n) as usize;
                    while powers_of_a.len() <= k {
                        let next = powers_of_a.last().unwrap().mul(a);
                        powers_of_a.push(next);
                    }
                    let c = field.mul(
                        reduce.leading_coefficient().unwrap(),
                        &field.inv(keep.leading_coefficient().unwrap()).unwrap(),
                    );
                    reduce = reduce.sub(&powers_of_a[k].mul(&keep).scale(&c));
                    slots[r] = Some(keep);
                    pending = reduce;
                }
            }
        }
    }

    let mut apery = vec![0u64; n as usize];
    for s in slots.iter().flatten() {
        let o = s.order().finite().unwrap();
        apery[(o % n) as usize] = o;
    }
    Ok(NumericalSemigroup::from_apery(n, &apery))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn campillo(p: u64, t: u64) -> (TruncatedSeries<PrimeField>, TruncatedSeries<PrimeField>) {
        let f = PrimeField::new(p).unwrap();
        let p3 = p.pow(3);
        let x = TruncatedSeries::from_exponents(&f, t, &[p3]);
        let y = TruncatedSeries::from_exponents(&f, t, &[p3 + p * p, p3 + p * p + p + 1]);
        (x, y)
    }

    #[test]
    fn campillo_p2() {
        let (x, y) = campillo(2, 128);
        let s = value_semigroup(&x, &y).unwrap();
        assert_eq!(s.generators(), &[8, 12, 30, 63]);
        let (x, y) = campillo(2, 256);
        assert_eq!(value_semigroup(&x, &y).unwrap().generators(), &[8, 12, 30, 63]);
    }

    #[test]
    fn same_parametrization_over_q() {
        // Characteristic exponents (8,12,15): the recursion gives 2*12 + 15 - 12 = 27.
        let q = Rationals;
        let x = TruncatedSeries::from_exponents(&q, 256, &[8]);
        let y = TruncatedSeries::from_exponents(&q, 256, &[12, 15]);
        assert_eq!(value_semigroup(&x, &y).unwrap().generators(), &[8, 12, 27]);
    }

    #[test]
    fn coprime_monomials() {
        for p in [2, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            let x = TruncatedSeries::from_exponents(&f, 24, &[2]);
            let y = TruncatedSeries::from_exponents(&f, 24, &[3]);
            assert_eq!(value_semigroup(&x, &y).unwrap().generators(), &[2, 3]);
            // argument order does not matter
            assert_eq!(value_semigroup(&y, &x).unwrap().generators(), &[2, 3]);
        }
    }

    #[test]
    fn too_little_precision() {
        let (x, y) = campillo(2, 40);
        assert!(matches!(value_semigroup(&x, &y), Err(SemigroupError::TruncationExhausted { .. })));
    }

    #[test]
    fn degenerate_inputs() {
        let f = PrimeField::new(2).unwrap();
        let x = TruncatedSeries::from_exponents(&f, 64, &[4]);
        let y = TruncatedSeries::from_exponents(&f, 64, &[6, 10]);
        assert_eq!(value_semigroup(&x, &y), Err(SemigroupError::NonPrimitive(2)));
        let z = TruncatedSeries::zero(&f, 64);
        assert_eq!(value_semigroup(&x, &z), Err(SemigroupError::ZeroSeries));
        let w = TruncatedSeries::from_exponents(&f, 32, &[3]);
        assert!(matches!(value_semigroup(&x, &w), Err(SemigroupError::TruncationMismatch(64, 32))));
    }

    #[test]
    fn campillo_p3() {
        let f = PrimeField::new(3).unwrap();
        let t = default_truncation(27, 36);
        let x = TruncatedSeries::from_exponents(&f, t, &[27]);
        let y = TruncatedSeries::from_exponents(&f, t, &[36, 40]);
        let s = value_semigroup(&x, &y).unwrap();
        assert_eq!(s.generators(), &[27, 36, 120, 364]);
        assert_eq!(s.conductor(), 1014);
    }
}
