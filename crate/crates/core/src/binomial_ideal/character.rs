use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_linalg::{IntMatrix, IntVector, Lattice};
use crate::field::{pow_mod, CoefficientField};

use super::BinomialError;

/// A homomorphism from a lattice to the multiplicative group of the field,
/// given by its values on a generating set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartialCharacter {
    lattice: Lattice,
    field: CoefficientField,
    values: Vec<i64>,
}

impl PartialCharacter {
    /// Rows of `generators` span the lattice; `values[i]` is the value on
    /// row `i`. Every integer relation among the rows must map to 1.
    pub fn new(field: CoefficientField, generators: IntMatrix, values: Vec<i64>) -> Result<Self, BinomialError> {
        assert_eq!(generators.nrows(), values.len());
        if let Some(&v) = values.iter().find(|&&v| is_zero_in(field, v)) {
            return Err(BinomialError::ZeroLambda(v));
        }
        let chi = PartialCharacter { lattice: Lattice::from_matrix(&generators), field, values };
        if generators.nrows() > 0 {
            for rel in generators.transpose().right_kernel().rows() {
                let v = chi.evaluate_coefficients(&rel);
                if v != BigRational::one() {
                    return Err(BinomialError::InconsistentCharacter { relation: rel.to_string(), value: v.to_string() });
                }
            }
        }
        Ok(chi)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `∏ values[i]^{c_i}`, normalised: a residue in `[0, p)` in
    /// characteristic `p`, an exact rational otherwise.
    pub fn evaluate_coefficients(&self, c: &IntVector) -> BigRational {
        let p = self.field.characteristic();
        if p == 0 {
            let mut acc = BigRational::one();
            for (&v, e) in self.values.iter().zip(c.entries()) {
                let e = e.to_i32().expect("relation coefficients fit in i32");
                acc *= BigRational::from_integer(BigInt::from(v)).pow(e);
            }
            acc
        } else {
            let mut acc = 1u64;
            for (&v, e) in self.values.iter().zip(c.entries()) {
                let base = v.rem_euclid(p as i64) as u64;
                let e = e.mod_floor(&BigInt::from(p - 1)).to_u64().expect("reduced exponent");
                acc = crate::field::mul_mod(acc, pow_mod(base, e, p), p);
            }
            BigRational::from_integer(BigInt::from(acc))
        }
    }

    /// Value on a lattice vector, or `None` if `v` is not in the lattice.
    pub fn value_on(&self, v: &IntVector) -> Result<Option<BigRational>, BinomialError> {
        if self.lattice.generators().nrows() == 0 {
            return Ok(v.is_zero().then(BigRational::one));
        }
        Ok(self.lattice.coordinates(v)?.map(|c| self.evaluate_coefficients(&c)))
    }

    /// Normalise an integer field element the same way as
    /// [`evaluate_coefficients`](Self::evaluate_coefficients).
    pub fn normalise(&self, x: i64) -> BigRational {
        let p = self.field.characteristic();
        if p == 0 {
            BigRational::from_integer(BigInt::from(x))
        } else {
            BigRational::from_integer(BigInt::from(x.rem_euclid(p as i64)))
        }
    }
}

fn is_zero_in(field: CoefficientField, v: i64) -> bool {
    let p = field.characteristic();
    if p == 0 {
        v.is_zero()
    } else {
        v.rem_euclid(p as i64) == 0
    }
}
