use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;

use super::SemigroupError;

/// t-adic order of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOrder {
    Finite(u64),
    /// No nonzero coefficient below the truncation.
    ZeroToPrecision,
}

impl SeriesOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            SeriesOrder::Finite(k) => Some(k),
            SeriesOrder::ZeroToPrecision => None,
        }
    }
}

/// A power series in `t` known modulo `t^T`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<F: Field> {
    field: F,
    truncation: u64,
    coeffs: BTreeMap<u64, F::Elem>,
}

impl<F: Field> TruncatedSeries<F> {
    pub fn zero(field: &F, truncation: u64) -> Self {
        assert!(truncation > 0, "truncation must be positive");
        TruncatedSeries { field: field.clone(), truncation, coeffs: BTreeMap::new() }
    }

    /// Terms at or above the truncation are dropped; repeated exponents add up.
    pub fn from_terms(field: &F, truncation: u64, terms: impl IntoIterator<Item = (u64, F::Elem)>) -> Self {
        let mut s = Self::zero(field, truncation);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn monomial(field: &F, truncation: u64, exponent: u64, c: F::Elem) -> Self {
        Self::from_terms(field, truncation, [(exponent, c)])
    }

    pub fn one(field: &F, truncation: u64) -> Self {
        Self::monomial(field, truncation, 0, field.one())
    }

    /// Sum of `t^e` over the given exponents, all coefficients one.
    pub fn from_exponents(field: &F, truncation: u64, exponents: &[u64]) -> Self {
        Self::from_terms(field, truncation, exponents.iter().map(|&e| (e, field.one())))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &F::Elem)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, e: u64) -> F::Elem {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> SeriesOrder {
        self.coeffs.keys().next().map_or(SeriesOrder::ZeroToPrecision, |&e| SeriesOrder::Finite(e))
    }

    /// Coefficient of the lowest-order term.
    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.coeffs.values().next()
    }

    /// Same series viewed modulo `t^T` for a possibly smaller `T`.
    pub fn with_truncation(&self, truncation: u64) -> Self {
        assert!(truncation <= self.truncation, "cannot invent precision");
        Self::from_terms(&self.field, truncation, self.coeffs.iter().map(|(&e, c)| (e, c.clone())))
    }

    fn add_term(&mut self, e: u64, c: F::Elem) {
        if e >= self.truncation {
            return;
        }
        let f = &self.field;
        match self.coeffs.get_mut(&e) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    self.coeffs.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                if !f.is_zero(&c) {
                    self.coeffs.insert(e, c);
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SemigroupError> {
        if self.field != other.field {
            return Err(SemigroupError::FieldMismatch);
        }
        if self.truncation != other.truncation {
            return Err(SemigroupError::TruncationMismatch(self.truncation, other.truncation));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("compatible series");
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, self.truncation);
        for (&e, c) in &self.coeffs {
            out.add_term(e, self.field.mul(c, k));
        }
        out
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: u64) -> Self {
        Self::from_terms(&self.field, self.truncation, self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("compatible series");
        let t = self.truncation;
        let f = &self.field;
        let mut out = Self::zero(f, t);
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                if e1 + e2 >= t {
                    // exponents are sorted, the rest of this row overflows too
                    break;
                }
                out.add_term(e1 + e2, f.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.truncation);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// `series_order` under its usual name.
pub fn series_order<F: Field>(s: &TruncatedSeries<F>) -> SeriesOrder {
    s.order()
}

impl<F: Field> fmt::Debug for TruncatedSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}*t^{e}")?;
        }
        write!(f, " + O(t^{})", self.truncation)
    }
}
