//! Sparse multivariate polynomials over a [`Field`].

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Polynomial<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, F::Elem>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        Polynomial { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::monomial(field, vec![0; nvars], c)
    }

    pub fn monomial(field: &F, exponents: Vec<u32>, c: F::Elem) -> Self {
        let nvars = exponents.len();
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.insert(exponents, c);
        }
        p
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, e, field.one())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> F::Elem {
        self.terms.get(exponents).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, e: Vec<u32>, c: F::Elem) {
        let f = &self.field;
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                if !f.is_zero(&c) {
                    self.terms.insert(e, c);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), self.field.neg(c))).collect();
        Polynomial { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), self.field.mul(c, k));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(&self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(&self.field, self.nvars, self.field.one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Formal partial derivative; coefficients pick up the exponent as a
    /// field element, so `d/dy y^p = 0` in characteristic `p`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, self.field.mul(c, &self.field.from_i64(e[i] as i64)));
        }
        out
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars);
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = f.mul(&t, &f.pow(x, k as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}*{e:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    #[test]
    fn binomial_square_mod_two() {
        let f = PrimeField::new(2).unwrap();
        let x = Polynomial::var(&f, 2, 0);
        let y = Polynomial::var(&f, 2, 1);
        let s = x.add(&y).pow(2);
        assert_eq!(s, x.pow(2).add(&y.pow(2)));
    }

    #[test]
    fn derivative_kills_pth_powers() {
        let f = PrimeField::new(3).unwrap();
        let y = Polynomial::var(&f, 2, 1);
        assert!(y.pow(3).derivative(1).is_zero());
        assert_eq!(y.pow(4).derivative(1), y.pow(3));
    }

    #[test]
    fn evaluation_over_rationals() {
        let q = Rationals;
        let x = Polynomial::var(&q, 1, 0);
        let p = x.pow(3).sub(&x.scale(&BigRational::from_integer(2.into())));
        assert_eq!(p.eval(&[BigRational::from_integer(3.into())]), BigRational::from_integer(21.into()));
    }
}
