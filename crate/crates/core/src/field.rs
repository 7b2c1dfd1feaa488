//! Coefficient fields: prime fields, the rationals, and small extensions
//! `GF(p^k)` used for sampling torus points in characteristic 2.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not 0 or a prime")]
    NotPrime(u64),
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// The prime factors of `n`, by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A field given only by its characteristic: 0 means `Q`, otherwise `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoefficientField {
    characteristic: u64,
}

impl CoefficientField {
    pub fn new(characteristic: u64) -> Result<Self, FieldError> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(FieldError::NotPrime(characteristic));
        }
        Ok(CoefficientField { characteristic })
    }

    pub fn rationals() -> Self {
        CoefficientField { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn prime_field(&self) -> Option<PrimeField> {
        (self.characteristic != 0).then(|| PrimeField { p: self.characteristic })
    }
}

/// Field arithmetic on an associated element type.
pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + PartialEq + Debug;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    /// Integer representative in `(-p/2, p/2]` for prime fields; `None` if
    /// the element is not an integer (rationals only).
    fn to_symmetric_int(&self, a: &Self::Elem) -> Option<BigInt>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| pow_mod(*a, self.p - 2, self.p))
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }
    fn to_symmetric_int(&self, a: &u64) -> Option<BigInt> {
        let a = *a;
        Some(if a > self.p / 2 { BigInt::from(a) - BigInt::from(self.p) } else { BigInt::from(a) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn to_symmetric_int(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }
}

/// `GF(p^k)` as `F_p[z]/(f)` for a monic irreducible `f` of degree `k`.
/// Elements are coefficient vectors of length `k`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionField {
    base: PrimeField,
    modulus: Vec<u64>,
}

impl ExtensionField {
    /// The first monic irreducible of degree `k` in lexicographic order of
    /// its lower coefficients, so the construction is deterministic.
    pub fn new(base: PrimeField, k: usize) -> Self {
        assert!(k >= 1);
        let p = base.p;
        let mut tail = vec![0u64; k];
        loop {
            let mut f = tail.clone();
            f.push(1);
            if f[0] != 0 && is_irreducible(&base, &f) {
                return ExtensionField { base, modulus: f };
            }
            // next tail, counting in base p
            let mut i = 0;
            loop {
                tail[i] += 1;
                if tail[i] < p {
                    break;
                }
                tail[i] = 0;
                i += 1;
                assert!(i < k, "no irreducible polynomial found");
            }
        }
    }

    /// Smallest extension with at least `min_size` elements.
    pub fn with_min_size(base: PrimeField, min_size: u64) -> Self {
        let mut k = 1;
        let mut q = base.p as u128;
        while q < min_size as u128 {
            q *= base.p as u128;
            k += 1;
        }
        ExtensionField::new(base, k)
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn size(&self) -> u128 {
        (self.base.p as u128).pow(self.degree() as u32)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        loop {
            let v: Vec<u64> = (0..self.degree()).map(|_| rng.gen_range(0..self.base.p)).collect();
            if v.iter().any(|&c| c != 0) {
                return v;
            }
        }
    }
}

impl Field for ExtensionField {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1 % self.base.p;
        v
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let prod = poly_mul(&self.base, a, b);
        let mut r = poly_rem(&self.base, &prod, &self.modulus);
        r.resize(self.degree(), 0);
        r
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let q = self.size();
        let e = u64::try_from(q - 2).expect("extension too large");
        Some(self.pow(a, e))
    }
    fn from_bigint(&self, n: &BigInt) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = self.base.from_bigint(n);
        v
    }
    fn to_symmetric_int(&self, a: &Vec<u64>) -> Option<BigInt> {
        a[1..].iter().all(|&c| c == 0).then(|| self.base.to_symmetric_int(&a[0]).expect("prime field"))
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

fn poly_rem(f: &PrimeField, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut m = m.to_vec();
    trim(&mut m);
    let dm = m.len() - 1;
    let lead_inv = f.inv(&m[dm]).expect("nonzero leading coefficient");
    while r.len() > dm {
        let c = f.mul(r.last().expect("nonempty"), &lead_inv);
        let shift = r.len() - 1 - dm;
        for (i, mi) in m.iter().enumerate() {
            r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, mi));
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// `z^(p^e) mod m`
fn frobenius_power(f: &PrimeField, m: &[u64], e: usize) -> Vec<u64> {
    let mut z = poly_rem(f, &[0, 1], m);
    for _ in 0..e {
        // raise to the p-th power by square-and-multiply
        let mut acc = vec![1u64];
        let mut base = z.clone();
        let mut k = f.p;
        while k > 0 {
            if k & 1 == 1 {
                acc = poly_rem(f, &poly_mul(f, &acc, &base), m);
            }
            base = poly_rem(f, &poly_mul(f, &base, &base), m);
            k >>= 1;
        }
        z = acc;
    }
    z
}

/// Rabin's irreducibility test for monic `m` over `F_p`.
fn is_irreducible(f: &PrimeField, m: &[u64]) -> bool {
    let k = m.len() - 1;
    let x = poly_rem(f, &[0, 1], m);
    if frobenius_power(f, m, k) != x {
        return false;
    }
    for q in prime_factors(k as u64) {
        let mut h = frobenius_power(f, m, k / q as usize);
        h.resize(h.len().max(2), 0);
        h[1] = f.sub(&h[1], &1);
        if poly_gcd(f, &h, m).len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(CoefficientField::new(4).is_err());
        assert!(CoefficientField::new(0).is_ok());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.to_symmetric_int(&6), Some(BigInt::from(-1)));
        assert_eq!(f.pow(&3, 6), 1);
    }

    #[test]
    fn extension_fields_are_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, k) in [(2u64, 20usize), (3, 5), (5, 3)] {
            let e = ExtensionField::new(PrimeField::new(p).unwrap(), k);
            assert_eq!(e.degree(), k);
            for _ in 0..20 {
                let a = e.random_nonzero(&mut rng);
                let b = e.random_nonzero(&mut rng);
                let ai = e.inv(&a).unwrap();
                assert_eq!(e.mul(&a, &ai), e.one());
                assert_eq!(e.mul(&a, &b), e.mul(&b, &a));
                // Frobenius fixes the whole field: a^(q) = a
                let q = e.size() as u64;
                assert_eq!(e.pow(&a, q), a);
            }
        }
    }

    #[test]
    fn min_size_extension() {
        let e = ExtensionField::with_min_size(PrimeField::new(2).unwrap(), 1 << 20);
        assert_eq!(e.degree(), 20);
        let e = ExtensionField::with_min_size(PrimeField::new(3).unwrap(), 1 << 20);
        assert_eq!(e.degree(), 13);
    }

    #[test]
    fn reducible_polynomials_rejected() {
        let f = PrimeField::new(2).unwrap();
        assert!(!is_irreducible(&f, &[1, 0, 1])); // (z+1)^2
        assert!(is_irreducible(&f, &[1, 1, 1]));
        // z^6 + ... + 1 splits into the two irreducible cubics
        assert!(!is_irreducible(&f, &[1, 1, 1, 1, 1, 1, 1]));
    }
}
