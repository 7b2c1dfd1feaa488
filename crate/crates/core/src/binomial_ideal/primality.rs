use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact_linalg::{json, IntMatrix, IntVector, Lattice};

use super::{Binomial, BinomialError, BinomialSystem, PartialCharacter};

/// Lattice spanned by the `m^ℓ − n^ℓ`, with the character sending each
/// generator to its `λ_ℓ`. Deformation terms are ignored.
pub fn lattice_of(system: &BinomialSystem) -> Result<(Lattice, PartialCharacter), BinomialError> {
    let rows: Vec<IntVector> = system.binomials().iter().map(|b| IntVector::from(b.difference())).collect();
    let gens = if rows.is_empty() {
        IntMatrix::zeros(0, system.nvars())
    } else {
        IntMatrix::new(rows)?
    };
    let values = system.binomials().iter().map(Binomial::lambda).collect();
    let chi = PartialCharacter::new(system.field(), gens, values)?;
    Ok((chi.lattice().clone(), chi))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalityReport {
    pub saturated: bool,
    /// Saturated lattice with a consistent character: the Laurent lattice
    /// ideal is prime.
    pub prime: bool,
    pub rank: usize,
    /// Elementary divisors of `Sat(L)/L` greater than one.
    #[serde(with = "json::vec")]
    pub torsion_divisors: Vec<BigInt>,
    /// A vector outside `L` with `k·v ∈ L`.
    pub witness: Option<IntVector>,
    #[serde(with = "json::option")]
    pub witness_order: Option<BigInt>,
    pub note: Option<String>,
}

pub fn primality_report(system: &BinomialSystem) -> Result<PrimalityReport, BinomialError> {
    let (lattice, _chi) = lattice_of(system)?;
    let saturated = lattice.is_saturated();
    let witnesses = lattice.torsion_witnesses();
    let torsion_divisors: Vec<BigInt> = witnesses.iter().map(|(_, k)| k.clone()).collect();
    let (witness, witness_order) = match witnesses.into_iter().next() {
        Some((w, k)) => (Some(w), Some(k)),
        None => (None, None),
    };
    let note = (!saturated).then(|| {
        let divs: Vec<String> = torsion_divisors.iter().map(ToString::to_string).collect();
        format!(
            "Sat(L)/L has invariant factors [{}]; over a field containing the corresponding roots \
             of the character values the lattice ideal splits into several components, and in \
             characteristic dividing a factor it is not radical. Field extensions are not enumerated.",
            divs.join(", ")
        )
    });
    Ok(PrimalityReport { saturated, prime: saturated, rank: lattice.rank(), torsion_divisors, witness, witness_order, note })
}

/// Membership of `U^m − λU^n` in the Laurent lattice ideal of `chi`:
/// `m − n ∈ L` and `chi(m − n) = λ`.
pub fn laurent_membership(b: &Binomial, chi: &PartialCharacter) -> Result<bool, BinomialError> {
    let v = IntVector::from(b.difference());
    Ok(match chi.value_on(&v)? {
        Some(val) => val == chi.normalise(b.lambda()),
        None => false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationWeights {
    pub weight_m: u64,
    pub weight_n: u64,
    pub balanced: bool,
    pub deformation_weights: Vec<u64>,
    /// Every deformation term weighs strictly more than the binomial.
    pub deformations_heavier: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverweightReport {
    pub overweight: bool,
    pub equations: Vec<EquationWeights>,
}

pub fn is_overweight(system: &BinomialSystem) -> OverweightReport {
    let equations: Vec<EquationWeights> = system
        .binomials()
        .iter()
        .zip(system.deformations())
        .map(|(b, defs)| {
            let weight_m = system.weight_of(b.m());
            let weight_n = system.weight_of(b.n());
            let deformation_weights: Vec<u64> = defs.iter().map(|t| system.weight_of(&t.exponent)).collect();
            let deformations_heavier = deformation_weights.iter().all(|&w| w > weight_m);
            EquationWeights { weight_m, weight_n, balanced: weight_m == weight_n, deformation_weights, deformations_heavier }
        })
        .collect();
    let overweight = equations.iter().all(|e| e.balanced && e.deformations_heavier);
    OverweightReport { overweight, equations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial_ideal::DeformationTerm;
    use crate::field::{CoefficientField, Field, PrimeField};
    use crate::poly::Polynomial;

    fn names(k: usize) -> Vec<String> {
        ["x", "y", "u2", "u3"][..k].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn lattice_of_examples() {
        let s = BinomialSystem::campillo_plane_pair(2).unwrap();
        let (l, chi) = lattice_of(&s).unwrap();
        assert!(l.same_as(&Lattice::from_i64_rows(3, &[[-3, 2, 0], [-15, 0, 4]]).unwrap()));
        assert_eq!(chi.values(), &[1, 1]);

        let s = BinomialSystem::campillo_plane_pair(3).unwrap();
        let (l, chi) = lattice_of(&s).unwrap();
        assert!(l.same_as(&Lattice::from_i64_rows(3, &[[-4, 3, 0], [-36, -3, 9]]).unwrap()));
        assert_eq!(chi.values(), &[1, 2]);

        let f = CoefficientField::new(5).unwrap();
        let s = BinomialSystem::undeformed(names(2), vec![1, 1], f, vec![Binomial::new(vec![1, 0], vec![0, 1], 1).unwrap()]).unwrap();
        let (l, _) = lattice_of(&s).unwrap();
        assert!(l.same_as(&Lattice::from_i64_rows(2, &[[1, -1]]).unwrap()));
    }

    #[test]
    fn inconsistent_character_rejected() {
        let q = CoefficientField::rationals();
        let bs = vec![
            Binomial::new(vec![1, 0], vec![0, 1], 1).unwrap(),
            Binomial::new(vec![1, 0], vec![0, 1], 2).unwrap(),
        ];
        let s = BinomialSystem::undeformed(names(2), vec![1, 1], q, bs).unwrap();
        assert!(matches!(lattice_of(&s), Err(BinomialError::InconsistentCharacter { .. })));
        // in characteristic 7, 2^3 = 1 makes x^3 - y^3 and x^3 - 8y^3 agree
        let f = CoefficientField::new(7).unwrap();
        let bs = vec![
            Binomial::new(vec![3, 0], vec![0, 3], 1).unwrap(),
            Binomial::new(vec![3, 0], vec![0, 3], 8).unwrap(),
        ];
        let s = BinomialSystem::undeformed(names(2), vec![1, 1], f, bs).unwrap();
        assert!(lattice_of(&s).is_ok());
    }

    #[test]
    fn plane_pairs_are_not_prime() {
        let r = primality_report(&BinomialSystem::campillo_plane_pair(2).unwrap()).unwrap();
        assert!(!r.saturated && !r.prime);
        assert_eq!(r.torsion_divisors, vec![BigInt::from(2)]);
        let (l, _) = lattice_of(&BinomialSystem::campillo_plane_pair(2).unwrap()).unwrap();
        let w = r.witness.unwrap();
        assert!(!l.contains(&w).unwrap());
        assert!(l.contains(&w.scaled(&BigInt::from(2))).unwrap());
        // the witness agrees with (-6,-1,2) modulo L
        assert!(l.contains(&w.sub(&IntVector::from([-6, -1, 2]))).unwrap());
        for p in [3, 5] {
            let r = primality_report(&BinomialSystem::campillo_plane_pair(p).unwrap()).unwrap();
            assert_eq!(r.torsion_divisors, vec![BigInt::from(p)]);
            assert!(r.note.is_some());
        }
    }

    #[test]
    fn campillo_monomial_curve_is_prime() {
        for p in [2, 3, 5] {
            let r = primality_report(&BinomialSystem::campillo(p, false).unwrap()).unwrap();
            assert!(r.saturated && r.prime, "p = {p}");
            assert_eq!(r.rank, 3);
            assert!(r.witness.is_none());
        }
        let f = CoefficientField::new(2).unwrap();
        let s = BinomialSystem::undeformed(names(2), vec![1, 1], f, vec![Binomial::new(vec![1, 0], vec![0, 1], 1).unwrap()]).unwrap();
        assert!(primality_report(&s).unwrap().saturated);
    }

    #[test]
    fn membership_examples() {
        let (_, chi) = lattice_of(&BinomialSystem::campillo_plane_pair(2).unwrap()).unwrap();
        let b = Binomial::new(vec![0, 0, 2], vec![6, 1, 0], 1).unwrap();
        assert!(!laurent_membership(&b, &chi).unwrap());
        let b2 = Binomial::new(vec![0, 0, 4], vec![12, 2, 0], 1).unwrap();
        assert!(laurent_membership(&b2, &chi).unwrap());
        // multiplying both monomials by x^5 y changes nothing
        let b3 = Binomial::new(vec![5, 1, 4], vec![17, 3, 0], 1).unwrap();
        assert!(laurent_membership(&b3, &chi).unwrap());

        // p = 3: u2^3 - 2x^12 y is out, its cube u2^9 - 8x^36 y^3 = u2^9 - 2x^36 y^3 is in
        let (_, chi) = lattice_of(&BinomialSystem::campillo_plane_pair(3).unwrap()).unwrap();
        let b = Binomial::new(vec![0, 0, 3], vec![12, 1, 0], 2).unwrap();
        assert!(!laurent_membership(&b, &chi).unwrap());
        let b = Binomial::new(vec![0, 0, 9], vec![36, 3, 0], 8).unwrap();
        assert!(laurent_membership(&b, &chi).unwrap());
        // wrong coefficient
        let b = Binomial::new(vec![0, 0, 9], vec![36, 3, 0], 1).unwrap();
        assert!(!laurent_membership(&b, &chi).unwrap());
    }

    #[test]
    fn overweight_examples() {
        let s = BinomialSystem::campillo(2, true).unwrap();
        let r = is_overweight(&s);
        assert!(r.overweight);
        assert_eq!(r.equations[0].weight_m, 24);
        assert_eq!(r.equations[0].deformation_weights, vec![30]);

        let s = BinomialSystem::campillo_plane_pair(2).unwrap();
        assert!(is_overweight(&s).overweight);
        assert_eq!(is_overweight(&s).equations[1].weight_m, 120);
        assert!(!primality_report(&s).unwrap().prime);

        let f = CoefficientField::new(2).unwrap();
        let s = BinomialSystem::new(
            names(3),
            vec![8, 12, 24],
            f,
            vec![Binomial::new(vec![0, 2, 0], vec![3, 0, 0], 1).unwrap()],
            vec![vec![DeformationTerm { exponent: vec![0, 0, 1], coefficient: -1 }]],
        )
        .unwrap();
        assert!(!is_overweight(&s).overweight);
    }

    #[test]
    fn square_of_witness_binomial_in_char_2() {
        // (u2^2 - x^6 y)^2 = (u2^4 - x^15) + x^12 (x^3 - y^2) over F_2
        let f = PrimeField::new(2).unwrap();
        let x = Polynomial::var(&f, 3, 0);
        let y = Polynomial::var(&f, 3, 1);
        let u = Polynomial::var(&f, 3, 2);
        let lhs = u.pow(2).sub(&x.pow(6).mul(&y)).pow(2);
        let rhs = u.pow(4).sub(&x.pow(15)).add(&x.pow(12).mul(&x.pow(3).sub(&y.pow(2))));
        assert_eq!(lhs, rhs);
        // and not over F_3, where the cross term survives
        let g = PrimeField::new(3).unwrap();
        let x = Polynomial::var(&g, 3, 0);
        let y = Polynomial::var(&g, 3, 1);
        let u = Polynomial::var(&g, 3, 2);
        let lhs = u.pow(2).sub(&x.pow(6).mul(&y)).pow(2);
        let rhs = u.pow(4).sub(&x.pow(15)).add(&x.pow(12).mul(&x.pow(3).sub(&y.pow(2))));
        assert_ne!(lhs, rhs);
        assert_eq!(g.characteristic(), 3);
    }
}
