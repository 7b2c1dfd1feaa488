use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::binomial_ideal::BinomialSystem;
use crate::field::{ExtensionField, Field, PrimeField};

use super::jacobian::{jacobian_over, minor_at, system_polynomials};
use super::tame::RelationMatrix;
use super::JacobianError;

/// `2^61 − 1`, the sampling field for the integer congruence.
pub const SAMPLE_PRIME: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub holds: bool,
    pub trials: usize,
    /// The integer minor `Det_{G,L'}`.
    pub minor: i64,
    pub minor_divisible_by_p: bool,
    /// Randomised evaluation; a false agreement has probability about
    /// `deg / 2^61` per sample.
    pub probabilistic: bool,
}

fn check_selection(system: &BinomialSystem, cols: &[usize], rows: &[usize]) -> Result<(), JacobianError> {
    let bad = cols.len() != rows.len()
        || cols.iter().any(|&c| c >= system.nvars())
        || rows.iter().any(|&r| r >= system.binomials().len())
        || has_duplicates(cols)
        || has_duplicates(rows);
    if bad {
        return Err(JacobianError::BadSelection(format!("columns {cols:?}, rows {rows:?}")));
    }
    Ok(())
}

fn has_duplicates(v: &[usize]) -> bool {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.windows(2).any(|w| w[0] == w[1])
}

/// Checks `U_{k_1}⋯U_{k_c} · J_{G,L'} ≡ (∏_{ℓ∈L'} U^{m^ℓ}) · Det_{G,L'}` on
/// the monomial variety by evaluating both sides at random points
/// `u_i = t^{γ_i}` over `F_q`, `q = 2^61 − 1`, with integer coefficients.
pub fn minor_congruence_check(
    system: &BinomialSystem,
    cols: &[usize],
    rows: &[usize],
    trials: usize,
    seed: u64,
) -> Result<CongruenceReport, JacobianError> {
    check_selection(system, cols, rows)?;
    if system.is_deformed() {
        return Err(JacobianError::Deformed);
    }
    let fq = PrimeField::new(SAMPLE_PRIME).expect("Mersenne prime");
    let polys = system_polynomials(system, &fq);
    let jac = jacobian_over(system, &fq);
    let rel = RelationMatrix::of_system(system)?;
    let det = rel.minor(rows, cols);
    let det_i64 = i64::try_from(&det).map_err(|_| JacobianError::Overflow)?;
    let det_f = fq.from_i64(det_i64);
    let p = system.field().characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut holds = true;
    let mut done = 0;
    while done < trials {
        let t = fq.random_nonzero(&mut rng);
        let point: Vec<u64> = system.weights().iter().map(|&g| fq.pow(&t, g)).collect();
        if point.iter().any(|u| fq.is_zero(u)) {
            // degenerate sample, draw again
            continue;
        }
        if let Some(l) = polys.iter().position(|f| !fq.is_zero(&f.eval(&point))) {
            return Err(JacobianError::PointOffVariety(l));
        }
        let prod_u = cols.iter().fold(fq.one(), |acc, &k| fq.mul(&acc, &point[k]));
        let lhs = fq.mul(&prod_u, &minor_at(&fq, &jac, rows, cols, &point));
        let prod_m = rows.iter().fold(fq.one(), |acc, &l| {
            let m = system.binomials()[l].m();
            m.iter().zip(&point).fold(acc, |a, (&e, u)| fq.mul(&a, &fq.pow(u, e)))
        });
        let rhs = fq.mul(&prod_m, &det_f);
        if lhs != rhs {
            holds = false;
        }
        done += 1;
    }
    Ok(CongruenceReport {
        holds,
        trials,
        minor: det_i64,
        minor_divisible_by_p: p != 0 && det_i64.rem_euclid(p as i64) == 0,
        probabilistic: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonvanishingReport {
    pub all_nonzero: bool,
    pub trials: usize,
    pub zero_samples: usize,
    /// `p^k`, the size of the sampling field.
    pub field_size: u64,
}

/// Evaluates the minor of the characteristic-`p` jacobian (deformation terms
/// included) at random torus points of `GF(p^k)` with `p^k ≥ 2^20`.
pub fn minor_nonvanishing_on_torus(
    system: &BinomialSystem,
    cols: &[usize],
    rows: &[usize],
    trials: usize,
    seed: u64,
) -> Result<NonvanishingReport, JacobianError> {
    check_selection(system, cols, rows)?;
    let base = system.field().prime_field().ok_or(JacobianError::CharacteristicZero)?;
    let ext = ExtensionField::with_min_size(base, 1 << 20);
    let jac = jacobian_over(system, &ext);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zero_samples = 0;
    for _ in 0..trials {
        let point: Vec<Vec<u64>> = (0..system.nvars()).map(|_| ext.random_nonzero(&mut rng)).collect();
        if ext.is_zero(&minor_at(&ext, &jac, rows, cols, &point)) {
            zero_samples += 1;
        }
    }
    Ok(NonvanishingReport { all_nonzero: zero_samples == 0, trials, zero_samples, field_size: u64::try_from(ext.size()).expect("sampling field below 2^40") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial_ideal::Binomial;
    use crate::field::CoefficientField;

    #[test]
    fn campillo_congruence() {
        let s = BinomialSystem::campillo(2, false).unwrap();
        let r = minor_congruence_check(&s, &[0, 1, 2], &[0, 1, 2], 20, 7).unwrap();
        assert!(r.holds);
        assert_eq!(r.minor, -63);
        assert!(!r.minor_divisible_by_p);
        let r = minor_congruence_check(&s, &[0, 1, 3], &[0, 1, 2], 20, 7).unwrap();
        assert!(r.holds);
        assert!(r.minor_divisible_by_p);
    }

    #[test]
    fn single_binomial_congruence() {
        let f = CoefficientField::new(3).unwrap();
        let s = BinomialSystem::undeformed(
            vec!["x".into(), "y".into()],
            vec![1, 2],
            f,
            vec![Binomial::new(vec![2, 0], vec![0, 1], 1).unwrap()],
        )
        .unwrap();
        let r = minor_congruence_check(&s, &[0], &[0], 20, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.minor, 2);
    }

    #[test]
    fn wrong_sign_is_caught() {
        // x^2 + y, i.e. lambda = -1: sample points t -> (t, t^2) are off the variety
        let f = CoefficientField::new(3).unwrap();
        let s = BinomialSystem::undeformed(
            vec!["x".into(), "y".into()],
            vec![1, 2],
            f,
            vec![Binomial::new(vec![2, 0], vec![0, 1], -1).unwrap()],
        )
        .unwrap();
        assert!(matches!(minor_congruence_check(&s, &[0], &[0], 5, 1), Err(JacobianError::PointOffVariety(0))));
    }

    #[test]
    fn deformed_systems_rejected() {
        let s = BinomialSystem::campillo(2, true).unwrap();
        assert!(matches!(minor_congruence_check(&s, &[0, 1, 2], &[0, 1, 2], 5, 1), Err(JacobianError::Deformed)));
        assert!(minor_congruence_check(&BinomialSystem::campillo(2, false).unwrap(), &[0, 0, 1], &[0, 1, 2], 5, 1).is_err());
    }

    #[test]
    fn deformed_minor_survives() {
        for p in [2, 3, 5] {
            let s = BinomialSystem::campillo(p, true).unwrap();
            let r = minor_nonvanishing_on_torus(&s, &[0, 1, 2], &[0, 1, 2], 20, 11).unwrap();
            assert!(r.all_nonzero, "p = {p}");
            assert!(r.field_size >= 1 << 20);
            // a minor through the u3 column vanishes identically mod p
            let s = BinomialSystem::campillo(p, false).unwrap();
            let r = minor_nonvanishing_on_torus(&s, &[0, 1, 3], &[0, 1, 2], 5, 11).unwrap();
            assert_eq!(r.zero_samples, 5);
        }
    }
}
