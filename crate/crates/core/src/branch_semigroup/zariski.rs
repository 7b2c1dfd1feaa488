use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{NumericalSemigroup, SemigroupError};

/// Characteristic exponents `β₀ < β₁ < … < β_g` of a plane branch.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharExponents {
    beta: Vec<u64>,
}

impl CharExponents {
    /// Checks that the sequence is increasing and that
    /// `e_i = gcd(e_{i-1}, β_i)` drops strictly at every step down to 1.
    pub fn new(beta: Vec<u64>) -> Result<Self, SemigroupError> {
        let malformed = |why: &str| Err(SemigroupError::MalformedExponents(format!("{beta:?}: {why}")));
        if beta.is_empty() {
            return malformed("empty");
        }
        if beta[0] == 0 {
            return malformed("β₀ must be positive");
        }
        if beta.windows(2).any(|w| w[0] >= w[1]) {
            return malformed("not strictly increasing");
        }
        let mut e = beta[0];
        for &b in &beta[1..] {
            let next = e.gcd(&b);
            if next == e {
                return malformed("gcd chain does not drop");
            }
            e = next;
        }
        if e != 1 {
            return malformed("gcd chain does not reach 1");
        }
        Ok(CharExponents { beta })
    }

    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    pub fn genus(&self) -> usize {
        self.beta.len() - 1
    }

    /// `e_0 = β₀, e_i = gcd(e_{i-1}, β_i)`.
    pub fn gcd_chain(&self) -> Vec<u64> {
        let mut out = vec![self.beta[0]];
        for &b in &self.beta[1..] {
            let e = out.last().unwrap().gcd(&b);
            out.push(e);
        }
        out
    }
}

/// `β̄₀ = β₀, β̄₁ = β₁, β̄_{i+1} = n_i β̄_i + β_{i+1} − β_i` with
/// `n_i = e_{i-1} / e_i`.
pub fn semigroup_from_char_exponents(b: &CharExponents) -> Result<NumericalSemigroup, SemigroupError> {
    let beta = b.beta();
    let e = b.gcd_chain();
    let mut bar = vec![beta[0]];
    if beta.len() > 1 {
        bar.push(beta[1]);
    }
    for i in 1..beta.len() - 1 {
        let n_i = e[i - 1] / e[i];
        bar.push(n_i * bar[i] + beta[i + 1] - beta[i]);
    }
    let s = NumericalSemigroup::from_generators(&bar)?;
    debug_assert_eq!(s.generators(), &bar[..], "Zariski generators are minimal");
    Ok(s)
}

/// Inverse of [`semigroup_from_char_exponents`]. The generators must satisfy
/// the plane-branch conditions: with `e_i = gcd(β̄₀, …, β̄_i)` and
/// `n_i = e_{i-1}/e_i`, every `n_i > 1`, `n_i β̄_i ∈ ⟨β̄₀, …, β̄_{i-1}⟩` and
/// `β̄_{i+1} > n_i β̄_i`.
pub fn char_exponents_from_semigroup(g: &NumericalSemigroup) -> Result<CharExponents, SemigroupError> {
    let bar = g.generators();
    let fail = |why: String| Err(SemigroupError::NotPlaneBranch(format!("{g}: {why}")));
    if bar.len() == 1 {
        // only <1>, the smooth branch
        return Ok(CharExponents { beta: vec![1] });
    }
    let mut e = vec![bar[0]];
    for (i, &b) in bar.iter().enumerate().skip(1) {
        let next = e[i - 1].gcd(&b);
        if next == e[i - 1] {
            return fail(format!("n_{i} = 1"));
        }
        e.push(next);
    }
    for i in 1..bar.len() {
        let n_i = e[i - 1] / e[i];
        let target = n_i * bar[i];
        let table = NumericalSemigroup::membership_table(&bar[..i], target);
        if !table[target as usize] {
            return fail(format!("n_{i}·β̄_{i} = {target} is not in the previous generators' semigroup"));
        }
        if i + 1 < bar.len() && bar[i + 1] <= target {
            return fail(format!("β̄_{} = {} does not exceed n_{i}·β̄_{i} = {target}", i + 1, bar[i + 1]));
        }
    }
    let mut beta = vec![bar[0], bar[1]];
    for i in 1..bar.len() - 1 {
        let n_i = e[i - 1] / e[i];
        beta.push(bar[i + 1] - n_i * bar[i] + beta[i]);
    }
    CharExponents::new(beta)
}
