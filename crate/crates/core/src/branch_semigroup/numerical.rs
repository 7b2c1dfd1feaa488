use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::SemigroupError;

/// A submonoid of `N` with finite complement, stored by its minimal
/// generators.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    conductor: u64,
}

impl NumericalSemigroup {
    /// Semigroup generated by arbitrary positive integers with gcd 1.
    /// Redundant generators are discarded.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::NoGenerators);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let g = gens.iter().fold(0u64, |a, &b| a.gcd(&b));
        if g != 1 {
            return Err(SemigroupError::NotCofinite(g));
        }
        let m = *gens.iter().min().expect("nonempty");
        let apery = apery_set(gens, m);
        Ok(Self::from_apery(m, &apery))
    }

    /// Rebuild from the Apéry set with respect to `m` (indexed by residue).
    pub(crate) fn from_apery(m: u64, apery: &[u64]) -> Self {
        debug_assert_eq!(apery.len() as u64, m);
        let mut nonzero: Vec<u64> = apery.iter().copied().filter(|&w| w != 0).collect();
        nonzero.sort_unstable();
        let in_apery = |w: u64| apery[(w % m) as usize] == w;
        let mut generators = vec![m];
        for &w in &nonzero {
            let decomposable = nonzero.iter().take_while(|&&v| v < w).any(|&v| in_apery(w - v));
            if !decomposable {
                generators.push(w);
            }
        }
        generators.sort_unstable();
        let conductor = if m == 1 { 0 } else { apery.iter().max().expect("nonempty") - m + 1 };
        NumericalSemigroup { generators, conductor }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Largest gap, or `None` for `N` itself.
    pub fn frobenius_number(&self) -> Option<u64> {
        self.conductor.checked_sub(1)
    }

    pub fn contains(&self, k: u64) -> bool {
        if k >= self.conductor {
            return true;
        }
        let m = self.multiplicity();
        let ap = self.apery(m);
        k >= ap[(k % m) as usize]
    }

    /// Apéry set with respect to a nonzero element `m` of the semigroup,
    /// indexed by residue mod `m`.
    pub fn apery(&self, m: u64) -> Vec<u64> {
        apery_set(&self.generators, m)
    }

    pub fn gaps(&self) -> Vec<u64> {
        let m = self.multiplicity();
        let ap = self.apery(m);
        (0..self.conductor).filter(|&k| k < ap[(k % m) as usize]).collect()
    }

    pub fn gap_count(&self) -> u64 {
        let m = self.multiplicity();
        // each residue class r contributes (w_r - r) / m gaps
        self.apery(m).iter().enumerate().map(|(r, &w)| (w - r as u64) / m).sum()
    }

    /// Membership table for `0..=bound` by dynamic programming over the
    /// generators. Independent of the Apéry machinery.
    pub fn membership_table(gens: &[u64], bound: u64) -> Vec<bool> {
        let mut reach = vec![false; bound as usize + 1];
        reach[0] = true;
        for k in 1..=bound as usize {
            reach[k] = gens.iter().any(|&g| g as usize <= k && reach[k - g as usize]);
        }
        reach
    }
}

/// Smallest element of `⟨gens⟩` in each residue class mod `m`: shortest
/// paths on the residues with edges `r → r + g`.
fn apery_set(gens: &[u64], m: u64) -> Vec<u64> {
    let m_us = m as usize;
    let mut dist = vec![u64::MAX; m_us];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in gens {
            let nr = (r + (g % m) as usize) % m_us;
            let nd = d + g;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_three() {
        let s = NumericalSemigroup::from_generators(&[2, 3]).unwrap();
        assert_eq!(s.conductor(), 2);
        assert_eq!(s.gaps(), vec![1]);
    }

    #[test]
    fn campillo_semigroups() {
        let s = NumericalSemigroup::from_generators(&[8, 12, 30, 63]).unwrap();
        assert_eq!(s.generators(), &[8, 12, 30, 63]);
        assert_eq!(s.conductor(), 98);
        assert_eq!(s.gap_count(), 49);
        let s = NumericalSemigroup::from_generators(&[27, 36, 120, 364]).unwrap();
        assert_eq!(s.conductor(), 1014);
    }

    #[test]
    fn redundant_generators_dropped() {
        let s = NumericalSemigroup::from_generators(&[6, 4, 9, 10, 13]).unwrap();
        assert_eq!(s.generators(), &[4, 6, 9]);
        let s = NumericalSemigroup::from_generators(&[1, 5]).unwrap();
        assert_eq!(s.generators(), &[1]);
        assert_eq!(s.conductor(), 0);
        assert_eq!(s.frobenius_number(), None);
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(NumericalSemigroup::from_generators(&[]), Err(SemigroupError::NoGenerators));
        assert_eq!(NumericalSemigroup::from_generators(&[4, 6]), Err(SemigroupError::NotCofinite(2)));
        assert_eq!(NumericalSemigroup::from_generators(&[0, 1]), Err(SemigroupError::ZeroGenerator));
    }

    proptest! {
        #[test]
        fn closure_and_minimality(gens in proptest::collection::vec(2u64..40, 1..5)) {
            let mut gens = gens;
            gens.push(41);
            let s = NumericalSemigroup::from_generators(&gens).unwrap();
            let c = s.conductor();
            let top = c + 3 * s.generators().last().unwrap();
            let table = NumericalSemigroup::membership_table(s.generators(), top);
            let orig = NumericalSemigroup::membership_table(&gens, top);
            prop_assert_eq!(&table, &orig);
            for k in c..=top {
                prop_assert!(table[k as usize]);
            }
            if c > 0 {
                prop_assert!(!table[c as usize - 1]);
            }
            for (k, &inside) in table.iter().enumerate() {
                prop_assert_eq!(s.contains(k as u64), inside);
            }
            // removing any generator loses that generator
            for i in 0..s.generators().len() {
                let rest: Vec<u64> = s.generators().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &g)| g).collect();
                let g = s.generators()[i];
                let t = NumericalSemigroup::membership_table(&rest, g);
                prop_assert!(!t[g as usize]);
            }
            prop_assert_eq!(s.gap_count() as usize, s.gaps().len());
        }
    }
}
