//! Mixed-radix indexing of preference profiles.
//!
//! A profile over `R_B` with `n` agents is a word of `n` digits in base
//! `|R_B|`, agent 1 most significant, each digit the canonical index of that
//! agent's preorder. Index order therefore coincides with the lexicographic
//! order of rendered profiles, which makes "first witness" well defined.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::Space;
use crate::relation::TotalPreorder;

/// Largest supported electorate (coalitions are `u32` bitmasks).
pub const MAX_AGENTS: usize = 16;

#[derive(Debug, Clone)]
pub struct ProfileSpace {
    space: Arc<Space>,
    n: usize,
    /// `k^n`, or `None` when it does not fit in a `u64`.
    size: Option<u64>,
}

impl ProfileSpace {
    pub fn new(space: Arc<Space>, n: usize) -> Result<ProfileSpace> {
        if n < 3 {
            return Err(Error::Profile(format!("need at least 3 agents, got {n}")));
        }
        if n > MAX_AGENTS {
            return Err(Error::Profile(format!(
                "at most {MAX_AGENTS} agents are supported, got {n}"
            )));
        }
        let size = (space.len() as u64).checked_pow(n as u32);
        Ok(ProfileSpace { space, n, size })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn agents(&self) -> usize {
        self.n
    }

    /// Number of preorders per agent.
    pub fn radix(&self) -> usize {
        self.space.len()
    }

    pub fn size(&self) -> Option<u64> {
        self.size
    }

    /// Size, or an error naming the domain when it overflows.
    pub fn exact_size(&self) -> Result<u64> {
        self.size
            .ok_or_else(|| Error::DomainTooLarge(format!("{}^{} profiles", self.radix(), self.n)))
    }

    pub fn decode_into(&self, mut idx: u64, digits: &mut [usize]) {
        let k = self.radix() as u64;
        for d in digits.iter_mut().rev() {
            *d = (idx % k) as usize;
            idx /= k;
        }
    }

    pub fn decode(&self, idx: u64) -> Vec<usize> {
        let mut d = vec![0; self.n];
        self.decode_into(idx, &mut d);
        d
    }

    pub fn encode(&self, digits: &[usize]) -> u64 {
        let k = self.radix() as u64;
        digits.iter().fold(0, |acc, &d| acc * k + d as u64)
    }

    pub fn prefs(&self, digits: &[usize]) -> Vec<TotalPreorder> {
        digits.iter().map(|&d| self.space.elem(d)).collect()
    }

    /// Digits of a profile given as preorders; `None` if one is not in the space.
    pub fn digits_of(&self, prefs: &[TotalPreorder]) -> Option<Vec<usize>> {
        if prefs.len() != self.n {
            return None;
        }
        prefs.iter().map(|r| self.space.index_of(*r)).collect()
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Vec<usize> {
        (0..self.n).map(|_| rng.gen_range(0..self.radix())).collect()
    }

    pub fn render(&self, digits: &[usize]) -> Vec<String> {
        digits.iter().map(|&d| self.space.render(self.space.elem(d))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::GroundSet;

    #[test]
    fn round_trip_and_order() {
        let g = GroundSet::letters(3).unwrap();
        let ps = ProfileSpace::new(Space::full(&g).unwrap(), 3).unwrap();
        assert_eq!(ps.size(), Some(2197));
        for idx in [0u64, 1, 13, 2196, 1000] {
            assert_eq!(ps.encode(&ps.decode(idx)), idx);
        }
        // agent 1 is the most significant digit
        assert_eq!(ps.decode(13), vec![0, 1, 0]);
        let a = ps.render(&ps.decode(5));
        let b = ps.render(&ps.decode(6));
        assert!(a < b);
    }

    #[test]
    fn rejects_small_electorates() {
        let g = GroundSet::letters(3).unwrap();
        assert!(ProfileSpace::new(Space::full(&g).unwrap(), 2).is_err());
    }
}
