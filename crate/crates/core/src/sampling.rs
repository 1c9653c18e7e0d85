//! Resolving a [`Quantifier`] into an exhaustive or seeded sampled plan.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::{Quantifier, DEFAULT_SAMPLES, DEFAULT_SEED};

/// Largest profile domain walked exhaustively on request.
pub const EXHAUSTIVE_CAP: u64 = 3_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plan {
    Exhaustive { size: u64 },
    Sampled { samples: u64, seed: u64 },
}

/// `Auto` is exhaustive exactly at desk scale (`m ≤ 3`, `n ≤ 3`).
pub fn plan(q: Quantifier, m: usize, n: usize, size: Option<u64>) -> Result<Plan> {
    let too_large = || Error::DomainTooLarge(format!("m={m}, n={n} cannot be enumerated"));
    match q {
        Quantifier::Auto if m <= 3 && n <= 3 => Ok(Plan::Exhaustive {
            size: size.ok_or_else(too_large)?,
        }),
        Quantifier::Auto => Ok(Plan::Sampled {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }),
        Quantifier::Exhaustive => match size {
            Some(size) if size <= EXHAUSTIVE_CAP => Ok(Plan::Exhaustive { size }),
            _ => Err(too_large()),
        },
        Quantifier::Sampled { samples, seed } => Ok(Plan::Sampled { samples, seed }),
    }
}

/// Independent deterministic stream `stream` for `seed`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn auto_plans() {
        assert_eq!(
            plan(Quantifier::Auto, 3, 3, Some(2197)).unwrap(),
            Plan::Exhaustive { size: 2197 }
        );
        assert!(matches!(
            plan(Quantifier::Auto, 4, 3, Some(421_875)).unwrap(),
            Plan::Sampled { seed: DEFAULT_SEED, .. }
        ));
        assert!(plan(Quantifier::Exhaustive, 5, 3, Some(541u64.pow(3))).is_err());
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u32> = (0..4).map(|_| rng(7, 1).gen()).collect();
        let mut r1 = rng(7, 1);
        let mut r2 = rng(7, 2);
        assert_eq!(a[0], rng(7, 1).gen::<u32>());
        assert_ne!(r1.gen::<u64>(), r2.gen::<u64>());
    }
}
