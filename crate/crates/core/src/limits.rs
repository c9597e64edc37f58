use serde::Serialize;

use crate::error::{Error, Result};

/// Guards for the brute-force parts of the library. Exceeding a guard is a
/// hard error; nothing is ever silently sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Bound on `q^k` codeword enumerations.
    pub max_enum: u64,
    /// Bound on the number of members of the ring of cozero sets.
    pub max_ring: usize,
    /// Bound on brute-force search spaces.
    pub max_search: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_enum: 1 << 20, max_ring: 1 << 16, max_search: 10_000_000 }
    }
}

impl Limits {
    pub(crate) fn check_enum(&self, requested: u128) -> Result<()> {
        if requested > self.max_enum as u128 {
            Err(Error::EnumerationTooLarge { requested, bound: self.max_enum })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_search(&self, requested: u128) -> Result<()> {
        if requested > self.max_search as u128 {
            Err(Error::SearchTooLarge { requested, bound: self.max_search })
        } else {
            Ok(())
        }
    }
}

/// `base^exp`, saturating.
pub(crate) fn pow_sat(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
