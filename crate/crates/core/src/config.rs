//! Limits and tolerances passed down from callers.

use crate::numeric::DEFAULT_TOLERANCE;
use serde::{Deserialize, Serialize};

/// Default maximum number of configurations any enumeration may visit.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// Knobs shared by the enumerating algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    pub cap: u64,
    pub tolerance: f64,
    /// Worker threads for parallel sums; 0 lets rayon decide.
    pub threads: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cap: DEFAULT_CAP,
            tolerance: DEFAULT_TOLERANCE,
            threads: 0,
        }
    }
}

impl Limits {
    pub fn with_cap(cap: u64) -> Self {
        Limits {
            cap,
            ..Limits::default()
        }
    }

    pub fn check(&self, what: &str, needed: u128) -> crate::Result<()> {
        if needed > self.cap as u128 {
            return Err(crate::Error::CapExceeded {
                what: what.to_string(),
                needed,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Runs `f` on a pool of `threads` workers, or on the global pool when 0.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.threads == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

/// `base^exp` as u128, saturating so cap checks stay meaningful.
pub(crate) fn pow_sat(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
