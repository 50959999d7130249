//! Three-valued answers and the knobs for bounded searches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    pub fn is_no(self) -> bool {
        self == Verdict::No
    }

    /// Conjunction: any `No` wins, then any `Undetermined`.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            _ => Verdict::Undetermined,
        }
    }

    pub fn or(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Yes, _) | (_, Verdict::Yes) => Verdict::Yes,
            (Verdict::No, Verdict::No) => Verdict::No,
            _ => Verdict::Undetermined,
        }
    }

    pub fn not(self) -> Verdict {
        match self {
            Verdict::Yes => Verdict::No,
            Verdict::No => Verdict::Yes,
            Verdict::Undetermined => Verdict::Undetermined,
        }
    }

    pub fn all(it: impl IntoIterator<Item = Verdict>) -> Verdict {
        it.into_iter().fold(Verdict::Yes, Verdict::and)
    }
}

/// Bounds every enumeration that could blow up. `budget` caps the number of
/// candidates examined; `seed` drives the randomized fallbacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub budget: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { budget: 4096, seed: 0 }
    }
}

impl SearchConfig {
    pub fn new(budget: u64, seed: u64) -> Self {
        Self { budget, seed }
    }

    /// Fresh generator for one search, so results never depend on call order.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// `Some(p^k)` when it fits under the budget.
    pub fn exhaustive_count(&self, p: u32, k: usize) -> Option<u64> {
        let mut n: u64 = 1;
        for _ in 0..k {
            n = n.checked_mul(p as u64)?;
            if n > self.budget {
                return None;
            }
        }
        Some(n)
    }
}

/// The `index`-th vector of `F_p^k` in lexicographic order (last coordinate fastest).
pub fn nth_vector(p: u32, k: usize, mut index: u64) -> Vec<u32> {
    let mut v = vec![0; k];
    for slot in v.iter_mut().rev() {
        *slot = (index % p as u64) as u32;
        index /= p as u64;
    }
    v
}
