use serde::{Deserialize, Serialize};

/// Explicit resource caps. Every potentially super-polynomial enumeration in
/// the library takes a `Budget`; exceeding a cap is an error carrying partial
/// progress, never a silent truncation.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Budget {
    /// Maximum number of factorizations enumerated per element.
    pub factorization_cap: u64,
    /// Maximum search nodes visited per enumeration (guards dead-end-heavy
    /// recursions independently of output size).
    pub node_cap: u64,
    /// Maximum pairwise distance evaluations per element for catenary
    /// computations (the distance graph is quadratic in `|Z(a)|`).
    pub pair_cap: u64,
    /// Maximum sequence length for zero-sum scans.
    pub length_cap: u32,
    /// Maximum members for window/group/divisor enumerations.
    pub enumeration_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            factorization_cap: 100_000,
            node_cap: 20_000_000,
            pair_cap: 40_000_000,
            length_cap: 12,
            enumeration_cap: 1_000_000,
        }
    }
}

impl Budget {
    /// Multiplies every cap by `factor` (clamped so caps never drop to zero).
    /// The CLI applies `CONDMON_BUDGET_SCALE` through this.
    pub fn scaled(&self, factor: f64) -> Budget {
        let f = if factor.is_finite() && factor > 0.0 {
            factor
        } else {
            1.0
        };
        let scale_u64 = |v: u64| -> u64 { ((v as f64 * f).round() as u64).max(1) };
        Budget {
            factorization_cap: scale_u64(self.factorization_cap),
            node_cap: scale_u64(self.node_cap),
            pair_cap: scale_u64(self.pair_cap),
            length_cap: (((self.length_cap as f64) * f).round() as u32).max(1),
            enumeration_cap: scale_u64(self.enumeration_cap),
        }
    }
}
