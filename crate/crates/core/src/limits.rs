//! Size caps for brute-force work.

use serde::{Deserialize, Serialize};

/// Bounds on brute-force enumeration.
///
/// `enumeration` applies to linear scans over a finite ring (idempotents,
/// nilpotents, listing elements). `quadratic` applies to predicates that
/// need all pairs of elements (units, Jacobson radical, Gelfand and stable
/// range checks). `cofactor_search` bounds the coprime-cofactor search in
/// quotient rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub enumeration: u64,
    pub quadratic: u64,
    pub cofactor_search: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { enumeration: 1_000_000, quadratic: 5_000, cofactor_search: 1_000_000 }
    }
}

impl Caps {
    /// Caps with a single enumeration limit; the quadratic cap never exceeds it.
    pub fn with_enumeration(limit: u64) -> Self {
        let d = Caps::default();
        Caps { enumeration: limit, quadratic: d.quadratic.min(limit), cofactor_search: d.cofactor_search }
    }
}

/// Limits for factoring-based classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    /// Integers: primes up to this bound are removed by trial division.
    pub trial_bound: u64,
    /// Polynomials: maximum number of candidate divisors tried.
    pub poly_candidates: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { trial_bound: 1_000_000, poly_candidates: 1_000_000 }
    }
}
